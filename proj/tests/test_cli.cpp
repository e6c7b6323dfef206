#include "eqcheck/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun run_cli(std::vector<const char*> args) {
    args.insert(args.begin(), "eqcheck");
    std::ostringstream out, err;
    int code = eqcheck::cli::run(static_cast<int>(args.size()), args.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("check exit codes follow the verdict") {
    CliRun r = run_cli({"check", "2^x", "e^(x*log(2))"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("correct") != std::string::npos);

    // "--" ends flag parsing, as usual for arguments with a leading dash
    r = run_cli({"check", "--", "sin(x)", "-sin(x)"});
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("incorrect") != std::string::npos);
    CHECK(r.out.find("witness") != std::string::npos);

    r = run_cli({"check", "log(0-1-x^2)", "0", "--points", "5"});
    CHECK(r.exit_code == 2);

    r = run_cli({"check", "sin(", "x"});
    CHECK(r.exit_code == 65);
    CHECK(r.err.find("offset 4") != std::string::npos);

    r = run_cli({"check", "x", "x", "--no-such-flag"});
    CHECK(r.exit_code == 64);

    // configuration problems are usage errors, not expression errors
    r = run_cli({"check", "x", "x", "--segments", "3", "--seg-len", "50", "--range", "1:100"});
    CHECK(r.exit_code == 64);
    r = run_cli({"check", "x", "x", "--points", "0"});
    CHECK(r.exit_code == 64);

    r = run_cli({"bogus-subcommand"});
    CHECK(r.exit_code == 64);
}

TEST_CASE("check respects --var") {
    CliRun r = run_cli({"check", "t+1", "1+t", "--var", "t"});
    CHECK(r.exit_code == 0);

    r = run_cli({"check", "x+1", "1+x", "--var", "t"});
    CHECK(r.exit_code == 65);
}

TEST_CASE("check --json emits the published schema") {
    CliRun r = run_cli({"check", "sin(x)^2", "1-cos(x)^2", "--json", "--seed", "7"});
    CHECK(r.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["verdict"] == "correct_with_bound");
    CHECK(doc["stage"] == "pointwise");
    CHECK(doc["seed"] == 7);
    CHECK(doc["segments"].is_array());
    CHECK(doc["segments"].size() == 3);
    for (const auto& seg : doc["segments"]) {
        CHECK(seg.contains("a"));
        CHECK(seg.contains("b"));
        CHECK(seg.contains("M"));
        CHECK(seg.contains("points_tested"));
        CHECK(seg.contains("resampled"));
    }
    CHECK(doc["witness"].is_null());
    CHECK(doc["error_bound"].is_number());

    // round-trip: parse and re-dump match
    CHECK(nlohmann::json::parse(doc.dump()) == doc);
}

TEST_CASE("grid subcommand reports M and eps_B") {
    CliRun r = run_cli({"grid", "--a", "1000", "--b", "1005"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("M = 44811936590751") != std::string::npos);
    CHECK(r.out.find("eps_B") != std::string::npos);

    r = run_cli({"grid", "--a", "-15", "--b", "-10"});
    CHECK(r.out.find("[10, 15]") != std::string::npos);
    CHECK(r.out.find("M = 3002399751580330") != std::string::npos);

    r = run_cli({"grid", "--a", "5", "--b", "5"});
    CHECK(r.exit_code == 64);
}

TEST_CASE("prob subcommand evaluates the piecewise error probability") {
    CliRun r = run_cli({"prob", "--M", "9007199", "--m", "10", "--k", "5"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("p = 0") != std::string::npos);

    r = run_cli({"prob", "--M", "5", "--m", "2", "--k", "3", "--exact"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("exact = 3/10") != std::string::npos);

    r = run_cli({"prob", "--M", "4503599627370496", "--m", "10", "--k", "1000000", "--log"});
    CHECK(r.exit_code == 0);
    CHECK(std::stod(r.out) < -200.0);

    r = run_cli({"prob", "--M", "5", "--m", "9", "--k", "3"});
    CHECK(r.exit_code == 64);
}

TEST_CASE("table1 emits nine CSV rows") {
    CliRun r = run_cli({"table1"});
    CHECK(r.exit_code == 0);
    int lines = 0;
    std::stringstream ss(r.out);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 10);  // header + 9 rows
    CHECK(r.out.find("10,15,3002399751580330") != std::string::npos);
    CHECK(r.out.find("1000000000,1000000005,45035996") != std::string::npos);
}

TEST_CASE("curves writes CSV rows for every (m, k) pair") {
    const char* path = "curves_test_output.csv";
    CliRun r = run_cli({"curves", "--a", "10", "--b", "20", "--m-list", "10,20", "--k-from",
                        "1000000", "--k-to", "2000000", "--steps", "5", "--out", path});
    CHECK(r.exit_code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "m,k,log_p");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 10);  // 2 m-values x 5 steps
    in.close();
    std::remove(path);
}

TEST_CASE("simulate reports the rate against the formula") {
    CliRun r = run_cli({"simulate", "--M", "100", "--m", "2", "--k", "50", "--trials", "20000",
                        "--seed", "3"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("rate = ") != std::string::npos);
    CHECK(r.out.find("formula = ") != std::string::npos);
    CHECK(r.out.find("z = ") != std::string::npos);

    r = run_cli({"simulate", "--M", "10", "--m", "20", "--k", "5", "--trials", "10"});
    CHECK(r.exit_code == 64);
}

TEST_CASE("help is not an error") {
    CliRun r = run_cli({"--help"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("check") != std::string::npos);
}
