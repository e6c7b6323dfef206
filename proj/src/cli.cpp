#include "eqcheck/cli.hpp"

#include "eqcheck/checker.hpp"
#include "eqcheck/grid.hpp"
#include "eqcheck/harness.hpp"
#include "eqcheck/prob.hpp"
#include "eqcheck/symbolic.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace eqcheck::cli {

namespace {

struct CheckOptions {
    std::string real_text;
    std::string user_text;
    std::string variable = "x";
    std::uint32_t segments = 3;
    double segment_length = 10.0;
    std::string range = "1:100";
    std::uint32_t points = 100;
    std::uint64_t zero_bound = 1'000'000;
    double tol_abs = 1e-12;
    double tol_rel = 1e-9;
    std::uint64_t seed = 42;
    std::string grid_mode = "relative";
    bool json = false;
};

GridMode parse_mode(const std::string& name) {
    if (name == "relative") return GridMode::RelativeEps;
    if (name == "ulp") return GridMode::TrueUlp;
    throw CLI::ValidationError("--grid", "expected 'relative' or 'ulp'");
}

Segment parse_range(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--range", "expected the form A:B");
    try {
        double a = std::stod(text.substr(0, colon));
        double b = std::stod(text.substr(colon + 1));
        return {a, b};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--range", "expected numeric bounds A:B");
    }
}

std::string segment_outcome_name(SegmentOutcome o) {
    switch (o) {
        case SegmentOutcome::AllZero: return "all-zero";
        case SegmentOutcome::NonzeroFound: return "nonzero-found";
        case SegmentOutcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

int run_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
    ParseResult real = parse(opt.real_text, opt.variable);
    if (!real.ok()) {
        err << "first expression: " << real.error->message() << "\n";
        return kExitExprError;
    }
    ParseResult user = parse(opt.user_text, opt.variable);
    if (!user.ok()) {
        err << "second expression: " << user.error->message() << "\n";
        return kExitExprError;
    }

    CheckConfig cfg;
    cfg.auto_spec.count = opt.segments;
    cfg.auto_spec.length = opt.segment_length;
    cfg.auto_spec.placement = parse_range(opt.range);
    cfg.points_per_segment = opt.points;
    cfg.assumed_zero_bound = opt.zero_bound;
    cfg.tolerance = {opt.tol_abs, opt.tol_rel};
    cfg.seed = opt.seed;
    cfg.grid_mode = parse_mode(opt.grid_mode);

    // expression-level problems exit 65, configuration problems 64
    try {
        (void)difference(real.expr, user.expr);
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitExprError;
    }
    try {  // validate the segment layout even if the symbolic stage will decide
        (void)auto_segments(cfg.auto_spec.count, cfg.auto_spec.length, cfg.auto_spec.placement,
                            cfg.seed);
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    CheckReport report;
    try {
        report = compare_answers(real.expr, user.expr, cfg);
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    if (opt.json) {
        out << report_to_json(report) << "\n";
    } else {
        out << "verdict: " << verdict_name(report.verdict) << "\n";
        out << "stage: " << stage_name(report.stage) << "\n";
        out << "seed: " << report.seed << "\n";
        out << std::setprecision(17);
        for (const auto& s : report.segments) {
            out << "segment [" << s.segment.a << ", " << s.segment.b << "]: M=" << s.grid_size
                << " tested=" << s.points_tested << " resampled=" << s.resampled << " "
                << segment_outcome_name(s.outcome) << "\n";
        }
        if (report.witness)
            out << "witness: x=" << report.witness->x << " f(x)=" << report.witness->fx << "\n";
        if (report.verdict == FinalVerdict::CorrectWithBound) {
            double log_sum = 0.0;
            for (const auto& s : report.segments)
                if (s.outcome == SegmentOutcome::AllZero) log_sum += s.log_error_probability;
            out << "error bound: " << report.error_bound << " (sum of log p: " << log_sum << ")\n";
        }
    }
    switch (report.verdict) {
        case FinalVerdict::Incorrect: return kExitIncorrect;
        case FinalVerdict::Inconclusive: return kExitInconclusive;
        default: return kExitCorrect;
    }
}

int run_prob(std::uint64_t grid_size, std::uint64_t points, std::uint64_t zero_bound,
             bool log_only, bool exact, std::ostream& out, std::ostream& err) {
    try {
        ProbParams params{grid_size, points, zero_bound};
        if (log_only && !exact) {
            out << std::setprecision(17)
                << (zero_bound > grid_size ? 0.0 : log_failure_probability(params)) << "\n";
            return kExitCorrect;
        }
        ProbResult r = exact && zero_bound <= grid_size && zero_bound >= points
                           ? failure_probability(params, true)
                           : error_probability(params);
        out << std::setprecision(17);
        out << "p = " << r.value << "\n";
        out << "log_p = " << r.log_value << "\n";
        if (exact && r.exact)
            out << "exact = " << numerator(*r.exact) << "/" << denominator(*r.exact) << "\n";
        return kExitCorrect;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
}

int run_grid(double a, double b, const std::string& mode_name, std::ostream& out,
             std::ostream& err) {
    try {
        GridMode mode = parse_mode(mode_name);
        out << std::setprecision(17);
        for (const Segment& s : split_segment({a, b})) {
            out << "segment [" << s.a << ", " << s.b << "]\n";
            out << "M = " << estimate_grid_points(s, mode) << "\n";
            out << "eps_B = " << epsilon_for(s.b, mode) << "\n";
        }
        return kExitCorrect;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
}

int run_table1(std::ostream& out) {
    out << "A,B,M\n";
    double a = 10.0;
    for (int row = 0; row < 9; ++row, a *= 10.0) {
        Segment s{a, a + 5.0};
        out << static_cast<std::uint64_t>(s.a) << "," << static_cast<std::uint64_t>(s.b) << ","
            << estimate_grid_points(s, GridMode::RelativeEps) << "\n";
    }
    return kExitCorrect;
}

std::vector<std::uint64_t> parse_m_list(const std::string& text) {
    std::vector<std::uint64_t> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stoull(item));
    }
    if (values.empty()) throw CLI::ValidationError("--m-list", "expected comma-separated integers");
    return values;
}

int run_curves(double a, double b, const std::string& m_list, std::uint64_t k_from,
               std::uint64_t k_to, std::uint32_t steps, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
    try {
        std::vector<std::uint64_t> points = parse_m_list(m_list);
        if (steps < 2) throw CLI::ValidationError("--steps", "need at least two steps");
        if (k_to < k_from) throw CLI::ValidationError("--k-to", "must be >= --k-from");

        Segment seg = normalize_segment({a, b});
        std::uint64_t grid_size = estimate_grid_points(seg, GridMode::RelativeEps);

        std::ofstream file;
        std::ostream* sink = &out;
        if (out_path != "-") {
            file.open(out_path);
            if (!file) {
                err << "cannot open output file: " << out_path << "\n";
                return kExitUsage;
            }
            sink = &file;
        }
        *sink << "m,k,log_p\n" << std::setprecision(17);
        for (std::uint64_t m : points) {
            for (std::uint32_t i = 0; i < steps; ++i) {
                double frac = static_cast<double>(i) / static_cast<double>(steps - 1);
                auto k = static_cast<std::uint64_t>(
                    std::llround(static_cast<double>(k_from) +
                                 frac * static_cast<double>(k_to - k_from)));
                double log_p = k > grid_size ? 0.0 : log_failure_probability({grid_size, m, k});
                *sink << m << "," << k << "," << log_p << "\n";
            }
        }
        return kExitCorrect;
    } catch (const CLI::ValidationError&) {
        throw;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
}

int run_simulate(std::uint64_t grid_size, std::uint64_t points, std::uint64_t zero_count,
                 std::uint64_t trials, std::uint64_t seed, unsigned workers, std::ostream& out,
                 std::ostream& err) {
    try {
        ZeroUniverse universe = ZeroUniverse::prefix(grid_size, zero_count);
        SimulationResult sim = simulate_failure_rate(universe, points, trials, seed, workers);
        ProbResult formula = error_probability({grid_size, points, zero_count});
        double z = sim.standard_error > 0.0 ? (sim.rate - formula.value) / sim.standard_error
                                            : 0.0;
        out << std::setprecision(17);
        out << "rate = " << sim.rate << " (" << sim.hits << "/" << sim.trials << ")\n";
        out << "standard_error = " << sim.standard_error << "\n";
        out << "formula = " << formula.value << "\n";
        out << "z = " << z << "\n";
        return kExitCorrect;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decides whether two single-variable expressions define the same function,\n"
                 "with a symbolic stage, a randomized pointwise stage, and a rigorous bound\n"
                 "on the probability that a positive verdict is wrong."};
    app.require_subcommand(1);

    CheckOptions check;
    auto* check_cmd = app.add_subcommand("check", "compare two expressions");
    check_cmd->add_option("expr1", check.real_text, "reference expression")->required();
    check_cmd->add_option("expr2", check.user_text, "expression under test")->required();
    check_cmd->add_option("--var", check.variable, "variable name (default x)");
    check_cmd->add_option("--segments", check.segments, "number of auto-generated segments")
        ->check(CLI::PositiveNumber);
    check_cmd->add_option("--seg-len", check.segment_length, "length of each segment")
        ->check(CLI::PositiveNumber);
    check_cmd->add_option("--range", check.range, "placement range A:B for auto segments");
    check_cmd->add_option("--points", check.points, "points tested per segment (m)")
        ->check(CLI::PositiveNumber);
    check_cmd->add_option("--k", check.zero_bound, "assumed zero-locus bound per segment");
    check_cmd->add_option("--tol-abs", check.tol_abs, "absolute zero tolerance");
    check_cmd->add_option("--tol-rel", check.tol_rel, "relative zero tolerance");
    check_cmd->add_option("--seed", check.seed, "sampling seed");
    check_cmd->add_option("--grid", check.grid_mode, "grid model: relative|ulp");
    check_cmd->add_flag("--json", check.json, "emit the report as JSON");

    std::uint64_t prob_m_grid = 0, prob_m_points = 0, prob_k = 0;
    bool prob_log = false, prob_exact = false;
    auto* prob_cmd = app.add_subcommand("prob", "evaluate the error probability");
    prob_cmd->add_option("--M", prob_m_grid, "grid size")->required();
    prob_cmd->add_option("--m", prob_m_points, "check points")->required();
    prob_cmd->add_option("--k", prob_k, "zero-locus bound")->required();
    prob_cmd->add_flag("--log", prob_log, "print only log(p)");
    prob_cmd->add_flag("--exact", prob_exact, "force the exact rational path");

    double grid_a = 0.0, grid_b = 0.0;
    std::string grid_mode = "relative";
    auto* grid_cmd = app.add_subcommand("grid", "estimate grid points in a segment");
    grid_cmd->add_option("--a", grid_a, "left endpoint")->required();
    grid_cmd->add_option("--b", grid_b, "right endpoint")->required();
    grid_cmd->add_option("--mode", grid_mode, "grid model: relative|ulp");

    auto* table_cmd = app.add_subcommand("table1", "emit the [A, A+5] point-count table as CSV");

    double curves_a = 10.0, curves_b = 20.0;
    std::string curves_m_list = "10,20,25,50,100";
    std::uint64_t curves_k_from = 1, curves_k_to = 1'000'000;
    std::uint32_t curves_steps = 50;
    std::string curves_out = "-";
    auto* curves_cmd = app.add_subcommand("curves", "emit log(p) curve data as CSV");
    curves_cmd->add_option("--a", curves_a, "left endpoint")->required();
    curves_cmd->add_option("--b", curves_b, "right endpoint")->required();
    curves_cmd->add_option("--m-list", curves_m_list, "comma-separated m values");
    curves_cmd->add_option("--k-from", curves_k_from, "first k value")->required();
    curves_cmd->add_option("--k-to", curves_k_to, "last k value")->required();
    curves_cmd->add_option("--steps", curves_steps, "number of k samples");
    curves_cmd->add_option("--out", curves_out, "output file ('-' for stdout)");

    std::uint64_t sim_grid = 0, sim_points = 0, sim_k = 0, sim_trials = 0, sim_seed = 42;
    unsigned sim_workers = 1;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo check of the probability model");
    sim_cmd->add_option("--M", sim_grid, "grid size")->required();
    sim_cmd->add_option("--m", sim_points, "check points per trial")->required();
    sim_cmd->add_option("--k", sim_k, "zero-locus size")->required();
    sim_cmd->add_option("--trials", sim_trials, "number of trials")->required();
    sim_cmd->add_option("--seed", sim_seed, "simulation seed");
    sim_cmd->add_option("--workers", sim_workers, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitCorrect;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(check_cmd)) return run_check(check, out, err);
        if (app.got_subcommand(prob_cmd))
            return run_prob(prob_m_grid, prob_m_points, prob_k, prob_log, prob_exact, out, err);
        if (app.got_subcommand(grid_cmd)) return run_grid(grid_a, grid_b, grid_mode, out, err);
        if (app.got_subcommand(table_cmd)) return run_table1(out);
        if (app.got_subcommand(curves_cmd))
            return run_curves(curves_a, curves_b, curves_m_list, curves_k_from, curves_k_to,
                              curves_steps, curves_out, out, err);
        if (app.got_subcommand(sim_cmd))
            return run_simulate(sim_grid, sim_points, sim_k, sim_trials, sim_seed, sim_workers,
                                out, err);
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
    err << "no subcommand given\n";
    return kExitUsage;
}

}  // namespace eqcheck::cli
