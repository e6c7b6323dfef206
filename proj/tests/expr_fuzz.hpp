#pragma once

// Structural expression fuzzing shared by the unit and acceptance suites.

#include "eqcheck/expr.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace eqcheck::testing {

class ExprFuzzer {
  public:
    explicit ExprFuzzer(std::uint64_t seed) : rng_(seed) {}

    ExprPtr random_tree(int max_depth = 6) { return gen(max_depth); }

    /// Value-preserving syntactic shuffle: randomly swaps operands of
    /// commutative nodes. Normalization closes the gap to the original.
    ExprPtr shuffle(const ExprPtr& e) {
        switch (e->kind()) {
            case NodeKind::Negate: return make_neg(shuffle(e->child()));
            case NodeKind::Call: return make_call(e->function(), shuffle(e->child()));
            case NodeKind::Add:
            case NodeKind::Mul: {
                ExprPtr l = shuffle(e->lhs());
                ExprPtr r = shuffle(e->rhs());
                if (rng_() % 2 == 0) std::swap(l, r);
                return make_binary(e->kind(), std::move(l), std::move(r));
            }
            case NodeKind::Sub:
            case NodeKind::Div:
            case NodeKind::Pow:
                return make_binary(e->kind(), shuffle(e->lhs()), shuffle(e->rhs()));
            default: return e;
        }
    }

    std::mt19937_64& rng() { return rng_; }

  private:
    std::mt19937_64 rng_;

    double random_decimal() {
        switch (rng_() % 4) {
            case 0: return 0.5;
            case 1: return 3.14;
            case 2: return 0.001;
            default: {
                // arbitrary finite positive double from raw bits
                std::uint64_t bits = rng_() & 0x7fefffffffffffffull;  // clear sign, cap exponent
                double d;
                static_assert(sizeof(d) == sizeof(bits));
                __builtin_memcpy(&d, &bits, sizeof(d));
                if (d != d || d == 0.0) return 1.25;
                return d;
            }
        }
    }

    ExprPtr gen(int depth) {
        const unsigned leaf_choice = rng_() % 5;
        if (depth <= 0 || leaf_choice == 0) {
            switch (rng_() % 5) {
                case 0: return make_int(BigInt(rng_() % 100));
                case 1: return make_int(BigInt("123456789012345678901234567890"));
                case 2: return make_decimal(random_decimal());
                case 3: return make_constant(rng_() % 2 ? ConstantId::Pi : ConstantId::E);
                default: return make_variable("x");
            }
        }
        switch (rng_() % 8) {
            case 0: return make_neg(gen(depth - 1));
            case 1: return make_add(gen(depth - 1), gen(depth - 1));
            case 2: return make_sub(gen(depth - 1), gen(depth - 1));
            case 3: return make_mul(gen(depth - 1), gen(depth - 1));
            case 4: return make_div(gen(depth - 1), gen(depth - 1));
            case 5: return make_pow(gen(depth - 1), gen(depth - 1));
            default: {
                auto fn = static_cast<FunctionId>(rng_() % 7);
                return make_call(fn, gen(depth - 1));
            }
        }
    }
};

}  // namespace eqcheck::testing
