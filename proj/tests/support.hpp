#pragma once

#include <cstdint>
#include <random>

#include "gfpoints/families.hpp"

namespace gfp::testing {

// Fixed-seed sampler for rationals and family parameters.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    Rational nonzero_rational(long bound) {
        long n = 0;
        while (n == 0) n = integer(-bound, bound);
        return Rational(Integer(n), Integer(integer(1, bound)));
    }

    Rational rational(long bound) { return Rational(Integer(integer(-bound, bound)), Integer(integer(1, bound))); }

    FamilyParams params(long bound) {
        auto a = nonzero_rational(bound), b = nonzero_rational(bound), c = nonzero_rational(bound);
        return FamilyParams(a, b, c);
    }

    FamilyParams nondegenerate_params(Family family, long bound) {
        for (;;) {
            FamilyParams p = params(bound);
            if (!degenerate_case(family, p)) return p;
        }
    }

    // (a, b, c) with m*ac = b^2: pick b and c, solve for a.
    FamilyParams on_case(DegenerateCase dc, long bound) {
        const Rational b = nonzero_rational(bound), c = nonzero_rational(bound);
        return FamilyParams(b * b / (case_multiplier(dc) * c), b, c);
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace gfp::testing
