#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gfpoints/errors.hpp"
#include "gfpoints/families.hpp"
#include "gfpoints/weierstrass.hpp"

namespace gfp {

enum class SkipReason { Trivial, ExceptionalDenominator, XUndefined, ZeroCoordinate, Duplicate };

inline std::string_view skip_reason_name(SkipReason r) {
    switch (r) {
        case SkipReason::Trivial: return "trivial";
        case SkipReason::ExceptionalDenominator: return "exceptional-denominator";
        case SkipReason::XUndefined: return "x-undefined";
        case SkipReason::ZeroCoordinate: return "zero-coordinate";
        case SkipReason::Duplicate: return "duplicate";
    }
    return "?";
}

struct Skip {
    std::int64_t n;
    SkipReason reason;
    std::string detail;
};

struct IndexedSolution {
    std::int64_t n;  // multiple of the base point this came from
    Solution solution;
};

/// Walks [1]base, [2]base, ... on E_i and pulls each point back to a
/// nontrivial solution. Negative multiples are not walked: they only mirror
/// the solutions of the positive ones.
///
/// A stream is single-owner state; distinct streams are independent.
class SolutionStream {
public:
    /// `base` defaults to the family's generator seed (P1 for F1/F4, P for
    /// F2/F3). For F3 the seed is itself an exceptional point of the inverse
    /// map, so the first emission comes from [2]P.
    SolutionStream(Family family, FamilyParams params, std::optional<CurvePoint> base = std::nullopt)
        : family_(family),
          params_(std::move(params)),
          curve_(curve_for_family(family_, params_)),
          base_(base ? *base : generator_seed(family_, params_)) {
        detail::require_on_curve(curve_, base_);
    }

    Family family() const noexcept { return family_; }
    const FamilyParams& params() const noexcept { return params_; }
    const CurvePoint& base() const noexcept { return base_; }
    const EllipticCurve& curve() const noexcept { return curve_; }
    std::int64_t index() const noexcept { return n_; }
    const std::vector<Skip>& skip_log() const noexcept { return skips_; }

    /// Next verified nontrivial solution. Throws StreamExhausted when the walk
    /// returns to the identity (torsion base).
    IndexedSolution next() {
        for (;;) {
            ++n_;
            current_ = detail::add_unchecked(curve_, current_, base_);
            if (current_.is_identity())
                throw StreamExhausted("stream exhausted: [" + std::to_string(n_) +
                                      "]base is the identity, so the base point is torsion");
            ConicPoint yz;
            try {
                yz = phi_inverse(family_, params_, current_);
            } catch (const ExceptionalPoint& e) {
                skip(SkipReason::ExceptionalDenominator, e.what());
                continue;
            }
            if (yz.y == yz.z) {
                skip(SkipReason::Trivial, "y = z");
                continue;
            }
            Rational x;
            try {
                x = recover_x(family_, yz.y, yz.z);
            } catch (const DomainError& e) {
                skip(SkipReason::XUndefined, e.what());
                continue;
            }
            if (family_ == Family::F3 && (x.is_zero() || yz.y.is_zero() || yz.z.is_zero())) {
                skip(SkipReason::ZeroCoordinate, "f undefined at 0");
                continue;
            }
            Solution s{std::move(x), std::move(yz.y), std::move(yz.z)};
            if (!seen_.insert(s).second) {
                skip(SkipReason::Duplicate, "solution already emitted");
                continue;
            }
            if (auto v = verify_solution(family_, params_, s); !v)
                throw Error("internal: generated solution fails verification: " + v.reason);
            return {n_, std::move(s)};
        }
    }

private:
    void skip(SkipReason r, std::string detail) { skips_.push_back({n_, r, std::move(detail)}); }

    Family family_;
    FamilyParams params_;
    EllipticCurve curve_;
    CurvePoint base_;
    CurvePoint current_;
    std::int64_t n_ = 0;
    std::vector<Skip> skips_;
    std::set<Solution> seen_;
};

inline IndexedSolution next_solution(SolutionStream& stream) { return stream.next(); }

/// The first `count` solutions of a fresh stream.
inline std::vector<IndexedSolution> generate(Family family, const FamilyParams& params, std::size_t count,
                                             std::optional<CurvePoint> base = std::nullopt) {
    if (count == 0) throw DomainError("count must be at least 1");
    SolutionStream stream(family, params, std::move(base));
    std::vector<IndexedSolution> out;
    out.reserve(count);
    while (out.size() < count) out.push_back(stream.next());
    return out;
}

}  // namespace gfp
