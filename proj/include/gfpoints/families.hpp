#pragma once

/*
 * The four (G, f) families.
 *
 *   F1: G = xy - z^2,        f(u) = a u^2 + b u + c
 *   F2: G = (x + y)z - 2xy,  f(u) = a u^2 + b u + c
 *   F3: G = (x + y)z - 2xy,  f(u) = a u + b + c/u
 *   F4: G = (x + y)z - 2xy,  f(u) = u(a u^2 + b u + c)
 *
 * Solving G = 0 for x and removing the trivial factor (y - z)^2 from
 * G(f(x), f(y), f(z)) = 0 leaves a plane curve C_i in (y, z). For
 * nondegenerate (a, b, c) each C_i is birational to a short Weierstrass curve
 * E_i via explicit maps phi_i / phi_i^{-1}; the degenerate parameter cases are
 * genus 0 and are covered by rational parameterizations or unions of curves.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gfpoints/errors.hpp"
#include "gfpoints/multipoly.hpp"
#include "gfpoints/rational.hpp"
#include "gfpoints/weierstrass.hpp"

namespace gfp {

enum class Family { F1, F2, F3, F4 };

inline constexpr std::array<Family, 4> kAllFamilies = {Family::F1, Family::F2, Family::F3, Family::F4};

inline std::string_view family_name(Family f) {
    switch (f) {
        case Family::F1: return "f1";
        case Family::F2: return "f2";
        case Family::F3: return "f3";
        case Family::F4: return "f4";
    }
    return "?";
}

inline std::optional<Family> parse_family(std::string_view s) {
    for (auto f : kAllFamilies)
        if (family_name(f) == s) return f;
    return std::nullopt;
}

/// (a, b, c) with abc != 0.
struct FamilyParams {
    Rational a, b, c;

    FamilyParams(Rational a_, Rational b_, Rational c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
        if (a.is_zero() || b.is_zero() || c.is_zero()) throw ParameterError("parameters need abc != 0");
    }

    friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

/// A rational triple claimed to satisfy G(x,y,z) = 0 and G(f(x),f(y),f(z)) = 0.
struct Solution {
    Rational x, y, z;

    friend bool operator==(const Solution&, const Solution&) = default;
    friend auto operator<=>(const Solution&, const Solution&) = default;
};

/// A point (y, z) on a family conic.
struct ConicPoint {
    Rational y, z;
    friend bool operator==(const ConicPoint&, const ConicPoint&) = default;
};

// ---------------------------------------------------------------------------
// Degenerate cases
// ---------------------------------------------------------------------------

enum class DegenerateCase { F1_4ac, F2_2ac, F2_4ac, F3_4ac, F4_ac, F4_3ac, F4_4ac };

inline constexpr std::array<DegenerateCase, 7> kAllDegenerateCases = {
    DegenerateCase::F1_4ac, DegenerateCase::F2_2ac, DegenerateCase::F2_4ac, DegenerateCase::F3_4ac,
    DegenerateCase::F4_ac,  DegenerateCase::F4_3ac, DegenerateCase::F4_4ac};

inline std::string_view case_tag(DegenerateCase c) {
    switch (c) {
        case DegenerateCase::F1_4ac: return "f1-4ac";
        case DegenerateCase::F2_2ac: return "f2-2ac";
        case DegenerateCase::F2_4ac: return "f2-4ac";
        case DegenerateCase::F3_4ac: return "f3-4ac";
        case DegenerateCase::F4_ac: return "f4-ac";
        case DegenerateCase::F4_3ac: return "f4-3ac";
        case DegenerateCase::F4_4ac: return "f4-4ac";
    }
    return "?";
}

inline std::optional<DegenerateCase> parse_case_tag(std::string_view s) {
    for (auto c : kAllDegenerateCases)
        if (case_tag(c) == s) return c;
    return std::nullopt;
}

inline Family case_family(DegenerateCase c) {
    switch (c) {
        case DegenerateCase::F1_4ac: return Family::F1;
        case DegenerateCase::F2_2ac:
        case DegenerateCase::F2_4ac: return Family::F2;
        case DegenerateCase::F3_4ac: return Family::F3;
        default: return Family::F4;
    }
}

/// The multiple m in the vanishing condition m*ac = b^2.
inline Rational case_multiplier(DegenerateCase c) {
    switch (c) {
        case DegenerateCase::F2_2ac: return 2;
        case DegenerateCase::F4_ac: return 1;
        case DegenerateCase::F4_3ac: return 3;
        default: return 4;
    }
}

/// Union cases split into two component curves instead of a parameterization.
inline bool is_union_case(DegenerateCase c) {
    return c == DegenerateCase::F2_2ac || c == DegenerateCase::F4_3ac;
}

inline bool case_holds(DegenerateCase c, const FamilyParams& p) {
    return case_multiplier(c) * p.a * p.c == p.b * p.b;
}

/// The degenerate case (a, b, c) falls into for `family`, if any. The cases of
/// a family are mutually exclusive when abc != 0.
inline std::optional<DegenerateCase> degenerate_case(Family family, const FamilyParams& p) {
    for (auto c : kAllDegenerateCases)
        if (case_family(c) == family && case_holds(c, p)) return c;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

/// (A, B) of E_i without any nonsingularity check.
inline std::pair<Rational, Rational> curve_coefficients(Family family, const FamilyParams& p) {
    const Rational &a = p.a, &b = p.b, &c = p.c;
    const Rational ac = a * c;
    const Rational b2 = b * b;
    switch (family) {
        case Family::F1:
            return {27 * a * a * b2 * c * c * (3 * ac - b2), 27 * a.pow(3) * b2 * b2 * c.pow(3) * (9 * ac - 2 * b2)};
        case Family::F2: {
            const Rational a4c4 = ac.pow(4);
            return {-3 * a4c4, a4c4 * (2 * ac * ac - 4 * ac * b2 + b2 * b2)};
        }
        case Family::F3:
            return {-3 * a * a * c.pow(6), -(a * a) * c.pow(8) * (2 * ac - b2)};
        case Family::F4: {
            const Rational a6 = a.pow(6);
            return {-3 * a6 * c * c, -a6 * (2 * ac - b2) * (ac * ac - 4 * ac * b2 + b2 * b2)};
        }
    }
    throw DomainError("unknown family");
}

/// The family discriminant; equals -(4A^3 + 27B^2) of curve_coefficients.
inline Rational paper_discriminant(Family family, const FamilyParams& p) {
    const Rational &a = p.a, &b = p.b, &c = p.c;
    const Rational ac = a * c;
    const Rational b2 = b * b;
    switch (family) {
        case Family::F1: return -531441 * a.pow(8) * b.pow(6) * c.pow(8) * (4 * ac - b2);
        case Family::F2: return 27 * ac.pow(8) * b2 * (4 * ac - b2) * (2 * ac - b2).pow(2);
        case Family::F3: return 27 * a.pow(4) * c.pow(16) * b2 * (4 * ac - b2);
        case Family::F4:
            return 27 * a.pow(12) * b2 * (4 * ac - b2) * (3 * ac - b2).pow(2) * (ac - b2).pow(2);
    }
    throw DomainError("unknown family");
}

namespace detail {

inline void require_nondegenerate(Family family, const FamilyParams& p) {
    if (auto dc = degenerate_case(family, p)) {
        throw DegenerateParameters(std::string("degenerate parameters for ") + std::string(family_name(family)) +
                                       " (case " + std::string(case_tag(*dc)) +
                                       "); use the genus-0 parameterization instead",
                                   std::string(case_tag(*dc)));
    }
}

}  // namespace detail

/// E_i for nondegenerate parameters.
inline EllipticCurve curve_for_family(Family family, const FamilyParams& p) {
    detail::require_nondegenerate(family, p);
    auto [A, B] = curve_coefficients(family, p);
    return {std::move(A), std::move(B)};
}

// ---------------------------------------------------------------------------
// Conics and the G = 0 relation
// ---------------------------------------------------------------------------

/// Coefficients (z^2, z^1, z^0) of C_i viewed as a polynomial in z.
inline std::array<Rational, 3> conic_z_coefficients(Family family, const FamilyParams& p, const Rational& y) {
    const Rational &a = p.a, &b = p.b, &c = p.c;
    const Rational y2 = y * y;
    switch (family) {
        case Family::F1:
            return {a * b * y + a * c, 2 * a * c * y, a * c * y2 + b * c * y};
        case Family::F2:
            return {a * a * y2 + a * c, -2 * a * c * y + b * c, -2 * a * c * y2 - 2 * b * c * y};
        case Family::F3:
            return {a * b * y2, 3 * a * c * y2 + c * c, -2 * c * c * y};
        case Family::F4:
            return {-a * b, 3 * a * a * y2 + 2 * a * b * y + a * c - b * b, 2 * a * b * y2 - 2 * a * c * y + 2 * b * b * y};
    }
    throw DomainError("unknown family");
}

/// C_i(y, z).
inline Rational conic_value(Family family, const FamilyParams& p, const Rational& y, const Rational& z) {
    const auto k = conic_z_coefficients(family, p, y);
    return (k[0] * z + k[1]) * z + k[2];
}

inline bool on_conic(Family family, const FamilyParams& p, const Rational& y, const Rational& z) {
    return conic_value(family, p, y, z).is_zero();
}

/// C_i as a polynomial in a, b, c, y, z.
inline MultiPoly conic_polynomial(Family family) {
    static const std::vector<std::string> vars = {"a", "b", "c", "y", "z"};
    switch (family) {
        case Family::F1: return parse_poly("a*b*y*z^2 + a*c*y^2 + 2*a*c*y*z + a*c*z^2 + b*c*y", vars);
        case Family::F2:
            return parse_poly("a^2*y^2*z^2 - 2*a*c*y^2 - 2*a*c*y*z + a*c*z^2 - 2*b*c*y + b*c*z", vars);
        case Family::F3: return parse_poly("a*b*y^2*z^2 + 3*a*c*y^2*z - 2*c^2*y + c^2*z", vars);
        case Family::F4:
            return parse_poly(
                "3*a^2*y^2*z + 2*a*b*y^2 + 2*a*b*y*z - a*b*z^2 - 2*a*c*y + a*c*z + 2*b^2*y - b^2*z", vars);
    }
    throw DomainError("unknown family");
}

/// x determined by G(x, y, z) = 0: z^2/y for F1, yz/(2y - z) otherwise.
inline Rational recover_x(Family family, const Rational& y, const Rational& z) {
    if (family == Family::F1) {
        if (y.is_zero()) throw DomainError("no finite x: y = 0");
        return z * z / y;
    }
    const Rational d = 2 * y - z;
    if (d.is_zero()) throw DomainError("no finite x: 2y - z = 0");
    return y * z / d;
}

// ---------------------------------------------------------------------------
// Birational maps
// ---------------------------------------------------------------------------

namespace detail {

inline void require_nonzero(const Rational& d, const char* what) {
    if (d.is_zero()) throw ExceptionalPoint(std::string("exceptional point: ") + what + " vanishes");
}

}  // namespace detail

/// phi_i: C_i -> E_i.
inline CurvePoint phi_forward(Family family, const FamilyParams& p, const Rational& y, const Rational& z) {
    detail::require_nondegenerate(family, p);
    if (!on_conic(family, p, y, z))
        throw DomainError("(y, z) = (" + y.to_string() + ", " + z.to_string() + ") is not on the family conic");
    const Rational &a = p.a, &b = p.b, &c = p.c;
    const Rational ac = a * c;
    const Rational b2 = b * b;
    switch (family) {
        case Family::F1: {
            const Rational d = b * y + c;
            detail::require_nonzero(d, "by + c");
            Rational X = 3 * a * b * c * (3 * ac * y + 6 * ac * z - b2 * y + 2 * b * c) / d;
            Rational Y = 27 * a * a * b * c * c *
                         (a * b * c * y * y + 3 * a * b * c * y * z - b2 * b * y * z - ac * c * y - ac * c * z +
                          b2 * c * y - b2 * c * z - b * c * c) /
                         (d * d);
            return {std::move(X), std::move(Y)};
        }
        case Family::F2: {
            detail::require_nonzero(y, "y");
            const Rational a2 = a * a;
            Rational X = c * (a2 * b * y * y * z + a2 * c * y * y + a * b * c * z + b2 * c) / (y * y);
            Rational Y = b * c * c *
                         (a2 * a * y.pow(3) * z + a2 * b * y.pow(3) + a2 * b * y * y * z + 2 * a2 * c * y * y +
                          a2 * c * y * z + a * b * c * y + a * b * c * z + b2 * c) /
                         y.pow(3);
            return {std::move(X), std::move(Y)};
        }
        case Family::F3: {
            detail::require_nonzero(y, "y");
            const Rational ab = a * b;
            Rational X = c * c * (ab * y * y * z + 2 * ac * y * y + c * c) / (y * y);
            Rational Y = c.pow(4) * (ab * y.pow(3) + ab * y * y * z + 3 * ac * y * y + c * c) / y.pow(3);
            return {std::move(X), std::move(Y)};
        }
        case Family::F4: {
            detail::require_nonzero(y, "y");
            const Rational a2 = a * a;
            const Rational tail = ac * ac - 2 * a * b2 * c + b2 * b2;
            Rational X = (2 * a2 * ac * y * y - a2 * b2 * y * y - a2 * b * c * z + a * b2 * b * z + tail) / (y * y);
            const Rational Y1 = 3 * a2 * ac * y * y - a2 * b2 * y * y + a2 * b2 * y * z - a2 * b * c * y -
                                a2 * b * c * z + a * b2 * b * y + a * b2 * b * z + tail;
            Rational Y = (ac - b2) * Y1 / y.pow(3);
            return {std::move(X), std::move(Y)};
        }
    }
    throw DomainError("unknown family");
}

/// phi_i^{-1}: E_i -> C_i. Throws ExceptionalPoint where the map is undefined.
inline ConicPoint phi_inverse(Family family, const FamilyParams& p, const CurvePoint& P) {
    const EllipticCurve E = curve_for_family(family, p);
    if (P.is_identity()) throw ExceptionalPoint("exceptional point: the identity has no preimage");
    detail::require_on_curve(E, P);
    const Rational &a = p.a, &b = p.b, &c = p.c, &X = P.X(), &Y = P.Y();
    const Rational ac = a * c;
    const Rational b2 = b * b;
    switch (family) {
        case Family::F1: {
            const Rational d = X - 9 * ac * ac + 3 * a * b2 * c;
            detail::require_nonzero(d, "X - 9a^2c^2 + 3ab^2c");
            Rational y = -c *
                         (108 * a.pow(3) * b2 * c.pow(3) - 18 * ac * ac * b2 * b2 + 9 * X * ac * ac -
                          3 * X * a * b2 * c + 6 * Y * ac + X * X) /
                         (b * d * d);
            Rational z = -(9 * ac * ac * b2 + 3 * X * ac + Y) / (3 * b * a * d);
            return {std::move(y), std::move(z)};
        }
        case Family::F2: {
            const Rational a4c4 = ac.pow(4);
            const Rational a3c3 = ac.pow(3);
            const Rational dy = a4c4 - 2 * a3c3 * b2 - 2 * X * ac * ac + X * X;
            const Rational dz = a4c4 + 4 * a3c3 * b2 - 2 * X * ac * ac + X * X;
            detail::require_nonzero(dy, "a^4c^4 - 2a^3b^2c^3 - 2Xa^2c^2 + X^2");
            detail::require_nonzero(dz, "a^4c^4 + 4a^3b^2c^3 - 2Xa^2c^2 + X^2");
            Rational y = b * c * (-a3c3 + ac * ac * b2 + X * ac + Y) / dy;
            Rational z = 2 * b * c * (-2 * a3c3 - ac * ac * b2 + 2 * X * ac + Y) / dz;
            return {std::move(y), std::move(z)};
        }
        case Family::F3: {
            const Rational c3 = c.pow(3);
            const Rational d1 = X + a * c3;
            const Rational d2 = X - 2 * a * c3;
            detail::require_nonzero(d1, "X + ac^3");
            detail::require_nonzero(d2, "X - 2ac^3");
            const Rational abc4 = a * b * c.pow(4);
            Rational y = c * c * (Y + abc4) / (d1 * d2);
            Rational z = 2 * c * c * (Y - abc4) / (d1 * d1);
            return {std::move(y), std::move(z)};
        }
        case Family::F4: {
            const Rational a2 = a * a;
            const Rational a3 = a2 * a;
            const Rational d1 = a3 * c - 2 * a2 * b2 + X;
            const Rational d2 = -2 * a3 * c + a2 * b2 + X;
            detail::require_nonzero(d1, "a^3c - 2a^2b^2 + X");
            detail::require_nonzero(d2, "-2a^3c + a^2b^2 + X");
            const Rational m = ac - b2;
            Rational y = -m * (-2 * a3 * a * b * c + a3 * b2 * b + X * a * b - Y) / (d1 * d2);
            Rational z = -2 * m * (-a3 * a * b * c - a3 * b2 * b + 2 * X * a * b - Y) / (d1 * d1);
            return {std::move(y), std::move(z)};
        }
    }
    throw DomainError("unknown family");
}

// ---------------------------------------------------------------------------
// Seed points and closed-form multiples
// ---------------------------------------------------------------------------

/// F1: [P0, P1]; F2: [P]; F3: [P]; F4: [P0, P1].
inline std::vector<CurvePoint> seed_points(Family family, const FamilyParams& p) {
    detail::require_nondegenerate(family, p);
    const Rational &a = p.a, &b = p.b, &c = p.c;
    const Rational ac = a * c;
    const Rational b2 = b * b;
    switch (family) {
        case Family::F1:
            return {{-3 * a * b2 * c, 0}, {6 * a * b2 * c, 27 * ac * ac * b2}};
        case Family::F2:
            return {{-(ac * ac), -(ac * ac) * (2 * ac - b2)}};
        case Family::F3:
            return {{2 * a * c.pow(3), -a * b * c.pow(4)}};
        case Family::F4: {
            const Rational a2 = a * a;
            return {{2 * a2 * ac - a2 * b2, 0}, {-a2 * ac, a2 * a * b * (3 * ac - b2)}};
        }
    }
    throw DomainError("unknown family");
}

/// The seed whose multiples are walked for solutions and certified for rank:
/// P1 for F1/F4, P for F2/F3.
inline CurvePoint generator_seed(Family family, const FamilyParams& p) {
    auto seeds = seed_points(family, p);
    return seeds.back();
}

/// Named multiples with closed forms. For F1, P3 and P4 are [-3]P1 and
/// [-4]P1, P2 = [2]P1 and P5..P8 = -(P0 + P1..P4). F4's P2 is [2]P1.
enum class MultipleTag { P2, P3, P4, P5, P6, P7, P8, Double, Triple };

inline std::string_view multiple_name(MultipleTag t) {
    switch (t) {
        case MultipleTag::P2: return "P2";
        case MultipleTag::P3: return "P3";
        case MultipleTag::P4: return "P4";
        case MultipleTag::P5: return "P5";
        case MultipleTag::P6: return "P6";
        case MultipleTag::P7: return "P7";
        case MultipleTag::P8: return "P8";
        case MultipleTag::Double: return "[2]P";
        case MultipleTag::Triple: return "[3]P";
    }
    return "?";
}

inline std::vector<MultipleTag> multiple_tags(Family family) {
    switch (family) {
        case Family::F1:
            return {MultipleTag::P2, MultipleTag::P3, MultipleTag::P4, MultipleTag::P5,
                    MultipleTag::P6, MultipleTag::P7, MultipleTag::P8};
        case Family::F2: return {MultipleTag::Double, MultipleTag::Triple};
        case Family::F3: return {MultipleTag::Double};
        case Family::F4: return {MultipleTag::P2};
    }
    return {};
}

namespace detail {

inline void require_tag(Family family, MultipleTag tag) {
    const auto tags = multiple_tags(family);
    if (std::find(tags.begin(), tags.end(), tag) == tags.end())
        throw DomainError(std::string("label ") + std::string(multiple_name(tag)) + " is not defined for " +
                          std::string(family_name(family)));
}

inline Rational checked_div(const Rational& n, const Rational& d) {
    if (d.is_zero()) throw DomainError("closed form undefined at these parameters");
    return n / d;
}

}  // namespace detail

/// Closed-form coordinates of a named multiple. These are test oracles; the
/// runtime path is multiple_by_group_law.
inline CurvePoint expected_multiple(Family family, const FamilyParams& p, MultipleTag tag) {
    detail::require_nondegenerate(family, p);
    detail::require_tag(family, tag);
    const Rational &a = p.a, &b = p.b, &c = p.c;
    const Rational ac = a * c;
    const Rational b2 = b * b;
    const auto pw = [](const Rational& q, long e) { return q.pow(e); };
    using detail::checked_div;

    if (family == Family::F1) {
        const Rational b4 = b2 * b2;
        const Rational q4 = ac * ac + 4 * ac * b2 - b4;           // a^2c^2 + 4ab^2c - b^4
        const Rational q6 = ac * ac - 6 * ac * b2 + b4;           // a^2c^2 - 6ab^2c + b^4
        const Rational w = pw(ac, 4) + 24 * pw(ac, 3) * b2 - 22 * ac * ac * b4 + 16 * ac * b4 * b2 - 3 * b4 * b4;
        const Rational d8 = pw(ac, 4) - 20 * pw(ac, 3) * b2 + 6 * ac * ac * b4 - 4 * ac * b4 * b2 + b4 * b4;
        const auto X4 = [&] {
            return pw(ac, 7) - 45 * pw(ac, 6) * b2 + 365 * pw(ac, 5) * b4 - 121 * pw(ac, 4) * pw(b, 6) +
                   307 * pw(ac, 3) * pw(b, 8) - 151 * ac * ac * pw(b, 10) + 31 * ac * pw(b, 12) - 3 * pw(b, 14);
        };
        // Y4 and Y8 share this polynomial.
        const auto Y4 = [&] {
            return pw(ac, 8) + 80 * pw(ac, 7) * b2 - 180 * pw(ac, 6) * b4 + 656 * pw(ac, 5) * pw(b, 6) -
                   282 * pw(ac, 4) * pw(b, 8) - 80 * pw(ac, 3) * pw(b, 10) + 76 * ac * ac * pw(b, 12) -
                   16 * ac * pw(b, 14) + pw(b, 16);
        };
        const auto X8 = [&] {
            return 47 * pw(ac, 8) + 328 * pw(ac, 7) * b2 - 460 * pw(ac, 6) * b4 - 1096 * pw(ac, 5) * pw(b, 6) +
                   1290 * pw(ac, 4) * pw(b, 8) - 392 * pw(ac, 3) * pw(b, 10) + 20 * ac * ac * pw(b, 12) +
                   8 * ac * pw(b, 14) - pw(b, 16);
        };
        switch (tag) {
            case MultipleTag::P2:
                return {3 * (3 * ac - b2) * (ac - 3 * b2) / 4, -27 * (ac - b2) * q4 / 8};
            case MultipleTag::P3:
                return {checked_div(6 * a * b2 * c * (13 * pw(ac, 4) + 24 * pw(ac, 3) * b2 - 22 * ac * ac * b4 + b4 * b4),
                                    q6 * q6),
                        checked_div(-27 * ac * ac * b2 * (3 * ac - b2) * (ac + b2) * w, pw(q6, 3))};
            case MultipleTag::P4:
                return {checked_div(3 * (3 * ac - b2) * X4(), 16 * pw(ac - b2, 2) * q4 * q4),
                        checked_div(27 * d8 * Y4(), 64 * pw(ac - b2, 3) * pw(q4, 3))};
            case MultipleTag::P5:
                return {3 * ac * (3 * ac - b2), 27 * pw(ac, 3)};
            case MultipleTag::P6:
                return {checked_div(3 * a * b2 * c * (11 * ac * ac + 2 * ac * b2 - b4), pw(ac - b2, 2)),
                        checked_div(-54 * q4 * pw(ac, 3) * b2, pw(ac - b2, 3))};
            case MultipleTag::P7:
                return {checked_div(3 * ac *
                                        (3 * pw(ac, 5) - 45 * pw(ac, 4) * b2 + 102 * pw(ac, 3) * b4 -
                                         34 * ac * ac * pw(b, 6) + 7 * ac * pw(b, 8) - pw(b, 10)),
                                    pw(ac + b2, 2) * pw(3 * ac - b2, 2)),
                        checked_div(-27 * pw(ac, 3) * w * q6, pw(3 * ac - b2, 3) * pw(ac + b2, 3))};
            case MultipleTag::P8:
                return {checked_div(3 * a * b2 * c * X8(), d8 * d8),
                        checked_div(108 * pw(ac, 3) * b2 * (ac - b2) * q4 * Y4(), pw(d8, 3))};
            default: break;
        }
    } else if (family == Family::F2) {
        const Rational a2c2 = ac * ac;
        if (tag == MultipleTag::Double) return {2 * a2c2, a2c2 * (2 * ac - b2)};
        return {Rational(7, 9) * a2c2 - Rational(16, 9) * ac * b2 + Rational(4, 9) * b2 * b2,
                -(2 * ac - b2) * (5 * a2c2 - 32 * ac * b2 + 8 * b2 * b2) / 27};
    } else if (family == Family::F3) {
        return {a * c.pow(3) * (81 * ac - 16 * b2) / (4 * b2),
                c.pow(4) * a * (729 * ac * ac - 216 * ac * b2 + 8 * b2 * b2) / (8 * b2 * b)};
    } else {
        const Rational a3 = a * a * a;
        return {2 * a3 * c, -3 * c * b * a3 * a + a3 * b2 * b};
    }
    throw DomainError("unreachable");
}

/// The same named multiples computed with the group law.
inline CurvePoint multiple_by_group_law(Family family, const FamilyParams& p, MultipleTag tag) {
    detail::require_tag(family, tag);
    const EllipticCurve E = curve_for_family(family, p);
    const auto seeds = seed_points(family, p);
    const CurvePoint& g = seeds.back();
    auto mul = [&](std::int64_t n) { return scalar_mul(E, n, g); };
    auto reflect_sum = [&](const CurvePoint& q) { return add(E, seeds.front(), q).negated(); };
    switch (tag) {
        case MultipleTag::P2: return mul(2);
        case MultipleTag::P3: return mul(-3);
        case MultipleTag::P4: return mul(-4);
        case MultipleTag::P5: return reflect_sum(g);
        case MultipleTag::P6: return reflect_sum(mul(2));
        case MultipleTag::P7: return reflect_sum(mul(-3));
        case MultipleTag::P8: return reflect_sum(mul(-4));
        case MultipleTag::Double: return mul(2);
        case MultipleTag::Triple: return mul(3);
    }
    throw DomainError("unreachable");
}

/// F1 points P0..P8 by the group law.
inline std::array<CurvePoint, 9> f1_points(const FamilyParams& p) {
    const auto seeds = seed_points(Family::F1, p);
    std::array<CurvePoint, 9> pts;
    pts[0] = seeds[0];
    pts[1] = seeds[1];
    const MultipleTag tags[] = {MultipleTag::P2, MultipleTag::P3, MultipleTag::P4, MultipleTag::P5,
                                MultipleTag::P6, MultipleTag::P7, MultipleTag::P8};
    for (int i = 0; i < 7; ++i) pts[static_cast<std::size_t>(i + 2)] = multiple_by_group_law(Family::F1, p, tags[i]);
    return pts;
}

struct Collision {
    int i;
    int j;
    bool collides;
    friend bool operator==(const Collision&, const Collision&) = default;
};

/// X(Pi) = X(Pj) for all 0 <= i < j <= 8 on E_1. Two identities count as a
/// collision; an identity never collides with an affine point.
inline std::vector<Collision> collision_table_check(const FamilyParams& p) {
    const auto pts = f1_points(p);
    std::vector<Collision> out;
    for (int i = 0; i < 9; ++i) {
        for (int j = i + 1; j < 9; ++j) {
            const auto& l = pts[static_cast<std::size_t>(i)];
            const auto& r = pts[static_cast<std::size_t>(j)];
            bool same = false;
            if (l.is_identity() || r.is_identity()) {
                same = l.is_identity() && r.is_identity();
            } else {
                same = l.X() == r.X();
            }
            out.push_back({i, j, same});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Special k and rank-zero cases
// ---------------------------------------------------------------------------

inline std::vector<Rational> listed_special_k(Family family) {
    switch (family) {
        case Family::F1: return {-1, 1, 3};
        case Family::F2: return {};
        case Family::F3: return {Rational(27, 8), Rational(27, 4)};
        case Family::F4: return {Rational(3, 2)};
    }
    return {};
}

/// k with b^2 = k*ac when k is one of the family's rank-zero values.
inline std::optional<Rational> special_k(Family family, const FamilyParams& p) {
    const Rational k = p.b * p.b / (p.a * p.c);
    for (const auto& cand : listed_special_k(family))
        if (cand == k) return k;
    return std::nullopt;
}

namespace detail {

inline void require_listed_k(Family family, const Rational& k) {
    const auto ks = listed_special_k(family);
    if (std::find(ks.begin(), ks.end(), k) == ks.end())
        throw DomainError("k = " + k.to_string() + " is not a rank-zero case of " + std::string(family_name(family)));
}

}  // namespace detail

/// The reduced curve E_(k) of a rank-zero case.
inline EllipticCurve reduced_curve(Family family, const Rational& k) {
    detail::require_listed_k(family, k);
    switch (family) {
        case Family::F1: return {-27 * (k - 3) / k.pow(3), -27 * (2 * k - 9) / k.pow(4)};
        case Family::F3: return {-3 / (k * k), (k - 2) / k.pow(3)};
        case Family::F4: return {Rational(-64, 243), Rational(704, 19683)};
        default: break;
    }
    throw DomainError("unreachable");
}

/// E_(k) together with the scaling U = Y / u_div, V = X / v_div from E_i.
struct ReducedModel {
    Rational k;
    EllipticCurve curve;
    Rational u_div;
    Rational v_div;

    CurvePoint to_reduced(const CurvePoint& P) const {
        if (P.is_identity()) return P;
        return {P.X() / v_div, P.Y() / u_div};
    }
    CurvePoint from_reduced(const CurvePoint& Q) const {
        if (Q.is_identity()) return Q;
        return {Q.X() * v_div, Q.Y() * u_div};
    }
};

inline ReducedModel reduce_special(Family family, const FamilyParams& p) {
    auto k = special_k(family, p);
    if (!k) throw DomainError(std::string("no special k for these parameters of ") + std::string(family_name(family)));
    const Rational &b = p.b, &c = p.c;
    Rational u;  // V = X/u^2, U = Y/u^3
    switch (family) {
        case Family::F1: u = b * b; break;
        case Family::F3: u = b * c; break;
        case Family::F4: u = b.pow(3) / c; break;
        default: throw DomainError("unreachable");
    }
    return {*k, reduced_curve(family, *k), u.pow(3), u * u};
}

/// Complete rational-point list of E_(k) when one is known; `listed` is false
/// for the rank-zero cases whose points are not catalogued.
struct Catalog {
    bool listed;
    std::vector<CurvePoint> points;
};

inline Catalog rank_zero_catalog(Family family, const Rational& k) {
    detail::require_listed_k(family, k);
    if (family != Family::F1) return {false, {}};
    if (k == Rational(-1)) return {true, {{3, 0}, {-6, 27}, {-6, -27}, {12, 27}, {12, -27}}};
    if (k == Rational(1)) return {true, {{-3, 0}, {6, 27}, {6, -27}}};
    return {true, {{-1, 0}, {0, 1}, {0, -1}, {2, 3}, {2, -3}}};
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

struct PositiveRankCertified {
    CurvePoint witness;
};
struct RankZeroCatalog {
    Rational k;
};
struct RankUndetermined {};
using RankStatus = std::variant<PositiveRankCertified, RankZeroCatalog, RankUndetermined>;

struct NonSingular {
    EllipticCurve curve;
    RankStatus rank_status;
};
struct Degenerate {
    DegenerateCase which;
};
using Classification = std::variant<NonSingular, Degenerate>;

/// Positive rank is reported only with a seed certified non-torsion, rank 0
/// only for the listed k; everything else is undetermined.
inline Classification classify(Family family, const FamilyParams& p) {
    if (auto dc = degenerate_case(family, p)) return Degenerate{*dc};
    EllipticCurve E = curve_for_family(family, p);
    if (auto k = special_k(family, p)) return NonSingular{std::move(E), RankZeroCatalog{*k}};
    const CurvePoint seed = generator_seed(family, p);
    if (!torsion_order(E, seed)) return NonSingular{std::move(E), PositiveRankCertified{seed}};
    return NonSingular{std::move(E), RankUndetermined{}};
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// f of the family at u. Throws DomainError for F3 at u = 0.
inline Rational family_f(Family family, const FamilyParams& p, const Rational& u) {
    const Rational quad = (p.a * u + p.b) * u + p.c;
    switch (family) {
        case Family::F1:
        case Family::F2: return quad;
        case Family::F3:
            if (u.is_zero()) throw DomainError("f undefined at 0");
            return quad / u;
        case Family::F4: return u * quad;
    }
    throw DomainError("unknown family");
}

inline Rational family_g(Family family, const Rational& x, const Rational& y, const Rational& z) {
    if (family == Family::F1) return x * y - z * z;
    return (x + y) * z - 2 * x * y;
}

struct Verdict {
    bool valid;
    std::string reason;
    explicit operator bool() const noexcept { return valid; }
};

/// Both equations of the system, exactly.
inline Verdict verify_solution(Family family, const FamilyParams& p, const Rational& x, const Rational& y,
                               const Rational& z) {
    if (family == Family::F3 && (x.is_zero() || y.is_zero() || z.is_zero()))
        return {false, "f undefined at 0"};
    if (!family_g(family, x, y, z).is_zero()) return {false, "G(x, y, z) != 0"};
    const Rational gf = family_g(family, family_f(family, p, x), family_f(family, p, y), family_f(family, p, z));
    if (!gf.is_zero()) return {false, "G(f(x), f(y), f(z)) != 0"};
    return {true, ""};
}

inline Verdict verify_solution(Family family, const FamilyParams& p, const Solution& s) {
    return verify_solution(family, p, s.x, s.y, s.z);
}

struct GenericVerdict {
    bool on_g;   // G(x, y, z) = 0
    bool on_gf;  // G(f(x), f(y), f(z)) = 0
};

/// Both conditions for an arbitrary G in x, y, z and univariate f.
inline GenericVerdict evaluate_generic(const MultiPoly& G, const MultiPoly& f, const Rational& x, const Rational& y,
                                       const Rational& z) {
    for (const auto& v : G.variables())
        if (v != "x" && v != "y" && v != "z")
            throw DomainError("G may only use the variables x, y, z (found '" + v + "')");
    if (f.variables().size() > 1) throw DomainError("f must be univariate");
    const auto f_at = [&](const Rational& u) {
        std::map<std::string, Rational> env;
        if (!f.variables().empty()) env.emplace(f.variables().front(), u);
        return f.eval(env);
    };
    const auto g_at = [&](const Rational& u, const Rational& v, const Rational& w) {
        return G.eval({{"x", u}, {"y", v}, {"z", w}});
    };
    return {g_at(x, y, z).is_zero(), g_at(f_at(x), f_at(y), f_at(z)).is_zero()};
}

/// Membership in V(G o F): G(f(x), f(y), f(z)) = 0.
inline bool verify_generic(const MultiPoly& G, const MultiPoly& f, const Rational& x, const Rational& y,
                           const Rational& z) {
    return evaluate_generic(G, f, x, y, z).on_gf;
}

/// (G, F)-point: G(x, y, z) = 0 and G(f(x), f(y), f(z)) = 0.
inline bool is_gf_point(const MultiPoly& G, const MultiPoly& f, const Rational& x, const Rational& y,
                        const Rational& z) {
    const auto v = evaluate_generic(G, f, x, y, z);
    return v.on_g && v.on_gf;
}

/// For an F1 solution, checks f_k(x) f_k(y) = f_k(z)^2 with
/// f_k(u) = u^kexp (a u^2 + b u + c).
inline bool verify_remark_xk(const FamilyParams& p, long kexp, const Rational& x, const Rational& y,
                             const Rational& z) {
    if (kexp < 0 && (x.is_zero() || y.is_zero() || z.is_zero()))
        throw DomainError("zero coordinate with negative exponent");
    const auto fk = [&](const Rational& u) { return u.pow(kexp) * ((p.a * u + p.b) * u + p.c); };
    const Rational fz = fk(z);
    return fk(x) * fk(y) == fz * fz;
}

// ---------------------------------------------------------------------------
// Symbolic factorization identities
// ---------------------------------------------------------------------------

/// M * (G o F with x eliminated) - kappa * (y - z)^2 * C_i, expanded over
/// a, b, c, y, z. Zero iff the factorization identity holds:
///   F1: y^2 GF                 = (y - z)^2 C1
///   F2: (2y - z)^2 GF          = 2 (y - z)^2 C2
///   F3: y^2 z^2 (2y - z) GF    = -2 (y - z)^2 C3
///   F4: (2y - z)^3 GF          = 2 y^2 z^2 (y - z)^2 C4
inline MultiPoly identity_residual(Family family) {
    const auto v = [](const char* n) { return MultiPoly::variable(n); };
    const MultiPoly a = v("a"), b = v("b"), c = v("c"), x = v("x"), y = v("y"), z = v("z");
    const auto quad = [&](const MultiPoly& u) { return a * u * u + b * u + c; };
    const MultiPoly two = MultiPoly::constant(2);
    const MultiPoly ymz2 = (y - z) * (y - z);
    const MultiPoly C = conic_polynomial(family);

    if (family == Family::F1) {
        const MultiPoly gf = quad(x) * quad(y) - quad(z) * quad(z);
        return gf.substitute_ratio("x", z * z, y, 2) - ymz2 * C;
    }
    const MultiPoly hx_num = y * z;
    const MultiPoly hx_den = two * y - z;
    switch (family) {
        case Family::F2: {
            const MultiPoly gf = (quad(x) + quad(y)) * quad(z) - two * quad(x) * quad(y);
            return gf.substitute_ratio("x", hx_num, hx_den, 2) - two * ymz2 * C;
        }
        case Family::F3: {
            // xyz * GF with f = N(u)/u, N the quadratic.
            const MultiPoly cleared = (y * quad(x) + x * quad(y)) * quad(z) - two * z * quad(x) * quad(y);
            return cleared.substitute_ratio("x", hx_num, hx_den, 2) - MultiPoly::constant(-2) * ymz2 * C;
        }
        case Family::F4: {
            const auto cub = [&](const MultiPoly& u) { return u * quad(u); };
            const MultiPoly gf = (cub(x) + cub(y)) * cub(z) - two * cub(x) * cub(y);
            return gf.substitute_ratio("x", hx_num, hx_den, 3) - two * y * y * z * z * ymz2 * C;
        }
        default: break;
    }
    throw DomainError("unreachable");
}

inline bool identity_check(Family family) { return identity_residual(family).is_zero(); }

// ---------------------------------------------------------------------------
// Degenerate cases: parameterizations and unions
// ---------------------------------------------------------------------------

/// Left side of the case's defining equation at (y, z); for union cases the
/// product of both components.
inline Rational degenerate_equation_value(DegenerateCase dc, const FamilyParams& p, const Rational& y,
                                          const Rational& z) {
    const Rational &b = p.b, &c = p.c;
    const Rational b2 = b * b, c2 = c * c, c3 = c2 * c;
    const Rational y2 = y * y, z2 = z * z;
    switch (dc) {
        case DegenerateCase::F1_4ac:
            return b2 * y * z2 + b * c * y2 + 2 * b * c * y * z + b * c * z2 + 4 * c2 * y;
        case DegenerateCase::F2_4ac:
            return b2 * b * y2 * z2 - 8 * b * c2 * y2 - 8 * b * c2 * y * z + 4 * b * c2 * z2 - 32 * c3 * y +
                   16 * c3 * z;
        case DegenerateCase::F3_4ac:
            return b2 * b * y2 * z2 + 3 * b2 * c * y2 * z - 8 * c3 * y + 4 * c3 * z;
        case DegenerateCase::F4_ac:
            return 3 * b * y2 * z + 2 * c * y2 + 2 * c * y * z - c * z2;
        case DegenerateCase::F4_4ac:
            return 3 * b2 * y2 * z + 8 * b * c * y2 + 8 * b * c * y * z - 4 * b * c * z2 + 24 * c2 * y - 12 * c2 * z;
        case DegenerateCase::F2_2ac:
            return (b * z + 2 * c) * (b2 * y2 * z - 2 * b * c * y2 - 4 * c2 * y + 2 * c2 * z);
        case DegenerateCase::F4_3ac:
            return (b * z + 2 * c) * (b * y2 + 2 * c * y - c * z);
    }
    throw DomainError("unknown case");
}

namespace detail {

inline void require_case(Family family, DegenerateCase dc, const FamilyParams& p) {
    if (case_family(dc) != family)
        throw DomainError(std::string("case ") + std::string(case_tag(dc)) + " does not belong to " +
                          std::string(family_name(family)));
    if (!case_holds(dc, p))
        throw DomainError(std::string("parameters do not satisfy case ") + std::string(case_tag(dc)));
}

inline Rational param_div(const Rational& n, const Rational& d) {
    if (d.is_zero()) throw ExceptionalPoint("excluded parameter: denominator vanishes");
    return n / d;
}

}  // namespace detail

/// Genus-0 parameterization of a degenerate case at parameter t, completed
/// with x from G = 0. Throws ExceptionalPoint at excluded t.
inline Solution degenerate_parameterize(Family family, DegenerateCase dc, const FamilyParams& p, const Rational& t) {
    detail::require_case(family, dc, p);
    if (is_union_case(dc))
        throw DomainError(std::string("case ") + std::string(case_tag(dc)) +
                          " is a union of two curves; use degenerate_union");
    using detail::param_div;
    const Rational &b = p.b, &c = p.c;
    const Rational bt = b * t, ct = c * t;
    Rational y, z;
    switch (dc) {
        case DegenerateCase::F1_4ac: {
            const Rational d1 = 2 * ct + b;
            y = param_div(-b * ct * t, d1 * d1);
            z = param_div(-(bt + 4 * ct + 2 * b) * ct, d1 * (bt + 2 * ct + b));
            break;
        }
        case DegenerateCase::F2_4ac: {
            const Rational b2 = b * b, c2 = c * c, t2 = t * t;
            y = param_div(24 * ct * (2 * bt - 12 * ct - c),
                          68 * b2 * t2 + 48 * b * c * t2 - 144 * c2 * t2 + 4 * b * ct - 24 * c2 * t - c2);
            z = param_div(-48 * ct * (8 * bt - 12 * ct - c),
                          100 * b2 * t2 - 192 * b * c * t2 + 144 * c2 * t2 - 16 * b * ct + 24 * c2 * t + c2);
            break;
        }
        case DegenerateCase::F3_4ac: {
            const Rational l17 = 17 * bt + 6 * ct + b;
            const Rational l9 = 9 * bt + 6 * ct + b;
            const Rational l5 = 5 * bt + 6 * ct + b;
            y = param_div(8 * ct * l9, l17 * l5);
            z = param_div(-l17 * l9 * c, 16 * b.pow(3) * t * t);
            break;
        }
        case DegenerateCase::F4_ac: {
            const Rational q = 2 * t * t + 6 * t + 3;
            y = param_div(-c * q, 3 * (t + 1) * b);
            z = param_div(-c * q, 3 * b * (t + 1) * (t + 1));
            break;
        }
        case DegenerateCase::F4_4ac: {
            const Rational l = bt + 2 * ct + b;
            y = param_div(-2 * ct * (bt + 6 * ct + 3 * b), 3 * l * (2 * ct + b));
            z = param_div(-4 * (2 * bt + 6 * ct + 3 * b) * ct, 3 * l * l);
            break;
        }
        default: throw DomainError("unreachable");
    }
    Rational x;
    try {
        x = recover_x(family, y, z);
    } catch (const DomainError& e) {
        throw ExceptionalPoint(std::string("excluded parameter: ") + e.what());
    }
    if (family == Family::F3 && (x.is_zero() || y.is_zero() || z.is_zero()))
        throw ExceptionalPoint("excluded parameter: zero coordinate (f undefined at 0)");
    Solution s{std::move(x), std::move(y), std::move(z)};
    if (!verify_solution(family, p, s)) throw Error("internal: parameterized point fails verification");
    return s;
}

/// z-values of both components of a union case at y: the constant branch
/// z = -2c/b first, then the y-dependent branch.
inline std::vector<Rational> degenerate_union(Family family, DegenerateCase dc, const FamilyParams& p,
                                              const Rational& y) {
    detail::require_case(family, dc, p);
    if (!is_union_case(dc))
        throw DomainError(std::string("case ") + std::string(case_tag(dc)) + " is not a union case");
    const Rational &b = p.b, &c = p.c;
    std::vector<Rational> zs{-2 * c / b};
    if (dc == DegenerateCase::F2_2ac) {
        // b^2 y^2 + 2c^2 > 0, so this branch is defined for every y.
        zs.push_back(2 * c * y * (b * y + 2 * c) / (b * b * y * y + 2 * c * c));
    } else {
        zs.push_back(y * (b * y + 2 * c) / c);
    }
    return zs;
}

}  // namespace gfp
