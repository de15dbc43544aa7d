#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "gfpoints/errors.hpp"
#include "gfpoints/rational.hpp"

namespace gfp {

/// Largest order of a rational torsion point on an elliptic curve over Q.
inline constexpr int kMazurBound = 12;

/// -16(4A^3 + 27B^2).
inline Rational discriminant_standard(const Rational& A, const Rational& B) {
    return Rational(-16) * (Rational(4) * A.pow(3) + Rational(27) * B * B);
}

/// Y^2 = X^3 + AX + B over Q. Construction rejects singular curves.
class EllipticCurve {
public:
    EllipticCurve(Rational A, Rational B) : A_(std::move(A)), B_(std::move(B)) {
        if (discriminant_standard(A_, B_).is_zero())
            throw DomainError("singular curve: 4A^3 + 27B^2 = 0 for A=" + A_.to_string() +
                              ", B=" + B_.to_string());
    }

    const Rational& A() const noexcept { return A_; }
    const Rational& B() const noexcept { return B_; }

    Rational discriminant() const { return discriminant_standard(A_, B_); }
    Rational rhs(const Rational& X) const { return X * X * X + A_ * X + B_; }

    friend bool operator==(const EllipticCurve&, const EllipticCurve&) = default;

private:
    Rational A_;
    Rational B_;
};

/// The identity, or an affine pair (X, Y). Carries no curve.
class CurvePoint {
public:
    CurvePoint() = default;  // identity
    CurvePoint(Rational X, Rational Y) : xy_(std::in_place, std::move(X), std::move(Y)) {}

    static CurvePoint identity() { return {}; }

    bool is_identity() const noexcept { return !xy_.has_value(); }
    const Rational& X() const { return require().first; }
    const Rational& Y() const { return require().second; }

    CurvePoint negated() const {
        if (is_identity()) return {};
        return {xy_->first, -xy_->second};
    }

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
    // Identity sorts first; affine points by (X, Y).
    friend std::strong_ordering operator<=>(const CurvePoint& l, const CurvePoint& r) {
        if (l.is_identity() || r.is_identity())
            return r.is_identity() <=> l.is_identity();
        if (auto c = l.xy_->first <=> r.xy_->first; c != 0) return c;
        return l.xy_->second <=> r.xy_->second;
    }

    friend std::ostream& operator<<(std::ostream& os, const CurvePoint& p) {
        if (p.is_identity()) return os << "O";
        return os << "(" << p.X() << ", " << p.Y() << ")";
    }

private:
    const std::pair<Rational, Rational>& require() const {
        if (!xy_) throw DomainError("identity has no affine coordinates");
        return *xy_;
    }

    std::optional<std::pair<Rational, Rational>> xy_;
};

inline bool on_curve(const EllipticCurve& E, const CurvePoint& p) {
    if (p.is_identity()) return true;
    return p.Y() * p.Y() == E.rhs(p.X());
}

namespace detail {

inline void require_on_curve(const EllipticCurve& E, const CurvePoint& p) {
    if (!on_curve(E, p)) {
        std::ostringstream os;
        os << "point " << p << " is not on Y^2 = X^3 + " << E.A() << "X + " << E.B();
        throw DomainError(os.str());
    }
}

// Chord-tangent sum; inputs are assumed to lie on E.
inline CurvePoint add_unchecked(const EllipticCurve& E, const CurvePoint& p, const CurvePoint& q) {
    if (p.is_identity()) return q;
    if (q.is_identity()) return p;
    Rational slope;
    if (p.X() == q.X()) {
        if (p.Y() != q.Y() || p.Y().is_zero()) return {};
        slope = (Rational(3) * p.X() * p.X() + E.A()) / (Rational(2) * p.Y());
    } else {
        slope = (q.Y() - p.Y()) / (q.X() - p.X());
    }
    Rational x3 = slope * slope - p.X() - q.X();
    Rational y3 = slope * (p.X() - x3) - p.Y();
    return {std::move(x3), std::move(y3)};
}

inline CurvePoint scalar_mul_unchecked(const EllipticCurve& E, std::int64_t n, const CurvePoint& p) {
    CurvePoint base = n < 0 ? p.negated() : p;
    std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    CurvePoint acc;
    while (k != 0) {
        if (k & 1U) acc = add_unchecked(E, acc, base);
        k >>= 1U;
        if (k != 0) base = add_unchecked(E, base, base);
    }
    return acc;
}

}  // namespace detail

/// Group law. Throws DomainError if either point is off the curve.
inline CurvePoint add(const EllipticCurve& E, const CurvePoint& p, const CurvePoint& q) {
    detail::require_on_curve(E, p);
    detail::require_on_curve(E, q);
    return detail::add_unchecked(E, p, q);
}

/// [n]p by double-and-add; negative n multiplies -p.
inline CurvePoint scalar_mul(const EllipticCurve& E, std::int64_t n, const CurvePoint& p) {
    detail::require_on_curve(E, p);
    return detail::scalar_mul_unchecked(E, n, p);
}

/// Smallest n in 1..12 with [n]p = O. An empty result certifies infinite order
/// by Mazur's bound on rational torsion.
inline std::optional<int> torsion_order(const EllipticCurve& E, const CurvePoint& p) {
    detail::require_on_curve(E, p);
    CurvePoint acc = p;
    for (int n = 1; n <= kMazurBound; ++n) {
        if (acc.is_identity()) return n;
        acc = detail::add_unchecked(E, acc, p);
    }
    return std::nullopt;
}

}  // namespace gfp
