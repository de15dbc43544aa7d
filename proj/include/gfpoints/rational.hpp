#pragma once

/*
 * Exact rational numbers over GMP integers.
 *
 * Every value is kept in canonical form: denominator > 0, gcd(|num|, den) = 1,
 * and zero is 0/1. Equality and ordering are therefore structural.
 */

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "gfpoints/errors.hpp"

namespace gfp {

using Integer = mpz_class;

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(int v) : num_(v), den_(1) {}   // NOLINT(google-explicit-constructor)
    Rational(const Integer& v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)

    /// num/den reduced to canonical form. Throws DivisionByZero when den = 0.
    Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw DivisionByZero();
        canonicalize();
    }

    const Integer& num() const noexcept { return num_; }
    const Integer& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }
    int sign() const noexcept { return sgn(num_); }

    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }

    Rational& operator+=(const Rational& o) {
        if (den_ == o.den_) {
            num_ += o.num_;
        } else {
            num_ = num_ * o.den_ + o.num_ * den_;
            den_ *= o.den_;
        }
        canonicalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        canonicalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw DivisionByZero();
        Integer n = num_ * o.den_;
        Integer d = den_ * o.num_;
        num_ = std::move(n);
        den_ = std::move(d);
        canonicalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rational inverse() const {
        if (num_ == 0) throw DivisionByZero();
        return Rational(den_, num_);
    }

    Rational abs() const {
        Rational r = *this;
        r.num_ = ::abs(r.num_);
        return r;
    }

    /// Integer power; negative exponents invert (0^-n throws DivisionByZero).
    Rational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Rational r;
        mpz_pow_ui(r.num_.get_mpz_t(), num_.get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(r.den_.get_mpz_t(), den_.get_mpz_t(), static_cast<unsigned long>(e));
        return r;
    }

    /// "p/q", or "p" when q = 1.
    std::string to_string() const {
        if (den_ == 1) return num_.get_str();
        return num_.get_str() + "/" + den_.get_str();
    }

    /// Parses "[-]digits[/digits]". Whitespace is not accepted.
    static Rational parse(std::string_view text) {
        auto fail = [&](std::size_t at) -> ParseError {
            return ParseError("malformed rational '" + std::string(text) + "'", at);
        };
        std::size_t i = 0;
        bool neg = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
            neg = text[i] == '-';
            ++i;
        }
        auto digits = [&](std::size_t& pos) -> std::string {
            const std::size_t start = pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
            if (pos == start) throw fail(pos);
            return std::string(text.substr(start, pos - start));
        };
        Integer num(digits(i));
        Integer den(1);
        if (i < text.size() && text[i] == '/') {
            ++i;
            den = Integer(digits(i));
            if (den == 0) throw DivisionByZero();
        }
        if (i != text.size()) throw fail(i);
        return Rational(neg ? Integer(-num) : num, den);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

private:
    void canonicalize() {
        if (sgn(den_) < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        Integer g;
        mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
        if (g != 1) {
            mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        }
    }

    Integer num_;
    Integer den_;
};

/// Canonical num/den.
inline Rational normalize(const Integer& num, const Integer& den) { return Rational(num, den); }

/// Exact integer square root when n is a perfect square.
inline std::optional<Integer> integer_sqrt_exact(const Integer& n) {
    if (sgn(n) < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Non-negative r with r^2 = q, if q is the square of a rational.
inline std::optional<Rational> rational_sqrt_exact(const Rational& q) {
    // Canonical form means q is a square iff numerator and denominator both are.
    auto n = integer_sqrt_exact(q.num());
    if (!n) return std::nullopt;
    auto d = integer_sqrt_exact(q.den());
    if (!d) return std::nullopt;
    return Rational(*n, *d);
}

/// Naive height max(|num|, den).
inline Integer height(const Rational& q) {
    Integer n = abs(q.num());
    return n > q.den() ? n : q.den();
}

}  // namespace gfp
