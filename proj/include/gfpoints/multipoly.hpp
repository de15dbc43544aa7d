#pragma once

/*
 * Sparse multivariate polynomials over Rational.
 *
 * A polynomial holds an ordered variable list and a map from exponent vectors
 * (one entry per variable) to nonzero coefficients. Variables are kept in a
 * fixed global order (a, b, c, x, y, z, t, then any others alphabetically) and
 * variables that no longer occur are dropped after every operation, so two
 * polynomials are equal iff their variable lists and term maps are equal.
 */

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gfpoints/errors.hpp"
#include "gfpoints/rational.hpp"

namespace gfp {

namespace detail {

inline int variable_rank(std::string_view v) {
    static constexpr std::string_view fixed[] = {"a", "b", "c", "x", "y", "z", "t"};
    for (int i = 0; i < 7; ++i)
        if (fixed[i] == v) return i;
    return 7;
}

inline bool variable_less(const std::string& l, const std::string& r) {
    const int rl = variable_rank(l);
    const int rr = variable_rank(r);
    if (rl != rr) return rl < rr;
    return l < r;
}

}  // namespace detail

class MultiPoly {
public:
    using Exponents = std::vector<std::uint32_t>;
    using TermMap = std::map<Exponents, Rational>;

    MultiPoly() = default;

    static MultiPoly constant(const Rational& c) {
        MultiPoly p;
        if (!c.is_zero()) p.terms_.emplace(Exponents{}, c);
        return p;
    }

    static MultiPoly variable(const std::string& name, std::uint32_t power = 1) {
        MultiPoly p;
        p.vars_ = {name};
        p.terms_.emplace(Exponents{power}, Rational(1));
        p.trim();
        return p;
    }

    const std::vector<std::string>& variables() const noexcept { return vars_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Degree of the polynomial in `var` (0 when absent).
    std::uint32_t degree_in(const std::string& var) const {
        const auto idx = index_of(var);
        if (idx < 0) return 0;
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(idx)]);
        return d;
    }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) {
            std::uint32_t s = 0;
            for (auto v : e) s += v;
            d = std::max(d, s);
        }
        return d;
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend MultiPoly operator+(const MultiPoly& p, const MultiPoly& q) { return combine(p, q, false); }
    friend MultiPoly operator-(const MultiPoly& p, const MultiPoly& q) { return combine(p, q, true); }

    friend MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) {
        const auto vars = union_vars(p.vars_, q.vars_);
        const auto pm = p.remap(vars);
        const auto qm = q.remap(vars);
        MultiPoly r;
        r.vars_ = vars;
        Exponents e(vars.size());
        for (const auto& [ep, cp] : pm) {
            for (const auto& [eq, cq] : qm) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ep[i] + eq[i];
                auto [it, inserted] = r.terms_.try_emplace(e, cp * cq);
                if (!inserted) {
                    it->second += cp * cq;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        }
        r.trim();
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly pow(std::uint32_t e) const {
        MultiPoly r = constant(1);
        MultiPoly base = *this;
        while (e != 0) {
            if (e & 1U) r *= base;
            e >>= 1U;
            if (e != 0) base *= base;
        }
        return r;
    }

    friend bool operator==(const MultiPoly& p, const MultiPoly& q) {
        return p.vars_ == q.vars_ && p.terms_ == q.terms_;
    }

    /// Exact value at `assignment`; throws DomainError if a variable is unassigned.
    Rational eval(const std::map<std::string, Rational>& assignment) const {
        std::vector<const Rational*> values;
        values.reserve(vars_.size());
        for (const auto& v : vars_) {
            auto it = assignment.find(v);
            if (it == assignment.end()) throw DomainError("no value for variable '" + v + "'");
            values.push_back(&it->second);
        }
        Rational sum;
        for (const auto& [e, c] : terms_) {
            Rational term = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) term *= values[i]->pow(e[i]);
            sum += term;
        }
        return sum;
    }

    /// den^clear_power * p(var = num/den), expanded. clear_power must be at
    /// least the degree of p in var.
    MultiPoly substitute_ratio(const std::string& var, const MultiPoly& num, const MultiPoly& den,
                               std::uint32_t clear_power) const {
        const auto deg = degree_in(var);
        if (clear_power < deg)
            throw DomainError("denominator not cleared: clear_power " + std::to_string(clear_power) +
                              " < degree " + std::to_string(deg) + " in " + var);
        const auto idx = index_of(var);
        if (idx < 0) return *this * den.pow(clear_power);

        std::vector<MultiPoly> num_pows{constant(1)};
        std::vector<MultiPoly> den_pows{constant(1)};
        for (std::uint32_t i = 1; i <= clear_power; ++i) {
            num_pows.push_back(num_pows.back() * num);
            den_pows.push_back(den_pows.back() * den);
        }
        // Group the terms of p by their power of var.
        std::vector<MultiPoly> by_power(deg + 1);
        for (auto& bp : by_power) bp.vars_ = vars_;
        for (const auto& [e, c] : terms_) {
            Exponents rest = e;
            const auto k = rest[static_cast<std::size_t>(idx)];
            rest[static_cast<std::size_t>(idx)] = 0;
            by_power[k].terms_.emplace(std::move(rest), c);
        }
        MultiPoly result;
        for (std::uint32_t k = 0; k <= deg; ++k) {
            by_power[k].trim();
            if (by_power[k].is_zero()) continue;
            result += by_power[k] * num_pows[k] * den_pows[clear_power - k];
        }
        return result;
    }

    /// Canonical text, highest total degree first; parse_poly reads it back.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Exponents, Rational>> ordered(terms_.begin(), terms_.end());
        std::stable_sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
            std::uint32_t dl = 0, dr = 0;
            for (auto v : l.first) dl += v;
            for (auto v : r.first) dr += v;
            if (dl != dr) return dl > dr;
            return l.first > r.first;
        });
        std::string out;
        bool first = true;
        for (const auto& [e, c] : ordered) {
            const bool neg = c.sign() < 0;
            if (first) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            first = false;
            const Rational mag = c.abs();
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty()) {
                out += mag.to_string();
            } else if (mag == Rational(1)) {
                out += mono;
            } else {
                out += mag.to_string() + "*" + mono;
            }
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

private:
    int index_of(const std::string& var) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == var) return static_cast<int>(i);
        return -1;
    }

    static std::vector<std::string> union_vars(const std::vector<std::string>& l,
                                               const std::vector<std::string>& r) {
        std::vector<std::string> out;
        std::merge(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(out), detail::variable_less);
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    TermMap remap(const std::vector<std::string>& vars) const {
        if (vars == vars_) return terms_;
        std::vector<std::size_t> pos(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i)
            pos[i] = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), vars_[i]) - vars.begin());
        TermMap out;
        for (const auto& [e, c] : terms_) {
            Exponents ne(vars.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
            out.emplace(std::move(ne), c);
        }
        return out;
    }

    static MultiPoly combine(const MultiPoly& p, const MultiPoly& q, bool subtract) {
        MultiPoly r;
        r.vars_ = union_vars(p.vars_, q.vars_);
        r.terms_ = p.remap(r.vars_);
        for (auto& [e, c] : q.remap(r.vars_)) {
            const Rational v = subtract ? -c : c;
            auto [it, inserted] = r.terms_.try_emplace(e, v);
            if (!inserted) {
                it->second += v;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        r.trim();
        return r;
    }

    // Drop variables that no longer occur in any term.
    void trim() {
        std::vector<bool> used(vars_.size(), false);
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) used[i] = true;
        if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
        std::vector<std::string> nv;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (used[i]) nv.push_back(vars_[i]);
        TermMap nt;
        for (const auto& [e, c] : terms_) {
            Exponents ne;
            ne.reserve(nv.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                if (used[i]) ne.push_back(e[i]);
            nt.emplace(std::move(ne), c);
        }
        vars_ = std::move(nv);
        terms_ = std::move(nt);
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

inline MultiPoly operator*(const Rational& c, const MultiPoly& p) { return MultiPoly::constant(c) * p; }

// ---------------------------------------------------------------------------
// Expression parser
//
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := integer | integer '/' integer | symbol | '(' expr ')'
// ---------------------------------------------------------------------------

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, std::span<const std::string> allowed)
        : text_(text), allowed_(allowed) {}

    MultiPoly parse() {
        MultiPoly p = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            if (text_[pos_] == ')') throw ParseError("unbalanced ')'", pos_);
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly expr() {
        const bool negate = accept('-');
        MultiPoly acc = term();
        if (negate) acc = -acc;
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly term() {
        MultiPoly acc = factor();
        while (accept('*')) acc *= factor();
        return acc;
    }

    MultiPoly factor() {
        MultiPoly b = base();
        if (accept('^')) {
            skip_ws();
            const std::size_t start = pos_;
            const std::string digits = read_digits();
            if (digits.empty()) throw ParseError("expected exponent", start);
            if (digits.size() > 6) throw ParseError("exponent too large", start);
            b = b.pow(static_cast<std::uint32_t>(std::stoul(digits)));
        }
        return b;
    }

    MultiPoly base() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        const char ch = text_[pos_];
        if (ch == '(') {
            const std::size_t open = pos_++;
            MultiPoly inner = expr();
            if (!accept(')')) {
                skip_ws();
                if (pos_ >= text_.size()) throw ParseError("unbalanced '('", open);
                throw ParseError(std::string("expected ')' but found '") + text_[pos_] + "'", pos_);
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            Integer num(read_digits());
            Integer den(1);
            // "p/q" literal: no whitespace allowed around the slash.
            if (pos_ < text_.size() && text_[pos_] == '/') {
                const std::size_t slash = pos_++;
                const std::string d = read_digits();
                if (d.empty()) throw ParseError("malformed rational literal", slash);
                den = Integer(d);
                if (den == 0) throw ParseError("zero denominator", slash);
            }
            return MultiPoly::constant(Rational(num, den));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (std::find(allowed_.begin(), allowed_.end(), name) == allowed_.end())
                throw ParseError("unknown symbol '" + name + "'", start);
            return MultiPoly::variable(name);
        }
        if (ch == ')') throw ParseError("unbalanced ')'", pos_);
        throw ParseError(std::string("unexpected '") + ch + "'", pos_);
    }

    std::string read_digits() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    std::span<const std::string> allowed_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `text` into a polynomial over the symbols in `allowed_vars`.
inline MultiPoly parse_poly(std::string_view text, std::span<const std::string> allowed_vars) {
    return detail::PolyParser(text, allowed_vars).parse();
}

inline MultiPoly parse_poly(std::string_view text, std::initializer_list<std::string> allowed_vars) {
    const std::vector<std::string> v(allowed_vars);
    return parse_poly(text, std::span<const std::string>(v));
}

}  // namespace gfp
