#pragma once

/*
 * Brute-force oracles: bounded-height enumeration of family solutions (each
 * conic solved as a quadratic in z) and of rational points on short
 * Weierstrass curves. Results are complete only relative to the bounds.
 *
 * Scans may be split across threads. Every partition is scanned
 * independently and the merged list is sorted, so the report does not depend
 * on the thread count.
 */

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "gfpoints/families.hpp"
#include "gfpoints/rational.hpp"
#include "gfpoints/weierstrass.hpp"

namespace gfp {

struct ScanStats {
    std::uint64_t candidates = 0;  // y values (or X values) tested
    std::uint64_t squares = 0;     // of those, how many gave a rational root / square
    friend bool operator==(const ScanStats&, const ScanStats&) = default;
};

struct SolutionReport {
    std::vector<Solution> found;
    std::int64_t height_bound = 0;
    ScanStats stats;
};

struct PointReport {
    std::vector<CurvePoint> found;
    std::int64_t m_bound = 0;
    std::int64_t e_bound = 0;
    Integer model_scale = 1;  // u with (X, Y) -> (u^2 X, u^3 Y) integral
    ScanStats stats;
};

/// All rational z with (y, z) on C_i. A row whose coefficients all vanish is
/// satisfied by every z and is reported as empty.
inline std::vector<Rational> solve_in_z(Family family, const FamilyParams& p, const Rational& y) {
    const auto k = conic_z_coefficients(family, p, y);
    std::vector<Rational> roots;
    if (k[0].is_zero()) {
        if (!k[1].is_zero()) roots.push_back(-k[2] / k[1]);
        return roots;
    }
    const auto s = rational_sqrt_exact(k[1] * k[1] - 4 * k[0] * k[2]);
    if (!s) return roots;
    roots.push_back((-k[1] - *s) / (2 * k[0]));
    roots.push_back((-k[1] + *s) / (2 * k[0]));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

namespace detail {

inline unsigned resolve_threads(unsigned threads) {
    if (threads != 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs task(i) for i in [0, count) on `threads` workers.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task) {
    threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) task(i);
        });
    }
    for (auto& t : pool) t.join();
}

inline bool solution_order(const Solution& l, const Solution& r) {
    const Integer hl = height(l.y), hr = height(r.y);
    if (hl != hr) return hl < hr;
    if (l.y != r.y) return l.y < r.y;
    return l.z < r.z;
}

inline bool point_order(const CurvePoint& l, const CurvePoint& r) {
    const Integer hl = height(l.X()), hr = height(r.X());
    if (hl != hr) return hl < hr;
    if (l.X() != r.X()) return l.X() < r.X();
    return l.Y() < r.Y();
}

inline Integer integer_gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/// Smallest u > 0 with A u^4 and B u^6 integral.
inline Integer integral_model_scale(const EllipticCurve& E) {
    Integer d = E.A().den() * E.B().den() / integer_gcd(E.A().den(), E.B().den());
    Integer u = 1;
    auto absorb = [&](const Integer& prime) {
        // Smallest exponent r with v_p(den A) <= 4r and v_p(den B) <= 6r.
        auto val = [&](Integer n) {
            unsigned long v = 0;
            while (n % prime == 0) {
                n /= prime;
                ++v;
            }
            return v;
        };
        const unsigned long va = val(E.A().den());
        const unsigned long vb = val(E.B().den());
        const unsigned long r = std::max((va + 3) / 4, (vb + 5) / 6);
        Integer f;
        mpz_pow_ui(f.get_mpz_t(), prime.get_mpz_t(), r);
        u *= f;
    };
    for (Integer pr = 2; pr * pr <= d && pr < 1000000; ++pr) {
        if (d % pr != 0) continue;
        absorb(pr);
        while (d % pr == 0) d /= pr;
    }
    // Leftover cofactor is prime unless trial division stopped early.
    const Integer rest = d;
    if (d > 1) absorb(d);
    const Integer u4 = u * u * u * u;
    if (!(E.A() * Rational(u4)).is_integer() || !(E.B() * Rational(u4 * u * u)).is_integer())
        u *= rest;  // composite leftover: integral, not necessarily minimal
    return u;
}

}  // namespace detail

/// Every nontrivial solution whose y = p/q has |p| <= H, 1 <= q <= H.
inline SolutionReport search_family_solutions(Family family, const FamilyParams& p, std::int64_t height_bound,
                                              unsigned threads = 1) {
    if (height_bound < 1) throw DomainError("height bound must be at least 1");
    SolutionReport report;
    report.height_bound = height_bound;
    std::mutex mu;
    detail::parallel_for(static_cast<std::size_t>(height_bound), threads, [&](std::size_t qi) {
        const Integer q = static_cast<long>(qi + 1);
        std::vector<Solution> local;
        ScanStats st;
        for (std::int64_t num = -height_bound; num <= height_bound; ++num) {
            if (num == 0) continue;
            const Integer n = static_cast<long>(num);
            if (detail::integer_gcd(n, q) != 1) continue;
            const Rational y(n, q);
            ++st.candidates;
            const auto zs = solve_in_z(family, p, y);
            if (!zs.empty()) ++st.squares;
            for (const auto& z : zs) {
                if (z == y) continue;
                Rational x;
                try {
                    x = recover_x(family, y, z);
                } catch (const DomainError&) {
                    continue;
                }
                if (family == Family::F3 && (x.is_zero() || z.is_zero())) continue;
                Solution s{x, y, z};
                if (verify_solution(family, p, s)) local.push_back(std::move(s));
            }
        }
        std::lock_guard lock(mu);
        report.stats.candidates += st.candidates;
        report.stats.squares += st.squares;
        for (auto& s : local) report.found.push_back(std::move(s));
    });
    std::sort(report.found.begin(), report.found.end(), detail::solution_order);
    return report;
}

/// Points with X = m/e^2 on the integral model, |m| <= m_bound e^2,
/// 1 <= e <= e_bound, gcd(m, e) = 1, mapped back to E. Both signs of Y.
inline PointReport search_curve_points(const EllipticCurve& E, std::int64_t m_bound, std::int64_t e_bound,
                                       unsigned threads = 1) {
    if (m_bound < 1 || e_bound < 1) throw DomainError("search bounds must be at least 1");
    PointReport report;
    report.m_bound = m_bound;
    report.e_bound = e_bound;
    report.model_scale = detail::integral_model_scale(E);
    const Integer& u = report.model_scale;
    const Integer u2 = u * u;
    const Integer u3 = u2 * u;
    const Integer A = (E.A() * Rational(u2 * u2)).num();
    const Integer B = (E.B() * Rational(u3 * u3)).num();

    // Work items: (e, slice of the m range) so large e are split evenly.
    constexpr std::int64_t kSlice = 4096;
    struct Item {
        std::int64_t e, lo, hi;
    };
    std::vector<Item> items;
    for (std::int64_t e = 1; e <= e_bound; ++e) {
        const std::int64_t lim = m_bound * e * e;
        for (std::int64_t lo = -lim; lo <= lim; lo += kSlice) items.push_back({e, lo, std::min(lim, lo + kSlice - 1)});
    }

    std::mutex mu;
    detail::parallel_for(items.size(), threads, [&](std::size_t idx) {
        const Item it = items[idx];
        const Integer e = static_cast<long>(it.e);
        const Integer e2 = e * e;
        const Integer e3 = e2 * e;
        const Integer Ae4 = A * e2 * e2;
        const Integer Be6 = B * e3 * e3;
        std::vector<CurvePoint> local;
        ScanStats st;
        Integer m, v, r;
        for (std::int64_t mi = it.lo; mi <= it.hi; ++mi) {
            m = static_cast<long>(mi);
            if (it.e > 1 && detail::integer_gcd(m, e) != 1) continue;
            ++st.candidates;
            v = m * m * m + Ae4 * m + Be6;
            if (sgn(v) < 0 || mpz_perfect_square_p(v.get_mpz_t()) == 0) continue;
            ++st.squares;
            mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
            const Rational X(m, e2 * u2);
            const Rational Y(r, e3 * u3);
            local.emplace_back(X, Y);
            if (!Y.is_zero()) local.emplace_back(X, -Y);
        }
        std::lock_guard lock(mu);
        report.stats.candidates += st.candidates;
        report.stats.squares += st.squares;
        for (auto& P : local) report.found.push_back(std::move(P));
    });
    std::sort(report.found.begin(), report.found.end(), detail::point_order);
    for (const auto& P : report.found)
        if (!on_curve(E, P)) throw Error("internal: search produced an off-curve point");
    return report;
}

}  // namespace gfp
