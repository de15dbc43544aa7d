#pragma once

/*
 * Command-line front end. `run` takes the arguments after the program name
 * and writes to the given streams, so it can be driven in-process by tests.
 *
 * Exit codes: 0 success / valid, 1 domain failure / invalid, 2 usage or parse
 * error. Rationals cross the boundary as exact "p/q" strings.
 */

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gfpoints/errors.hpp"
#include "gfpoints/families.hpp"
#include "gfpoints/generator.hpp"
#include "gfpoints/multipoly.hpp"
#include "gfpoints/rational.hpp"
#include "gfpoints/search.hpp"
#include "gfpoints/weierstrass.hpp"

namespace gfp::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

/// A flag value that failed to parse; reported with exit code 2.
struct UsageError : Error {
    using Error::Error;
};

inline Rational rational_arg(const std::string& flag, const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const Error& e) {
        throw UsageError("--" + flag + ": " + e.what());
    }
}

inline Family family_arg(const std::string& text) {
    auto f = parse_family(text);
    if (!f) throw UsageError("--family must be one of f1, f2, f3, f4 (got '" + text + "')");
    return *f;
}

inline Json point_json(const CurvePoint& P) {
    if (P.is_identity()) return Json{{"X", nullptr}, {"Y", nullptr}};
    return Json{{"X", P.X().to_string()}, {"Y", P.Y().to_string()}};
}

inline Json solution_json(const Solution& s) {
    return Json{{"x", s.x.to_string()}, {"y", s.y.to_string()}, {"z", s.z.to_string()}};
}

inline Json classification_json(const Classification& cls) {
    if (const auto* d = std::get_if<Degenerate>(&cls))
        return Json{{"kind", "degenerate"}, {"case", std::string(case_tag(d->which))}};
    const auto& ns = std::get<NonSingular>(cls);
    Json j{{"kind", "nonsingular"}};
    std::visit(
        [&](const auto& st) {
            using T = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<T, PositiveRankCertified>) {
                j["rank_status"] = "positive-rank-certified";
                j["witness"] = point_json(st.witness);
            } else if constexpr (std::is_same_v<T, RankZeroCatalog>) {
                j["rank_status"] = "rank-zero-catalog";
                j["k"] = st.k.to_string();
            } else {
                j["rank_status"] = "undetermined";
            }
        },
        ns.rank_status);
    return j;
}

inline std::pair<Rational, Rational> parse_pair(const std::string& flag, const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("--" + flag + " expects X,Y");
    return {rational_arg(flag, text.substr(0, comma)), rational_arg(flag, text.substr(comma + 1))};
}

inline void print_table(std::ostream& out, const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i != 0) out << "  ";
            out << std::right << std::setw(static_cast<int>(width[i])) << cells[i];
        }
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

// Raw string flags shared by the subcommands.
struct Flags {
    std::string family, a, b, c, x, y, z, t, k, g, f, tag, base;
    std::string A, B, X, Y;
    std::int64_t count = 1;
    std::int64_t height = 1;
    std::int64_t m_bound = 1000;
    std::int64_t e_bound = 10;
    unsigned threads = 0;
    bool check = false;
    bool strict = false;
    bool table = false;
};

inline FamilyParams params_of(const Flags& fl) {
    return FamilyParams(rational_arg("a", fl.a), rational_arg("b", fl.b), rational_arg("c", fl.c));
}

inline int cmd_curve(const Flags& fl, std::ostream& out) {
    const Family fam = family_arg(fl.family);
    const FamilyParams p = params_of(fl);
    const auto [A, B] = curve_coefficients(fam, p);
    const Classification cls = classify(fam, p);
    Json seeds = Json::array();
    if (std::holds_alternative<NonSingular>(cls))
        for (const auto& s : seed_points(fam, p)) seeds.push_back(point_json(s));
    Json j{{"A", A.to_string()},
           {"B", B.to_string()},
           {"delta_paper", paper_discriminant(fam, p).to_string()},
           {"classification", classification_json(cls)},
           {"seeds", seeds}};
    if (fl.table) {
        out << "A            " << A << "\nB            " << B << "\ndelta_paper  " << paper_discriminant(fam, p)
            << "\nclass        " << j["classification"].dump() << "\nseeds        " << seeds.dump() << '\n';
    } else {
        out << j.dump() << '\n';
    }
    return kExitOk;
}

inline int cmd_solve(const Flags& fl, std::ostream& out, std::ostream& err) {
    const Family fam = family_arg(fl.family);
    const FamilyParams p = params_of(fl);
    if (fl.count < 1) throw UsageError("--count must be at least 1");
    std::optional<CurvePoint> base;
    if (!fl.base.empty()) {
        auto [X, Y] = parse_pair("base", fl.base);
        base = CurvePoint(X, Y);
    }
    SolutionStream stream(fam, p, base);
    std::vector<std::vector<std::string>> rows;
    try {
        for (std::int64_t i = 0; i < fl.count; ++i) {
            const auto s = stream.next();
            if (fl.table) {
                rows.push_back({std::to_string(s.n), s.solution.x.to_string(), s.solution.y.to_string(),
                                s.solution.z.to_string()});
            } else {
                Json j = solution_json(s.solution);
                j["n"] = s.n;
                out << j.dump() << '\n';
            }
        }
    } catch (const StreamExhausted& e) {
        if (fl.table) print_table(out, {"n", "x", "y", "z"}, rows);
        err << e.what() << '\n';
        return kExitDomain;
    }
    if (fl.table) print_table(out, {"n", "x", "y", "z"}, rows);
    return kExitOk;
}

inline int report_verdict(bool valid, const std::string& reason, std::ostream& out) {
    if (valid) {
        out << "valid\n";
        return kExitOk;
    }
    out << "invalid: " << reason << '\n';
    return kExitDomain;
}

inline int cmd_verify(const Flags& fl, std::ostream& out) {
    const Family fam = family_arg(fl.family);
    const FamilyParams p = params_of(fl);
    const auto v = verify_solution(fam, p, rational_arg("x", fl.x), rational_arg("y", fl.y), rational_arg("z", fl.z));
    return report_verdict(v.valid, v.reason, out);
}

inline int cmd_verify_generic(const Flags& fl, std::ostream& out) {
    static const std::vector<std::string> g_vars = {"x", "y", "z"};
    static const std::vector<std::string> f_vars = {"t", "u", "x"};
    MultiPoly G, f;
    try {
        G = parse_poly(fl.g, g_vars);
        f = parse_poly(fl.f, f_vars);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
    const auto v = evaluate_generic(G, f, rational_arg("x", fl.x), rational_arg("y", fl.y), rational_arg("z", fl.z));
    if (!v.on_gf) return report_verdict(false, "G(f(x), f(y), f(z)) != 0", out);
    if (fl.strict && !v.on_g) return report_verdict(false, "G(x, y, z) != 0", out);
    return report_verdict(true, "", out);
}

inline int cmd_param(const Flags& fl, std::ostream& out) {
    const Family fam = family_arg(fl.family);
    const auto dc = parse_case_tag(fl.tag);
    if (!dc) throw UsageError("--case must be one of f1-4ac, f2-2ac, f2-4ac, f3-4ac, f4-ac, f4-3ac, f4-4ac");
    const FamilyParams p = params_of(fl);
    const Rational t = rational_arg("t", fl.t);
    if (!is_union_case(*dc)) {
        out << solution_json(degenerate_parameterize(fam, *dc, p, t)).dump() << '\n';
        return kExitOk;
    }
    // Union cases: t is y; the first branch giving a defined solution wins.
    for (const auto& z : degenerate_union(fam, *dc, p, t)) {
        try {
            const Rational x = recover_x(fam, t, z);
            const Solution s{x, t, z};
            if (verify_solution(fam, p, s)) {
                out << solution_json(s).dump() << '\n';
                return kExitOk;
            }
        } catch (const DomainError&) {
        }
    }
    throw ExceptionalPoint("excluded parameter: no branch gives a finite solution at y = " + t.to_string());
}

inline int cmd_torsion(const Flags& fl, std::ostream& out) {
    const EllipticCurve E(rational_arg("A", fl.A), rational_arg("B", fl.B));
    const CurvePoint P(rational_arg("X", fl.X), rational_arg("Y", fl.Y));
    const auto order = torsion_order(E, P);
    Json j;
    if (order) {
        j["order"] = *order;
    } else {
        j["order"] = nullptr;
        j["certificate"] = "non-torsion (Mazur bound)";
    }
    out << j.dump() << '\n';
    return kExitOk;
}

inline int cmd_catalog(const Flags& fl, std::ostream& out) {
    const Family fam = family_arg(fl.family);
    const Rational k = rational_arg("k", fl.k);
    const Catalog cat = rank_zero_catalog(fam, k);
    const EllipticCurve E = reduced_curve(fam, k);
    Json pts = Json::array();
    for (const auto& P : cat.points) pts.push_back(point_json(P));
    Json j{{"family", std::string(family_name(fam))},
           {"k", k.to_string()},
           {"curve", Json{{"A", E.A().to_string()}, {"B", E.B().to_string()}}},
           {"listed", cat.listed},
           {"points", pts}};
    int code = kExitOk;
    if (fl.check) {
        const auto rep = search_curve_points(E, fl.m_bound, fl.e_bound, fl.threads);
        Json found = Json::array();
        for (const auto& P : rep.found) found.push_back(point_json(P));
        Json chk{{"m_bound", fl.m_bound}, {"e_bound", fl.e_bound}, {"found", found}};
        if (cat.listed) {
            auto listed = cat.points;
            std::sort(listed.begin(), listed.end(), gfp::detail::point_order);
            const bool agrees = listed == rep.found;
            chk["agrees"] = agrees;
            if (!agrees) code = kExitDomain;
        } else {
            chk["agrees"] = nullptr;
        }
        j["check"] = chk;
    }
    if (fl.table) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& P : cat.points) rows.push_back({P.X().to_string(), P.Y().to_string()});
        out << "E_(" << k << "): Y^2 = X^3 + (" << E.A() << ")X + (" << E.B() << ")\n";
        if (!cat.listed) out << "rank 0; no point list catalogued\n";
        print_table(out, {"X", "Y"}, rows);
        if (fl.check) out << "check: " << j["check"].dump() << '\n';
    } else {
        out << j.dump() << '\n';
    }
    return code;
}

inline int cmd_search(const Flags& fl, std::ostream& out) {
    const Family fam = family_arg(fl.family);
    const FamilyParams p = params_of(fl);
    const auto rep = search_family_solutions(fam, p, fl.height, fl.threads);
    if (fl.table) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& s : rep.found) rows.push_back({s.x.to_string(), s.y.to_string(), s.z.to_string()});
        print_table(out, {"x", "y", "z"}, rows);
        return kExitOk;
    }
    Json found = Json::array();
    for (const auto& s : rep.found) found.push_back(solution_json(s));
    Json j{{"height_bound", rep.height_bound},
           {"candidates", rep.stats.candidates},
           {"squares", rep.stats.squares},
           {"found", found}};
    out << j.dump() << '\n';
    return kExitOk;
}

/// Fixed parameter samples for the closed-form agreement part of selftest.
inline std::vector<FamilyParams> selftest_params() {
    return {FamilyParams(1, 1, 2), FamilyParams(2, 3, 5), FamilyParams(Rational(-3, 2), 7, Rational(4, 5)),
            FamilyParams(5, -2, 11), FamilyParams(Rational(1, 3), Rational(-5, 7), 2)};
}

inline int cmd_selftest(std::ostream& out) {
    bool all = true;
    for (auto fam : kAllFamilies) {
        const bool ok = identity_check(fam);
        all = all && ok;
        out << (ok ? "PASS" : "FAIL") << "  identity " << family_name(fam) << '\n';
    }
    for (auto fam : kAllFamilies) {
        int checked = 0, failed = 0;
        for (const auto& p : selftest_params()) {
            if (degenerate_case(fam, p)) continue;
            for (auto tag : multiple_tags(fam)) {
                ++checked;
                try {
                    if (expected_multiple(fam, p, tag) != multiple_by_group_law(fam, p, tag)) ++failed;
                } catch (const DomainError&) {
                    ++failed;
                }
            }
        }
        all = all && failed == 0;
        out << (failed == 0 ? "PASS" : "FAIL") << "  closed-form multiples " << family_name(fam) << " (" << checked
            << " checked, " << failed << " failed)\n";
    }
    return all ? kExitOk : kExitDomain;
}

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using detail::Flags;
    Flags fl;
    CLI::App app{"Rational (G,F)-points on four families of Diophantine systems", "gfpoints"};
    app.require_subcommand(1);

    auto fam_opts = [&](CLI::App* sub) {
        sub->add_option("--family", fl.family, "f1 | f2 | f3 | f4")->required();
    };
    auto abc_opts = [&](CLI::App* sub) {
        sub->add_option("--a", fl.a, "parameter a (p/q)")->required();
        sub->add_option("--b", fl.b, "parameter b (p/q)")->required();
        sub->add_option("--c", fl.c, "parameter c (p/q)")->required();
    };
    auto xyz_opts = [&](CLI::App* sub) {
        sub->add_option("--x", fl.x)->required();
        sub->add_option("--y", fl.y)->required();
        sub->add_option("--z", fl.z)->required();
    };
    auto table_opt = [&](CLI::App* sub) { sub->add_flag("--table", fl.table, "aligned columns instead of JSON"); };

    auto* curve = app.add_subcommand("curve", "curve, discriminant, classification and seeds");
    fam_opts(curve);
    abc_opts(curve);
    table_opt(curve);

    auto* solve = app.add_subcommand("solve", "stream verified nontrivial solutions");
    fam_opts(solve);
    abc_opts(solve);
    solve->add_option("--count", fl.count, "number of solutions")->required();
    solve->add_option("--base", fl.base, "base point X,Y (defaults to the family seed)");
    table_opt(solve);

    auto* verify = app.add_subcommand("verify", "check a triple against a family system");
    fam_opts(verify);
    abc_opts(verify);
    xyz_opts(verify);

    auto* vgen = app.add_subcommand("verify-generic", "check a triple against arbitrary G and f");
    vgen->add_option("--g", fl.g, "G in x, y, z")->required();
    vgen->add_option("--f", fl.f, "univariate f")->required();
    vgen->add_flag("--strict", fl.strict, "also require G(x, y, z) = 0");
    xyz_opts(vgen);

    auto* param = app.add_subcommand("param", "solution from a degenerate-case parameterization");
    fam_opts(param);
    param->add_option("--case", fl.tag, "f1-4ac | f2-2ac | f2-4ac | f3-4ac | f4-ac | f4-3ac | f4-4ac")->required();
    abc_opts(param);
    param->add_option("--t", fl.t, "parameter t (the y value for union cases)")->required();

    auto* torsion = app.add_subcommand("torsion", "torsion order of a point, or a non-torsion certificate");
    torsion->add_option("--A", fl.A)->required();
    torsion->add_option("--B", fl.B)->required();
    torsion->add_option("--X", fl.X)->required();
    torsion->add_option("--Y", fl.Y)->required();

    auto* catalog = app.add_subcommand("catalog", "rank-zero catalog of a reduced curve E_(k)");
    fam_opts(catalog);
    catalog->add_option("--k", fl.k)->required();
    catalog->add_flag("--check", fl.check, "cross-check with a bounded point search");
    catalog->add_option("--m-bound", fl.m_bound, "search bound on |X|");
    catalog->add_option("--e-bound", fl.e_bound, "search bound on the X denominator root");
    catalog->add_option("--threads", fl.threads, "worker threads (0 = all cores)");
    table_opt(catalog);

    auto* search = app.add_subcommand("search", "bounded-height brute-force solution search");
    fam_opts(search);
    abc_opts(search);
    search->add_option("--height", fl.height, "height bound on y")->required();
    search->add_option("--threads", fl.threads, "worker threads (0 = all cores)");
    table_opt(search);

    auto* selftest = app.add_subcommand("selftest", "symbolic identities and closed-form multiples");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*curve) return detail::cmd_curve(fl, out);
        if (*solve) return detail::cmd_solve(fl, out, err);
        if (*verify) return detail::cmd_verify(fl, out);
        if (*vgen) return detail::cmd_verify_generic(fl, out);
        if (*param) return detail::cmd_param(fl, out);
        if (*torsion) return detail::cmd_torsion(fl, out);
        if (*catalog) return detail::cmd_catalog(fl, out);
        if (*search) return detail::cmd_search(fl, out);
        if (*selftest) return detail::cmd_selftest(out);
    } catch (const detail::UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitUsage;
}

}  // namespace gfp::cli
