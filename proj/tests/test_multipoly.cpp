#include <gtest/gtest.h>

#include <map>

#include "gfpoints/families.hpp"
#include "gfpoints/multipoly.hpp"
#include "support.hpp"

using gfp::MultiPoly;
using gfp::parse_poly;
using gfp::Rational;

namespace {

std::map<std::string, Rational> at(Rational a, Rational b, Rational c, Rational y, Rational z) {
    return {{"a", a}, {"b", b}, {"c", c}, {"y", y}, {"z", z}};
}

}  // namespace

TEST(MultiPoly, ParseAndPrint) {
    const auto p = parse_poly("x^2 - 2*x*y + 1/2*y", {"x", "y"});
    EXPECT_EQ(p.to_string(), "x^2 - 2*x*y + 1/2*y");
    EXPECT_EQ(parse_poly("0", {"x"}).to_string(), "0");
    EXPECT_EQ(parse_poly("-(x - 1)^2", {"x"}), parse_poly("-x^2 + 2*x - 1", {"x"}));
    EXPECT_EQ(parse_poly("x*x*x", {"x"}), MultiPoly::variable("x", 3));
    EXPECT_EQ(parse_poly("x - x + y", {"x", "y"}).variables(), std::vector<std::string>{"y"});
}

TEST(MultiPoly, ParseErrorsCarryOffsets) {
    auto offset_of = [](const char* text) -> long {
        try {
            parse_poly(text, {"x", "y"});
        } catch (const gfp::ParseError& e) {
            return static_cast<long>(e.offset());
        }
        return -1;
    };
    EXPECT_EQ(offset_of("x + q"), 4);
    EXPECT_EQ(offset_of("(x + y"), 0);
    EXPECT_EQ(offset_of("x + y)"), 5);
    EXPECT_EQ(offset_of("x $ y"), 2);
    EXPECT_GE(offset_of("x^"), 0);
}

TEST(MultiPoly, EvaluationSpotValues) {
    const auto C1 = gfp::conic_polynomial(gfp::Family::F1);
    const auto C4 = gfp::conic_polynomial(gfp::Family::F4);
    EXPECT_EQ(C1.eval(at(1, 1, 1, 2, 1)), Rational(13));
    EXPECT_EQ(C4.eval(at(1, 1, 1, 2, 3)), Rational(47));
    EXPECT_THROW(C1.eval({{"a", 1}}), gfp::DomainError);
}

TEST(MultiPoly, Degrees) {
    const auto p = parse_poly("x^3*y + y^2 - 5", {"x", "y"});
    EXPECT_EQ(p.degree_in("x"), 3u);
    EXPECT_EQ(p.degree_in("y"), 2u);
    EXPECT_EQ(p.degree_in("z"), 0u);
    EXPECT_EQ(p.total_degree(), 4u);
}

TEST(MultiPoly, SubstituteRatioClearsDenominators) {
    const auto p = parse_poly("x^2 + y", {"x", "y"});
    const auto num = parse_poly("y", {"y"});
    const auto den = parse_poly("y + 1", {"y"});
    // (y/(y+1))^2 + y, times (y+1)^2
    EXPECT_EQ(p.substitute_ratio("x", num, den, 2), parse_poly("y^2 + y*(y + 1)^2", {"y"}));
    EXPECT_THROW(p.substitute_ratio("x", num, den, 1), gfp::DomainError);
}

TEST(MultiPoly, RingLawsOnSamples) {
    gfp::testing::Sampler s(5);
    auto random_poly = [&] {
        MultiPoly p;
        for (int i = 0; i < 4; ++i)
            p += MultiPoly::constant(s.rational(9)) * MultiPoly::variable("x", s.integer(0, 3)) *
                 MultiPoly::variable("y", s.integer(0, 2));
        return p;
    };
    for (int i = 0; i < 100; ++i) {
        const auto p = random_poly(), q = random_poly(), r = random_poly();
        EXPECT_EQ(p * (q + r), p * q + p * r);
        EXPECT_EQ((p - p).is_zero(), true);
        EXPECT_EQ(p.pow(2), p * p);
        const std::map<std::string, Rational> pt{{"x", s.rational(20)}, {"y", s.rational(20)}};
        EXPECT_EQ((p * q).eval(pt), p.eval(pt) * q.eval(pt));
        EXPECT_EQ(parse_poly(p.to_string(), {"x", "y"}), p);
    }
}
