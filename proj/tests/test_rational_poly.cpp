#include <gtest/gtest.h>

#include <cmath>

#include "springchain/error.hpp"
#include "springchain/rational.hpp"
#include "springchain/rational_poly.hpp"
#include "test_support.hpp"

using namespace springchain;
using springchain::testing::poly;
using springchain::testing::q;

TEST(Rational, ParsesFractionsIntegersAndDecimalsExactly) {
    EXPECT_EQ(q("6/4"), Rational(3, 2));
    EXPECT_EQ(q("-7"), Rational(-7));
    EXPECT_EQ(q("0.1"), Rational(1, 10));
    EXPECT_EQ(q("-1.25e-3"), Rational(-1, 800));
    EXPECT_EQ(q("2E2"), Rational(200));
    EXPECT_EQ(q(" 3/9 "), Rational(1, 3));
}

TEST(Rational, RejectsGarbage) {
    for (const char* bad : {"", "1/0", "abc", "1.2.3", "1/2/3", "e5", "--1"}) {
        EXPECT_THROW(parse_rational(bad), Error) << bad;
    }
}

TEST(Rational, PrintsCanonically) {
    EXPECT_EQ(to_string(q("4/2")), "2");
    EXPECT_EQ(to_string(q("-3/6")), "-1/2");
    EXPECT_EQ(to_string(rational_from_double(0.375)), "3/8");
}

TEST(RationalPoly, TrimsAndReportsDegree) {
    EXPECT_EQ(RationalPoly().degree(), -1);
    EXPECT_TRUE(poly({"0", "0"}).is_zero());
    EXPECT_EQ(poly({"1", "2", "0"}).degree(), 1);
    EXPECT_EQ(RationalPoly::monomial(q("3"), 4).coeff(4), q("3"));
    EXPECT_EQ(RationalPoly::monomial(q("3"), 4).coeff(9), q("0"));
}

TEST(RationalPoly, Arithmetic) {
    const RationalPoly a = poly({"1", "1"});   // 1 + z
    const RationalPoly b = poly({"-1", "1"});  // z - 1
    EXPECT_EQ(a * b, poly({"-1", "0", "1"}));
    EXPECT_EQ(a - a, RationalPoly());
    EXPECT_EQ(a + b, poly({"0", "2"}));
    EXPECT_EQ(-a, poly({"-1", "-1"}));
    EXPECT_EQ(q("1/2") * a, poly({"1/2", "1/2"}));
}

TEST(RationalPoly, EvaluatesExactly) {
    const RationalPoly p = poly({"-3", "1/2", "0", "2", "1"});
    EXPECT_EQ(poly_eval(p, q("1/2")), q("-3") + q("1/4") + q("1/4") + q("1/16"));
    EXPECT_EQ(p.eval(q("0")), q("-3"));
}

TEST(RationalPoly, PrintsDescending) {
    EXPECT_EQ(poly({"-3", "1/2", "0", "2", "1"}).to_string(), "z^4 + 2*z^3 + 1/2*z - 3");
    EXPECT_EQ(poly({"0", "-1"}).to_string(), "-z");
    EXPECT_EQ(RationalPoly().to_string(), "0");
    EXPECT_EQ(poly({"1"}).to_string("s"), "1");
}

TEST(RationalPoly, DivisionIdentity) {
    const RationalPoly n = poly({"5", "-2", "0", "7/3", "1"});
    const RationalPoly d = poly({"1/2", "3"});
    const auto [quot, rem] = divmod(n, d);
    EXPECT_LT(rem.degree(), d.degree());
    EXPECT_EQ(quot * d + rem, n);
    EXPECT_THROW(divmod(n, RationalPoly()), Error);
}

TEST(RationalPoly, ExactQuotientRefusesRemainder) {
    const RationalPoly f = poly({"2", "3"});
    const RationalPoly g = poly({"1", "0", "1"});
    EXPECT_EQ(exact_quotient(f * g, f), g);
    EXPECT_THROW(exact_quotient(g, f), Error);
}

TEST(RationalPoly, GcdIsMonicCommonFactor) {
    const RationalPoly common = poly({"1/2", "1"});
    const RationalPoly a = common * poly({"3", "0", "2"});
    const RationalPoly b = q("7") * common * poly({"-1", "4"});
    EXPECT_EQ(poly_gcd(a, b), common);
    EXPECT_EQ(poly_gcd(poly({"0", "0", "1"}), poly({"1", "1"})), poly({"1"}));
    EXPECT_EQ(poly_gcd(RationalPoly(), poly({"4", "2"})), poly({"2", "1"}));
}

TEST(RationalPoly, GcdOfTwoZerosIsAnError) {
    try {
        poly_gcd(RationalPoly(), RationalPoly());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BothZero);
    }
}

TEST(Rational, ConvertsToNearestDouble) {
    EXPECT_EQ(to_double(q("0.1")), 0.1);
    EXPECT_EQ(to_double(q("-0.01")), -0.01);
    EXPECT_EQ(to_double(q("1/3")), 1.0 / 3.0);
    EXPECT_EQ(to_double(q("2/3")), 2.0 / 3.0);
    EXPECT_EQ(to_double(q("150000")), 150000.0);
    EXPECT_EQ(to_double(q("0")), 0.0);
    // Halfway cases round to the even significand.
    EXPECT_EQ(to_double(Rational(1) + Rational(1) / (Rational(1) << 53)), 1.0);
    EXPECT_EQ(to_double(Rational(1) + Rational(3) / (Rational(1) << 53)), 1.0 + std::ldexp(1.0, -51));  // tie, odd side loses
    EXPECT_EQ(to_double(rational_from_double(0.3)), 0.3);
}
