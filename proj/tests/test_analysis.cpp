#include <gtest/gtest.h>

#include <algorithm>

#include "springchain/analysis.hpp"
#include "springchain/error.hpp"
#include "springchain/random_spec.hpp"
#include "test_support.hpp"

using namespace springchain;
using springchain::testing::chain;
using springchain::testing::poly;
using springchain::testing::q;
using springchain::testing::qs;

namespace {

ErrorCode error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error";
    return ErrorCode::InvalidArgument;
}

const std::array<Rational, 3> kUnitMasses{Rational(1), Rational(1), Rational(1)};

}  // namespace

TEST(Decide, TwoMassChainsAlwaysPass) {
    const Verdict v = decide(chain({"1", "1"}, {"1"}, {"1"}));
    EXPECT_TRUE(v.controllable_observable);
    EXPECT_EQ(v.gcd, poly({"1"}));
    EXPECT_TRUE(v.common_roots.empty());
    EXPECT_EQ(v.kalman_control_rank, 4u);
    EXPECT_EQ(v.kalman_observe_rank, 4u);

    SpecGenerator gen(31);
    for (int i = 0; i < 30; ++i) EXPECT_TRUE(decide(gen.chain(2)).controllable_observable);
}

TEST(Decide, UndampedTwoMassHasFullRanks) {
    const Verdict v = decide(chain({"1", "1"}, {"1"}, {"0"}));
    EXPECT_TRUE(v.controllable_observable);
    EXPECT_EQ(v.kalman_control_rank, 4u);
    EXPECT_EQ(v.kalman_observe_rank, 4u);
}

TEST(Decide, ProportionalChainsPass) {
    const Verdict v = decide(chain({"1", "1", "1"}, {"1", "1"}, {"1", "1"}));
    EXPECT_TRUE(v.proportionality_holds);
    EXPECT_EQ(v.kalman_observe_rank, 6u);
    EXPECT_EQ(v.kalman_control_rank, 6u);

    SpecGenerator gen(32);
    const Rational two(2);
    for (int i = 0; i < 10; ++i) {
        RandomSpecOptions opts;
        opts.proportional_lambda = two;
        const Verdict w = decide(gen.chain(5, opts));
        EXPECT_TRUE(w.proportionality_holds);
        EXPECT_TRUE(w.controllable_observable);
    }
}

TEST(Proportionality, Examples) {
    EXPECT_TRUE(proportionality_check(chain({"1", "1", "1", "1"}, {"1", "2", "4"}, {"3", "6", "12"})));
    EXPECT_FALSE(proportionality_check(chain({"1", "1", "1"}, {"1", "1"}, {"1", "2"})));
    EXPECT_TRUE(proportionality_check(chain({"1", "1", "1"}, {"1", "1"}, {"0", "0"})));
    EXPECT_FALSE(proportionality_check(chain({"1", "1", "1"}, {"1", "1"}, {"0", "1"})));
    const ChainSpec s = chain({"1", "1", "1"}, {"1", "3"}, {"2", "4"});
    EXPECT_EQ(proportionality_residual(s, 0, 1), q("1") - q("3") * q("2") / q("4"));
}

TEST(Counterexample, UnitMasses) {
    const CounterexampleN3 ce = make_counterexample_n3(kUnitMasses, q("1"), q("1"), q("1"));
    EXPECT_EQ(ce.k2, q("1/2"));
    EXPECT_EQ(ce.common_root, q("-1"));
    EXPECT_EQ(ce.h_sum, q("2"));
    // k1^2/c1^2 + (k2 - (k1/c1) c2) H = 0
    EXPECT_EQ(ce.k1 * ce.k1 / (ce.c1 * ce.c1) + (ce.k2 - ce.k1 / ce.c1 * ce.c2) * ce.h_sum, 0);

    const ChainSpec s = ce.spec();
    const RationalPoly p = char_poly_recursive(s);
    EXPECT_EQ(p, poly({"0", "0", "3/2", "9/2", "6", "4", "1"}));
    EXPECT_EQ(poly_eval(p, ce.common_root), 0);
    EXPECT_EQ(poly_eval(adjoint_poly_closed_form(s).expand(), ce.common_root), 0);
    EXPECT_FALSE(proportionality_check(s));

    const Verdict v = decide(s);
    EXPECT_FALSE(v.controllable_observable);
    EXPECT_GE(v.gcd.degree(), 1);
    EXPECT_EQ(v.common_roots, qs({"-1"}));
    EXPECT_LT(v.kalman_control_rank, 6u);
}

// The common root sits on the first link (next to the driven mass), so the
// mode it labels is invisible to the input but not to the last position.
TEST(Counterexample, LosesReachabilityOnly) {
    const Verdict v = decide(make_counterexample_n3(kUnitMasses, q("1"), q("1"), q("1")).spec());
    EXPECT_EQ(v.kalman_control_rank, 5u);
    EXPECT_EQ(v.kalman_observe_rank, 6u);
}

// Reading the chain from the other end swaps the roles of g and h.
TEST(Counterexample, MirroredLosesObservabilityOnly) {
    const ChainSpec mirror = springchain::testing::mirrored(make_counterexample_n3(kUnitMasses, q("1"), q("1"), q("1")).spec());
    const Verdict v = decide(mirror);
    EXPECT_FALSE(v.controllable_observable);
    EXPECT_EQ(v.kalman_control_rank, 6u);
    EXPECT_EQ(v.kalman_observe_rank, 5u);
    EXPECT_EQ(v.char_poly, char_poly_recursive(make_counterexample_n3(kUnitMasses, q("1"), q("1"), q("1")).spec()));
}

TEST(Counterexample, NonPositiveDerivedStiffness) {
    EXPECT_EQ(error_of([] { make_counterexample_n3(kUnitMasses, q("1"), q("1"), q("1/4")); }),
              ErrorCode::DerivedStiffnessNonPositive);
    EXPECT_EQ(error_of([] { make_counterexample_n3(kUnitMasses, q("1"), q("0"), q("1")); }), ErrorCode::InvalidArgument);
}

TEST(Counterexample, RandomInstancesAreAllBlocked) {
    SpecGenerator gen(33);
    int built = 0;
    for (int i = 0; i < 60; ++i) {
        const std::array<Rational, 3> m{gen.positive_rational(6), gen.positive_rational(6), gen.positive_rational(6)};
        try {
            const CounterexampleN3 ce =
                make_counterexample_n3(m, gen.positive_rational(6), gen.positive_rational(6), gen.positive_rational(6));
            ++built;
            const Verdict v = decide(ce.spec());
            EXPECT_FALSE(v.controllable_observable);
            EXPECT_FALSE(v.proportionality_holds);
            EXPECT_NE(std::find(v.common_roots.begin(), v.common_roots.end(), ce.common_root), v.common_roots.end());
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::DerivedStiffnessNonPositive);
        }
    }
    EXPECT_GT(built, 10);
}

TEST(ControllableNonProportional, UnitMasses) {
    const ChainSpec s = make_controllable_nonproportional_n3(kUnitMasses, q("1"), q("1"));
    EXPECT_EQ(std::vector<Rational>(s.stiffness().begin(), s.stiffness().end()), qs({"1", "2"}));
    const Verdict v = decide(s);
    EXPECT_TRUE(v.controllable_observable);
    EXPECT_FALSE(v.proportionality_holds);
    EXPECT_EQ(poly_gcd(v.char_poly, poly({"2/3", "1", "1/3"})), poly({"1"}));  // (1+z)(2+z)/3
}

TEST(ControllableNonProportional, SearchCanBeExhausted) {
    // Bound 1 only offers k = (1, 1), which is proportional to c = (1, 1).
    EXPECT_EQ(error_of([] { make_controllable_nonproportional_n3(kUnitMasses, q("1"), q("1"), 1); }),
              ErrorCode::SearchExhausted);
}

// Bracketed right-hand side of the second-root condition: with z2 = -k2/c2,
// P3(z2) = (k2/c2)^4 [ (k2/c2)^2 + (k1 - (k2/c2) c1) H12 ].
TEST(SecondRoot, BracketedFormMatchesEvaluation) {
    SpecGenerator gen(34);
    for (int i = 0; i < 25; ++i) {
        const ChainSpec s = gen.chain(3, {.max_value = 9, .allow_zero_damping = false});
        const Rational k1 = s.stiffness()[0], k2 = s.stiffness()[1];
        const Rational c1 = s.damping()[0], c2 = s.damping()[1];
        const Rational ratio = k2 / c2;
        const Rational h12 = 1 / s.masses()[0] + 1 / s.masses()[1];
        const Rational r2 = ratio * ratio;
        const Rational bracket = r2 * r2 * (r2 + (k1 - ratio * c1) * h12);
        EXPECT_EQ(poly_eval(char_poly_recursive(s), -ratio), bracket);
    }
}

TEST(SecondRoot, FirstRootCondition) {
    SpecGenerator gen(35);
    for (int i = 0; i < 25; ++i) {
        const ChainSpec s = gen.chain(3, {.max_value = 9, .allow_zero_damping = false});
        const Rational k1 = s.stiffness()[0], k2 = s.stiffness()[1];
        const Rational c1 = s.damping()[0], c2 = s.damping()[1];
        const Rational ratio = k1 / c1;
        const Rational h23 = 1 / s.masses()[1] + 1 / s.masses()[2];
        const Rational r2 = ratio * ratio;
        EXPECT_EQ(poly_eval(char_poly_recursive(s), -ratio), r2 * r2 * (r2 + (k2 - ratio * c2) * h23));
    }
}

TEST(KalmanRanks, AgreeWithGcdOnRandomSpecs) {
    SpecGenerator gen(36);
    int blocked = 0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + i % 5;
        // Small value range so repeated ratios, and thus common roots, happen.
        const ChainSpec s = gen.chain(n, {.max_value = 3});
        const Verdict v = decide(s);  // throws on disagreement
        const std::size_t full = 2 * n;
        EXPECT_EQ(v.controllable_observable, v.kalman_control_rank == full && v.kalman_observe_rank == full);
        EXPECT_EQ(v.controllable_observable, v.gcd.degree() == 0);
        if (v.proportionality_holds) EXPECT_TRUE(v.controllable_observable);
        for (const auto& r : v.common_roots) {
            EXPECT_EQ(poly_eval(v.char_poly, r), 0);
            EXPECT_EQ(poly_eval(v.adjoint_poly, r), 0);
            EXPECT_LT(r, 0);
        }
        blocked += v.controllable_observable ? 0 : 1;
    }
    EXPECT_GT(blocked, 0);
}

TEST(KalmanRanks, CapIsEnforced) {
    const StateSpaceModel model = assemble_state_space(SpecGenerator(4).chain(4));
    EXPECT_THROW(kalman_controllability_rank(model, 6), Error);
    EXPECT_THROW(kalman_observability_rank(model, 6), Error);
}
