#include <gtest/gtest.h>

#include "springchain/chain_model.hpp"
#include "springchain/error.hpp"
#include "springchain/random_spec.hpp"
#include "test_support.hpp"

using namespace springchain;
using springchain::testing::chain;
using springchain::testing::q;
using springchain::testing::qs;

namespace {

ErrorCode validation_error(const RawChainSpec& raw) {
    try {
        validate_spec(raw);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "spec was accepted";
    return ErrorCode::InvalidArgument;
}

RationalMatrix from_rows(std::initializer_list<std::initializer_list<const char*>> rows) {
    RationalMatrix m(rows.size(), rows.begin()->size());
    std::size_t r = 0;
    for (const auto& row : rows) {
        std::size_t c = 0;
        for (const char* v : row) m(r, c++) = q(v);
        ++r;
    }
    return m;
}

}  // namespace

TEST(ValidateSpec, AcceptsMinimalChain) {
    const ChainSpec s = chain({"1", "1"}, {"1"}, {"1"});
    EXPECT_EQ(s.n(), 2u);
}

TEST(ValidateSpec, RejectsBadInput) {
    EXPECT_EQ(validation_error({qs({"1", "-1"}), qs({"1"}), qs({"0"})}), ErrorCode::NonPositiveMass);
    EXPECT_EQ(validation_error({qs({"1", "1", "1"}), qs({"1"}), qs({"1", "1"})}), ErrorCode::LengthMismatch);
    EXPECT_EQ(validation_error({qs({"1", "1"}), qs({"0"}), qs({"1"})}), ErrorCode::NonPositiveStiffness);
    EXPECT_EQ(validation_error({qs({"1", "1"}), qs({"1"}), qs({"-1/2"})}), ErrorCode::NegativeDamping);
    EXPECT_EQ(validation_error({qs({"1"}), {}, {}}), ErrorCode::TooFewMasses);
    EXPECT_EQ(validation_error({qs({"1", "0"}), qs({"1"}), qs({"1"})}), ErrorCode::NonPositiveMass);
}

TEST(ValidateSpec, AdmitsZeroDamping) {
    EXPECT_NO_THROW(chain({"1", "2", "3"}, {"1", "1"}, {"0", "0"}));
}

TEST(CouplingMatrix, TwoMasses) {
    const auto m = qs({"2", "5"});
    const auto k = qs({"3"});
    EXPECT_EQ(build_coupling_matrix(k, m), from_rows({{"3/2", "-3/2"}, {"-3/5", "3/5"}}));
}

TEST(CouplingMatrix, ZeroValuesGiveZeroMatrix) {
    const auto m = qs({"1", "2", "4"});
    EXPECT_EQ(build_coupling_matrix(qs({"0", "0"}), m), RationalMatrix(3, 3));
}

TEST(CouplingMatrix, ThreeMassTemplate) {
    const auto m = qs({"1", "2", "4"});
    EXPECT_EQ(build_coupling_matrix(qs({"1", "1"}), m),
              from_rows({{"1", "-1", "0"}, {"-1/2", "1", "-1/2"}, {"0", "-1/4", "1/4"}}));
}

TEST(CouplingMatrix, RowsSumToZero) {
    SpecGenerator gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        const ChainSpec s = gen.chain(2 + trial % 6);
        const RationalMatrix kmat = build_coupling_matrix(s.stiffness(), s.masses());
        const RationalMatrix cmat = build_coupling_matrix(s.damping(), s.masses());
        for (std::size_t r = 0; r < s.n(); ++r) {
            Rational ks = 0, cs = 0;
            for (std::size_t c = 0; c < s.n(); ++c) {
                ks += kmat(r, c);
                cs += cmat(r, c);
            }
            EXPECT_EQ(ks, 0);
            EXPECT_EQ(cs, 0);
        }
    }
}

TEST(StateSpace, GoldenTwoMassModel) {
    const StateSpaceModel model = assemble_state_space(chain({"1", "1"}, {"1"}, {"1"}));
    EXPECT_EQ(model.f(), from_rows({{"0", "0", "1", "0"},
                                    {"0", "0", "0", "1"},
                                    {"-1", "1", "-1", "1"},
                                    {"1", "-1", "1", "-1"}}));
    EXPECT_EQ(RationalVector(model.g().begin(), model.g().end()), qs({"0", "0", "1", "0"}));
    EXPECT_EQ(RationalVector(model.h().begin(), model.h().end()), qs({"0", "1", "0", "0"}));
}

TEST(StateSpace, InputScalesWithFirstMass) {
    const StateSpaceModel model = assemble_state_space(chain({"4", "1", "2"}, {"1", "1"}, {"1", "0"}));
    EXPECT_EQ(model.dim(), 6u);
    EXPECT_EQ(model.g()[3], q("1/4"));
    EXPECT_EQ(model.h()[2], q("1"));
}

TEST(StateSpace, StructuralInvariants) {
    SpecGenerator gen(5);
    for (int trial = 0; trial < 30; ++trial) {
        const ChainSpec s = gen.chain(2 + trial % 7);
        const StateSpaceModel model = assemble_state_space(s);
        const std::size_t n = s.n();
        EXPECT_EQ(dot(model.h(), model.g()), 0);

        RationalVector uniform(2 * n, 0);
        for (std::size_t i = 0; i < n; ++i) uniform[i] = 1;
        for (const auto& v : model.f() * uniform) EXPECT_EQ(v, 0);

        // Upper blocks: zero and identity.
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < 2 * n; ++c) EXPECT_EQ(model.f()(r, c), c == r + n ? 1 : 0);

        RationalVector state(2 * n);
        for (std::size_t i = 0; i < 2 * n; ++i) state[i] = gen.positive_rational(9) - Rational(1, 2);
        EXPECT_EQ(momentum_rate(s, model, state), 0);

        EXPECT_EQ(assemble_state_space(s), model);
    }
}
