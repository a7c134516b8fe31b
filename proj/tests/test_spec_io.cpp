#include <gtest/gtest.h>

#include <filesystem>

#include "springchain/error.hpp"
#include "springchain/random_spec.hpp"
#include "springchain/spec_io.hpp"
#include "test_support.hpp"

using namespace springchain;
using springchain::testing::qs;

namespace {

std::filesystem::path data_dir() { return SPRINGCHAIN_TEST_DATA; }

ErrorCode parse_error(std::string_view json) {
    try {
        parse_spec_json(json);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "accepted: " << json;
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(SpecJson, MixedLiteralsAreExact) {
    const LoadedSpec s = parse_spec_json(R"({"masses": [1, "3/2", 0.1], "stiffness": [2e-1, "7"], "damping": [0, 1.50]})");
    EXPECT_EQ(s.raw.masses, qs({"1", "3/2", "1/10"}));
    EXPECT_EQ(s.raw.stiffness, qs({"1/5", "7"}));
    EXPECT_EQ(s.raw.damping, qs({"0", "3/2"}));
    EXPECT_TRUE(s.warnings.empty());
}

TEST(SpecJson, NaturalLengthsWarnUnknownKeysIgnored) {
    const LoadedSpec s = parse_spec_json(
        R"({"name": "x", "masses": [1, 1], "stiffness": [1], "damping": [1], "natural_lengths": [2], "extra": {"a": [1]}})");
    EXPECT_EQ(s.warnings.size(), 1u);
    EXPECT_EQ(s.raw.masses.size(), 2u);
}

TEST(SpecJson, Malformed) {
    EXPECT_EQ(parse_error("{"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error(R"({"masses": [1, "x"], "stiffness": [1], "damping": [1]})"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error(R"({"stiffness": [1], "damping": [1]})"), ErrorCode::ParseError);
    EXPECT_EQ(parse_error(R"({"masses": 3, "stiffness": [1], "damping": [1]})"), ErrorCode::ParseError);
}

TEST(SpecJson, RoundTrip) {
    SpecGenerator gen(3);
    for (int i = 0; i < 20; ++i) {
        const ChainSpec s = gen.chain(2 + i % 5);
        EXPECT_EQ(validate_spec(parse_spec_json(spec_to_json(s)).raw), s);
    }
}

TEST(SpecToml, ReadsArraysAndComments) {
    const LoadedSpec s = parse_spec_toml("# chain\nmasses = [1, \"3/2\"]  # two\nstiffness = [\n  0.25,\n]\ndamping = [0]\n");
    EXPECT_EQ(s.raw.masses, qs({"1", "3/2"}));
    EXPECT_EQ(s.raw.stiffness, qs({"1/4"}));
    EXPECT_EQ(s.raw.damping, qs({"0"}));
}

TEST(SpecFiles, DispatchOnExtension) {
    const LoadedSpec toml = load_spec_file(data_dir() / "chain4.toml");
    EXPECT_EQ(toml.raw.masses, qs({"3/2", "2", "1/3", "5"}));
    EXPECT_EQ(toml.raw.stiffness, qs({"2", "1/2", "3"}));
    EXPECT_EQ(toml.raw.damping, qs({"0", "1", "7/3"}));
    EXPECT_EQ(toml.warnings.size(), 1u);

    const LoadedSpec json = load_spec_file(data_dir() / "prop_chain.json");
    EXPECT_EQ(json.raw.stiffness, qs({"1", "3/2"}));

    EXPECT_THROW(load_spec_file(data_dir() / "missing.json"), Error);
}
