#include "springchain/random_spec.hpp"

namespace springchain {

std::uint64_t SpecGenerator::uniform(std::uint64_t lo, std::uint64_t hi) {
    return lo + engine_() % (hi - lo + 1);
}

Rational SpecGenerator::positive_rational(std::uint64_t max_value) {
    const std::uint64_t num = uniform(1, max_value);
    const std::uint64_t den = uniform(1, max_value);
    Rational out(mpz_class(static_cast<unsigned long>(num)), mpz_class(static_cast<unsigned long>(den)));
    out.canonicalize();
    return out;
}

ChainSpec SpecGenerator::chain(std::size_t n, const RandomSpecOptions& options) {
    RawChainSpec raw;
    for (std::size_t i = 0; i < n; ++i) raw.masses.push_back(positive_rational(options.max_value));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        raw.stiffness.push_back(positive_rational(options.max_value));
        if (options.proportional_lambda) {
            raw.damping.push_back(*options.proportional_lambda * raw.stiffness.back());
        } else if (options.allow_zero_damping && uniform(0, 4) == 0) {
            raw.damping.emplace_back(0);
        } else {
            raw.damping.push_back(positive_rational(options.max_value));
        }
    }
    return validate_spec(raw);
}

}  // namespace springchain
