#include "springchain/chain_model.hpp"

#include <string>

#include "springchain/error.hpp"

namespace springchain {

ChainSpec validate_spec(const RawChainSpec& raw) {
    const std::size_t n = raw.masses.size();
    if (n < 2) throw Error(ErrorCode::TooFewMasses, "a chain needs at least 2 masses, got " + std::to_string(n));
    if (raw.stiffness.size() != n - 1) {
        throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(n - 1) + " stiffness values, got " +
                                                   std::to_string(raw.stiffness.size()));
    }
    if (raw.damping.size() != n - 1) {
        throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(n - 1) + " damping values, got " +
                                                   std::to_string(raw.damping.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (raw.masses[i] <= 0)
            throw Error(ErrorCode::NonPositiveMass, "m" + std::to_string(i + 1) + " = " + to_string(raw.masses[i]));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (raw.stiffness[i] <= 0)
            throw Error(ErrorCode::NonPositiveStiffness,
                        "k" + std::to_string(i + 1) + " = " + to_string(raw.stiffness[i]));
        if (raw.damping[i] < 0)
            throw Error(ErrorCode::NegativeDamping, "c" + std::to_string(i + 1) + " = " + to_string(raw.damping[i]));
    }
    return ChainSpec(raw.masses, raw.stiffness, raw.damping);
}

RationalMatrix build_coupling_matrix(std::span<const Rational> values, std::span<const Rational> masses) {
    const std::size_t n = masses.size();
    if (n == 0 || values.size() + 1 != n) {
        throw Error(ErrorCode::LengthMismatch, "coupling matrix needs N-1 values for N masses");
    }
    RationalMatrix x(n, n);
    // Link i joins masses i and i+1 (0-based).
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (values[i] == 0) continue;
        const Rational on_left = values[i] / masses[i];
        const Rational on_right = values[i] / masses[i + 1];
        x(i, i) += on_left;
        x(i, i + 1) -= on_left;
        x(i + 1, i + 1) += on_right;
        x(i + 1, i) -= on_right;
    }
    return x;
}

StateSpaceModel::StateSpaceModel(RationalMatrix f, RationalVector g, RationalVector h)
    : f_(std::move(f)), g_(std::move(g)), h_(std::move(h)) {
    if (f_.rows() != f_.cols() || g_.size() != f_.rows() || h_.size() != f_.rows()) {
        throw Error(ErrorCode::LengthMismatch, "state-space shapes disagree");
    }
}

StateSpaceModel assemble_state_space(const ChainSpec& spec) {
    const std::size_t n = spec.n();
    const RationalMatrix k = build_coupling_matrix(spec.stiffness(), spec.masses());
    const RationalMatrix c = build_coupling_matrix(spec.damping(), spec.masses());

    RationalMatrix f(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        f(i, n + i) = 1;
        for (std::size_t j = 0; j < n; ++j) {
            f(n + i, j) = -k(i, j);
            f(n + i, n + j) = -c(i, j);
        }
    }
    RationalVector g(2 * n);
    g[n] = 1 / Rational(spec.masses()[0]);
    RationalVector h(2 * n);
    h[n - 1] = 1;
    return StateSpaceModel(std::move(f), std::move(g), std::move(h));
}

Rational momentum_rate(const ChainSpec& spec, const StateSpaceModel& model, std::span<const Rational> state) {
    const RationalVector rate = model.f() * state;
    const std::size_t n = spec.n();
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) total += spec.masses()[i] * rate[n + i];
    return total;
}

}  // namespace springchain
