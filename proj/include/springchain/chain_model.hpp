#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "springchain/rational.hpp"
#include "springchain/rational_matrix.hpp"

namespace springchain {

/// Unvalidated chain parameters as read from a file or assembled by a caller.
struct RawChainSpec {
    std::vector<Rational> masses;
    std::vector<Rational> stiffness;
    std::vector<Rational> damping;
};

/// Validated parameters of a free-free chain of N >= 2 point masses, with
/// spring k_i and dashpot c_i linking masses i and i+1.
///
/// Only validate_spec() produces instances, so every ChainSpec satisfies
/// m_i > 0, k_i > 0, c_i >= 0 and the N / N-1 / N-1 length pattern.
class ChainSpec {
public:
    std::size_t n() const noexcept { return masses_.size(); }
    std::span<const Rational> masses() const noexcept { return masses_; }
    std::span<const Rational> stiffness() const noexcept { return stiffness_; }
    std::span<const Rational> damping() const noexcept { return damping_; }

    friend bool operator==(const ChainSpec&, const ChainSpec&) = default;

private:
    friend ChainSpec validate_spec(const RawChainSpec& raw);
    ChainSpec(std::vector<Rational> m, std::vector<Rational> k, std::vector<Rational> c)
        : masses_(std::move(m)), stiffness_(std::move(k)), damping_(std::move(c)) {}

    std::vector<Rational> masses_;
    std::vector<Rational> stiffness_;
    std::vector<Rational> damping_;
};

/// Checks the physical constraints; throws Error with TooFewMasses,
/// LengthMismatch, NonPositiveMass, NonPositiveStiffness or NegativeDamping.
ChainSpec validate_spec(const RawChainSpec& raw);

/// Mass-scaled tridiagonal coupling matrix X(x_1..x_{N-1}).
///
/// Row i holds the force on mass i per unit relative displacement of its
/// neighbours, divided by m_i:
///   X(i,i-1) = -x_{i-1}/m_i,  X(i,i) = (x_{i-1} + x_i)/m_i,  X(i,i+1) = -x_i/m_i
/// with the out-of-range couplings treated as absent. Every row sums to zero.
/// Stiffness matrix K = X(k), damping matrix C = X(c).
RationalMatrix build_coupling_matrix(std::span<const Rational> values, std::span<const Rational> masses);

/// Exact single-input single-output realization  z' = F z + g u,  y = h z
/// of dimension 2N, with state (positions, velocities).
class StateSpaceModel {
public:
    StateSpaceModel(RationalMatrix f, RationalVector g, RationalVector h);

    std::size_t dim() const noexcept { return f_.rows(); }
    std::size_t n_masses() const noexcept { return f_.rows() / 2; }
    const RationalMatrix& f() const noexcept { return f_; }
    std::span<const Rational> g() const noexcept { return g_; }
    std::span<const Rational> h() const noexcept { return h_; }

    friend bool operator==(const StateSpaceModel&, const StateSpaceModel&) = default;

private:
    RationalMatrix f_;
    RationalVector g_;
    RationalVector h_;
};

/// F = [[0, I], [-K, -C]],  g = e_{N+1}/m_1 (force on the first mass),
/// h = e_N (position of the last mass). No direct feedthrough.
StateSpaceModel assemble_state_space(const ChainSpec& spec);

/// Total momentum rate sum_i m_i (F z)_{N+i}; identically zero for a chain model.
Rational momentum_rate(const ChainSpec& spec, const StateSpaceModel& model, std::span<const Rational> state);

}  // namespace springchain
