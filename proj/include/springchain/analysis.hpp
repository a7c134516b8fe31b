#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "springchain/chain_model.hpp"
#include "springchain/poly_engine.hpp"
#include "springchain/rational_poly.hpp"

namespace springchain {

/// Joint controllability/observability decision for a chain.
///
/// For a continuous-time LTI system reachability and controllability
/// coincide, as do observability and reconstructibility, independently of the
/// time horizon. The four properties therefore reduce to a single flag: the
/// pair (F, g) is reachable and (F, h) is observable exactly when
/// det(zI - F) and h adj(zI - F) g have no common root.
struct Verdict {
    std::size_t n = 0;
    bool controllable_observable = false;
    RationalPoly char_poly;
    RationalPoly adjoint_poly;
    AdjointFactorization adjoint_factors;
    /// Monic gcd of char_poly and adjoint_poly.
    RationalPoly gcd;
    /// Distinct common roots, ascending. Always among the -k_i/c_i.
    std::vector<Rational> common_roots;
    bool proportionality_holds = false;
    std::size_t kalman_control_rank = 0;
    std::size_t kalman_observe_rank = 0;
};

/// Runs the coprimality test and both Kalman rank oracles. Throws
/// std::logic_error if the two routes disagree, which would indicate a bug.
Verdict decide(const ChainSpec& spec);

/// True iff every ratio c_i/k_i is the same exact rational (all-zero damping included).
bool proportionality_check(const ChainSpec& spec);

/// beta_ij = k_i - k_j c_i / c_j (0-based links, c_j > 0); zero for all pairs
/// exactly when the chain is proportional.
Rational proportionality_residual(const ChainSpec& spec, std::size_t i, std::size_t j);

/// Exact rank of [g, Fg, ..., F^{2N-1} g].
std::size_t kalman_controllability_rank(const StateSpaceModel& model, std::size_t cap = kDefaultOracleCap);
/// Exact rank of [h; hF; ...; hF^{2N-1}].
std::size_t kalman_observability_rank(const StateSpaceModel& model, std::size_t cap = kDefaultOracleCap);

/// Three-mass chain whose first adjoint root z1 = -k1/c1 is also a root of P_3.
struct CounterexampleN3 {
    std::array<Rational, 3> masses;
    Rational k1;
    Rational c1;
    Rational c2;
    Rational k2;           // derived
    Rational common_root;  // -k1/c1
    Rational h_sum;        // 1/m2 + 1/m3

    ChainSpec spec() const;
};

/// Solves k1^2/c1^2 + (k2 - (k1/c1) c2) H = 0 for k2, H = 1/m2 + 1/m3.
/// Requires c1 > 0, c2 >= 0, k1 > 0 and positive masses; throws
/// DerivedStiffnessNonPositive when the solution k2 is not positive.
CounterexampleN3 make_counterexample_n3(const std::array<Rational, 3>& masses, const Rational& k1, const Rational& c1,
                                        const Rational& c2);

/// Searches integer stiffness pairs 1 <= k1, k2 <= search_bound for a
/// non-proportional chain where neither adjoint root is a root of P_3,
/// checking candidates by exact evaluation of P_3. Throws SearchExhausted.
ChainSpec make_controllable_nonproportional_n3(const std::array<Rational, 3>& masses, const Rational& c1,
                                               const Rational& c2, unsigned search_bound = 12);

}  // namespace springchain
