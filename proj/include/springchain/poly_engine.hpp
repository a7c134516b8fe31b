#pragma once

#include <cstddef>
#include <vector>

#include "springchain/chain_model.hpp"
#include "springchain/rational_poly.hpp"

namespace springchain {

/// Largest state dimension the determinant-based oracles accept by default (N <= 8).
inline constexpr std::size_t kDefaultOracleCap = 16;

/// Square matrix over Q[z].
class PolyMatrix {
public:
    explicit PolyMatrix(std::size_t n) : n_(n), data_(n * n) {}
    std::size_t size() const noexcept { return n_; }
    RationalPoly& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    const RationalPoly& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    /// The matrix with row `row` and column `col` removed.
    PolyMatrix minor(std::size_t row, std::size_t col) const;

private:
    std::size_t n_;
    std::vector<RationalPoly> data_;
};

/// zI - F for a rational matrix F.
PolyMatrix characteristic_matrix(const RationalMatrix& f);

/// Fraction-free (Bareiss) determinant over Q[z]; every intermediate
/// division is exact polynomial division.
RationalPoly bareiss_determinant(PolyMatrix m);

/// P_L and D_{L-1} of the three-term characteristic recursion at level L.
struct RecursionState {
    RationalPoly p_current;   // P_L
    RationalPoly d_previous;  // D_{L-1}
    std::size_t level = 1;
};

/// Level 1: P_1 = z^2, D_0 = 1.
RecursionState initial_recursion_state();

/// One step L -> L+1 with b_L = k_L + z c_L:
///   P_{L+1} = (z^2 + b_L/m_{L+1}) P_L + z^2 (b_L/m_L) D_{L-1}
///   D_L     = P_L + (b_L/m_L) D_{L-1}
RecursionState advance_recursion(const RecursionState& state, const ChainSpec& spec);

/// det(zI - F_N) by iterating the recursion up to level N.
RationalPoly char_poly_recursive(const ChainSpec& spec);

/// det(zI - F) by Bareiss elimination. Throws OracleDimensionExceeded above `cap`.
RationalPoly char_poly_det_oracle(const StateSpaceModel& model, std::size_t cap = kDefaultOracleCap);

/// One factor (constant + slope*z) of the adjoint polynomial.
struct LinearFactor {
    Rational constant;  // k_i
    Rational slope;     // c_i
    friend bool operator==(const LinearFactor&, const LinearFactor&) = default;
};

/// h adj(zI - F) g = scale * prod_i (k_i + z c_i), scale = 1/(m_1 ... m_N).
struct AdjointFactorization {
    Rational scale;
    std::vector<LinearFactor> factors;
    /// -k_i/c_i for every factor with c_i > 0, in link order, repeats kept.
    std::vector<Rational> roots;

    RationalPoly expand() const;
    /// "1/6 * (1 + z) * (2 + 3*z)"
    std::string to_string(const std::string& var = "z") const;
};

AdjointFactorization adjoint_poly_closed_form(const ChainSpec& spec);

/// h adj(zI - F) g computed from signed minors of zI - F, each by Bareiss.
/// For a chain model this is -det(minor without row N+1, column N) / m_1.
RationalPoly adjoint_cofactor_oracle(const StateSpaceModel& model, std::size_t cap = kDefaultOracleCap);

/// Index constraint used when summing the coefficient expansion.
enum class ExpansionIndexRule {
    /// Springs r and dashpots s are disjoint links and, together with the
    /// scaled masses t, form a spanning forest of the path in which each tree
    /// holds exactly one unscaled mass. Reproduces P_N.
    kRootedForest,
    /// Every index combination with 2M + R = rho, with no coupling between
    /// r, s and t. Matches P_2 but over-counts from N = 3 on.
    kUnconstrained,
};

/// Coefficient-wise expansion
///   P_N = sum_rho sum_{2M+R=rho} sum_{r,s,t} (k_r1..k_rM c_s1..c_sR)/(m_t1..m_t(M+R)) z^(2N-rho).
/// Limited to N <= 4; throws OracleDimensionExceeded otherwise.
RationalPoly coefficient_expansion_check(const ChainSpec& spec,
                                         ExpansionIndexRule rule = ExpansionIndexRule::kRootedForest);

}  // namespace springchain
