#include "springchain/poly_engine.hpp"

#include <bit>
#include <sstream>
#include <string>

#include "springchain/error.hpp"

namespace springchain {
namespace {

void check_cap(std::size_t dim, std::size_t cap) {
    if (dim > cap) {
        throw Error(ErrorCode::OracleDimensionExceeded,
                    "dimension " + std::to_string(dim) + " exceeds oracle cap " + std::to_string(cap));
    }
}

// b_link / m_mass with b_link = k + z c, both indices 0-based.
RationalPoly scaled_link(const ChainSpec& spec, std::size_t link, std::size_t mass) {
    const Rational inv_m = 1 / Rational(spec.masses()[mass]);
    return RationalPoly::linear(spec.stiffness()[link] * inv_m, spec.damping()[link] * inv_m);
}

const RationalPoly& z_squared() {
    static const RationalPoly z2 = RationalPoly::monomial(1, 2);
    return z2;
}

}  // namespace

PolyMatrix PolyMatrix::minor(std::size_t row, std::size_t col) const {
    PolyMatrix out(n_ - 1);
    for (std::size_t r = 0, rr = 0; r < n_; ++r) {
        if (r == row) continue;
        for (std::size_t c = 0, cc = 0; c < n_; ++c) {
            if (c == col) continue;
            out(rr, cc++) = (*this)(r, c);
        }
        ++rr;
    }
    return out;
}

PolyMatrix characteristic_matrix(const RationalMatrix& f) {
    if (f.rows() != f.cols()) throw Error(ErrorCode::LengthMismatch, "characteristic matrix needs a square F");
    PolyMatrix a(f.rows());
    for (std::size_t r = 0; r < f.rows(); ++r) {
        for (std::size_t c = 0; c < f.cols(); ++c) {
            a(r, c) = RationalPoly::linear(-f(r, c), r == c ? Rational(1) : Rational(0));
        }
    }
    return a;
}

RationalPoly bareiss_determinant(PolyMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return RationalPoly::constant(1);
    bool negate = false;
    RationalPoly previous = RationalPoly::constant(1);

    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m(swap_row, k).is_zero()) ++swap_row;
            if (swap_row == n) return {};
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap_row, c));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                RationalPoly num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                m(i, j) = exact_quotient(num, previous);
            }
            m(i, k) = RationalPoly{};
        }
        previous = m(k, k);
    }
    RationalPoly det = m(n - 1, n - 1);
    return negate ? -det : det;
}

RecursionState initial_recursion_state() {
    return RecursionState{z_squared(), RationalPoly::constant(1), 1};
}

RecursionState advance_recursion(const RecursionState& state, const ChainSpec& spec) {
    const std::size_t level = state.level;
    if (level >= spec.n()) throw Error(ErrorCode::InvalidArgument, "recursion already at the last mass");
    // 0-based: link level-1 joins masses level-1 and level.
    const std::size_t link = level - 1;
    const RationalPoly link_over_last = scaled_link(spec, link, level - 1);
    const RationalPoly link_over_next = scaled_link(spec, link, level);
    const RationalPoly carried = link_over_last * state.d_previous;

    RecursionState next;
    next.p_current = (z_squared() + link_over_next) * state.p_current + z_squared() * carried;
    next.d_previous = state.p_current + carried;
    next.level = level + 1;
    return next;
}

RationalPoly char_poly_recursive(const ChainSpec& spec) {
    RecursionState state = initial_recursion_state();
    while (state.level < spec.n()) state = advance_recursion(state, spec);
    return state.p_current;
}

RationalPoly char_poly_det_oracle(const StateSpaceModel& model, std::size_t cap) {
    check_cap(model.dim(), cap);
    return bareiss_determinant(characteristic_matrix(model.f()));
}

RationalPoly AdjointFactorization::expand() const {
    RationalPoly out = RationalPoly::constant(scale);
    for (const auto& f : factors) out *= RationalPoly::linear(f.constant, f.slope);
    return out;
}

std::string AdjointFactorization::to_string(const std::string& var) const {
    std::ostringstream os;
    os << springchain::to_string(scale);
    for (const auto& f : factors) os << " * (" << RationalPoly::linear(f.constant, f.slope).to_string(var) << ')';
    return os.str();
}

AdjointFactorization adjoint_poly_closed_form(const ChainSpec& spec) {
    AdjointFactorization out;
    Rational mass_product = 1;
    for (const auto& m : spec.masses()) mass_product *= m;
    out.scale = 1 / mass_product;
    for (std::size_t i = 0; i + 1 < spec.n(); ++i) {
        const Rational& k = spec.stiffness()[i];
        const Rational& c = spec.damping()[i];
        out.factors.push_back({k, c});
        if (c > 0) out.roots.push_back(-k / c);
    }
    return out;
}

RationalPoly adjoint_cofactor_oracle(const StateSpaceModel& model, std::size_t cap) {
    check_cap(model.dim(), cap);
    const PolyMatrix a = characteristic_matrix(model.f());
    RationalPoly total;
    // h adj(a) g = sum_{i,j} h_i g_j (-1)^{i+j} det(a without row j, column i).
    for (std::size_t i = 0; i < model.dim(); ++i) {
        if (model.h()[i] == 0) continue;
        for (std::size_t j = 0; j < model.dim(); ++j) {
            if (model.g()[j] == 0) continue;
            RationalPoly cofactor = bareiss_determinant(a.minor(j, i));
            if ((i + j) % 2 == 1) cofactor = -cofactor;
            total += cofactor * (model.h()[i] * model.g()[j]);
        }
    }
    return total;
}

RationalPoly coefficient_expansion_check(const ChainSpec& spec, ExpansionIndexRule rule) {
    const std::size_t n = spec.n();
    if (n > 4) {
        throw Error(ErrorCode::OracleDimensionExceeded,
                    "coefficient expansion is limited to N <= 4, got N = " + std::to_string(n));
    }
    const unsigned links = static_cast<unsigned>(n - 1);
    const unsigned masses = static_cast<unsigned>(n);

    // Each link joins its two masses; a forest is valid when every tree holds
    // exactly one mass outside `scaled`.
    auto rooted_forest = [&](unsigned edge_mask, unsigned scaled_mask) {
        unsigned roots_in_tree = 0;
        for (unsigned v = 0; v < masses; ++v) {
            if (!(scaled_mask >> v & 1u)) ++roots_in_tree;
            const bool tree_ends = v + 1 == masses || !(edge_mask >> v & 1u);
            if (tree_ends) {
                if (roots_in_tree != 1) return false;
                roots_in_tree = 0;
            }
        }
        return true;
    };

    std::vector<Rational> coeffs(2 * n + 1);
    for (unsigned rho = 0; rho <= 2 * n - 2; ++rho) {
        for (unsigned m_count = 0; 2 * m_count <= rho; ++m_count) {
            const unsigned r_count = rho - 2 * m_count;
            Rational sum = 0;
            for (unsigned r_mask = 0; r_mask < (1u << links); ++r_mask) {
                if (std::popcount(r_mask) != static_cast<int>(m_count)) continue;
                for (unsigned s_mask = 0; s_mask < (1u << links); ++s_mask) {
                    if (std::popcount(s_mask) != static_cast<int>(r_count)) continue;
                    if (rule == ExpansionIndexRule::kRootedForest && (r_mask & s_mask)) continue;
                    for (unsigned t_mask = 0; t_mask < (1u << masses); ++t_mask) {
                        if (std::popcount(t_mask) != static_cast<int>(m_count + r_count)) continue;
                        if (rule == ExpansionIndexRule::kRootedForest && !rooted_forest(r_mask | s_mask, t_mask))
                            continue;
                        Rational term = 1;
                        for (unsigned i = 0; i < links; ++i) {
                            if (r_mask >> i & 1u) term *= spec.stiffness()[i];
                            if (s_mask >> i & 1u) term *= spec.damping()[i];
                        }
                        for (unsigned v = 0; v < masses; ++v) {
                            if (t_mask >> v & 1u) term /= spec.masses()[v];
                        }
                        sum += term;
                    }
                }
            }
            coeffs[2 * n - rho] += sum;
        }
    }
    return RationalPoly(std::move(coeffs));
}

}  // namespace springchain
