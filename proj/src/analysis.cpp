#include "springchain/analysis.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "springchain/error.hpp"

namespace springchain {
namespace {

// Gaussian elimination over Q on row vectors. Kept separate from the
// polynomial determinant code so the rank check stays an independent route.
std::size_t exact_rank(std::vector<RationalVector> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        const Rational inv = 1 / rows[rank][col];
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            const Rational factor = rows[r][col] * inv;
            for (std::size_t c = col; c < cols; ++c) rows[r][c] -= factor * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

void check_cap(const StateSpaceModel& model, std::size_t cap) {
    if (model.dim() > cap) {
        throw Error(ErrorCode::OracleDimensionExceeded,
                    "dimension " + std::to_string(model.dim()) + " exceeds oracle cap " + std::to_string(cap));
    }
}

ChainSpec chain_from(const std::array<Rational, 3>& masses, const Rational& k1, const Rational& k2,
                     const Rational& c1, const Rational& c2) {
    RawChainSpec raw;
    raw.masses.assign(masses.begin(), masses.end());
    raw.stiffness = {k1, k2};
    raw.damping = {c1, c2};
    return validate_spec(raw);
}

}  // namespace

bool proportionality_check(const ChainSpec& spec) {
    const Rational ratio = spec.damping()[0] / spec.stiffness()[0];
    for (std::size_t i = 1; i + 1 < spec.n(); ++i) {
        if (spec.damping()[i] / spec.stiffness()[i] != ratio) return false;
    }
    return true;
}

Rational proportionality_residual(const ChainSpec& spec, std::size_t i, std::size_t j) {
    if (i + 1 >= spec.n() || j + 1 >= spec.n()) throw Error(ErrorCode::InvalidArgument, "link index out of range");
    if (spec.damping()[j] == 0) throw Error(ErrorCode::InvalidArgument, "residual needs c_j > 0");
    return spec.stiffness()[i] - spec.stiffness()[j] * spec.damping()[i] / spec.damping()[j];
}

std::size_t kalman_controllability_rank(const StateSpaceModel& model, std::size_t cap) {
    check_cap(model, cap);
    std::vector<RationalVector> krylov;
    krylov.emplace_back(model.g().begin(), model.g().end());
    while (krylov.size() < model.dim()) krylov.push_back(model.f() * std::span<const Rational>(krylov.back()));
    return exact_rank(std::move(krylov));
}

std::size_t kalman_observability_rank(const StateSpaceModel& model, std::size_t cap) {
    check_cap(model, cap);
    std::vector<RationalVector> krylov;
    krylov.emplace_back(model.h().begin(), model.h().end());
    while (krylov.size() < model.dim()) krylov.push_back(std::span<const Rational>(krylov.back()) * model.f());
    return exact_rank(std::move(krylov));
}

Verdict decide(const ChainSpec& spec) {
    const StateSpaceModel model = assemble_state_space(spec);
    Verdict v;
    v.n = spec.n();
    v.char_poly = char_poly_recursive(spec);
    v.adjoint_factors = adjoint_poly_closed_form(spec);
    v.adjoint_poly = v.adjoint_factors.expand();
    v.gcd = poly_gcd(v.char_poly, v.adjoint_poly);
    v.controllable_observable = v.gcd.is_constant();

    for (const auto& root : v.adjoint_factors.roots) {
        if (poly_eval(v.gcd, root) == 0) v.common_roots.push_back(root);
    }
    std::sort(v.common_roots.begin(), v.common_roots.end());
    v.common_roots.erase(std::unique(v.common_roots.begin(), v.common_roots.end()), v.common_roots.end());

    v.proportionality_holds = proportionality_check(spec);
    // The rank oracles always run here, whatever the dimension.
    v.kalman_control_rank = kalman_controllability_rank(model, model.dim());
    v.kalman_observe_rank = kalman_observability_rank(model, model.dim());

    const bool full_rank = v.kalman_control_rank == model.dim() && v.kalman_observe_rank == model.dim();
    if (full_rank != v.controllable_observable) {
        throw std::logic_error("coprimality test and Kalman ranks disagree");
    }
    if (v.common_roots.empty() != v.controllable_observable) {
        throw std::logic_error("gcd roots are not adjoint roots");
    }
    return v;
}

ChainSpec CounterexampleN3::spec() const {
    return chain_from(masses, k1, k2, c1, c2);
}

CounterexampleN3 make_counterexample_n3(const std::array<Rational, 3>& masses, const Rational& k1, const Rational& c1,
                                        const Rational& c2) {
    for (const auto& m : masses) {
        if (m <= 0) throw Error(ErrorCode::NonPositiveMass, "masses must be positive");
    }
    if (k1 <= 0) throw Error(ErrorCode::NonPositiveStiffness, "k1 must be positive");
    if (c1 <= 0) throw Error(ErrorCode::InvalidArgument, "c1 must be positive so that -k1/c1 is an adjoint root");
    if (c2 < 0) throw Error(ErrorCode::NegativeDamping, "c2 must be non-negative");

    CounterexampleN3 out;
    out.masses = masses;
    out.k1 = k1;
    out.c1 = c1;
    out.c2 = c2;
    out.h_sum = 1 / masses[1] + 1 / masses[2];
    const Rational ratio = k1 / c1;
    out.k2 = ratio * c2 - ratio * ratio / out.h_sum;
    out.common_root = -ratio;
    if (out.k2 <= 0) {
        throw Error(ErrorCode::DerivedStiffnessNonPositive,
                    "derived k2 = " + to_string(out.k2) + " is not a physical stiffness");
    }
    return out;
}

ChainSpec make_controllable_nonproportional_n3(const std::array<Rational, 3>& masses, const Rational& c1,
                                               const Rational& c2, unsigned search_bound) {
    if (c1 <= 0 || c2 <= 0) throw Error(ErrorCode::InvalidArgument, "c1 and c2 must be positive");
    for (unsigned a = 1; a <= search_bound; ++a) {
        for (unsigned b = 1; b <= search_bound; ++b) {
            const Rational k1 = a;
            const Rational k2 = b;
            if (c1 / k1 == c2 / k2) continue;
            const ChainSpec spec = chain_from(masses, k1, k2, c1, c2);
            const RationalPoly p3 = char_poly_recursive(spec);
            if (poly_eval(p3, -k1 / c1) == 0 || poly_eval(p3, -k2 / c2) == 0) continue;
            return spec;
        }
    }
    throw Error(ErrorCode::SearchExhausted, "no controllable non-proportional stiffness pair within the bound");
}

}  // namespace springchain
