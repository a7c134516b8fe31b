#include "springchain/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "springchain/error.hpp"

namespace springchain {
namespace {

void check_finite_scalar(double value, const char* what) {
    if (!std::isfinite(value)) throw Error(ErrorCode::BadStep, std::string(what) + " must be finite");
}

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", value);
    return buf;
}

Vector rk4_step(const FloatModel& model, const Vector& z, const InputFunction& u, double t, double h) {
    auto rate = [&](const Vector& x, double time) -> Vector { return model.f * x + model.g * u(time); };
    const Vector k1 = rate(z, t);
    const Vector k2 = rate(z + 0.5 * h * k1, t + 0.5 * h);
    const Vector k3 = rate(z + 0.5 * h * k2, t + 0.5 * h);
    const Vector k4 = rate(z + h * k3, t + h);
    return z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct IntervalMap {
    Matrix a;
    Vector b0;
    Vector b1;
};

// One RK4 step of length h as an affine map of (z_j, u_j, u_{j+1}) for an
// input linear over the interval.
IntervalMap interval_map(const FloatModel& model, double h) {
    const auto n = static_cast<Eigen::Index>(model.dim());
    const InputFunction none = [](double) { return 0.0; };
    IntervalMap map{Matrix(n, n), Vector(), Vector()};
    for (Eigen::Index c = 0; c < n; ++c) map.a.col(c) = rk4_step(model, Vector::Unit(n, c), none, 0.0, h);
    map.b0 = rk4_step(model, Vector::Zero(n), [h](double t) { return 1.0 - t / h; }, 0.0, h);
    map.b1 = rk4_step(model, Vector::Zero(n), [h](double t) { return t / h; }, 0.0, h);
    return map;
}

}  // namespace

FloatModel to_float(const StateSpaceModel& model) {
    const auto n = static_cast<Eigen::Index>(model.dim());
    FloatModel out{Matrix(n, n), Vector(n), Eigen::RowVectorXd(n)};
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) out.f(r, c) = to_double(model.f()(r, c));
        out.g(r) = to_double(model.g()[r]);
        out.h(r) = to_double(model.h()[r]);
    }
    return out;
}

std::vector<double> masses_as_double(const ChainSpec& spec) {
    std::vector<double> out;
    for (const auto& m : spec.masses()) out.push_back(to_double(m));
    return out;
}

double momentum(std::span<const double> masses, const Vector& state) {
    const std::size_t n = masses.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += masses[i] * state(static_cast<Eigen::Index>(n + i));
    return total;
}

PiecewiseLinearInput::PiecewiseLinearInput(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
    if (times_.empty() || times_.size() != values_.size())
        throw Error(ErrorCode::LengthMismatch, "piecewise-linear input needs matching, non-empty samples");
}

double PiecewiseLinearInput::operator()(double t) const {
    if (t <= times_.front()) return values_.front();
    if (t >= times_.back()) return values_.back();
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - times_.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
    return values_[lo] + w * (values_[hi] - values_[lo]);
}

std::vector<double> time_grid(double horizon, double step) {
    check_finite_scalar(horizon, "horizon");
    check_finite_scalar(step, "step");
    if (step <= 0.0) throw Error(ErrorCode::BadStep, "step must be positive");
    if (horizon < step) throw Error(ErrorCode::BadStep, "horizon must be at least one step");
    const auto intervals = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
    std::vector<double> times(intervals + 1);
    for (std::size_t j = 0; j < intervals; ++j) times[j] = static_cast<double>(j) * step;
    times[intervals] = horizon;
    return times;
}

void Trajectory::write_csv(std::ostream& os) const {
    const std::size_t dim = states.empty() ? 0 : static_cast<std::size_t>(states.front().size());
    os << 't';
    for (std::size_t i = 1; i <= dim; ++i) os << ",z" << i;
    os << ",y,u\n";
    for (std::size_t j = 0; j < times.size(); ++j) {
        os << format_number(times[j]);
        for (std::size_t i = 0; i < dim; ++i) os << ',' << format_number(states[j](static_cast<Eigen::Index>(i)));
        os << ',' << format_number(outputs[j]) << ',' << format_number(inputs[j]) << '\n';
    }
}

Trajectory simulate(const FloatModel& model, const Vector& z0, const InputFunction& u, double horizon, double step) {
    if (static_cast<std::size_t>(z0.size()) != model.dim())
        throw Error(ErrorCode::LengthMismatch, "initial state has the wrong dimension");
    const std::vector<double> grid = time_grid(horizon, step);
    const auto out_index = static_cast<Eigen::Index>(model.n_masses() - 1);

    Trajectory traj;
    traj.times = grid;
    traj.states.reserve(grid.size());
    traj.outputs.reserve(grid.size());
    traj.inputs.reserve(grid.size());

    Vector z = z0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (j > 0) z = rk4_step(model, z, u, grid[j - 1], grid[j] - grid[j - 1]);
        if (!z.allFinite()) {
            throw Error(ErrorCode::NonFiniteState, "state became non-finite at t = " + format_number(grid[j]));
        }
        traj.states.push_back(z);
        // h selects one position, so y is that component exactly.
        traj.outputs.push_back(z(out_index));
        traj.inputs.push_back(u(grid[j]));
    }
    return traj;
}

Trajectory simulate(const StateSpaceModel& model, const Vector& z0, const InputFunction& u, double horizon,
                    double step) {
    return simulate(to_float(model), z0, u, horizon, step);
}

Matrix matrix_exponential(const Matrix& m, double t) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::LengthMismatch, "matrix exponential needs a square matrix");
    if (!m.allFinite() || !std::isfinite(t)) throw Error(ErrorCode::NonFinite, "matrix exponential of non-finite input");
    Matrix a = m * t;
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    a /= std::ldexp(1.0, squarings);

    // ||a|| <= 1/2, so 20 terms leave a remainder far below double epsilon.
    const auto n = a.rows();
    Matrix result = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    for (int k = 1; k <= 20; ++k) {
        term = (term * a) / static_cast<double>(k);
        result += term;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    if (!result.allFinite()) throw Error(ErrorCode::NonFinite, "matrix exponential overflowed");
    return result;
}

Matrix reachability_gramian(const FloatModel& model, double horizon, double step) {
    const std::vector<double> grid = time_grid(horizon, step);
    const Matrix source = model.g * model.g.transpose();
    auto rate = [&](const Matrix& w) -> Matrix {
        Matrix fw = model.f * w;
        return fw + fw.transpose() + source;
    };
    const auto n = static_cast<Eigen::Index>(model.dim());
    Matrix w = Matrix::Zero(n, n);
    for (std::size_t j = 1; j < grid.size(); ++j) {
        const double h = grid[j] - grid[j - 1];
        const Matrix k1 = rate(w);
        const Matrix k2 = rate(w + 0.5 * h * k1);
        const Matrix k3 = rate(w + 0.5 * h * k2);
        const Matrix k4 = rate(w + h * k3);
        w += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return 0.5 * (w + w.transpose());
}

Matrix reachability_gramian(const StateSpaceModel& model, double horizon, double step) {
    return reachability_gramian(to_float(model), horizon, step);
}

double eigenvalue_ratio(const Matrix& symmetric) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric, Eigen::EigenvaluesOnly);
    const Vector& ev = solver.eigenvalues();
    const double largest = ev.cwiseAbs().maxCoeff();
    if (largest == 0.0) return 0.0;
    return ev.minCoeff() / largest;
}

void ControlPlan::write_csv(std::ostream& os) const {
    os << "t,u\n";
    for (std::size_t j = 0; j < times.size(); ++j) os << format_number(times[j]) << ',' << format_number(samples[j]) << '\n';
}

ControlPlan min_energy_control(const StateSpaceModel& model, const Verdict& verdict, const Vector& z0,
                               const Vector& target, double horizon, double step) {
    if (verdict.n != model.n_masses()) throw Error(ErrorCode::InvalidArgument, "verdict belongs to another chain");
    if (verdict.kalman_control_rank != model.dim()) {
        throw Error(ErrorCode::NotControllable, "the chain is not completely controllable; common roots exist");
    }
    const FloatModel fm = to_float(model);
    if (static_cast<std::size_t>(z0.size()) != fm.dim() || static_cast<std::size_t>(target.size()) != fm.dim())
        throw Error(ErrorCode::LengthMismatch, "state vectors have the wrong dimension");

    ControlPlan plan;
    plan.horizon = horizon;
    plan.step = step;
    plan.times = time_grid(horizon, step);
    plan.initial_state = z0;
    plan.target_state = target;

    const Matrix gramian = reachability_gramian(fm, horizon, step);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gramian, Eigen::EigenvaluesOnly);
    const double smallest = eig.eigenvalues().minCoeff();
    const double largest = eig.eigenvalues().maxCoeff();
    plan.gramian_condition = smallest > 0.0 ? largest / smallest : std::numeric_limits<double>::infinity();
    plan.ill_conditioned = !(plan.gramian_condition <= kIllConditionedGramian);

    // The plan is the minimum-energy input of the system simulate() actually
    // integrates: RK4 with u linear between grid nodes. Over one interval
    //   z_{j+1} = A z_j + b0 u_j + b1 u_{j+1},
    // so z(T) = Phi z0 + sum_j B_j u_j with B_j = S_j b0 + S_{j-1} b1, S_j the
    // propagator from the end of interval j to T. As the step shrinks this
    // tends to the continuous formula, B_j/w_j -> e^{F (T - t_j)} g.
    const std::size_t nodes = plan.times.size();
    const std::size_t intervals = nodes - 1;
    const auto dim = static_cast<Eigen::Index>(fm.dim());
    const IntervalMap regular = interval_map(fm, plan.times[1] - plan.times[0]);
    const IntervalMap last = interval_map(fm, plan.times[nodes - 1] - plan.times[nodes - 2]);

    Matrix columns = Matrix::Zero(dim, static_cast<Eigen::Index>(nodes));
    Matrix propagator = Matrix::Identity(dim, dim);  // S_j, starting at j = last interval
    for (std::size_t j = intervals; j-- > 0;) {
        const IntervalMap& map = j + 1 == intervals ? last : regular;
        columns.col(static_cast<Eigen::Index>(j)) += propagator * map.b0;
        columns.col(static_cast<Eigen::Index>(j + 1)) += propagator * map.b1;
        propagator = propagator * map.a;
    }
    const Vector drift = target - propagator * z0;

    // Minimise sum_j w_j u_j^2 (trapezoid weights) subject to columns * u = drift.
    // With v = sqrt(w) u this is the least-norm solution of M v = drift,
    // M = columns * diag(1/sqrt(w)), taken from a QR factorization of M^T so
    // the working condition number is sqrt(cond(W)) rather than cond(W).
    Vector root_w(static_cast<Eigen::Index>(nodes));
    for (std::size_t j = 0; j < nodes; ++j) {
        const double left = j > 0 ? plan.times[j] - plan.times[j - 1] : 0.0;
        const double right = j + 1 < nodes ? plan.times[j + 1] - plan.times[j] : 0.0;
        root_w(static_cast<Eigen::Index>(j)) = std::sqrt(0.5 * (left + right));
    }
    const Matrix scaled_t = (columns * root_w.cwiseInverse().asDiagonal()).transpose();
    Eigen::HouseholderQR<Matrix> qr(scaled_t);
    const Matrix r = qr.matrixQR().topRows(dim).triangularView<Eigen::Upper>();
    // M v = drift with v = Q y  =>  R^T y = drift.
    const Vector y = r.transpose().triangularView<Eigen::Lower>().solve(drift);
    Vector padded = Vector::Zero(static_cast<Eigen::Index>(nodes));
    padded.head(dim) = y;
    const Vector v = qr.householderQ() * padded;
    const Vector u = v.cwiseQuotient(root_w);
    plan.samples.assign(u.data(), u.data() + u.size());
    for (double u : plan.samples) {
        if (!std::isfinite(u)) throw Error(ErrorCode::NonFinite, "control samples are not finite");
    }
    return plan;
}

Reconstruction reconstruct_initial_state(const FloatModel& model, std::span<const OutputSample> samples,
                                         double noise_floor) {
    const auto dim = static_cast<Eigen::Index>(model.dim());
    std::vector<double> distinct;
    for (const auto& s : samples) {
        if (!std::isfinite(s.t) || !std::isfinite(s.y)) throw Error(ErrorCode::NonFinite, "non-finite sample");
        distinct.push_back(s.t);
    }
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < model.dim()) {
        throw Error(ErrorCode::InsufficientSamples, "need at least " + std::to_string(model.dim()) +
                                                        " samples at distinct times, got " +
                                                        std::to_string(distinct.size()));
    }

    const auto rows = static_cast<Eigen::Index>(samples.size());
    Matrix regressor(rows, dim);
    Vector observed(rows);
    for (Eigen::Index j = 0; j < rows; ++j) {
        const auto& s = samples[static_cast<std::size_t>(j)];
        regressor.row(j) = model.h * matrix_exponential(model.f, s.t);
        observed(j) = s.y;
    }

    Vector scale = regressor.colwise().norm().transpose();
    for (Eigen::Index c = 0; c < dim; ++c) {
        if (scale(c) == 0.0) scale(c) = 1.0;
    }
    const Matrix equilibrated = regressor * scale.cwiseInverse().asDiagonal();
    Eigen::ColPivHouseholderQR<Matrix> qr(equilibrated);
    qr.setThreshold(kRegressorRankTolerance);

    Reconstruction out;
    out.rank = static_cast<std::size_t>(qr.rank());
    if (out.rank < model.dim()) {
        throw Error(ErrorCode::RankDeficientRegressor,
                    "output regressor has rank " + std::to_string(out.rank) + " < " + std::to_string(model.dim()));
    }
    out.state = qr.solve(observed).cwiseQuotient(scale);
    out.residual_rms = std::sqrt((regressor * out.state - observed).squaredNorm() / static_cast<double>(rows));
    out.within_noise_floor = out.residual_rms <= noise_floor;
    return out;
}

Reconstruction reconstruct_initial_state(const StateSpaceModel& model, const Verdict& verdict,
                                         std::span<const OutputSample> samples, double noise_floor) {
    if (verdict.n != model.n_masses()) throw Error(ErrorCode::InvalidArgument, "verdict belongs to another chain");
    if (verdict.kalman_observe_rank != model.dim()) {
        throw Error(ErrorCode::NotObservable, "the chain is not completely observable; common roots exist");
    }
    return reconstruct_initial_state(to_float(model), samples, noise_floor);
}

std::vector<OutputSample> sample_outputs(const Trajectory& trajectory, std::size_t stride) {
    if (stride == 0) throw Error(ErrorCode::InvalidArgument, "sample stride must be positive");
    std::vector<OutputSample> out;
    for (std::size_t j = 0; j < trajectory.times.size(); j += stride) out.push_back({trajectory.times[j], trajectory.outputs[j]});
    return out;
}

RoadProfile RoadProfile::flat() {
    return {"flat", [](double) { return 0.0; }, [](double) { return 0.0; }};
}

RoadProfile RoadProfile::step(double height, double time) {
    auto height_fn = [=](double t) {
        if (t <= time) return 0.0;
        if (t >= time + kStepRise) return height;
        return 0.5 * height * (1.0 - std::cos(std::numbers::pi * (t - time) / kStepRise));
    };
    auto rate_fn = [=](double t) {
        if (t <= time || t >= time + kStepRise) return 0.0;
        return 0.5 * height * std::numbers::pi / kStepRise * std::sin(std::numbers::pi * (t - time) / kStepRise);
    };
    return {"step:" + format_number(height) + ":" + format_number(time), height_fn, rate_fn};
}

RoadProfile RoadProfile::sine(double amplitude, double frequency_hz) {
    const double omega = 2.0 * std::numbers::pi * frequency_hz;
    return {"sine:" + format_number(amplitude) + ":" + format_number(frequency_hz),
            [=](double t) { return amplitude * std::sin(omega * t); },
            [=](double t) { return amplitude * omega * std::cos(omega * t); }};
}

RoadProfile RoadProfile::parse(std::string_view text) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    parts.push_back(current);

    auto number = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad number '" + s + "' in road profile '" + std::string(text) + "'");
        }
    };
    if (parts.size() == 1 && parts[0] == "flat") return flat();
    if (parts.size() == 3 && parts[0] == "step") return step(number(parts[1]), number(parts[2]));
    if (parts.size() == 3 && parts[0] == "sine") return sine(number(parts[1]), number(parts[2]));
    throw Error(ErrorCode::ParseError,
                "unknown road profile '" + std::string(text) + "' (flat, step:<h>:<t>, sine:<amp>:<freq>)");
}

void QuarterCarSpec::validate() const {
    for (double v : {m1, m2, k1, c1, k, c}) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "quarter-car parameters must be finite");
    }
    if (m1 <= 0.0 || m2 <= 0.0) throw Error(ErrorCode::NonPositiveMass, "wheel and body masses must be positive");
    if (k1 <= 0.0 || k <= 0.0) throw Error(ErrorCode::NonPositiveStiffness, "stiffnesses must be positive");
    if (c1 < 0.0 || c < 0.0) throw Error(ErrorCode::NegativeDamping, "dampings must be non-negative");
    if (initial_state.size() != 4) throw Error(ErrorCode::LengthMismatch, "initial state must have 4 entries");
    if (!road.height || !road.rate) throw Error(ErrorCode::InvalidArgument, "road profile is empty");
}

ChainSpec QuarterCarSpec::chain() const {
    validate();
    RawChainSpec raw;
    raw.masses = {rational_from_double(m1), rational_from_double(m2)};
    raw.stiffness = {rational_from_double(k1)};
    raw.damping = {rational_from_double(c1)};
    return validate_spec(raw);
}

QuarterCarRun quarter_car_demo(const QuarterCarSpec& spec, double horizon, double step) {
    const ChainSpec chain = spec.chain();
    const FloatModel open = to_float(assemble_state_space(chain));

    // Tyre force k (z_r - z1) + c (z_r' - z1'): the state part joins F,
    // the road part k z_r + c z_r' is the external input through g.
    FloatModel closed = open;
    Eigen::RowVectorXd tyre = Eigen::RowVectorXd::Zero(4);
    tyre(0) = spec.k;
    tyre(2) = spec.c;
    closed.f -= closed.g * tyre;

    const RoadProfile road = spec.road;
    const double k = spec.k;
    const double c = spec.c;
    const InputFunction road_force = [road, k, c](double t) { return k * road.height(t) + c * road.rate(t); };

    QuarterCarRun run;
    run.trajectory = simulate(closed, spec.initial_state, road_force, horizon, step);
    for (std::size_t j = 0; j < run.trajectory.times.size(); ++j) {
        const double t = run.trajectory.times[j];
        const Vector& z = run.trajectory.states[j];
        run.trajectory.inputs[j] = k * (road.height(t) - z(0)) + c * (road.rate(t) - z(2));
    }

    const Trajectory forced = simulate(closed, Vector::Zero(4), road_force, horizon, step);
    const std::size_t nodes = run.trajectory.times.size();
    const std::size_t stride = std::max<std::size_t>(1, nodes / 400);
    std::vector<OutputSample> samples;
    for (std::size_t j = 0; j < nodes; j += stride) {
        samples.push_back({run.trajectory.times[j], run.trajectory.outputs[j] - forced.outputs[j]});
    }
    run.samples_used = samples.size();
    run.reconstruction = reconstruct_initial_state(closed, samples, 1e-9);
    return run;
}

}  // namespace springchain
