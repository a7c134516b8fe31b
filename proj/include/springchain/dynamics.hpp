#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "springchain/analysis.hpp"
#include "springchain/chain_model.hpp"

namespace springchain {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kDefaultStep = 1e-3;
inline constexpr double kDefaultHorizon = 5.0;
/// Gramian condition number above which a control plan is flagged.
inline constexpr double kIllConditionedGramian = 1e12;
/// Relative pivot threshold for the reconstruction regressor.
inline constexpr double kRegressorRankTolerance = 1e-8;

/// Double-precision copy of a state-space model. The conversion happens once,
/// at the boundary between the exact algebra and the numerics.
struct FloatModel {
    Matrix f;
    Vector g;
    Eigen::RowVectorXd h;

    std::size_t dim() const { return static_cast<std::size_t>(f.rows()); }
    std::size_t n_masses() const { return dim() / 2; }
};

FloatModel to_float(const StateSpaceModel& model);
std::vector<double> masses_as_double(const ChainSpec& spec);

/// Total momentum sum_i m_i v_i of a state (positions, velocities).
double momentum(std::span<const double> masses, const Vector& state);

using InputFunction = std::function<double(double)>;

/// Input given by samples on a time grid, linearly interpolated and held
/// constant outside the grid.
class PiecewiseLinearInput {
public:
    PiecewiseLinearInput(std::vector<double> times, std::vector<double> values);

    double operator()(double t) const;
    std::span<const double> times() const noexcept { return times_; }
    std::span<const double> values() const noexcept { return values_; }

private:
    std::vector<double> times_;
    std::vector<double> values_;
};

/// Node times 0, step, 2 step, ..., ending exactly at the horizon (the last
/// interval may be shorter). Throws BadStep unless 0 < step <= horizon.
std::vector<double> time_grid(double horizon, double step);

/// Time-sampled record of a simulation; outputs[j] == states[j](N-1).
struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<double> outputs;
    std::vector<double> inputs;

    /// CSV with header t,z1..z2N,y,u.
    void write_csv(std::ostream& os) const;
};

/// Classical fixed-step RK4 on z' = F z + g u(t), y = h z.
/// Throws BadStep for a bad grid and NonFiniteState on blow-up.
Trajectory simulate(const FloatModel& model, const Vector& z0, const InputFunction& u, double horizon,
                    double step = kDefaultStep);
Trajectory simulate(const StateSpaceModel& model, const Vector& z0, const InputFunction& u, double horizon,
                    double step = kDefaultStep);

/// e^{m t} by scaling and squaring of a truncated Taylor series.
Matrix matrix_exponential(const Matrix& m, double t);

/// W(T) = int_0^T e^{F s} g g^T e^{F^T s} ds, integrated as
/// W' = F W + W F^T + g g^T, W(0) = 0 with RK4 on the step grid.
Matrix reachability_gramian(const FloatModel& model, double horizon, double step = kDefaultStep);
Matrix reachability_gramian(const StateSpaceModel& model, double horizon, double step = kDefaultStep);

/// Smallest over largest eigenvalue of a symmetric matrix.
double eigenvalue_ratio(const Matrix& symmetric);

/// Minimum-energy open-loop input steering initial_state to target_state.
struct ControlPlan {
    double horizon = 0.0;
    double step = 0.0;
    std::vector<double> times;
    std::vector<double> samples;
    Vector initial_state;
    Vector target_state;
    double gramian_condition = 0.0;
    bool ill_conditioned = false;

    PiecewiseLinearInput input() const { return PiecewiseLinearInput(times, samples); }
    /// CSV with header t,u.
    void write_csv(std::ostream& os) const;
};

/// Discrete counterpart of u(t) = g^T e^{F^T (T - t)} W(T)^{-1} (target - e^{F T} z0):
/// the minimum-energy input of the RK4 / piecewise-linear system that
/// simulate() integrates, so re-simulating lands on the target up to rounding.
/// gramian_condition is that of the continuous W(T).
/// Reachability is taken from the exact verdict; throws NotControllable when
/// it does not hold. Ill-conditioned Gramians are flagged, not rejected.
ControlPlan min_energy_control(const StateSpaceModel& model, const Verdict& verdict, const Vector& z0,
                               const Vector& target, double horizon, double step = kDefaultStep);

struct OutputSample {
    double t;
    double y;
};

struct Reconstruction {
    Vector state;
    double residual_rms = 0.0;
    std::size_t rank = 0;
    /// residual_rms <= noise_floor
    bool within_noise_floor = false;
};

/// Least-squares z0 from free-response samples y_j = h e^{F t_j} z0, by
/// column-pivoted QR on the column-equilibrated regressor. Does not consult
/// a verdict; throws InsufficientSamples or RankDeficientRegressor.
Reconstruction reconstruct_initial_state(const FloatModel& model, std::span<const OutputSample> samples,
                                         double noise_floor);
/// As above, gated on the exact observability verdict (NotObservable).
Reconstruction reconstruct_initial_state(const StateSpaceModel& model, const Verdict& verdict,
                                         std::span<const OutputSample> samples, double noise_floor);

/// Every `stride`-th output of a trajectory as (t, y) samples.
std::vector<OutputSample> sample_outputs(const Trajectory& trajectory, std::size_t stride);

/// Road height z_r(t) under the tyre and its rate.
struct RoadProfile {
    std::string name;
    std::function<double(double)> height;
    std::function<double(double)> rate;

    static RoadProfile flat();
    /// Rise of `height` starting at `time`, shaped as a half cosine over kStepRise seconds.
    static RoadProfile step(double height, double time);
    static RoadProfile sine(double amplitude, double frequency_hz);
    /// "flat", "step:<height>:<time>" or "sine:<amp>:<freq>".
    static RoadProfile parse(std::string_view text);

    static constexpr double kStepRise = 0.02;
};

/// Two-mass suspension: wheel m1 and quarter body m2 joined by suspension
/// spring k1 and damper c1; the tyre (k, c) pushes the wheel with
/// f = k (z_r - z1) + c (z_r' - z1'). Output is the body position.
struct QuarterCarSpec {
    double m1 = 35.0;
    double m2 = 300.0;
    double k1 = 20000.0;
    double c1 = 1500.0;
    double k = 150000.0;
    double c = 200.0;
    RoadProfile road = RoadProfile::step(0.05, 0.5);
    /// (z1, z2, z1', z2') at t = 0.
    Vector initial_state = Vector::Zero(4);

    void validate() const;
    ChainSpec chain() const;
};

struct QuarterCarRun {
    /// inputs[j] is the tyre force on the wheel at times[j].
    Trajectory trajectory;
    Reconstruction reconstruction;
    std::size_t samples_used = 0;
};

/// Simulates the suspension over the road and recovers the initial state from
/// body-position samples. The tyre terms in z1, z1' are moved into the state
/// matrix so the only external signal is the known road; its contribution is
/// simulated separately and subtracted before reconstruction.
/// The default step is finer than kDefaultStep: the tyre mode sits near
/// 70 rad/s, and at 1e-3 s RK4 phase error alone costs ~2e-6 in the recovered
/// state when the suspension is undamped.
inline constexpr double kQuarterCarStep = 2.5e-4;
QuarterCarRun quarter_car_demo(const QuarterCarSpec& spec, double horizon = kDefaultHorizon,
                               double step = kQuarterCarStep);

}  // namespace springchain
