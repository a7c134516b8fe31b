#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "springchain/analysis.hpp"
#include "springchain/dynamics.hpp"
#include "springchain/error.hpp"
#include "springchain/poly_engine.hpp"
#include "springchain/random_spec.hpp"
#include "springchain/spec_io.hpp"

namespace springchain::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
    return out;
}

Vector parse_state(const std::string& text, std::size_t dim, const char* what) {
    if (text.empty()) return Vector::Zero(static_cast<Eigen::Index>(dim));
    const auto items = split_list(text);
    if (items.size() != dim) {
        throw Error(ErrorCode::LengthMismatch, std::string(what) + " needs " + std::to_string(dim) + " values, got " +
                                                   std::to_string(items.size()));
    }
    Vector out(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) out(static_cast<Eigen::Index>(i)) = to_double(parse_rational(items[i]));
    return out;
}

double horizon_of(const CliConfig& config) { return config.horizon.value_or(default_horizon(config.subcommand)); }
double step_of(const CliConfig& config) { return config.step.value_or(default_step(config.subcommand)); }

std::string number_text(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

ordered_json rationals_json(std::span<const Rational> values) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : values) arr.push_back(to_string(v));
    return arr;
}

ordered_json vector_json(const Vector& v) {
    ordered_json arr = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

ChainSpec load_chain(const CliConfig& config, std::ostream& err) {
    if (config.spec_path.empty()) throw Error(ErrorCode::InvalidArgument, "a spec file is required");
    LoadedSpec loaded = load_spec_file(config.spec_path);
    for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
    return validate_spec(loaded.raw);
}

InputFunction parse_input(const std::string& text) {
    const auto parts = [&] {
        std::vector<std::string> p;
        std::stringstream ss(text);
        for (std::string item; std::getline(ss, item, ':');) p.push_back(item);
        return p;
    }();
    auto number = [&](const std::string& s) { return to_double(parse_rational(s)); };
    if (parts.size() == 1 && parts[0] == "zero") return [](double) { return 0.0; };
    if (parts.size() == 2 && parts[0] == "const") {
        const double v = number(parts[1]);
        return [v](double) { return v; };
    }
    if (parts.size() == 3 && parts[0] == "sine") {
        const double amp = number(parts[1]);
        const double omega = 2.0 * std::numbers::pi * number(parts[2]);
        return [amp, omega](double t) { return amp * std::sin(omega * t); };
    }
    throw Error(ErrorCode::ParseError, "unknown input '" + text + "' (zero, const:<v>, sine:<amp>:<freq>)");
}

std::string coeffs_text(const RationalPoly& p) {
    std::ostringstream os;
    for (int k = p.degree(); k >= 0; --k) os << (k == p.degree() ? "" : " ") << to_string(p.coeff(static_cast<std::size_t>(k)));
    return os.str();
}

int cmd_analyze(const CliConfig& config, std::ostream& out, std::ostream& err) {
    const ChainSpec spec = load_chain(config, err);
    const Verdict v = decide(spec);
    const Format format = config.format.value_or(Format::Json);
    if (format == Format::Text) {
        out << "n: " << v.n << '\n'
            << "controllable_observable: " << (v.controllable_observable ? "true" : "false") << '\n'
            << "proportional: " << (v.proportionality_holds ? "true" : "false") << '\n'
            << "char_poly: " << v.char_poly.to_string() << '\n'
            << "adjoint_poly: " << v.adjoint_poly.to_string() << '\n'
            << "gcd: " << v.gcd.to_string() << '\n'
            << "common_roots:";
        for (const auto& r : v.common_roots) out << ' ' << to_string(r);
        out << '\n'
            << "kalman_ranks: " << v.kalman_control_rank << ' ' << v.kalman_observe_rank << '\n';
    } else {
        ordered_json doc;
        doc["controllable_observable"] = v.controllable_observable;
        doc["proportional"] = v.proportionality_holds;
        doc["char_poly"] = v.char_poly.to_string();
        doc["adjoint_poly"] = v.adjoint_poly.to_string();
        doc["gcd"] = v.gcd.to_string();
        doc["common_roots"] = rationals_json(v.common_roots);
        doc["kalman_ranks"] = {{"controllability", v.kalman_control_rank}, {"observability", v.kalman_observe_rank}};
        doc["n"] = v.n;
        out << doc.dump(2) << '\n';
    }
    return v.controllable_observable ? kExitOk : kExitNotControllable;
}

int cmd_polys(const CliConfig& config, std::ostream& out, std::ostream& err) {
    const ChainSpec spec = load_chain(config, err);
    const RationalPoly p = char_poly_recursive(spec);
    const AdjointFactorization adj = adjoint_poly_closed_form(spec);
    const RationalPoly adj_poly = adj.expand();
    if (config.format.value_or(Format::Text) == Format::Json) {
        ordered_json doc;
        doc["n"] = spec.n();
        doc["char_poly"] = p.to_string();
        doc["adjoint_poly"] = adj_poly.to_string();
        doc["adjoint_factored"] = adj.to_string();
        doc["adjoint_roots"] = rationals_json(adj.roots);
        out << doc.dump(2) << '\n';
        return kExitOk;
    }
    out << "n = " << spec.n() << '\n'
        << "P(z) = " << p.to_string() << '\n'
        << "P coefficients (descending) = " << coeffs_text(p) << '\n'
        << "adjoint(z) = " << adj_poly.to_string() << '\n'
        << "adjoint factored = " << adj.to_string() << '\n'
        << "adjoint roots =";
    for (const auto& r : adj.roots) out << ' ' << to_string(r);
    out << '\n';
    return kExitOk;
}

int cmd_simulate(const CliConfig& config, std::ostream& out, std::ostream& err) {
    const ChainSpec spec = load_chain(config, err);
    const StateSpaceModel model = assemble_state_space(spec);
    const Vector z0 = parse_state(config.z0, model.dim(), "--z0");
    const Trajectory traj = simulate(model, z0, parse_input(config.input), horizon_of(config), step_of(config));
    traj.write_csv(out);
    return kExitOk;
}

int cmd_control(const CliConfig& config, std::ostream& out, std::ostream& err) {
    const ChainSpec spec = load_chain(config, err);
    const StateSpaceModel model = assemble_state_space(spec);
    if (config.target.empty()) throw Error(ErrorCode::InvalidArgument, "--target is required");
    const Vector z0 = parse_state(config.z0, model.dim(), "--z0");
    const Vector target = parse_state(config.target, model.dim(), "--target");
    const Verdict verdict = decide(spec);
    const ControlPlan plan = min_energy_control(model, verdict, z0, target, horizon_of(config), step_of(config));
    const Trajectory check = simulate(model, z0, plan.input(), plan.horizon, plan.step);
    const double miss = (check.states.back() - target).lpNorm<Eigen::Infinity>();

    if (plan.ill_conditioned) err << "warning: IllConditionedGramian: condition number " << plan.gramian_condition << '\n';
    if (config.format.value_or(Format::Csv) == Format::Json) {
        ordered_json doc;
        doc["horizon"] = plan.horizon;
        doc["step"] = plan.step;
        doc["gramian_condition"] = plan.gramian_condition;
        doc["terminal_error_inf"] = miss;
        doc["times"] = plan.times;
        doc["u"] = plan.samples;
        out << doc.dump() << '\n';
    } else {
        plan.write_csv(out);
        err << "gramian condition " << plan.gramian_condition << ", terminal error (inf-norm) " << miss << '\n';
    }
    return kExitOk;
}

int cmd_observe(const CliConfig& config, std::ostream& out, std::ostream& err) {
    const ChainSpec spec = load_chain(config, err);
    const StateSpaceModel model = assemble_state_space(spec);
    if (config.z0.empty()) throw Error(ErrorCode::InvalidArgument, "--z0 is required");
    const Vector z0 = parse_state(config.z0, model.dim(), "--z0");
    const Verdict verdict = decide(spec);
    const Trajectory traj = simulate(model, z0, [](double) { return 0.0; }, horizon_of(config), step_of(config));

    const std::size_t wanted = config.samples == 0 ? 6 * model.dim() : config.samples;
    const std::size_t stride = std::max<std::size_t>(1, (traj.times.size() - 1) / std::max<std::size_t>(1, wanted - 1));
    const std::vector<OutputSample> samples = sample_outputs(traj, stride);
    const Reconstruction rec = reconstruct_initial_state(model, verdict, samples, config.noise_floor);

    ordered_json doc;
    doc["samples"] = samples.size();
    doc["true_state"] = vector_json(z0);
    doc["reconstructed_state"] = vector_json(rec.state);
    doc["max_abs_error"] = (rec.state - z0).lpNorm<Eigen::Infinity>();
    doc["residual_rms"] = rec.residual_rms;
    doc["within_noise_floor"] = rec.within_noise_floor;
    doc["rank"] = rec.rank;
    out << doc.dump(2) << '\n';
    return kExitOk;
}

int cmd_counterexample(const CliConfig& config, std::ostream& out, std::ostream&) {
    std::array<Rational, 3> masses;
    Rational k1, c1, c2;
    if (config.random) {
        SpecGenerator gen(config.seed);
        for (auto& m : masses) m = gen.positive_rational(12);
        k1 = gen.positive_rational(12);
        c1 = gen.positive_rational(12);
        c2 = gen.positive_rational(12);
    } else {
        const auto items = split_list(config.masses);
        if (items.size() != 3) throw Error(ErrorCode::LengthMismatch, "--m needs exactly 3 masses");
        for (std::size_t i = 0; i < 3; ++i) masses[i] = parse_rational(items[i]);
        k1 = parse_rational(config.k1);
        c1 = parse_rational(config.c1);
        c2 = parse_rational(config.c2);
    }

    ordered_json doc;
    if (config.kind == "uncontrollable") {
        if (config.random) {
            // Scale c2 up until the derived k2 is positive; k2 grows linearly in c2.
            const Rational h = 1 / masses[1] + 1 / masses[2];
            const Rational ratio = k1 / c1;
            const Rational minimal_c2 = ratio / h;
            if (c2 <= minimal_c2) c2 += minimal_c2;
        }
        const CounterexampleN3 ce = make_counterexample_n3(masses, k1, c1, c2);
        const ChainSpec spec = ce.spec();
        doc["masses"] = rationals_json(spec.masses());
        doc["stiffness"] = rationals_json(spec.stiffness());
        doc["damping"] = rationals_json(spec.damping());
        doc["common_root"] = to_string(ce.common_root);
        doc["h_sum"] = to_string(ce.h_sum);
    } else if (config.kind == "controllable") {
        if (config.random) c2 = c1 + c2;  // any positive pair works
        const ChainSpec spec = make_controllable_nonproportional_n3(masses, c1, c2);
        doc["masses"] = rationals_json(spec.masses());
        doc["stiffness"] = rationals_json(spec.stiffness());
        doc["damping"] = rationals_json(spec.damping());
    } else {
        throw Error(ErrorCode::InvalidArgument, "--kind must be 'uncontrollable' or 'controllable'");
    }
    out << doc.dump(2) << '\n';
    return kExitOk;
}

int cmd_quarter_car(const CliConfig& config, std::ostream& out, std::ostream& err) {
    QuarterCarSpec qc;
    qc.m1 = config.qc_m1;
    qc.m2 = config.qc_m2;
    qc.k1 = config.qc_k1;
    qc.c1 = config.qc_c1;
    qc.k = config.qc_k;
    qc.c = config.qc_c;
    qc.road = RoadProfile::parse(config.road);
    qc.initial_state = parse_state(config.z0, 4, "--z0");
    const QuarterCarRun run = quarter_car_demo(qc, horizon_of(config), step_of(config));
    const double error = (run.reconstruction.state - qc.initial_state).lpNorm<Eigen::Infinity>();

    if (config.format.value_or(Format::Csv) == Format::Json) {
        ordered_json doc;
        doc["road"] = qc.road.name;
        doc["samples_used"] = run.samples_used;
        doc["initial_state"] = vector_json(qc.initial_state);
        doc["reconstructed_state"] = vector_json(run.reconstruction.state);
        doc["max_abs_error"] = error;
        doc["residual_rms"] = run.reconstruction.residual_rms;
        doc["final_state"] = vector_json(run.trajectory.states.back());
        out << doc.dump(2) << '\n';
    } else {
        run.trajectory.write_csv(out);
        err << "reconstructed initial state from " << run.samples_used << " body-position samples, max error "
            << error << '\n';
    }
    return kExitOk;
}

}  // namespace

double default_horizon(Subcommand sub) { return sub == Subcommand::Observe ? 3.0 : kDefaultHorizon; }
double default_step(Subcommand sub) { return sub == Subcommand::QuarterCar ? kQuarterCarStep : kDefaultStep; }

void configure(CLI::App& app, CliConfig& config) {
    app.description("Controllability and observability of dashpot-spring-mass chains");
    app.require_subcommand(1);

    auto add_common = [&config](CLI::App* sub, bool needs_spec) {
        if (needs_spec) {
            sub->add_option("spec,--spec", config.spec_path, "chain spec file (.json or .toml)");
        }
        sub->add_option("-o,--output", config.output_path, "write the result to this file instead of stdout");
        sub->add_option("--format", config.format, "json, csv or text")
            ->transform(CLI::CheckedTransformer(
                std::map<std::string, Format>{{"json", Format::Json}, {"csv", Format::Csv}, {"text", Format::Text}}));
    };
    auto add_timing = [&config](CLI::App* sub, Subcommand which) {
        sub->add_option("--horizon", config.horizon, "time horizon in seconds")
            ->default_str(number_text(default_horizon(which)));
        sub->add_option("--step", config.step, "integration step in seconds")
            ->default_str(number_text(default_step(which)));
    };

    auto* analyze = app.add_subcommand("analyze", "decide controllability/observability; exit 0 yes, 3 no");
    add_common(analyze, true);
    analyze->callback([&config] { config.subcommand = Subcommand::Analyze; });

    auto* polys = app.add_subcommand("polys", "print the characteristic and adjoint polynomials");
    add_common(polys, true);
    polys->callback([&config] { config.subcommand = Subcommand::Polys; });

    auto* sim = app.add_subcommand("simulate", "simulate the chain and write a t,z1..z2N,y,u CSV");
    add_common(sim, true);
    add_timing(sim, Subcommand::Simulate);
    sim->add_option("--z0", config.z0, "initial state, comma separated (default zero)");
    sim->add_option("--input", config.input, "zero, const:<v> or sine:<amp>:<freq>")->capture_default_str();
    sim->callback([&config] { config.subcommand = Subcommand::Simulate; });

    auto* control = app.add_subcommand("control", "minimum-energy control to a target state; writes t,u CSV");
    add_common(control, true);
    add_timing(control, Subcommand::Control);
    control->add_option("--z0", config.z0, "initial state, comma separated (default zero)");
    control->add_option("--target", config.target, "target state, comma separated")->required();
    control->callback([&config] { config.subcommand = Subcommand::Control; });

    auto* observe = app.add_subcommand("observe", "simulate from --z0 and reconstruct it from output samples");
    add_common(observe, true);
    add_timing(observe, Subcommand::Observe);
    observe->add_option("--z0", config.z0, "true initial state, comma separated")->required();
    observe->add_option("--samples", config.samples, "number of output samples (default 12N)");
    observe->add_option("--noise-floor", config.noise_floor, "residual bound reported as consistent")
        ->capture_default_str();
    observe->callback([&config] { config.subcommand = Subcommand::Observe; });

    auto* ce = app.add_subcommand("counterexample", "construct a three-mass chain and print it as a spec file");
    add_common(ce, false);
    ce->add_option("--m", config.masses, "three masses, comma separated")->capture_default_str();
    ce->add_option("--k1", config.k1)->capture_default_str();
    ce->add_option("--c1", config.c1)->capture_default_str();
    ce->add_option("--c2", config.c2)->capture_default_str();
    ce->add_option("--kind", config.kind, "uncontrollable (common root) or controllable (non-proportional)")
        ->capture_default_str();
    ce->add_flag("--random", config.random, "draw the free parameters from --seed");
    ce->add_option("--seed", config.seed, "seed for --random")->capture_default_str();
    ce->callback([&config] { config.subcommand = Subcommand::Counterexample; });

    auto* qc = app.add_subcommand("quarter-car", "simulate the two-mass suspension and reconstruct its state");
    add_common(qc, false);
    add_timing(qc, Subcommand::QuarterCar);
    qc->add_option("--road", config.road, "flat, step:<height>:<time> or sine:<amp>:<freq>")->capture_default_str();
    qc->add_option("--m1", config.qc_m1, "wheel mass")->capture_default_str();
    qc->add_option("--m2", config.qc_m2, "quarter body mass")->capture_default_str();
    qc->add_option("--k1", config.qc_k1, "suspension stiffness")->capture_default_str();
    qc->add_option("--c1", config.qc_c1, "suspension damping")->capture_default_str();
    qc->add_option("--k", config.qc_k, "tyre stiffness")->capture_default_str();
    qc->add_option("--c", config.qc_c, "tyre damping")->capture_default_str();
    qc->add_option("--z0", config.z0, "initial (z1, z2, z1', z2'), default zero");
    qc->callback([&config] { config.subcommand = Subcommand::QuarterCar; });
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
    std::ofstream file;
    std::ostream* sink = &out;
    if (config.output_path) {
        file.open(*config.output_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open output file '" << *config.output_path << "'\n";
            return kExitInputError;
        }
        sink = &file;
    }
    try {
        switch (config.subcommand) {
            case Subcommand::Analyze: return cmd_analyze(config, *sink, err);
            case Subcommand::Polys: return cmd_polys(config, *sink, err);
            case Subcommand::Simulate: return cmd_simulate(config, *sink, err);
            case Subcommand::Control: return cmd_control(config, *sink, err);
            case Subcommand::Observe: return cmd_observe(config, *sink, err);
            case Subcommand::Counterexample: return cmd_counterexample(config, *sink, err);
            case Subcommand::QuarterCar: return cmd_quarter_car(config, *sink, err);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (e.code() == ErrorCode::NotControllable || e.code() == ErrorCode::NotObservable) return kExitNotControllable;
        return is_input_error(e.code()) ? kExitInputError : kExitInternalError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternalError;
    }
    return kExitInternalError;
}

int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"springchain"};
    CliConfig config;
    configure(app, config);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitInputError;
    }
    return run(config, out, err);
}

}  // namespace springchain::cli
