#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace springchain::cli {

enum class Subcommand { Analyze, Polys, Simulate, Control, Observe, Counterexample, QuarterCar };
enum class Format { Json, Csv, Text };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInternalError = 2;
inline constexpr int kExitNotControllable = 3;

struct CliConfig {
    Subcommand subcommand = Subcommand::Analyze;
    std::string spec_path;
    std::optional<std::string> output_path;
    // Unset means the subcommand's own default (see default_horizon/default_step).
    std::optional<double> horizon;
    std::optional<double> step;
    std::uint64_t seed = 1;
    std::optional<Format> format;

    // simulate / control / observe
    std::string z0;
    std::string target;
    std::string input = "zero";
    std::size_t samples = 0;
    double noise_floor = 1e-9;

    // counterexample
    std::string masses = "1,1,1";
    std::string k1 = "1";
    std::string c1 = "1";
    std::string c2 = "1";
    std::string kind = "uncontrollable";
    bool random = false;

    // quarter-car
    std::string road = "step:0.05:0.5";
    double qc_m1 = 35.0;
    double qc_m2 = 300.0;
    double qc_k1 = 20000.0;
    double qc_c1 = 1500.0;
    double qc_k = 150000.0;
    double qc_c = 200.0;
};

double default_horizon(Subcommand sub);
double default_step(Subcommand sub);

/// Registers every subcommand and flag on `app`, writing into `config`.
void configure(CLI::App& app, CliConfig& config);

/// Executes a parsed configuration. Results go to `out`, diagnostics to `err`.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs them.
int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace springchain::cli
