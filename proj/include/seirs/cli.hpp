#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seirs/integrators.hpp"
#include "seirs/model.hpp"

namespace seirs::cli {

enum class Method { kAuto, kRk4, kTrapezoid, kEuler, kCascade };

const char* to_string(Method m) noexcept;

/// A parsed and validated run configuration.
///
/// The document is line based: `key = value`, `# comment`, and `[section]`
/// headers that prefix the keys below them. `params.beta = 0.4` and
/// `[params]` followed by `beta = 0.4` are equivalent.
struct RunConfig {
  Params params;
  InitialCondition initial{0.05, 0.9, 0.05, 0.0};
  double horizon = 100.0;
  double step = 0.01;  // default_step(params) unless given

  std::size_t n_rep = 200;
  std::uint64_t seed = 1;
  std::vector<double> rho_grid;  // empty: derived from the ensemble
  unsigned threads = 0;

  Method method = Method::kAuto;
  int quad_n = 50;
  std::uint64_t replica = 0;
  std::optional<double> epsilon_check;  // concentration; defaults to 2·epsilon
  double safety = 3.0;
  bool lyapunov_experiment = false;
  std::string trajectory_path;

  std::vector<std::string> warnings;  // unknown keys

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ConfigError (line, column) on malformed input and ValidationError
/// when the values break a model or grid constraint.
RunConfig parse_config(std::string_view text);

/// Re-validates after command-line overrides.
void validate_config(const RunConfig& cfg);

/// Canonical document; parse_config(serialize_config(c)) == c up to warnings.
std::string serialize_config(const RunConfig& cfg);

/// Ordered key/value report.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, std::string>> outputs;
  std::vector<std::string> warnings;

  void output(std::string key, double value);
  void output(std::string key, std::string value);
  void output(std::string key, bool value);
  void output(std::string key, std::size_t value);

  std::string render() const;
};

/// "%.17g".
std::string format_number(double value);

/// Shortest round-trip representation.
std::string format_shortest(double value);

/// "t,S,E,I,R" followed by one row per node.
std::string trajectory_csv(const Trajectory& traj);

inline constexpr const char* kCommands[] = {"equilibria",   "simulate",    "simulate-sde",
                                            "stability",    "delay-margin", "concentration",
                                            "lyapunov"};

struct RunResult {
  Report report;
  std::optional<Trajectory> trajectory;
};

/// Dispatches one command. Library errors propagate unchanged.
RunResult run(std::string_view command, const RunConfig& cfg);

enum class LogLevel { kQuiet, kInfo, kDebug };

/// Reads SEIRS_LOG (quiet, info, debug); info when unset or unrecognised.
LogLevel log_level_from_env();

}  // namespace seirs::cli
