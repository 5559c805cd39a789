#pragma once

#include <array>
#include <string>
#include <vector>

namespace seirs {

// Tolerances shared by every module.
inline constexpr double kConstructionTol = 1e-12;  // simplex check at construction
inline constexpr double kPropagationTol = 1e-10;   // sum drift along a trajectory
inline constexpr double kPositivityTol = 1e-9;     // admissible negative round-off

/// The six model constants. Rates are per unit time; `k_r` and `r` are times.
struct Params {
  double beta = 0.0;     // transmission rate
  double mu = 0.0;       // recovery rate
  double gamma = 0.0;    // loss-of-immunity rate
  double k_r = 0.0;      // latency-rate denominator
  double r = 0.0;        // latency delay
  double epsilon = 0.0;  // noise intensity

  friend bool operator==(const Params&, const Params&) = default;
};

/// A point (S, E, I, R) of population fractions. Use make_state() for a
/// checked construction; integrators produce unchecked nodes.
struct State {
  double s = 0.0;
  double e = 0.0;
  double i = 0.0;
  double rcv = 0.0;

  double sum() const noexcept { return s + e + i + rcv; }
  std::array<double, 4> as_array() const noexcept { return {s, e, i, rcv}; }

  friend bool operator==(const State&, const State&) = default;
};

/// Max-norm distance between two states.
double distance_inf(const State& a, const State& b) noexcept;

/// Initial data: E is held at `e0` on [-r, 0]; S, I, R start at s0, i0, r0.
struct InitialCondition {
  double e0 = 0.0;
  double s0 = 1.0;
  double i0 = 0.0;
  double r0 = 0.0;

  State at_zero() const noexcept { return {s0, e0, i0, r0}; }

  friend bool operator==(const InitialCondition&, const InitialCondition&) = default;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

// Violation names reported by validate_params.
inline constexpr const char* kViolationNonFinite = "non-finite";
inline constexpr const char* kViolationBeta = "beta ∈ (0,1)";
inline constexpr const char* kViolationMu = "mu ∈ (0,1)";
inline constexpr const char* kViolationGamma = "gamma ∈ (0,1)";
inline constexpr const char* kViolationKr = "k_r > 0";
inline constexpr const char* kViolationDelay = "r ≥ 0";
inline constexpr const char* kViolationEpsilon = "epsilon ≥ 0";
inline constexpr const char* kViolationDelayAdmissible = "k_r ≥ r·e";

/// Checks the standing assumptions: beta, mu, gamma in (0,1), k_r > 0, r >= 0,
/// epsilon >= 0 and, when r > 0, k_r >= r·e. Never throws.
ValidationReport validate_params(const Params& p);

/// Same checks as validate_params, excluding the delay admissibility bound
/// k_r >= r·e. Used by experiments that probe delays beyond the valid range.
ValidationReport validate_params_waiving_delay_bound(const Params& p);

/// Throws ValidationError listing every violation.
void require_valid(const Params& p);

/// Checked State construction; throws ValidationError on a negative component
/// or when the components do not sum to 1 within kConstructionTol.
State make_state(double s, double e, double i, double rcv);

/// Checked InitialCondition construction (same rules as make_state).
InitialCondition make_initial_condition(double e0, double s0, double i0, double r0);

/// The initial condition whose t = 0 state is `x` and whose E-history is x.e.
InitialCondition initial_condition_from(const State& x);

}  // namespace seirs
