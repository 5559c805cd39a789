#include "seirs/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "seirs/errors.hpp"

namespace seirs {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::ostringstream os;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) os << "; ";
    os << items[k];
  }
  return os.str();
}

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

ValidationReport check(const Params& p, bool enforce_delay_bound) {
  ValidationReport report;
  const std::array<double, 6> fields{p.beta, p.mu, p.gamma, p.k_r, p.r, p.epsilon};
  if (!std::all_of(fields.begin(), fields.end(), [](double x) { return std::isfinite(x); })) {
    report.valid = false;
    report.violations.emplace_back(kViolationNonFinite);
    return report;
  }
  auto fail = [&](const char* name) { report.violations.emplace_back(name); };
  if (!in_open_unit(p.beta)) fail(kViolationBeta);
  if (!in_open_unit(p.mu)) fail(kViolationMu);
  if (!in_open_unit(p.gamma)) fail(kViolationGamma);
  if (!(p.k_r > 0.0)) fail(kViolationKr);
  if (!(p.r >= 0.0)) fail(kViolationDelay);
  if (!(p.epsilon >= 0.0)) fail(kViolationEpsilon);
  if (enforce_delay_bound && p.r > 0.0 && !(p.k_r >= p.r * std::numbers::e)) {
    fail(kViolationDelayAdmissible);
  }
  report.valid = report.violations.empty();
  return report;
}

void check_simplex(const std::array<double, 4>& x, const char* what) {
  std::vector<std::string> violations;
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw ValidationError(std::string(what) + ": non-finite component", {kViolationNonFinite});
    }
  }
  if (std::any_of(x.begin(), x.end(), [](double v) { return v < 0.0; })) {
    throw ValidationError(std::string(what) + ": negative component", {"component ≥ 0"});
  }
  const double total = x[0] + x[1] + x[2] + x[3];
  if (std::abs(total - 1.0) > kConstructionTol) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": components sum to " << total << ", expected 1";
    throw ValidationError(os.str(), {"sum = 1"});
  }
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error("invalid input: " + join(violations)), violations_(std::move(violations)) {}

double distance_inf(const State& a, const State& b) noexcept {
  return std::max({std::abs(a.s - b.s), std::abs(a.e - b.e), std::abs(a.i - b.i),
                   std::abs(a.rcv - b.rcv)});
}

ValidationReport validate_params(const Params& p) { return check(p, true); }

ValidationReport validate_params_waiving_delay_bound(const Params& p) { return check(p, false); }

void require_valid(const Params& p) {
  auto report = validate_params(p);
  if (!report.valid) throw ValidationError(std::move(report.violations));
}

State make_state(double s, double e, double i, double rcv) {
  check_simplex({s, e, i, rcv}, "state");
  return {s, e, i, rcv};
}

InitialCondition make_initial_condition(double e0, double s0, double i0, double r0) {
  check_simplex({s0, e0, i0, r0}, "initial condition");
  return {e0, s0, i0, r0};
}

InitialCondition initial_condition_from(const State& x) { return {x.e, x.s, x.i, x.rcv}; }

}  // namespace seirs
