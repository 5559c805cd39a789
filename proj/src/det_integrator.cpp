#include <algorithm>
#include <cmath>
#include <sstream>

#include "seirs/errors.hpp"
#include "seirs/integrators.hpp"
#include "vector_field.hpp"

namespace seirs {

namespace {

void check_node(const State& x, std::size_t node) {
  const double drift = std::abs(x.sum() - 1.0);
  const double lowest = std::min({x.s, x.e, x.i, x.rcv});
  if (!std::isfinite(drift) || drift > kPropagationTol) {
    std::ostringstream os;
    os.precision(17);
    os << "conservation breach at node " << node << ": |sum - 1| = " << drift;
    throw NumericalError(os.str(), node);
  }
  if (lowest < -kPositivityTol) {
    std::ostringstream os;
    os.precision(17);
    os << "positivity breach at node " << node << ": min component = " << lowest;
    throw NumericalError(os.str(), node);
  }
}

// Integer n with n·unit = span, or a ValidationError naming `constraint`.
std::size_t aligned_count(double span, double unit, const char* constraint) {
  if (!(unit > 0.0) || !std::isfinite(unit) || !std::isfinite(span)) {
    throw ValidationError(std::string(constraint) + ": step must be positive and finite",
                          {constraint});
  }
  const double ratio = span / unit;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-12 * std::max(1.0, ratio)) {
    std::ostringstream os;
    os.precision(17);
    os << constraint << ": " << span << " / " << unit << " = " << ratio << " is not an integer >= 1";
    throw ValidationError(os.str(), {constraint});
  }
  return static_cast<std::size_t>(n);
}

void check_params(const Params& p, DelayBound bound) {
  auto report = bound == DelayBound::kEnforce ? validate_params(p)
                                              : validate_params_waiving_delay_bound(p);
  if (!report.valid) throw ValidationError(std::move(report.violations));
}

void check_initial(const InitialCondition& ic) {
  (void)make_initial_condition(ic.e0, ic.s0, ic.i0, ic.r0);
}

Trajectory start(const State& x0, std::size_t n, double h) {
  Trajectory traj;
  traj.step = h;
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  return traj;
}

void push(Trajectory& traj, const State& x) {
  const std::size_t k = traj.states.size();
  check_node(x, k);
  traj.times.push_back(static_cast<double>(k) * traj.step);
  traj.states.push_back(x);
}

}  // namespace

double default_step(const Params& p) noexcept {
  return p.r > 0.0 ? std::min(0.01, p.r / 50.0) : 0.01;
}

std::size_t steps_for(double t_end, double h) {
  return aligned_count(t_end, h, "h divides t_end");
}

Trajectory integrate_ode(const Params& p, const State& x0, double t_end, double h) {
  require_valid(p);
  if (p.r != 0.0) throw ValidationError("integrate_ode requires r = 0", {"r = 0"});
  (void)make_state(x0.s, x0.e, x0.i, x0.rcv);
  const std::size_t n = steps_for(t_end, h);

  auto field = [&p](const State& x) { return detail::drift(p, x, x.e); };
  Trajectory traj = start(x0, n, h);
  State x = x0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto k1 = field(x);
    const auto k2 = field(detail::axpy(x, 0.5 * h, k1));
    const auto k3 = field(detail::axpy(x, 0.5 * h, k2));
    const auto k4 = field(detail::axpy(x, h, k3));
    const double w = h / 6.0;
    x = {x.s + w * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds),
         x.e + w * (k1.de + 2.0 * k2.de + 2.0 * k3.de + k4.de),
         x.i + w * (k1.di + 2.0 * k2.di + 2.0 * k3.di + k4.di),
         x.rcv + w * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr)};
    push(traj, x);
  }
  return traj;
}

Trajectory integrate_dde(const Params& p, const InitialCondition& ic, double t_end, double h,
                         DdeOptions options) {
  check_params(p, options.delay_bound);
  if (!(p.r > 0.0)) throw ValidationError("integrate_dde requires r > 0", {"r > 0"});
  check_initial(ic);
  const std::size_t n = steps_for(t_end, h);
  const std::size_t lag = aligned_count(p.r, h, "h divides r");

  Trajectory traj = start(ic.at_zero(), n, h);
  // E at node j - lag, reading the constant history for j <= lag.
  auto delayed = [&](std::size_t j) { return j <= lag ? ic.e0 : traj.states[j - lag].e; };

  for (std::size_t k = 0; k < n; ++k) {
    const State& x = traj.states[k];
    State next;
    if (options.scheme == DdeScheme::kEuler) {
      next = detail::flow_step(p, x, delayed(k), h, 0.0);
    } else {
      const auto f0 = detail::drift(p, x, delayed(k));
      const auto f1 = detail::drift(p, detail::axpy(x, h, f0), delayed(k + 1));
      const double w = 0.5 * h;
      next = {x.s + w * (f0.ds + f1.ds), x.e + w * (f0.de + f1.de), x.i + w * (f0.di + f1.di),
              x.rcv + w * (f0.dr + f1.dr)};
    }
    push(traj, next);
  }
  return traj;
}

Trajectory integrate_euler(const Params& p, const InitialCondition& ic, double t_end, double h) {
  require_valid(p);
  check_initial(ic);
  const std::size_t n = steps_for(t_end, h);
  const std::size_t lag = p.r > 0.0 ? aligned_count(p.r, h, "h divides r") : 0;

  Trajectory traj = start(ic.at_zero(), n, h);
  for (std::size_t k = 0; k < n; ++k) {
    const double e_delayed = k <= lag && lag > 0 ? ic.e0 : traj.states[k - lag].e;
    push(traj, detail::flow_step(p, traj.states[k], e_delayed, h, 0.0));
  }
  return traj;
}

std::vector<double> cumulative_integral(const std::vector<double>& f, double d) {
  const std::size_t n = f.size();
  if (n < 4) throw ValidationError("cumulative_integral needs at least 4 samples", {"nodes ≥ 4"});
  std::vector<double> out(n, 0.0);
  // Composite Simpson prefix sums at even nodes.
  std::vector<double> even(n, 0.0);
  for (std::size_t j = 2; j < n; j += 2) {
    even[j] = even[j - 2] + d / 3.0 * (f[j - 2] + 4.0 * f[j - 1] + f[j]);
  }
  for (std::size_t j = 1; j < n; ++j) {
    if (j % 2 == 0) {
      out[j] = even[j];
    } else if (j == 1) {
      // Cubic through nodes 0..3 integrated over the first subinterval.
      out[j] = d / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    } else {
      // Simpson up to j - 3, three-eighths rule on the last three subintervals.
      out[j] = even[j - 3] + 3.0 * d / 8.0 * (f[j - 3] + 3.0 * f[j - 2] + 3.0 * f[j - 1] + f[j]);
    }
  }
  return out;
}

Trajectory integrate_dde_cascade(const Params& p, const InitialCondition& ic, double t_end,
                                 int quad_n) {
  require_valid(p);
  if (!(p.r > 0.0)) throw ValidationError("integrate_dde_cascade requires r > 0", {"r > 0"});
  if (quad_n < 8) throw ValidationError("quad_n must be at least 8", {"quad_n ≥ 8"});
  check_initial(ic);
  const auto nodes = static_cast<std::size_t>(quad_n);
  const double d = p.r / static_cast<double>(quad_n);
  const std::size_t n_total = aligned_count(t_end, d, "r/quad_n divides t_end");
  const std::size_t intervals = (n_total + nodes - 1) / nodes;

  std::vector<double> tau(nodes + 1);
  for (std::size_t j = 0; j <= nodes; ++j) tau[j] = static_cast<double>(j) * d;

  Trajectory traj = start(ic.at_zero(), n_total, d);
  std::vector<double> e_prev(nodes + 1, ic.e0);
  std::vector<double> s(nodes + 1), e(nodes + 1), i(nodes + 1), rc(nodes + 1), work(nodes + 1);

  for (std::size_t interval = 0; interval < intervals; ++interval) {
    const State x0 = traj.states.back();

    // I(t) = e^{-mu τ} ( (1/K) ∫ E(s - r) e^{mu σ} dσ + I(nr) )
    for (std::size_t j = 0; j <= nodes; ++j) work[j] = e_prev[j] * std::exp(p.mu * tau[j]);
    auto acc = cumulative_integral(work, d);
    for (std::size_t j = 0; j <= nodes; ++j) {
      i[j] = std::exp(-p.mu * tau[j]) * (acc[j] / p.k_r + x0.i);
    }

    // R(t) = e^{-gamma τ} ( ∫ mu I e^{gamma σ} dσ + R(nr) )
    for (std::size_t j = 0; j <= nodes; ++j) work[j] = p.mu * i[j] * std::exp(p.gamma * tau[j]);
    acc = cumulative_integral(work, d);
    for (std::size_t j = 0; j <= nodes; ++j) rc[j] = std::exp(-p.gamma * tau[j]) * (acc[j] + x0.rcv);

    // S(t) = e^{-Φ(τ)} ( ∫ gamma R e^{Φ(σ)} dσ + S(nr) ),  Φ = ∫ beta I
    for (std::size_t j = 0; j <= nodes; ++j) work[j] = p.beta * i[j];
    const auto phi = cumulative_integral(work, d);
    for (std::size_t j = 0; j <= nodes; ++j) work[j] = p.gamma * rc[j] * std::exp(phi[j]);
    acc = cumulative_integral(work, d);
    for (std::size_t j = 0; j <= nodes; ++j) s[j] = std::exp(-phi[j]) * (acc[j] + x0.s);

    // E(t) = E(nr) + ∫ beta S I - (1/K) ∫ E(s - r)
    for (std::size_t j = 0; j <= nodes; ++j) work[j] = p.beta * s[j] * i[j];
    const auto gain = cumulative_integral(work, d);
    const auto outflow = cumulative_integral(e_prev, d);
    for (std::size_t j = 0; j <= nodes; ++j) e[j] = x0.e + gain[j] - outflow[j] / p.k_r;

    for (std::size_t j = 1; j <= nodes && traj.states.size() <= n_total; ++j) {
      push(traj, {s[j], e[j], i[j], rc[j]});
    }
    e_prev = e;
  }
  return traj;
}

std::vector<double> integrate_scalar_comparison(double k, double r, double f0, double t_end,
                                                double h) {
  std::vector<std::string> violations;
  if (!(k > 0.0)) violations.emplace_back("k > 0");
  if (!(r > 0.0)) violations.emplace_back("r > 0");
  if (!(f0 >= 0.0)) violations.emplace_back("f0 ≥ 0");
  if (!violations.empty()) throw ValidationError(std::move(violations));
  const std::size_t n = steps_for(t_end, h);
  const std::size_t lag = aligned_count(r, h, "h divides r");
  std::vector<double> f;
  f.reserve(n + 1);
  f.push_back(f0);
  auto delayed = [&](std::size_t j) { return j <= lag ? f0 : f[j - lag]; };
  for (std::size_t j = 0; j < n; ++j) {
    f.push_back(f[j] - 0.5 * h * k * (delayed(j) + delayed(j + 1)));
  }
  return f;
}

}  // namespace seirs
