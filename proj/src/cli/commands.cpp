#include <algorithm>
#include <cmath>
#include <numbers>

#include "seirs/cli.hpp"
#include "seirs/delay_margin.hpp"
#include "seirs/equilibria.hpp"
#include "seirs/errors.hpp"
#include "seirs/linear_stability.hpp"
#include "seirs/sde.hpp"

namespace seirs::cli {

namespace {

using Pairs = std::vector<std::pair<std::string, std::string>>;

void echo_common(const RunConfig& cfg, Pairs& in) {
  in.emplace_back("params.beta", format_number(cfg.params.beta));
  in.emplace_back("params.mu", format_number(cfg.params.mu));
  in.emplace_back("params.gamma", format_number(cfg.params.gamma));
  in.emplace_back("params.k_r", format_number(cfg.params.k_r));
  in.emplace_back("params.r", format_number(cfg.params.r));
  in.emplace_back("params.epsilon", format_number(cfg.params.epsilon));
}

void echo_run(const RunConfig& cfg, Pairs& in) {
  in.emplace_back("initial.s0", format_number(cfg.initial.s0));
  in.emplace_back("initial.e0", format_number(cfg.initial.e0));
  in.emplace_back("initial.i0", format_number(cfg.initial.i0));
  in.emplace_back("initial.r0", format_number(cfg.initial.r0));
  in.emplace_back("run.horizon", format_number(cfg.horizon));
  in.emplace_back("run.step", format_number(cfg.step));
}

void echo_ensemble(const RunConfig& cfg, Pairs& in) {
  in.emplace_back("ensemble.n_rep", std::to_string(cfg.n_rep));
  in.emplace_back("ensemble.seed", std::to_string(cfg.seed));
}

void state_block(Report& rep, const std::string& prefix, const State& x) {
  rep.output(prefix + ".s", x.s);
  rep.output(prefix + ".e", x.e);
  rep.output(prefix + ".i", x.i);
  rep.output(prefix + ".r", x.rcv);
}

void trajectory_summary(Report& rep, const Params& p, const Trajectory& traj) {
  double drift = 0.0;
  double lowest = 1.0;
  for (const auto& x : traj.states) {
    drift = std::max(drift, std::abs(x.sum() - 1.0));
    lowest = std::min({lowest, x.s, x.e, x.i, x.rcv});
  }
  rep.output("nodes", traj.size());
  state_block(rep, "final", traj.back());
  rep.output("max_sum_drift", drift);
  rep.output("min_component", lowest);
  rep.output("distance.x_free", distance_inf(traj.back(), free_disease_equilibrium()));
  if (auto star = coexistence_equilibrium(p)) {
    rep.output("distance.x_star", distance_inf(traj.back(), *star));
  }
}

void eigen_block(Report& rep, const std::string& prefix,
                 const std::array<std::complex<double>, 3>& roots) {
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const std::string key = prefix + "." + std::to_string(k + 1);
    rep.output(key + ".re", roots[k].real());
    rep.output(key + ".im", roots[k].imag());
  }
}

void criteria_block(Report& rep, const std::string& prefix, const StabilityVerdict& v) {
  for (std::size_t k = 0; k < v.criteria.size(); ++k) {
    const auto& c = v.criteria[k];
    const std::string key = prefix + "." + std::to_string(k + 1);
    rep.output(key + ".condition", c.condition);
    rep.output(key + ".value", c.value);
    rep.output(key + ".satisfied", c.satisfied);
  }
  rep.output(prefix + ".verdict", std::string(to_string(v.verdict)));
}

void crossing_block(Report& rep, const std::string& prefix, const CrossingReport& c) {
  rep.output(prefix + ".omega", c.omega);
  rep.output(prefix + ".theta", c.theta);
  rep.output(prefix + ".cos_theta", c.cos_theta);
  rep.output(prefix + ".sin_theta", c.sin_theta);
  rep.output(prefix + ".r_star", c.r_star);
  rep.output(prefix + ".residual", c.residual);
}

void coefficient_block(Report& rep, const std::string& prefix, const QuasiPolynomial& q) {
  for (int k = 0; k < q.degree; ++k) rep.output(prefix + ".a" + std::to_string(k), q.a[k]);
  for (int k = 0; k < q.degree; ++k) rep.output(prefix + ".b" + std::to_string(k), q.b[k]);
}

Report run_equilibria(const RunConfig& cfg) {
  Report rep;
  echo_common(cfg, rep.inputs);
  const EquilibriumSet eq = equilibria(cfg.params);
  rep.output("r0", eq.r0);
  state_block(rep, "x_free", eq.x_free);
  rep.output("x_free.residual", equilibrium_residual(cfg.params, eq.x_free));
  rep.output("x_star.present", eq.x_star.has_value());
  if (eq.x_star) {
    state_block(rep, "x_star", *eq.x_star);
    rep.output("x_star.residual", equilibrium_residual(cfg.params, *eq.x_star));
  }
  return rep;
}

RunResult run_simulate(const RunConfig& cfg) {
  RunResult out;
  Report& rep = out.report;
  Method method = cfg.method;
  if (method == Method::kAuto) method = cfg.params.r > 0.0 ? Method::kTrapezoid : Method::kRk4;
  echo_common(cfg, rep.inputs);
  echo_run(cfg, rep.inputs);
  rep.inputs.emplace_back("simulate.method", to_string(method));
  if (method == Method::kCascade) rep.inputs.emplace_back("simulate.quad_n", std::to_string(cfg.quad_n));

  switch (method) {
    case Method::kRk4:
      out.trajectory = integrate_ode(cfg.params, cfg.initial.at_zero(), cfg.horizon, cfg.step);
      break;
    case Method::kTrapezoid:
      out.trajectory = integrate_dde(cfg.params, cfg.initial, cfg.horizon, cfg.step);
      break;
    case Method::kEuler:
      out.trajectory = integrate_euler(cfg.params, cfg.initial, cfg.horizon, cfg.step);
      break;
    case Method::kCascade:
    case Method::kAuto:
      out.trajectory = integrate_dde_cascade(cfg.params, cfg.initial, cfg.horizon, cfg.quad_n);
      break;
  }
  trajectory_summary(rep, cfg.params, *out.trajectory);
  return out;
}

RunResult run_simulate_sde(const RunConfig& cfg) {
  RunResult out;
  Report& rep = out.report;
  echo_common(cfg, rep.inputs);
  echo_run(cfg, rep.inputs);
  rep.inputs.emplace_back("ensemble.seed", std::to_string(cfg.seed));
  rep.inputs.emplace_back("sde.replica", std::to_string(cfg.replica));
  out.trajectory =
      simulate_sde(cfg.params, cfg.initial, cfg.horizon, cfg.step, Seed{cfg.seed}, cfg.replica);
  trajectory_summary(rep, cfg.params, *out.trajectory);
  return out;
}

Report run_stability(const RunConfig& cfg) {
  Report rep;
  echo_common(cfg, rep.inputs);
  const Params& p = cfg.params;
  rep.output("r0", basic_reproduction_number(p));

  const auto closed = free_disease_eigenvalues_closed_form(p);
  for (std::size_t k = 0; k < closed.size(); ++k) {
    rep.output("free_disease.closed_form." + std::to_string(k + 1), closed[k]);
  }
  const Matrix3 j0 = jacobian_free_disease(p);
  const auto roots0 = eigenvalues(j0);
  eigen_block(rep, "free_disease.eigenvalue", roots0);
  rep.output("free_disease.max_real_part", max_real_part(roots0));
  rep.output("free_disease.verdict", std::string(to_string(eigenvalue_verdict(j0))));

  rep.output("coexistence.present", p.beta > p.mu);
  if (p.beta > p.mu) {
    const Matrix3 a = jacobian_coexistence(p);
    const auto roots = eigenvalues(a);
    eigen_block(rep, "coexistence.eigenvalue", roots);
    rep.output("coexistence.max_real_part", max_real_part(roots));
    rep.output("coexistence.eigen_verdict", std::string(to_string(eigenvalue_verdict(a))));
    rep.output("coexistence.trace", a.trace());
    rep.output("coexistence.det", a.determinant());
    rep.output("coexistence.a2", a.principal_minor_sum());
    criteria_block(rep, "coexistence.routh_hurwitz", routh_hurwitz_coexistence(p));
  }
  if (p.r > 0.0) rep.warnings.emplace_back("delay ignored here; see delay-margin");
  return rep;
}

Report run_delay_margin(const RunConfig& cfg) {
  Report rep;
  echo_common(cfg, rep.inputs);
  const Params& p = cfg.params;
  const double half_pi_k = 0.5 * std::numbers::pi * p.k_r;
  const double r_max = p.k_r / std::numbers::e;
  rep.output("delay.r", p.r);
  rep.output("delay.admissible_max", r_max);

  const QuasiPolynomial q2 = char_poly_delay_free(p);
  coefficient_block(rep, "free_disease.coefficients", q2);
  rep.output("free_disease.instability_possible", deg2_instability_possible(q2));

  if (p.beta < p.mu) {
    const CrossingReport c = deg2_crossing(q2);
    crossing_block(rep, "free_disease.crossing", c);
    rep.output("free_disease.crossing.quartic_residual", deg2_quartic_residual(q2, c.omega));
    const double m = free_disease_margin(p);
    rep.output("free_disease.margin", m);
    rep.output("free_disease.half_pi_k_r", half_pi_k);
    const bool chain = p.r < half_pi_k && half_pi_k <= m && m <= c.r_star;
    rep.output("free_disease.chain_holds", chain);
    rep.output("verdict", std::string(chain ? "stable for all admissible delays"
                                            : "margin chain violated"));
    return rep;
  }
  if (p.beta == p.mu) {
    rep.output("verdict", std::string("marginal (beta = mu)"));
    return rep;
  }

  rep.output("free_disease.verdict", std::string("unstable (beta > mu)"));
  const QuasiPolynomial q3 = char_poly_delay_coexistence(p);
  coefficient_block(rep, "coexistence.coefficients", q3);
  rep.output("coexistence.instability_possible", deg3_instability_possible(q3));
  try {
    const Deg3Crossing d = deg3_crossing(q3);
    rep.output("coexistence.A", d.abc.a);
    rep.output("coexistence.B", d.abc.b);
    rep.output("coexistence.C", d.abc.c);
    rep.output("coexistence.delta", d.abc.delta);
    rep.output("coexistence.delta_standard", d.abc.delta_standard);
    rep.output("coexistence.real_roots", d.real_roots.size());
    for (const auto& msg : d.diagnostics) rep.warnings.push_back(msg);
    if (d.status == Deg3Status::kInconclusive) {
      rep.output("verdict", std::string("inconclusive"));
      return rep;
    }
    crossing_block(rep, "coexistence.crossing", *d.report);
    rep.output("coexistence.crossing.magnitude_residual",
               deg3_magnitude_residual(q3, d.report->omega));
    rep.output("coexistence.crossing.admissible", d.report->r_star <= r_max);
    rep.output("verdict", std::string(p.r < d.report->r_star ? "stable below the critical delay"
                                                             : "unstable beyond the critical delay"));
  } catch (const NoCrossingError& e) {
    rep.warnings.emplace_back(e.what());
    rep.output("verdict", std::string("no crossing; stability persists for all delays"));
  }
  return rep;
}

Report run_concentration(const RunConfig& cfg) {
  Report rep;
  echo_common(cfg, rep.inputs);
  echo_run(cfg, rep.inputs);
  echo_ensemble(cfg, rep.inputs);
  const double eps_check = cfg.epsilon_check.value_or(2.0 * cfg.params.epsilon);
  rep.inputs.emplace_back("concentration.epsilon_check", format_number(eps_check));
  rep.inputs.emplace_back("concentration.safety", format_number(cfg.safety));

  const ConcentrationReport c =
      concentration_check(cfg.params, cfg.initial, cfg.horizon, cfg.step, cfg.n_rep, cfg.rho_grid,
                          Seed{cfg.seed}, eps_check, cfg.safety, cfg.threads);
  rep.output("degenerate", c.degenerate);
  rep.output("median_sup", c.median_sup);
  for (std::size_t k = 0; k < c.tail.size(); ++k) {
    const std::string key = "tail." + std::to_string(k + 1);
    rep.output(key + ".rho", c.tail[k].rho);
    rep.output(key + ".probability", c.tail[k].probability);
    rep.output(key + ".exceedances", c.tail[k].exceedances);
  }
  if (c.degenerate) return rep;
  rep.output("c_hat", *c.c_hat);
  rep.output("points_used", c.points_used);
  for (std::size_t k = 0; k < c.check_tail.size(); ++k) {
    const std::string key = "check." + std::to_string(k + 1);
    rep.output(key + ".probability", c.check_tail[k].probability);
    rep.output(key + ".bound", c.check_bound[k]);
  }
  rep.output("transferable", c.transferable);
  return rep;
}

Report run_lyapunov(const RunConfig& cfg) {
  Report rep;
  echo_common(cfg, rep.inputs);
  const Params& p = cfg.params;
  const bool condition = lyapunov_condition(p);
  rep.output("condition", condition);
  rep.output("condition.value", p.mu - p.beta - p.epsilon * p.epsilon / (2.0 * p.mu * p.k_r));
  rep.output("critical_epsilon", lyapunov_critical_epsilon(p));
  if (condition) {
    const LyapunovCertificate cert = lyapunov_certificate(p);
    rep.output("certificate.v2", cert.v2);
    rep.output("certificate.v3", cert.v3);
    rep.output("certificate.lambda1_sq", cert.lambda1_sq);
    rep.output("certificate.lambda3_sq", cert.lambda3_sq);
    rep.output("certificate.alpha0", cert.alpha0);
    for (std::size_t k = 0; k < cert.inequalities.size(); ++k) {
      rep.output("certificate.inequality." + std::to_string(k + 1), cert.inequalities[k]);
    }
    rep.output("certificate.lv_bound", cert.lv_bound);
    rep.output("certificate.holds", cert.holds);
  } else {
    rep.warnings.emplace_back("condition not satisfied; no certificate");
  }
  if (cfg.lyapunov_experiment) {
    echo_run(cfg, rep.inputs);
    echo_ensemble(cfg, rep.inputs);
    const StochasticStabilityReport e = stochastic_stability_experiment(
        p, cfg.initial, cfg.horizon, cfg.step, cfg.n_rep, Seed{cfg.seed}, cfg.threads);
    rep.output("experiment.mean_infected", e.mean_infected);
    rep.output("experiment.p95_infected", e.p95_infected);
    state_block(rep, "experiment.mean_final", e.mean_final);
    for (const auto& f : e.flags) rep.warnings.push_back("experiment: " + f);
  }
  return rep;
}

}  // namespace

RunResult run(std::string_view command, const RunConfig& cfg) {
  RunResult out;
  if (command == "equilibria") {
    out.report = run_equilibria(cfg);
  } else if (command == "simulate") {
    out = run_simulate(cfg);
  } else if (command == "simulate-sde") {
    out = run_simulate_sde(cfg);
  } else if (command == "stability") {
    out.report = run_stability(cfg);
  } else if (command == "delay-margin") {
    out.report = run_delay_margin(cfg);
  } else if (command == "concentration") {
    out.report = run_concentration(cfg);
  } else if (command == "lyapunov") {
    out.report = run_lyapunov(cfg);
  } else {
    throw ValidationError("unknown command '" + std::string(command) + "'", {"command"});
  }
  out.report.command = std::string(command);
  out.report.warnings.insert(out.report.warnings.begin(), cfg.warnings.begin(), cfg.warnings.end());
  return out;
}

}  // namespace seirs::cli
