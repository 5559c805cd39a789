#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "seirs/errors.hpp"
#include "seirs/sde.hpp"
#include "vector_field.hpp"

namespace seirs {

namespace {

constexpr const char* kComponentNames[4] = {"S", "E", "I", "R"};

struct Grid {
  std::size_t steps = 0;
  std::size_t lag = 0;  // r / h, zero for the nondelayed system
};

Grid make_grid(const Params& p, const InitialCondition& ic, double t_end, double h) {
  require_valid(p);
  (void)make_initial_condition(ic.e0, ic.s0, ic.i0, ic.r0);
  Grid g;
  g.steps = steps_for(t_end, h);
  if (p.r > 0.0) {
    const double ratio = p.r / h;
    const double lag = std::round(ratio);
    if (lag < 1.0 || std::abs(ratio - lag) > 1e-12 * std::max(1.0, ratio)) {
      throw ValidationError("h must divide r", {"h divides r"});
    }
    g.lag = static_cast<std::size_t>(lag);
  }
  return g;
}

void check_excursion(const State& x, std::size_t node) {
  const auto c = x.as_array();
  for (int k = 0; k < 4; ++k) {
    if (!(c[k] >= -kExcursionTol && c[k] <= 1.0 + kExcursionTol)) {
      std::ostringstream os;
      os.precision(17);
      os << "excursion at step " << node << ": component " << kComponentNames[k] << " = " << c[k];
      throw NumericalError(os.str(), node);
    }
  }
  const double drift = std::abs(x.sum() - 1.0);
  if (!(drift <= kPropagationTol)) {
    std::ostringstream os;
    os.precision(17);
    os << "conservation breach at step " << node << ": |sum - 1| = " << drift;
    throw NumericalError(os.str(), node);
  }
}

// Runs one stochastic path, calling visit(k, state) for every node.
template <class Visit>
void run_path(const Params& p, const InitialCondition& ic, const Grid& g, double h,
              std::uint64_t stream, Visit&& visit) {
  std::mt19937_64 engine(stream);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sqrt_h = std::sqrt(h);

  std::vector<double> e_history;
  if (g.lag > 0) e_history.reserve(g.steps + 1);
  State x = ic.at_zero();
  if (g.lag > 0) e_history.push_back(x.e);
  visit(std::size_t{0}, x);
  for (std::size_t k = 0; k < g.steps; ++k) {
    double e_delayed = x.e;
    if (g.lag > 0) e_delayed = k <= g.lag ? ic.e0 : e_history[k - g.lag];
    const double dw = sqrt_h * normal(engine);
    const double noise = p.epsilon * x.s * x.i * dw;
    x = detail::flow_step(p, x, e_delayed, h, noise);
    check_excursion(x, k + 1);
    if (g.lag > 0) e_history.push_back(x.e);
    visit(k + 1, x);
  }
}

struct ReplicaResult {
  double sup_deviation = 0.0;
  State final_state;
};

// Runs replicas [0, n_rep) over `threads` workers; each replica owns its
// stream and its result slot, so the output is schedule independent.
template <class Body>
std::vector<ReplicaResult> run_replicas(std::size_t n_rep, unsigned threads, Body&& body) {
  if (n_rep == 0) throw ValidationError("ensemble needs n_rep >= 1", {"n_rep ≥ 1"});
  std::vector<ReplicaResult> results(n_rep);
  std::vector<std::string> failures(n_rep);
  std::vector<char> failed(n_rep, 0);

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_rep));
  auto work = [&](unsigned w) {
    for (std::size_t k = w; k < n_rep; k += workers) {
      try {
        results[k] = body(k);
      } catch (const std::exception& ex) {
        failed[k] = 1;
        failures[k] = ex.what();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (std::size_t k = 0; k < n_rep; ++k) {
    if (failed[k]) throw NumericalError("replica " + std::to_string(k) + ": " + failures[k]);
  }
  return results;
}

State mean_of(const std::vector<ReplicaResult>& results) {
  State m{0.0, 0.0, 0.0, 0.0};
  for (const auto& r : results) {
    m.s += r.final_state.s;
    m.e += r.final_state.e;
    m.i += r.final_state.i;
    m.rcv += r.final_state.rcv;
  }
  const double n = static_cast<double>(results.size());
  return {m.s / n, m.e / n, m.i / n, m.rcv / n};
}

}  // namespace

std::uint64_t replica_stream_seed(Seed seed, std::uint64_t replica) noexcept {
  // splitmix64 finaliser over (master, replica).
  std::uint64_t z = seed.master + 0x9E3779B97F4A7C15ULL * (replica + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Trajectory simulate_sde(const Params& p, const InitialCondition& ic, double t_end, double h,
                        Seed seed, std::uint64_t replica) {
  const Grid g = make_grid(p, ic, t_end, h);
  Trajectory traj;
  traj.step = h;
  traj.times.reserve(g.steps + 1);
  traj.states.reserve(g.steps + 1);
  run_path(p, ic, g, h, replica_stream_seed(seed, replica), [&](std::size_t k, const State& x) {
    traj.times.push_back(static_cast<double>(k) * h);
    traj.states.push_back(x);
  });
  return traj;
}

std::vector<TailPoint> empirical_tail(const std::vector<double>& sup_deviations,
                                      const std::vector<double>& rho_grid) {
  std::vector<double> sorted = sup_deviations;
  std::sort(sorted.begin(), sorted.end());
  std::vector<TailPoint> tail;
  tail.reserve(rho_grid.size());
  for (double rho : rho_grid) {
    const auto above = static_cast<std::size_t>(
        sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), rho));
    const double prob = sorted.empty() ? 0.0 : static_cast<double>(above) / static_cast<double>(sorted.size());
    tail.push_back({rho, prob, above});
  }
  return tail;
}

EnsembleSummary ensemble(const Params& p, const InitialCondition& ic, double t_end, double h,
                         std::size_t n_rep, Seed seed, const std::vector<double>& rho_grid,
                         unsigned threads) {
  const Grid g = make_grid(p, ic, t_end, h);
  const Trajectory reference = integrate_euler(p, ic, t_end, h);

  auto results = run_replicas(n_rep, threads, [&](std::size_t k) {
    ReplicaResult out;
    run_path(p, ic, g, h, replica_stream_seed(seed, k), [&](std::size_t node, const State& x) {
      out.sup_deviation = std::max(out.sup_deviation, distance_inf(x, reference.states[node]));
      out.final_state = x;
    });
    return out;
  });

  EnsembleSummary summary;
  summary.n_rep = n_rep;
  summary.sup_deviations.reserve(n_rep);
  for (const auto& r : results) summary.sup_deviations.push_back(r.sup_deviation);
  summary.mean_final = mean_of(results);
  summary.tail = empirical_tail(summary.sup_deviations, rho_grid);
  return summary;
}

double median(std::vector<double> values) {
  if (values.empty()) throw ValidationError("median of an empty sample", {"sample non-empty"});
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double percentile(std::vector<double> values, double q) {
  if (values.empty() || !(q > 0.0 && q <= 1.0)) {
    throw ValidationError("percentile needs a non-empty sample and q in (0, 1]", {"q ∈ (0,1]"});
  }
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

std::vector<double> auto_rho_grid(const std::vector<double>& sup_deviations, std::size_t points) {
  std::vector<double> grid;
  if (sup_deviations.empty() || points == 0) return grid;
  const double top = *std::max_element(sup_deviations.begin(), sup_deviations.end());
  if (!(top > 0.0)) return grid;
  grid.reserve(points);
  for (std::size_t k = 1; k <= points; ++k) {
    grid.push_back(top * static_cast<double>(k) / static_cast<double>(points));
  }
  return grid;
}

double fit_tail_exponent(const std::vector<TailPoint>& tail, double epsilon,
                         std::size_t min_exceedances) {
  double sxx = 0.0, sxy = 0.0;
  std::size_t used = 0;
  for (const auto& t : tail) {
    if (t.rho <= 0.0 || t.exceedances < min_exceedances || t.probability <= 0.0) continue;
    const double x = t.rho * t.rho / (epsilon * epsilon);
    sxx += x * x;
    sxy += x * std::log(t.probability);
    ++used;
  }
  if (used < 2) throw NumericalError("insufficient exceedances for a tail fit");
  return -sxy / sxx;
}

ConcentrationReport concentration_check(const Params& p, const InitialCondition& ic, double t_end,
                                        double h, std::size_t n_rep,
                                        const std::vector<double>& rho_grid, Seed seed,
                                        double epsilon_check, double safety, unsigned threads) {
  ConcentrationReport report;
  report.epsilon = p.epsilon;
  report.epsilon_check = epsilon_check;
  report.safety = safety;

  EnsembleSummary base = ensemble(p, ic, t_end, h, n_rep, seed, rho_grid, threads);
  std::vector<double> grid = rho_grid;
  if (grid.empty()) {
    grid = auto_rho_grid(base.sup_deviations);
    base.tail = empirical_tail(base.sup_deviations, grid);
  }
  report.tail = base.tail;
  report.median_sup = median(base.sup_deviations);
  if (p.epsilon == 0.0) {
    report.degenerate = true;
    return report;
  }

  const double c_hat = fit_tail_exponent(base.tail, p.epsilon);
  report.c_hat = c_hat;
  report.points_used = static_cast<std::size_t>(std::count_if(
      base.tail.begin(), base.tail.end(),
      [](const TailPoint& t) { return t.rho > 0.0 && t.exceedances >= 5 && t.probability > 0.0; }));

  Params wider = p;
  wider.epsilon = epsilon_check;
  const EnsembleSummary check = ensemble(wider, ic, t_end, h, n_rep, seed, grid, threads);
  report.check_tail = check.tail;
  report.transferable = true;
  for (const auto& t : check.tail) {
    const double bound = safety * std::exp(-c_hat * t.rho * t.rho / (epsilon_check * epsilon_check));
    report.check_bound.push_back(bound);
    if (t.probability > bound) report.transferable = false;
  }
  return report;
}

namespace {

void require_nondelayed(const Params& p) {
  require_valid(p);
  if (p.r != 0.0) throw ValidationError("nondelayed analysis only (r must be 0)", {"r = 0"});
}

}  // namespace

bool lyapunov_condition(const Params& p) {
  require_nondelayed(p);
  return p.mu - p.beta - p.epsilon * p.epsilon / (2.0 * p.mu * p.k_r) > 0.0;
}

double lyapunov_critical_epsilon(const Params& p) {
  require_valid(p);
  return p.mu > p.beta ? std::sqrt(2.0 * p.mu * p.k_r * (p.mu - p.beta)) : 0.0;
}

std::array<double, 3> lyapunov_inequalities(const Params& p, double v2, double v3,
                                            double lambda1_sq, double lambda3_sq) {
  const double coupling = p.beta + v2 / p.k_r;
  return {-2.0 / p.k_r + lambda1_sq * coupling,
          -2.0 * v2 * p.mu + p.epsilon * p.epsilon + coupling / lambda1_sq + v3 * p.mu / lambda3_sq,
          -2.0 * v3 * p.gamma + lambda3_sq * v3 * p.mu};
}

double lyapunov_generator(const Params& p, double v2, double v3, const std::array<double, 3>& u) {
  const auto [u1, u2, u3] = u;
  return 2.0 * (p.beta + v2 / p.k_r) * u1 * u2 + 2.0 * v3 * p.mu * u2 * u3 - 2.0 / p.k_r * u1 * u1 -
         (2.0 * v2 * p.mu - p.epsilon * p.epsilon) * u2 * u2 - 2.0 * v3 * p.gamma * u3 * u3;
}

LyapunovCertificate lyapunov_certificate(const Params& p) {
  if (!lyapunov_condition(p)) {
    throw ValidationError("lyapunov condition mu - beta - epsilon^2/(2 mu K_r) > 0 not satisfied",
                          {"mu - beta - epsilon²/(2 mu k_r) > 0"});
  }
  LyapunovCertificate cert;
  cert.alpha0 = 1e-6;
  cert.v2 = p.k_r * (2.0 * p.mu - p.beta);
  cert.lambda1_sq = (2.0 / p.k_r - cert.alpha0) / (p.beta + cert.v2 / p.k_r);
  cert.lambda3_sq = p.gamma / p.mu;

  bool found = false;
  double v3 = 1.0;
  for (int k = 0; k <= 8; ++k, v3 /= 10.0) {
    if (lyapunov_inequalities(p, cert.v2, v3, cert.lambda1_sq, cert.lambda3_sq)[1] <= 0.0) {
      found = true;
      break;
    }
  }
  if (!found) throw NumericalError("certificate construction failed: no v3 in {1, ..., 1e-8} works");
  cert.v3 = v3;
  cert.inequalities = lyapunov_inequalities(p, cert.v2, cert.v3, cert.lambda1_sq, cert.lambda3_sq);

  cert.lv_bound = -std::numeric_limits<double>::infinity();
  for (int a = 1; a <= 10; ++a) {
    for (int b = 1; b <= 10; ++b) {
      for (int c = 1; c <= 10; ++c) {
        const std::array<double, 3> u{a / 10.0, b / 10.0, c / 10.0};
        const double norm2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        cert.lv_bound = std::max(cert.lv_bound, lyapunov_generator(p, cert.v2, cert.v3, u) / norm2);
      }
    }
  }
  cert.holds = std::all_of(cert.inequalities.begin(), cert.inequalities.end(),
                           [](double v) { return v <= 0.0; }) &&
               cert.lv_bound < 0.0;
  return cert;
}

StochasticStabilityReport stochastic_stability_experiment(const Params& p,
                                                          const InitialCondition& ic,
                                                          double t_end, double h,
                                                          std::size_t n_rep, Seed seed,
                                                          unsigned threads) {
  require_nondelayed(p);
  const Grid g = make_grid(p, ic, t_end, h);
  StochasticStabilityReport report;
  report.condition_satisfied = lyapunov_condition(p);
  if (!report.condition_satisfied) report.flags.emplace_back("condition not satisfied");
  report.n_rep = n_rep;

  auto results = run_replicas(n_rep, threads, [&](std::size_t k) {
    ReplicaResult out;
    run_path(p, ic, g, h, replica_stream_seed(seed, k),
             [&](std::size_t, const State& x) { out.final_state = x; });
    return out;
  });
  std::vector<double> infected;
  infected.reserve(n_rep);
  for (const auto& r : results) {
    infected.push_back(r.final_state.e + r.final_state.i + r.final_state.rcv);
  }
  report.mean_infected = std::accumulate(infected.begin(), infected.end(), 0.0) /
                         static_cast<double>(n_rep);
  report.p95_infected = percentile(infected, 0.95);
  report.mean_final = mean_of(results);
  return report;
}

}  // namespace seirs
