#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seirs/integrators.hpp"
#include "seirs/model.hpp"

namespace seirs {

/// Master seed of an ensemble. Replica k draws from the stream
/// replica_stream_seed(seed, k), independent of how replicas are scheduled.
struct Seed {
  std::uint64_t master = 0;
};

std::uint64_t replica_stream_seed(Seed seed, std::uint64_t replica) noexcept;

/// Components may leave [0, 1] by at most this much before a path is aborted.
inline constexpr double kExcursionTol = 0.05;

/// Euler-Maruyama path of the stochastic system. One Gaussian increment per
/// step drives the contagion noise epsilon·S·I·dW, moved from S to E. The
/// delayed term follows integrate_dde (node lookup, r/h integer).
/// At epsilon = 0 the result equals integrate_euler node for node.
Trajectory simulate_sde(const Params& p, const InitialCondition& ic, double t_end, double h,
                        Seed seed, std::uint64_t replica);

struct TailPoint {
  double rho = 0.0;
  double probability = 0.0;  // fraction of replicas with sup deviation > rho
  std::size_t exceedances = 0;
};

std::vector<TailPoint> empirical_tail(const std::vector<double>& sup_deviations,
                                      const std::vector<double>& rho_grid);

struct EnsembleSummary {
  std::size_t n_rep = 0;
  std::vector<double> sup_deviations;  // per replica, max over nodes of ‖Z^ε - Z‖∞
  State mean_final;
  std::vector<TailPoint> tail;
};

/// Runs n_rep replicas against the epsilon = 0 Euler reference on the same
/// grid. `threads` = 0 uses the hardware concurrency; results do not depend
/// on the thread count.
EnsembleSummary ensemble(const Params& p, const InitialCondition& ic, double t_end, double h,
                         std::size_t n_rep, Seed seed, const std::vector<double>& rho_grid,
                         unsigned threads = 0);

double median(std::vector<double> values);

/// Nearest-rank percentile, q in (0, 1].
double percentile(std::vector<double> values, double q);

/// `points` equally spaced rho values up to the largest deviation (empty when
/// every deviation is zero).
std::vector<double> auto_rho_grid(const std::vector<double>& sup_deviations,
                                  std::size_t points = 24);

/// Least-squares c for log P = -c·rho²/epsilon² over tail points with at least
/// `min_exceedances` exceedances and rho > 0. Throws NumericalError
/// ("insufficient exceedances") with fewer than two usable points.
double fit_tail_exponent(const std::vector<TailPoint>& tail, double epsilon,
                         std::size_t min_exceedances = 5);

struct ConcentrationReport {
  double epsilon = 0.0;
  bool degenerate = false;  // epsilon = 0: no fluctuations, nothing to fit
  std::optional<double> c_hat;
  std::size_t points_used = 0;
  double median_sup = 0.0;
  std::vector<TailPoint> tail;

  double epsilon_check = 0.0;
  double safety = 3.0;
  std::vector<TailPoint> check_tail;
  std::vector<double> check_bound;  // safety · exp(-c_hat rho² / epsilon_check²)
  bool transferable = false;
};

/// Fits c_hat at p.epsilon and checks that the empirical tail at
/// `epsilon_check` stays below safety·exp(-c_hat·rho²/epsilon_check²) on
/// the same rho grid. An empty `rho_grid` is replaced by auto_rho_grid of the
/// base ensemble.
ConcentrationReport concentration_check(const Params& p, const InitialCondition& ic, double t_end,
                                        double h, std::size_t n_rep,
                                        const std::vector<double>& rho_grid, Seed seed,
                                        double epsilon_check, double safety = 3.0,
                                        unsigned threads = 0);

/// mu - beta - epsilon²/(2 mu K_r) > 0; nondelayed systems only.
bool lyapunov_condition(const Params& p);

/// Largest epsilon satisfying the condition with equality, sqrt(2 mu K_r (mu - beta));
/// zero when mu <= beta.
double lyapunov_critical_epsilon(const Params& p);

struct LyapunovCertificate {
  double v2 = 0.0;
  double v3 = 0.0;
  double lambda1_sq = 0.0;
  double lambda3_sq = 0.0;
  double alpha0 = 0.0;
  std::array<double, 3> inequalities{};  // each must be <= 0
  double lv_bound = 0.0;                 // max of LV/|u|² over the sample grid
  bool holds = false;
};

/// Left-hand sides of the three coefficient inequalities for
/// V(u) = u1² + v2 u2² + v3 u3².
std::array<double, 3> lyapunov_inequalities(const Params& p, double v2, double v3,
                                            double lambda1_sq, double lambda3_sq);

/// Generator LV of the linearised nondelayed stochastic system at u = (E, I, R).
double lyapunov_generator(const Params& p, double v2, double v3, const std::array<double, 3>& u);

/// Builds the certificate: v2 = K_r(2mu - beta), alpha0 = 1e-6,
/// lambda1² = (2/K_r - alpha0)/(beta + v2/K_r), lambda3² = gamma/mu, and the
/// largest v3 in {1, 1e-1, ..., 1e-8} satisfying the second inequality.
/// lv_bound samples LV/|u|² on the 10×10×10 grid {0.1, ..., 1}³.
/// Throws ValidationError when the condition fails and NumericalError when
/// no v3 in the search grid works.
LyapunovCertificate lyapunov_certificate(const Params& p);

struct StochasticStabilityReport {
  bool condition_satisfied = false;
  std::size_t n_rep = 0;
  double mean_infected = 0.0;  // mean of E(T) + I(T) + R(T)
  double p95_infected = 0.0;
  State mean_final;
  std::vector<std::string> flags;
};

/// Ensemble of the nonlinear nondelayed stochastic system (requires r = 0)
/// reporting the spread of E + I + R at the horizon.
StochasticStabilityReport stochastic_stability_experiment(const Params& p,
                                                          const InitialCondition& ic,
                                                          double t_end, double h,
                                                          std::size_t n_rep, Seed seed,
                                                          unsigned threads = 0);

}  // namespace seirs
