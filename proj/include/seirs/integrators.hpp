#pragma once

#include <cstddef>
#include <vector>

#include "seirs/model.hpp"

namespace seirs {

/// Fixed-step solution: node k sits at times[k] = k·step.
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  double step = 0.0;

  std::size_t size() const noexcept { return states.size(); }
  const State& back() const { return states.back(); }
};

enum class DdeScheme {
  kTrapezoid,  // explicit trapezoid (Heun); delayed values at both step ends are stored nodes
  kEuler,
};

enum class DelayBound {
  kEnforce,  // require k_r >= r·e
  kWaive,    // stability-boundary experiments beyond the admissible delay range
};

struct DdeOptions {
  DdeScheme scheme = DdeScheme::kTrapezoid;
  DelayBound delay_bound = DelayBound::kEnforce;
};

/// h = min(0.01, r/50) for r > 0, else 0.01.
double default_step(const Params& p) noexcept;

/// Number of steps n with n·h = t_end; throws ValidationError when h does not
/// divide t_end (relative tolerance 1e-12) or h <= 0 or t_end < h.
std::size_t steps_for(double t_end, double h);

/// Nondelayed system (requires r = 0), classical fourth-order Runge-Kutta.
/// Every node is checked for sum drift <= 1e-10 and components >= -1e-9;
/// a breach throws NumericalError carrying the node index.
Trajectory integrate_ode(const Params& p, const State& x0, double t_end, double h);

/// Delayed system (requires r > 0, r/h integer). E(t - r) is read from stored
/// nodes: the constant e0 on [-r, 0], computed nodes afterwards.
Trajectory integrate_dde(const Params& p, const InitialCondition& ic, double t_end, double h,
                         DdeOptions options = {});

/// Explicit Euler on the delayed or nondelayed system, written as four
/// transfer flows (S→E, E→I, I→R, R→S). This is the noise-free reference
/// that the stochastic simulator reduces to at epsilon = 0.
Trajectory integrate_euler(const Params& p, const InitialCondition& ic, double t_end, double h);

/// Method-of-steps solution built interval by interval from the integral
/// representations of I, R, S and E on [n·r, (n+1)·r]. Integrals use a
/// fourth-order cumulative composite quadrature with `quad_n` subintervals
/// per delay interval; node spacing is r / quad_n. Requires quad_n >= 8.
/// The scheme is not conservative by construction: its sum drift is the
/// quadrature error, about 1e-11 at spacing 0.01 and falling 16x per halving.
Trajectory integrate_dde_cascade(const Params& p, const InitialCondition& ic, double t_end,
                                 int quad_n);

/// Scalar comparison equation F'(s) = -k·F(s - r) with F = f0 on [-r, 0],
/// explicit trapezoid with node-exact delay lookup. Returns F at s = j·h.
std::vector<double> integrate_scalar_comparison(double k, double r, double f0, double t_end,
                                                double h);

/// Fourth-order cumulative quadrature on a uniform grid: result[j] is the
/// integral of the samples from node 0 to node j. Needs at least 4 samples.
std::vector<double> cumulative_integral(const std::vector<double>& f, double spacing);

}  // namespace seirs
