#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "../support/draws.hpp"
#include "seirs/equilibria.hpp"
#include "seirs/errors.hpp"
#include "seirs/integrators.hpp"

using namespace seirs;

namespace {

const State kStart{0.9, 0.05, 0.05, 0.0};

double max_node_gap(const Trajectory& a, const Trajectory& b) {
  REQUIRE(a.size() == b.size());
  double gap = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) gap = std::max(gap, distance_inf(a.states[k], b.states[k]));
  return gap;
}

void check_invariants(const Trajectory& t) {
  for (std::size_t k = 0; k < t.size(); ++k) {
    const State& x = t.states[k];
    CHECK(std::abs(x.sum() - 1.0) <= kPropagationTol);
    CHECK(std::min({x.s, x.e, x.i, x.rcv}) >= -kPositivityTol);
    if (k) CHECK(t.times[k] > t.times[k - 1]);
  }
}

}  // namespace

TEST_CASE("steps_for and default_step") {
  CHECK(steps_for(10.0, 0.01) == 1000);
  CHECK(steps_for(1.0, 0.1) == 10);
  CHECK_THROWS_AS(steps_for(1.0, 0.3), ValidationError);
  CHECK_THROWS_AS(steps_for(1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(steps_for(0.001, 0.01), ValidationError);
  CHECK(default_step({0.1, 0.2, 0.3, 2, 0.0, 0}) == 0.01);
  CHECK(default_step({0.1, 0.2, 0.3, 2, 0.25, 0}) == 0.005);
}

TEST_CASE("integrate_ode: X0 is a fixed point") {
  const auto t = integrate_ode({0.3, 0.2, 0.1, 2, 0, 0}, {1, 0, 0, 0}, 10, 0.01);
  CHECK(t.size() == 1001);
  for (const auto& x : t.states) CHECK(x == State{1, 0, 0, 0});
}

TEST_CASE("integrate_ode converges to X0 below threshold") {
  const auto t = integrate_ode({0.1, 0.2, 0.3, 2, 0, 0}, kStart, 200, 0.01);
  check_invariants(t);
  CHECK(distance_inf(t.back(), free_disease_equilibrium()) <= 1e-6);
}

TEST_CASE("integrate_ode converges to X* above threshold") {
  const Params p{0.4, 0.2, 0.1, 2, 0, 0};
  const auto t = integrate_ode(p, kStart, 2000, 0.01);
  CHECK(distance_inf(t.back(), *coexistence_equilibrium(p)) <= 1e-4);
}

TEST_CASE("integrate_ode rejects delays and misaligned horizons") {
  CHECK_THROWS_AS(integrate_ode({0.1, 0.2, 0.3, 2, 0.5, 0}, kStart, 10, 0.01), ValidationError);
  CHECK_THROWS_AS(integrate_ode({0.1, 0.2, 0.3, 2, 0, 0}, kStart, 10, 0.03), ValidationError);
}

TEST_CASE("integrate_ode is fourth order") {
  testing::Draws d(31);
  for (int k = 0; k < 5; ++k) {
    const Params p = d.any();
    const State x0 = d.simplex(0.05);
    const double t_end = 10.0;
    const auto coarse = integrate_ode(p, x0, t_end, 0.4);
    const auto fine = integrate_ode(p, x0, t_end, 0.2);
    const auto ref = integrate_ode(p, x0, t_end, 0.0125);
    const double e1 = distance_inf(coarse.back(), ref.back());
    const double e2 = distance_inf(fine.back(), ref.back());
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.3));
  }
}

TEST_CASE("integrate_dde: zero history at X0 stays put") {
  const Params p{0.1, 0.2, 0.3, 2, 0.5, 0};
  const auto t = integrate_dde(p, {0, 1, 0, 0}, 10, p.r / 50);
  for (const auto& x : t.states) CHECK(x == State{1, 0, 0, 0});
}

TEST_CASE("integrate_dde converges to X0 and matches the cascade") {
  const Params p{0.1, 0.2, 0.3, 2, 0.5, 0};
  const InitialCondition ic{0.1, 0.8, 0.1, 0};
  const auto t = integrate_dde(p, ic, 300, 0.01);
  check_invariants(t);
  CHECK(distance_inf(t.back(), free_disease_equilibrium()) <= 1e-6);
  const auto c = integrate_dde_cascade(p, ic, 300, 50);
  check_invariants(c);
  CHECK(max_node_gap(t, c) <= 1e-6);
}

TEST_CASE("integrate_dde preconditions") {
  const Params p{0.1, 0.2, 0.3, 2, 0.5, 0};
  const InitialCondition ic{0.1, 0.8, 0.1, 0};
  CHECK_THROWS_AS(integrate_dde(p, ic, 10, 0.03), ValidationError);  // r/h not integer
  CHECK_THROWS_AS(integrate_dde({0.1, 0.2, 0.3, 2, 0, 0}, ic, 10, 0.01), ValidationError);
  CHECK_THROWS_AS(integrate_dde({0.1, 0.2, 0.3, 1, 0.5, 0}, ic, 10, 0.01), ValidationError);
  CHECK_NOTHROW(integrate_dde({0.1, 0.2, 0.3, 1, 0.5, 0}, ic, 10, 0.01,
                              {DdeScheme::kTrapezoid, DelayBound::kWaive}));
}

TEST_CASE("cascade: X0 and quadrature convergence") {
  const Params p{0.1, 0.2, 0.3, 2, 0.5, 0};
  const auto flat = integrate_dde_cascade(p, {0, 1, 0, 0}, 5, 16);
  for (const auto& x : flat.states) CHECK(x == State{1, 0, 0, 0});

  const InitialCondition ic{0.1, 0.8, 0.1, 0};
  const auto coarse = integrate_dde_cascade(p, ic, 20, 16);
  const auto fine = integrate_dde_cascade(p, ic, 20, 64);
  double gap = 0.0;
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    gap = std::max(gap, distance_inf(coarse.states[k], fine.states[4 * k]));
  }
  CHECK(gap < 1e-8);
  CHECK_THROWS_AS(integrate_dde_cascade(p, ic, 20, 4), ValidationError);
}

TEST_CASE("trapezoid and cascade agree on random draws") {
  testing::Draws d(32);
  for (int k = 0; k < 12; ++k) {
    Params p = d.any();
    p.r = d.uniform(0.2, 1.0) * p.k_r / std::numbers::e;
    // cascade conservation is quadrature-limited; keep its spacing <= 0.005
    const int n = std::max(100, static_cast<int>(std::ceil(p.r / 0.005)));
    const double h = p.r / n;
    const double t_end = p.r * std::ceil(20.0 / p.r);
    const State x = d.simplex(0.01);
    const InitialCondition ic = initial_condition_from(x);
    const auto a = integrate_dde(p, ic, t_end, h);
    const auto b = integrate_dde_cascade(p, ic, t_end, n);
    CHECK(max_node_gap(a, b) <= 1e-6);
  }
}

TEST_CASE("integrate_euler shares the grid and invariants") {
  const Params p{0.1, 0.2, 0.3, 2, 0.5, 0};
  const auto t = integrate_euler(p, {0.1, 0.8, 0.1, 0}, 50, 0.01);
  CHECK(t.size() == 5001);
  check_invariants(t);
  const auto ode = integrate_euler({0.1, 0.2, 0.3, 2, 0, 0}, initial_condition_from(kStart), 10, 0.01);
  CHECK(ode.size() == 1001);
}

TEST_CASE("scalar comparison equation") {
  const auto at_threshold = integrate_scalar_comparison(1.0 / std::numbers::e, 1.0, 1.0, 100, 0.001);
  CHECK(*std::min_element(at_threshold.begin(), at_threshold.end()) >= -1e-9);
  CHECK(at_threshold.back() <= 1e-3);

  const auto below = integrate_scalar_comparison(0.2, 1.0, 1.0, 100, 0.001);
  CHECK(*std::min_element(below.begin(), below.end()) > 0.0);

  const auto zero = integrate_scalar_comparison(0.3, 1.0, 0.0, 10, 0.01);
  for (double v : zero) CHECK(v == 0.0);

  CHECK_THROWS_AS(integrate_scalar_comparison(0.3, 1.0, 1.0, 10, 0.3), ValidationError);
  CHECK_THROWS_AS(integrate_scalar_comparison(-0.3, 1.0, 1.0, 10, 0.01), ValidationError);
}

TEST_CASE("cumulative_integral is exact on cubics") {
  const double h = 0.1;
  std::vector<double> f;
  for (int k = 0; k <= 20; ++k) {
    const double x = k * h;
    f.push_back(x * x * x - 2 * x + 1);
  }
  const auto integral = cumulative_integral(f, h);
  for (int k = 0; k <= 20; ++k) {
    const double x = k * h;
    CHECK(integral[k] == doctest::Approx(x * x * x * x / 4 - x * x + x).epsilon(1e-13));
  }
}
