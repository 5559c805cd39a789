#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "../support/draws.hpp"
#include "seirs/cubic.hpp"
#include "seirs/delay_margin.hpp"
#include "seirs/errors.hpp"

using namespace seirs;

namespace {

const Params kFree{0.1, 0.2, 0.3, 2, 0.5, 0};
const Params kCoexist{0.4, 0.2, 0.1, 2, 0.5, 0};

}  // namespace

TEST_CASE("degree-2 instability predicate") {
  CHECK(deg2_instability_possible(char_poly_delay_free(kFree)));
  CHECK_FALSE(deg2_instability_possible(char_poly_delay_free({0.2, 0.2, 0.3, 2, 0.5, 0})));
  CHECK_FALSE(deg2_instability_possible({2, {1, 1}, {0, 0}, 0}));
}

TEST_CASE("degree-2 crossing at the reference point") {
  const auto q = char_poly_delay_free(kFree);
  const CrossingReport c = deg2_crossing(q);
  CHECK(c.omega == doctest::Approx(0.47042218644121163).epsilon(1e-14));
  CHECK(c.theta == doctest::Approx(1.7633368730844332).epsilon(1e-14));
  CHECK(c.r_star == doctest::Approx(3.7484134972974884).epsilon(1e-14));
  CHECK(std::abs(deg2_quartic_residual(q, c.omega)) <= 1e-12);
  CHECK(std::abs(c.cos_theta * c.cos_theta + c.sin_theta * c.sin_theta - 1.0) <= 1e-12);
  CHECK(c.residual <= 1e-9);
  CHECK(verify_crossing(q, c.omega, c.r_star) <= 1e-9);
  CHECK(verify_crossing(q, 1.1 * c.omega, c.r_star) > 1e-3);
}

TEST_CASE("degree-2 no crossing") {
  CHECK_THROWS_AS(deg2_crossing({2, {0.05, 0.2}, {0.05, 0.5}, 0}), NoCrossingError);
  CHECK_THROWS_AS(deg2_crossing({2, {0.05, 0.2}, {-0.05, 0.5}, 0}), NoCrossingError);
  CHECK_THROWS_AS(deg2_crossing(char_poly_delay_free({0.2, 0.2, 0.3, 2, 0.5, 0})), NoCrossingError);
}

TEST_CASE("degree-2 crossings over random draws") {
  testing::Draws d(51);
  for (int k = 0; k < 200; ++k) {
    const Params p = d.with_delay(d.below_threshold(), 0.001);
    const auto q = char_poly_delay_free(p);
    const auto c = deg2_crossing(q);
    CHECK(c.omega > 0.0);
    CHECK((c.theta >= 0.0 && c.theta < 2 * std::numbers::pi));
    CHECK(c.r_star == doctest::Approx(c.theta / c.omega).epsilon(1e-15));
    CHECK(c.cos_theta < 0.0);
    CHECK(c.sin_theta > 0.0);
    CHECK(c.theta >= std::numbers::pi / 2);
    CHECK(std::abs(std::cos(c.theta) - c.cos_theta) <= 1e-12);
    CHECK(std::abs(std::sin(c.theta) - c.sin_theta) <= 1e-12);
    CHECK(c.residual <= 1e-9);

    // magnitude identity (a0 - ω²)² + a1²ω² = b1²ω² + b0²
    const double w2 = c.omega * c.omega;
    const double lhs = (q.a[0] - w2) * (q.a[0] - w2) + q.a[1] * q.a[1] * w2;
    const double rhs = q.b[1] * q.b[1] * w2 + q.b[0] * q.b[0];
    CHECK(std::abs(lhs - rhs) <= 1e-10);

    // ω² is the only positive root of x(x² + (a1² - 2a0 - b1²)x + (a0² - b0²))
    const auto roots = cubic_real_roots(q.a[1] * q.a[1] - 2 * q.a[0] - q.b[1] * q.b[1],
                                        q.a[0] * q.a[0] - q.b[0] * q.b[0], 0.0);
    std::vector<double> positive;
    std::copy_if(roots.begin(), roots.end(), std::back_inserter(positive), [](double x) { return x > 1e-15; });
    REQUIRE(positive.size() == 1);
    CHECK(positive[0] == doctest::Approx(w2).epsilon(1e-12));

    const double m = free_disease_margin(p);
    const double half = 0.5 * std::numbers::pi * p.k_r;
    CHECK(p.r < half);
    CHECK(half <= m * (1 + 1e-15));
    CHECK(m <= c.r_star);
  }
}

TEST_CASE("free-disease margin") {
  CHECK(free_disease_margin(2, 0.2, 0) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(free_disease_margin(kFree) == doctest::Approx(3.3391204158080203).epsilon(1e-14));
  CHECK(free_disease_margin(kFree) <= deg2_crossing(char_poly_delay_free(kFree)).r_star);
  for (int k = 1; k <= 20; ++k) {
    const double k_r = 0.25 * k;
    CHECK(std::abs(free_disease_margin(k_r, 0.2, 0) - 0.5 * std::numbers::pi * k_r) <= 1e-12 * k_r);
  }
  CHECK_THROWS_AS(free_disease_margin(2, 0.2, 0.2), ValidationError);
  CHECK_THROWS_AS(free_disease_margin(kCoexist), ValidationError);
}

TEST_CASE("degree-3 instability predicate") {
  CHECK(deg3_instability_possible(char_poly_delay_coexistence(kCoexist)));
  CHECK_FALSE(deg3_instability_possible({3, {6, 11, 6}, {0, 0, 0}, 0}));
  CHECK_FALSE(deg3_instability_possible({3, {-0.5, 1, 1}, {0.1, 0, 0}, 0}));
}

TEST_CASE("degree-3 crossing at the reference point") {
  const auto q = char_poly_delay_coexistence(kCoexist);
  const Deg3Crossing d = deg3_crossing(q);
  CHECK(d.abc.a == doctest::Approx(-0.19653979238754325).epsilon(1e-13));
  CHECK(d.abc.b == doctest::Approx(0.0030903114186851211).epsilon(1e-13));
  CHECK(d.abc.c == doctest::Approx(-7.6470588235294118e-5).epsilon(1e-13));
  CHECK(d.abc.delta == doctest::Approx(-3.9475298419609656e-5).epsilon(1e-12));
  CHECK(d.abc.delta_standard == doctest::Approx(-1.39324996286424e-6).epsilon(1e-10));
  CHECK(d.diagnostics.empty());
  REQUIRE(d.status == Deg3Status::kCrossing);
  REQUIRE(d.real_roots.size() == 1);
  const double w2 = d.real_roots[0];
  CHECK(w2 == doctest::Approx(0.18185909816803446).epsilon(1e-13));
  CHECK(std::abs(((w2 + d.abc.a) * w2 + d.abc.b) * w2 + d.abc.c) <= 1e-12);

  const CrossingReport& c = *d.report;
  CHECK(c.omega == doctest::Approx(0.42644940868529114).epsilon(1e-13));
  CHECK(c.theta == doctest::Approx(1.9855365598398864).epsilon(1e-13));
  CHECK(c.r_star == doctest::Approx(4.6559721256529214).epsilon(1e-13));
  CHECK(std::abs(c.cos_theta * c.cos_theta + c.sin_theta * c.sin_theta - 1.0) <= 1e-10);
  CHECK(c.residual <= 1e-9);
  CHECK(std::abs(deg3_magnitude_residual(q, c.omega)) <= 1e-9);
}

TEST_CASE("degree-3 edge cases") {
  CHECK_THROWS_AS(deg3_crossing({3, {1, 3, 4}, {0, 0, 3}, 0}), NoCrossingError);
  CHECK_THROWS_AS(deg3_crossing({3, {0.5, 1, 1}, {-0.5, 0, 0}, 0}), ValidationError);

  const Deg3Crossing stable = deg3_crossing({3, {6, 11, 6}, {0, 0, 0}, 0});
  CHECK(stable.status == Deg3Status::kInconclusive);
  CHECK_FALSE(stable.report);

  // criterion discriminant < 0 while the cubic has three real roots 0.1, 0.2, 0.3
  const QuasiPolynomial q{3, {0, 0.06967746271587916, 0}, {std::sqrt(0.006), 0, 0.6787083869882865}, 0};
  const Deg3Crossing split = deg3_crossing(q);
  CHECK(split.abc.delta < 0.0);
  CHECK(split.abc.delta_standard > 0.0);
  CHECK(split.real_roots.size() == 3);
  CHECK(split.status == Deg3Status::kInconclusive);
  CHECK(split.diagnostics.size() == 2);
}

TEST_CASE("degree-3 crossings over random draws") {
  testing::Draws d(52);
  int crossings = 0;
  for (int k = 0; k < 200; ++k) {
    Params p = d.above_threshold();
    if (!(p.k_r < 1 / p.mu + 1 / p.gamma)) continue;
    const auto q = char_poly_delay_coexistence(d.with_delay(p, 0.001));
    CHECK(routh_hurwitz_undelayed(q).stable);
    CHECK(q.a[0] * q.a[0] - q.b[0] * q.b[0] < 0.0);
    CHECK(deg3_instability_possible(q));
    const auto res = deg3_crossing(q);
    if (res.status != Deg3Status::kCrossing) continue;
    ++crossings;
    const double w = res.report->omega;
    const double w2 = w * w;
    CHECK(std::abs(((w2 + res.abc.a) * w2 + res.abc.b) * w2 + res.abc.c) <= 1e-12);
    CHECK(std::abs(deg3_magnitude_residual(q, w)) <= 1e-9);
    CHECK(res.report->residual <= 1e-9);
    CHECK(std::abs(std::cos(res.report->theta) - res.report->cos_theta) <= 1e-12);
  }
  CHECK(crossings > 50);
}

TEST_CASE("verify_crossing without a delayed part is delay independent") {
  const QuasiPolynomial q{3, {1, 2, 3}, {0, 0, 0}, 0};
  CHECK(verify_crossing(q, 0.7, 0.0) == verify_crossing(q, 0.7, 5.0));
}
