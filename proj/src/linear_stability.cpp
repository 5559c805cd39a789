#include "seirs/linear_stability.hpp"

#include <algorithm>
#include <cmath>

#include "seirs/cubic.hpp"
#include "seirs/errors.hpp"

namespace seirs {

namespace {

void require_coexistence(const Params& p) {
  require_valid(p);
  if (!(p.beta > p.mu)) {
    throw ValidationError("no coexistence equilibrium (beta <= mu)", {"beta > mu"});
  }
}

}  // namespace

double Matrix3::determinant() const noexcept {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double Matrix3::principal_minor_sum() const noexcept {
  return m[0][0] * m[1][1] + m[0][0] * m[2][2] + m[1][1] * m[2][2] - m[0][1] * m[1][0] -
         m[0][2] * m[2][0] - m[1][2] * m[2][1];
}

std::complex<double> QuasiPolynomial::evaluate(std::complex<double> lambda, double delay) const {
  std::complex<double> instant = std::pow(lambda, degree);
  std::complex<double> delayed = 0.0;
  std::complex<double> power = 1.0;
  for (int k = 0; k < degree; ++k) {
    instant += a_at(k) * power;
    delayed += b_at(k) * power;
    power *= lambda;
  }
  return instant + delayed * std::exp(-lambda * delay);
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::kStable: return "stable";
    case Verdict::kUnstable: return "unstable";
    case Verdict::kMarginal: return "marginal";
  }
  return "unknown";
}

Criterion sign_criterion(std::string condition, double value, bool positive) {
  Criterion c{std::move(condition), value, false, false};
  if (std::abs(value) <= kMarginalTol) {
    c.marginal = true;
  } else {
    c.satisfied = positive ? value > 0.0 : value < 0.0;
  }
  return c;
}

StabilityVerdict combine(std::vector<Criterion> criteria) {
  StabilityVerdict out;
  const bool all = std::all_of(criteria.begin(), criteria.end(),
                               [](const Criterion& c) { return c.satisfied; });
  const bool violated = std::any_of(criteria.begin(), criteria.end(), [](const Criterion& c) {
    return !c.satisfied && !c.marginal;
  });
  out.stable = all;
  out.verdict = all ? Verdict::kStable : (violated ? Verdict::kUnstable : Verdict::kMarginal);
  out.criteria = std::move(criteria);
  return out;
}

Matrix3 jacobian_free_disease(const Params& p) {
  require_valid(p);
  const double k = 1.0 / p.k_r;
  return {{{{-k, p.beta, 0.0}, {k, -p.mu, 0.0}, {0.0, p.mu, -p.gamma}}}};
}

std::array<double, 3> free_disease_eigenvalues_closed_form(const Params& p) {
  require_valid(p);
  const double lead = p.mu * p.k_r + 1.0;
  const double radicand = lead * lead - 4.0 * p.k_r * (p.mu - p.beta);
  const double root = std::sqrt(radicand);
  return {(-lead + root) / (2.0 * p.k_r), (-lead - root) / (2.0 * p.k_r), -p.gamma};
}

Matrix3 jacobian_coexistence(const Params& p) {
  require_coexistence(p);
  const double b = p.beta, mu = p.mu, g = p.gamma, k = p.k_r;
  const double denom = g * k * mu + g + mu;
  return {{{{-(b * g * k + g + mu) / (k * denom), (g * k * mu * mu - b * g + 2.0 * g * mu + mu * mu) / denom,
             -g * (b - mu) / denom},
            {1.0 / k, -mu, 0.0},
            {0.0, mu, -g}}}};
}

std::array<std::complex<double>, 3> eigenvalues(const Matrix3& m) {
  return cubic_roots(-m.trace(), m.principal_minor_sum(), -m.determinant());
}

double max_real_part(const std::array<std::complex<double>, 3>& roots) noexcept {
  return std::max({roots[0].real(), roots[1].real(), roots[2].real()});
}

Verdict eigenvalue_verdict(const Matrix3& m) {
  const double lead = max_real_part(eigenvalues(m));
  if (std::abs(lead) <= kMarginalTol) return Verdict::kMarginal;
  return lead < 0.0 ? Verdict::kStable : Verdict::kUnstable;
}

StabilityVerdict routh_hurwitz_coexistence(const Params& p) {
  const Matrix3 a = jacobian_coexistence(p);
  const double trace = a.trace();
  const double det = a.determinant();
  const double a2 = a.principal_minor_sum();
  return combine({sign_criterion("Trace(A) < 0", trace, false),
                  sign_criterion("Det(A) < 0", det, false),
                  sign_criterion("-A2·Trace(A) + Det(A) > 0", -a2 * trace + det, true)});
}

StabilityVerdict routh_hurwitz_undelayed(const QuasiPolynomial& q) {
  const double c0 = q.a_at(0) + q.b_at(0);
  const double c1 = q.a_at(1) + q.b_at(1);
  if (q.degree == 2) {
    return combine({sign_criterion("a0 + b0 > 0", c0, true), sign_criterion("a1 + b1 > 0", c1, true)});
  }
  const double c2 = q.a_at(2) + q.b_at(2);
  return combine({sign_criterion("a2 + b2 > 0", c2, true), sign_criterion("a0 + b0 > 0", c0, true),
                  sign_criterion("(a2 + b2)(a1 + b1) - (a0 + b0) > 0", c2 * c1 - c0, true)});
}

QuasiPolynomial char_poly_delay_free(const Params& p) {
  require_valid(p);
  return {2, {0.0, p.mu}, {(p.mu - p.beta) / p.k_r, 1.0 / p.k_r}, p.r};
}

QuasiPolynomial char_poly_delay_coexistence(const Params& p) {
  require_coexistence(p);
  const double b = p.beta, mu = p.mu, g = p.gamma, k = p.k_r;
  const double denom = g * k * mu + g + mu;
  const double a0 = g * g * mu * (b - mu) / denom;
  const double a1 = g * (g * k * mu * mu + b * g + b * mu) / denom;
  const double a2 = (g * g * k * mu + g * k * mu * mu + b * g + g * g + g * mu + mu * mu) / denom;
  const double b0 = g * (b * g + b * mu - g * mu - mu * mu) / (denom * k);
  const double b1 = g * (g * k * mu + b + g) / (denom * k);
  const double b2 = 1.0 / k;
  return {3, {a0, a1, a2}, {b0, b1, b2}, p.r};
}

}  // namespace seirs
