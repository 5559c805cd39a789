#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "seirs/model.hpp"

namespace seirs {

/// 3×3 coefficient matrix of a linearization in the reduced (E, I, R) variables.
struct Matrix3 {
  std::array<std::array<double, 3>, 3> m{};

  double operator()(int row, int col) const { return m[row][col]; }
  double trace() const noexcept { return m[0][0] + m[1][1] + m[2][2]; }
  double determinant() const noexcept;
  /// Sum of the principal 2×2 minors; the λ coefficient of det(λI - M).
  double principal_minor_sum() const noexcept;
};

/// Characteristic function λ^n + Σ a_k λ^k + (Σ b_k λ^k)·e^{-λ r}, n = degree
/// (2 or 3). `a` and `b` hold n coefficients each, lowest order first.
struct QuasiPolynomial {
  int degree = 2;
  std::vector<double> a;
  std::vector<double> b;
  double r = 0.0;

  std::complex<double> evaluate(std::complex<double> lambda, double delay) const;
  std::complex<double> operator()(std::complex<double> lambda) const { return evaluate(lambda, r); }

  /// Instantaneous and delayed coefficient of λ^k (zero above the list).
  double a_at(int k) const { return k < static_cast<int>(a.size()) ? a[k] : 0.0; }
  double b_at(int k) const { return k < static_cast<int>(b.size()) ? b[k] : 0.0; }
};

/// Sign tests within this band are reported as marginal.
inline constexpr double kMarginalTol = 1e-12;

enum class Verdict { kStable, kUnstable, kMarginal };

const char* to_string(Verdict v) noexcept;

struct Criterion {
  std::string condition;
  double value = 0.0;
  bool satisfied = false;
  bool marginal = false;
};

struct StabilityVerdict {
  bool stable = false;
  Verdict verdict = Verdict::kUnstable;
  std::vector<Criterion> criteria;
};

/// Criterion "value > 0" (or "< 0" when `positive` is false), marginal within kMarginalTol.
Criterion sign_criterion(std::string condition, double value, bool positive);

/// Folds criteria into a verdict: stable iff every criterion is satisfied;
/// marginal if nothing is violated but some criterion sits in the marginal band.
StabilityVerdict combine(std::vector<Criterion> criteria);

/// Linearization at the free-disease point:
/// rows (-1/K_r, beta, 0), (1/K_r, -mu, 0), (0, mu, -gamma).
Matrix3 jacobian_free_disease(const Params& p);

/// {λ+, λ-, -gamma} with λ± = (-(mu K_r + 1) ± sqrt((mu K_r + 1)² - 4 K_r (mu - beta))) / (2 K_r).
std::array<double, 3> free_disease_eigenvalues_closed_form(const Params& p);

/// Linearization at the coexistence point (requires beta > mu).
Matrix3 jacobian_coexistence(const Params& p);

/// Eigenvalues from the characteristic cubic det(λI - M).
std::array<std::complex<double>, 3> eigenvalues(const Matrix3& m);

double max_real_part(const std::array<std::complex<double>, 3>& roots) noexcept;

/// Stability from the sign of the largest eigenvalue real part.
Verdict eigenvalue_verdict(const Matrix3& m);

/// Routh-Hurwitz on matrix A at the coexistence point:
/// Trace(A) < 0, Det(A) < 0, -A2·Trace(A) + Det(A) > 0.
StabilityVerdict routh_hurwitz_coexistence(const Params& p);

/// Routh-Hurwitz for the delay-free polynomial λ^n + Σ (a_k + b_k) λ^k.
StabilityVerdict routh_hurwitz_undelayed(const QuasiPolynomial& q);

/// Degree-2 factor at the free-disease point:
/// a = (0, mu), b = ((mu - beta)/K_r, 1/K_r), delay p.r.
QuasiPolynomial char_poly_delay_free(const Params& p);

/// Degree-3 characteristic function at the coexistence point (requires beta > mu).
QuasiPolynomial char_poly_delay_coexistence(const Params& p);

}  // namespace seirs
