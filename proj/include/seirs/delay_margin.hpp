#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seirs/linear_stability.hpp"
#include "seirs/model.hpp"

namespace seirs {

/// First imaginary-axis crossing λ = iω of a quasi-polynomial as the delay grows.
struct CrossingReport {
  double omega = 0.0;      // crossing frequency, > 0
  double theta = 0.0;      // phase in [0, 2π)
  double r_star = 0.0;     // critical delay theta / omega
  double cos_theta = 0.0;  // the (cos, sin) pair theta was recovered from
  double sin_theta = 0.0;
  double residual = 0.0;   // |q(iω)| at delay r_star
};

/// Coefficients of ω⁶ + A ω⁴ + B ω² + C = 0 for a degree-3 quasi-polynomial.
struct CubicABC {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double delta = 0.0;           // 18ABC - 4A³C + A²B² - 4B² - 27C² (the criterion's form)
  double delta_standard = 0.0;  // ... - 4B³ ... (the textbook cubic discriminant)
};

/// Residual tolerance every CrossingReport must meet.
inline constexpr double kCrossingResidualTol = 1e-9;

/// Degree 2: stable without delay and destabilised by a growing delay iff
/// a0+b0 > 0, a1+b1 > 0 and (a0² < b0², or a0² > b0² with a1² < b1² + 2a0 and
/// (a1² - b1² - 2a0)² > 4(a0² - b0²)).
bool deg2_instability_possible(const QuasiPolynomial& q);

/// Degree 2 crossing: ω² from the larger root of ω⁴ + (a1² - 2a0 - b1²)ω² + (a0² - b0²),
/// θ from the cos/sin pair normalised by b1²ω² + b0², r* = θ/ω.
/// Throws NoCrossingError when the preconditions fail.
CrossingReport deg2_crossing(const QuasiPolynomial& q);

/// ω⁴ + (a1² - 2a0 - b1²)ω² + (a0² - b0²) at the given ω.
double deg2_quartic_residual(const QuasiPolynomial& q, double omega);

/// M(K_r, mu, beta) = π / (√2 · √((K_r⁻² - mu²) + √((K_r⁻² - mu²)² + 4 K_r⁻² (mu - beta)²))).
/// Requires 0 <= beta < mu and k_r > 0; equals π/(2ω) for the free-disease crossing.
double free_disease_margin(double k_r, double mu, double beta);
double free_disease_margin(const Params& p);

CubicABC cubic_abc(const QuasiPolynomial& q);

/// Degree 3 analogue: A, B, C not all positive, delay-free Routh-Hurwitz on
/// (a + b), and (C < 0, or C > 0 with A² - 3B > 0 and 4(B² - 3AC)(A² - 3B) - (9C - AB)² > 0).
bool deg3_instability_possible(const QuasiPolynomial& q);

enum class Deg3Status {
  kCrossing,      // the criterion's discriminant is negative and the real root is positive
  kInconclusive,  // discriminant >= 0 or the one-real-root cross-check disagrees
};

struct Deg3Crossing {
  CubicABC abc;
  std::vector<double> real_roots;  // real roots of x³ + A x² + B x + C, x = ω²
  Deg3Status status = Deg3Status::kInconclusive;
  std::optional<CrossingReport> report;
  std::vector<std::string> diagnostics;
};

/// Degree 3 crossing. Requires a0 + b0 != 0 (ValidationError otherwise); a
/// negative discriminant with a non-positive real root throws NoCrossingError.
Deg3Crossing deg3_crossing(const QuasiPolynomial& q);

/// (a0 - a2ω²)² + (ω³ - a1ω)² - b1²ω² - (b0 - b2ω²)², zero at a crossing.
double deg3_magnitude_residual(const QuasiPolynomial& q, double omega);

/// |q(iω)| with delay r.
double verify_crossing(const QuasiPolynomial& q, double omega, double r);

}  // namespace seirs
