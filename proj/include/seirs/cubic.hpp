#pragma once

#include <array>
#include <complex>
#include <vector>

namespace seirs {

/// All three roots of x³ + a·x² + b·x + c, real ones Newton-polished.
/// A conjugate pair whose imaginary part is below 1e-7·max(1, |Re|) is
/// returned as a double real root.
std::array<std::complex<double>, 3> cubic_roots(double a, double b, double c);

/// Real roots of x³ + a·x² + b·x + c in ascending order, with multiplicity.
/// Residuals are within 1e-12·max(1, |a|, |b|, |c|).
std::vector<double> cubic_real_roots(double a, double b, double c);

/// Standard discriminant 18abc - 4a³c + a²b² - 4b³ - 27c².
double cubic_discriminant(double a, double b, double c) noexcept;

}  // namespace seirs
