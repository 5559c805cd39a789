#include "seirs/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace seirs {

namespace {

constexpr double kPairAsRealTol = 1e-7;

double eval(double a, double b, double c, double x) { return ((x + a) * x + b) * x + c; }

double polish(double a, double b, double c, double x) {
  double fx = eval(a, b, c, x);
  for (int it = 0; it < 6 && fx != 0.0; ++it) {
    const double slope = (3.0 * x + 2.0 * a) * x + b;
    if (slope == 0.0) break;
    const double next = x - fx / slope;
    const double fnext = eval(a, b, c, next);
    if (!(std::abs(fnext) < std::abs(fx))) break;
    x = next;
    fx = fnext;
  }
  return x;
}

}  // namespace

double cubic_discriminant(double a, double b, double c) noexcept {
  return 18.0 * a * b * c - 4.0 * a * a * a * c + a * a * b * b - 4.0 * b * b * b - 27.0 * c * c;
}

std::array<std::complex<double>, 3> cubic_roots(double a, double b, double c) {
  const double q = (a * a - 3.0 * b) / 9.0;
  const double r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
  const double shift = a / 3.0;

  if (r * r < q * q * q) {
    const double sq = std::sqrt(q);
    const double angle = std::acos(std::clamp(r / (sq * sq * sq), -1.0, 1.0));
    std::array<double, 3> x{};
    for (int k = 0; k < 3; ++k) {
      x[k] = polish(a, b, c, -2.0 * sq * std::cos((angle + 2.0 * std::numbers::pi * k) / 3.0) - shift);
    }
    std::sort(x.begin(), x.end());
    return {std::complex<double>(x[0]), x[1], x[2]};
  }

  const double big = -std::copysign(std::cbrt(std::abs(r) + std::sqrt(r * r - q * q * q)), r);
  const double small = big == 0.0 ? 0.0 : q / big;
  const double x1 = polish(a, b, c, big + small - shift);

  // Deflate by the polished real root: x² + p1·x + p0.
  const double p1 = a + x1;
  const double p0 = b + p1 * x1;
  const double disc = p1 * p1 - 4.0 * p0;
  const double re = -0.5 * p1;
  const double im = disc < 0.0 ? 0.5 * std::sqrt(-disc) : 0.0;
  if (disc >= 0.0 || im <= kPairAsRealTol * std::max(1.0, std::abs(re))) {
    double y1 = re, y2 = re;
    if (disc > 0.0) {
      // Cancellation-free quadratic roots.
      const double t = -0.5 * (p1 + std::copysign(std::sqrt(disc), p1));
      y1 = t;
      y2 = t != 0.0 ? p0 / t : 0.0;
    }
    std::array<double, 3> x{x1, polish(a, b, c, y1), polish(a, b, c, y2)};
    std::sort(x.begin(), x.end());
    return {std::complex<double>(x[0]), x[1], x[2]};
  }
  return {std::complex<double>(x1), std::complex<double>(re, im), std::complex<double>(re, -im)};
}

std::vector<double> cubic_real_roots(double a, double b, double c) {
  std::vector<double> out;
  for (const auto& z : cubic_roots(a, b, c)) {
    if (z.imag() == 0.0) out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace seirs
