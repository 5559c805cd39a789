#include "seirs/delay_margin.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "seirs/cubic.hpp"
#include "seirs/errors.hpp"

namespace seirs {

namespace {

void require_degree(const QuasiPolynomial& q, int degree) {
  if (q.degree != degree || static_cast<int>(q.a.size()) != degree ||
      static_cast<int>(q.b.size()) != degree) {
    throw ValidationError("quasi-polynomial of degree " + std::to_string(degree) + " expected",
                          {"degree = " + std::to_string(degree)});
  }
}

double phase(double sin_theta, double cos_theta) {
  double theta = std::atan2(sin_theta, cos_theta);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  if (theta == 0.0 || theta >= 2.0 * std::numbers::pi) theta = 0.0;
  return theta;
}

// Builds the report from ω and the phase pair, and checks the substitution residual.
CrossingReport finish(const QuasiPolynomial& q, double omega, double cos_theta, double sin_theta) {
  CrossingReport out;
  out.omega = omega;
  out.cos_theta = cos_theta;
  out.sin_theta = sin_theta;
  out.theta = phase(sin_theta, cos_theta);
  out.r_star = out.theta / omega;
  out.residual = verify_crossing(q, omega, out.r_star);
  if (!(out.residual <= kCrossingResidualTol)) {
    std::ostringstream os;
    os.precision(17);
    os << "crossing residual " << out.residual << " exceeds " << kCrossingResidualTol;
    throw NumericalError(os.str());
  }
  return out;
}

}  // namespace

bool deg2_instability_possible(const QuasiPolynomial& q) {
  require_degree(q, 2);
  const double a0 = q.a[0], a1 = q.a[1], b0 = q.b[0], b1 = q.b[1];
  if (!(a0 + b0 > 0.0 && a1 + b1 > 0.0)) return false;
  if (a0 * a0 < b0 * b0) return true;
  const double gap = a1 * a1 - b1 * b1 - 2.0 * a0;
  return a0 * a0 > b0 * b0 && a1 * a1 < b1 * b1 + 2.0 * a0 && gap * gap > 4.0 * (a0 * a0 - b0 * b0);
}

double deg2_quartic_residual(const QuasiPolynomial& q, double omega) {
  const double w2 = omega * omega;
  const double a0 = q.a_at(0), a1 = q.a_at(1), b0 = q.b_at(0), b1 = q.b_at(1);
  return w2 * w2 + (a1 * a1 - 2.0 * a0 - b1 * b1) * w2 + (a0 * a0 - b0 * b0);
}

CrossingReport deg2_crossing(const QuasiPolynomial& q) {
  require_degree(q, 2);
  const double a0 = q.a[0], a1 = q.a[1], b0 = q.b[0], b1 = q.b[1];
  const double c = a0 * a0 - b0 * b0;
  const double lin = b1 * b1 + 2.0 * a0 - a1 * a1;
  const bool single = a0 + b0 != 0.0 && c < 0.0;
  const bool pair = c > 0.0 && a1 * a1 < b1 * b1 + 2.0 * a0 && lin * lin > 4.0 * c;
  if (!single && !pair) throw NoCrossingError("no imaginary-axis crossing for this quasi-polynomial");

  const double w2 = 0.5 * (lin + std::sqrt(lin * lin - 4.0 * c));
  if (!(w2 > 0.0)) throw NoCrossingError("crossing frequency squared is not positive");
  const double omega = std::sqrt(w2);
  const double norm = b1 * b1 * w2 + b0 * b0;
  const double cos_theta = -(a1 * b1 * w2 + (a0 - w2) * b0) / norm;
  const double sin_theta = (a1 * b0 * omega - (a0 - w2) * b1 * omega) / norm;
  return finish(q, omega, cos_theta, sin_theta);
}

double free_disease_margin(double k_r, double mu, double beta) {
  if (!(k_r > 0.0) || !(mu > 0.0) || !(beta >= 0.0) || !(beta < mu)) {
    throw ValidationError("free-disease margin requires k_r > 0 and 0 <= beta < mu",
                          {"0 ≤ beta < mu"});
  }
  const double inv2 = 1.0 / (k_r * k_r);
  const double base = inv2 - mu * mu;
  const double gap = mu - beta;
  return std::numbers::pi /
         (std::numbers::sqrt2 * std::sqrt(base + std::sqrt(base * base + 4.0 * inv2 * gap * gap)));
}

double free_disease_margin(const Params& p) {
  require_valid(p);
  return free_disease_margin(p.k_r, p.mu, p.beta);
}

CubicABC cubic_abc(const QuasiPolynomial& q) {
  require_degree(q, 3);
  const double a0 = q.a[0], a1 = q.a[1], a2 = q.a[2];
  const double b0 = q.b[0], b1 = q.b[1], b2 = q.b[2];
  CubicABC out;
  out.a = a2 * a2 - b2 * b2 - 2.0 * a1;
  out.b = a1 * a1 - b1 * b1 + 2.0 * b2 * b0 - 2.0 * a2 * a0;
  out.c = a0 * a0 - b0 * b0;
  const double A = out.a, B = out.b, C = out.c;
  out.delta = 18.0 * A * B * C - 4.0 * A * A * A * C + A * A * B * B - 4.0 * B * B - 27.0 * C * C;
  out.delta_standard = cubic_discriminant(A, B, C);
  return out;
}

bool deg3_instability_possible(const QuasiPolynomial& q) {
  const CubicABC abc = cubic_abc(q);
  const double A = abc.a, B = abc.b, C = abc.c;
  if (A > 0.0 && B > 0.0 && C > 0.0) return false;
  if (!routh_hurwitz_undelayed(q).stable) return false;
  if (C < 0.0) return true;
  return C > 0.0 && A * A - 3.0 * B > 0.0 &&
         4.0 * (B * B - 3.0 * A * C) * (A * A - 3.0 * B) - (9.0 * C - A * B) * (9.0 * C - A * B) > 0.0;
}

double deg3_magnitude_residual(const QuasiPolynomial& q, double omega) {
  const double w2 = omega * omega;
  const double p = q.a_at(0) - q.a_at(2) * w2;
  const double s = omega * w2 - q.a_at(1) * omega;
  const double u = q.b_at(0) - q.b_at(2) * w2;
  const double v = q.b_at(1) * omega;
  return p * p + s * s - v * v - u * u;
}

Deg3Crossing deg3_crossing(const QuasiPolynomial& q) {
  require_degree(q, 3);
  if (q.a[0] + q.b[0] == 0.0) {
    throw ValidationError("deg3_crossing requires a0 + b0 != 0", {"a0 + b0 ≠ 0"});
  }
  Deg3Crossing out;
  out.abc = cubic_abc(q);
  out.real_roots = cubic_real_roots(out.abc.a, out.abc.b, out.abc.c);

  if ((out.abc.delta < 0.0) != (out.abc.delta_standard < 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "discriminant forms disagree in sign: criterion " << out.abc.delta << ", standard "
       << out.abc.delta_standard;
    out.diagnostics.push_back(os.str());
  }
  if (!(out.abc.delta < 0.0)) {
    out.diagnostics.emplace_back("discriminant >= 0: the single-crossing criterion does not apply");
    return out;
  }
  if (out.real_roots.size() != 1) {
    out.diagnostics.push_back("discriminant < 0 but the cubic in omega^2 has " +
                              std::to_string(out.real_roots.size()) + " real roots");
    return out;
  }
  const double w2 = out.real_roots.front();
  if (!(w2 > 0.0)) throw NoCrossingError("the only real root in omega^2 is not positive");

  const double omega = std::sqrt(w2);
  const double a0 = q.a[0], a1 = q.a[1], a2 = q.a[2];
  const double b0 = q.b[0], b1 = q.b[1], b2 = q.b[2];
  const double inst_re = a0 - a2 * w2;
  const double inst_im = -omega * w2 + a1 * omega;
  const double del_re = b0 - b2 * w2;
  const double del_im = b1 * omega;
  const double norm = del_im * del_im + del_re * del_re;
  const double cos_theta = -(inst_im * del_im + inst_re * del_re) / norm;
  const double sin_theta = (del_re * inst_im - del_im * inst_re) / norm;
  out.report = finish(q, omega, cos_theta, sin_theta);
  out.status = Deg3Status::kCrossing;
  return out;
}

double verify_crossing(const QuasiPolynomial& q, double omega, double r) {
  return std::abs(q.evaluate(std::complex<double>(0.0, omega), r));
}

}  // namespace seirs
