#pragma once

// Right-hand side of the SEIRS system, shared by the deterministic and
// stochastic integrators.

#include "seirs/model.hpp"

namespace seirs::detail {

struct Rates {
  double ds, de, di, dr;
};

inline Rates drift(const Params& p, const State& x, double e_delayed) noexcept {
  const double infection = p.beta * x.s * x.i;
  const double exit = e_delayed / p.k_r;
  return {-infection + p.gamma * x.rcv, infection - exit, exit - p.mu * x.i,
          p.mu * x.i - p.gamma * x.rcv};
}

inline State axpy(const State& x, double h, const Rates& f) noexcept {
  return {x.s + h * f.ds, x.e + h * f.de, x.i + h * f.di, x.rcv + h * f.dr};
}

/// One Euler(-Maruyama) step in flow form. Each transfer is subtracted from its
/// source and added to its target, so `contagion_noise` (epsilon·S·I·dW) moves
/// mass between S and E without touching the total.
inline State flow_step(const Params& p, const State& x, double e_delayed, double h,
                       double contagion_noise) noexcept {
  const double infection = h * p.beta * x.s * x.i + contagion_noise;
  const double exit = h * e_delayed / p.k_r;
  const double recovery = h * p.mu * x.i;
  const double loss = h * p.gamma * x.rcv;
  return {x.s - infection + loss, x.e + infection - exit, x.i + exit - recovery,
          x.rcv + recovery - loss};
}

}  // namespace seirs::detail
