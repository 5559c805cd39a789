#include "seirs/equilibria.hpp"

#include <algorithm>
#include <cmath>

namespace seirs {

double basic_reproduction_number(const Params& p) {
  require_valid(p);
  return p.beta / p.mu;
}

std::optional<State> coexistence_equilibrium(const Params& p) {
  require_valid(p);
  if (!(p.beta > p.mu)) return std::nullopt;
  const double excess = p.beta - p.mu;
  const double denom = p.beta * (p.gamma * p.k_r * p.mu + p.gamma + p.mu);
  return State{p.mu / p.beta, p.k_r * excess * p.mu * p.gamma / denom, p.gamma * excess / denom,
               excess * p.mu / denom};
}

double equilibrium_residual(const Params& p, const State& x) {
  require_valid(p);
  const double infection = p.beta * x.s * x.i;
  const double exit = x.e / p.k_r;
  return std::max({std::abs(-infection + p.gamma * x.rcv), std::abs(infection - exit),
                   std::abs(exit - p.mu * x.i), std::abs(p.mu * x.i - p.gamma * x.rcv)});
}

EquilibriumSet equilibria(const Params& p) {
  return {basic_reproduction_number(p), free_disease_equilibrium(), coexistence_equilibrium(p)};
}

}  // namespace seirs
