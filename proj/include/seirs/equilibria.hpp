#pragma once

#include <optional>

#include "seirs/model.hpp"

namespace seirs {

struct EquilibriumSet {
  double r0 = 0.0;
  State x_free{1.0, 0.0, 0.0, 0.0};
  std::optional<State> x_star;
};

/// R0 = beta / mu.
double basic_reproduction_number(const Params& p);

inline constexpr State free_disease_equilibrium() noexcept { return {1.0, 0.0, 0.0, 0.0}; }

/// Interior fixed point, present only for beta > mu strictly. Components share
/// the denominator beta·(gamma·k_r·mu + gamma + mu); S* = mu / beta.
std::optional<State> coexistence_equilibrium(const Params& p);

/// Max absolute value of the four balance equations at `x` (delay-free form,
/// since E(t - r) = E at a fixed point).
double equilibrium_residual(const Params& p, const State& x);

EquilibriumSet equilibria(const Params& p);

}  // namespace seirs
