#pragma once

// Seeded parameter generators shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "seirs/model.hpp"

namespace seirs::testing {

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  // beta < mu with a spectral gap mu - beta >= 0.05.
  Params below_threshold() {
    Params p;
    p.mu = uniform(0.15, 0.9);
    p.beta = uniform(0.02, p.mu - 0.05);
    p.gamma = uniform(0.05, 0.9);
    p.k_r = uniform(0.5, 5.0);
    return p;
  }

  // beta > mu with beta - mu >= 0.05.
  Params above_threshold() {
    Params p;
    p.mu = uniform(0.05, 0.8);
    p.beta = uniform(p.mu + 0.05, 0.95);
    p.gamma = uniform(0.05, 0.9);
    p.k_r = uniform(0.5, 5.0);
    return p;
  }

  // Any valid nondelayed parameter set.
  Params any() {
    Params p;
    p.beta = uniform(0.01, 0.99);
    p.mu = uniform(0.01, 0.99);
    p.gamma = uniform(0.01, 0.99);
    p.k_r = uniform(0.1, 10.0);
    return p;
  }

  // Adds an admissible delay r <= k_r / e that is a multiple of 1/steps_per_unit.
  Params with_delay(Params p, double h) {
    const double r_max = p.k_r / std::numbers::e;
    const auto lag = static_cast<long>(std::floor(uniform(0.2, 1.0) * r_max / h));
    p.r = std::max(1L, lag) * h;
    return p;
  }

  // A point on the simplex with every component >= floor.
  State simplex(double floor = 0.0) {
    double w[4];
    double total = 0.0;
    for (double& v : w) {
      v = -std::log(uniform(1e-12, 1.0));
      total += v;
    }
    const double scale = 1.0 - 4.0 * floor;
    State x{floor + scale * w[0] / total, floor + scale * w[1] / total, floor + scale * w[2] / total,
            0.0};
    x.rcv = 1.0 - x.s - x.e - x.i;
    return x;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace seirs::testing
