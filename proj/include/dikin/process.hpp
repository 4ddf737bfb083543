#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "dikin/linalg.hpp"

namespace dikin {

// Step-size fraction theta = alpha / alpha_max, theta in [0, 1].
class Theta {
 public:
  explicit Theta(double value);
  double value() const { return v_; }

 private:
  double v_;
};

// A point of the projective simplex: strictly positive coordinates with
// the maximum coordinate equal to 1 exactly.
class StateVector {
 public:
  // Normalizes raw positive coordinates by their maximum.
  explicit StateVector(linalg::Vec raw);

  const linalg::Vec& coords() const { return w_; }
  std::size_t dim() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }

 private:
  linalg::Vec w_;
};

// The scalar quadratic map f_theta(x) = x (1 - theta x).
double f_map(Theta theta, double x);

// One step of the Dikin process: w -> f(w) / max f(w).  The raw overload
// applies f to the coordinates as given (no pre-normalization) and
// returns the normalized image.
StateVector dikin_step(Theta theta, const linalg::Vec& w);
StateVector dikin_step(Theta theta, const StateVector& w);

// Minimum-coordinate return map h(x) = (1 - theta) / (x (1 - theta x)).
double h_map(Theta theta, double x);

// Scaled map g(x) = f(x) / f(pivot).
double g_map(Theta theta, double pivot, double x);

// Point symmetry of f about its maximum: x -> 1/theta - x.
double reflect(Theta theta, double x);

// Absorbing coordinate interval [1/theta - 1, 1] for theta in (1/2, 1].
std::pair<double, double> trap_interval(Theta theta);

// Uniform (0,1) coordinates normalized onto the simplex; the engine type
// is pinned so seeded runs reproduce bit-identically everywhere.
using Rng = std::mt19937_64;
double uniform01(Rng& rng);
StateVector random_state(std::size_t n, Rng& rng);

}  // namespace dikin
