#include "dikin/process.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dikin/errors.hpp"

namespace dikin {

Theta::Theta(double value) : v_(value) {
  if (!(value >= 0.0 && value <= 1.0))
    throw PreconditionViolated("Theta: value " + std::to_string(value) +
                               " outside [0, 1]");
}

StateVector::StateVector(linalg::Vec raw) : w_(std::move(raw)) {
  if (w_.size() < 2)
    throw PreconditionViolated("StateVector: dimension must be >= 2");
  std::size_t imax = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (!(w_[i] > 0.0) || !std::isfinite(w_[i]))
      throw PreconditionViolated("StateVector: coordinates must be positive and finite");
    if (w_[i] > w_[imax]) imax = i;
  }
  const double m = w_[imax];
  for (double& x : w_) x /= m;
  w_[imax] = 1.0;  // the invariant is bit-testable, not 1 +/- ulp
}

double f_map(Theta theta, double x) { return x * (1.0 - theta.value() * x); }

StateVector dikin_step(Theta theta, const linalg::Vec& w) {
  if (theta.value() == 1.0 &&
      *std::max_element(w.begin(), w.end()) >= 1.0)
    throw DegenerateStep(
        "dikin_step: theta = 1 maps a coordinate at 1 to 0");
  linalg::Vec u(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) u[i] = f_map(theta, w[i]);
  return StateVector(std::move(u));
}

StateVector dikin_step(Theta theta, const StateVector& w) {
  return dikin_step(theta, w.coords());
}

double h_map(Theta theta, double x) {
  const double d = x * (1.0 - theta.value() * x);
  if (d == 0.0) throw DegenerateInput("h_map: x (1 - theta x) = 0");
  return (1.0 - theta.value()) / d;
}

double g_map(Theta theta, double pivot, double x) {
  const double fp = f_map(theta, pivot);
  if (!(fp > 0.0)) throw DegenerateInput("g_map: f(pivot) <= 0");
  return f_map(theta, x) / fp;
}

double reflect(Theta theta, double x) {
  if (!(theta.value() > 0.5))
    throw PreconditionViolated("reflect: requires theta > 1/2");
  return 1.0 / theta.value() - x;
}

std::pair<double, double> trap_interval(Theta theta) {
  if (!(theta.value() > 0.5))
    throw NotApplicable(
        "trap_interval: orbits converge monotonically to e for theta <= 1/2");
  return {1.0 / theta.value() - 1.0, 1.0};
}

double uniform01(Rng& rng) {
  // 53-bit mantissa draw; identical across platforms, unlike
  // std::uniform_real_distribution.
  return double(rng() >> 11) * 0x1.0p-53;
}

StateVector random_state(std::size_t n, Rng& rng) {
  linalg::Vec w(n);
  for (double& x : w) {
    do {
      x = uniform01(rng);
    } while (x <= 0.0);
  }
  return StateVector(std::move(w));
}

}  // namespace dikin
