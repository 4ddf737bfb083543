#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dikin/linalg.hpp"
#include "dikin/process.hpp"

namespace dikin::stability {

// Closed-form data of the period-two regime (2/3 < theta < 1).
struct PeriodTwoData {
  double theta;
  double r;             // attracting 2-cycle coordinate, h(r) = r
  double s;             // unstable interior fixed point of g
  double g_prime_at_s;  // (2 - r - 2 theta)/(1 - theta), < -1
};

// Structured Jacobian of the near-theta-1 analysis: m x m matrix with
// positive sub-diagonal d_1..d_{m-1} and last column -c_1..-c_m.
struct CompanionJacobian {
  std::size_t period = 0;
  linalg::Vec sub_diagonal;  // d_1 .. d_{m-1}
  linalg::Vec last_column;   // c_1 .. c_m (stored positive)

  // d strictly decreasing positive; c strictly increasing in (0, 1).
  // Holds when theta sits inside the certificate's validity window.
  bool invariants_hold() const;
  linalg::Mat to_matrix() const;
};

// A periodic cycle of the Dikin process with its base point first.
struct EmbeddedOrbit {
  double theta;
  std::size_t period;
  std::vector<StateVector> points;  // points[i+1] = dikin_step(points[i])
};

// Positive solution r of theta r^2 + (theta - 1) r + (theta - 1) = 0.
double fixed_point_r(Theta theta);

// r, s and g'(s) for 2/3 < theta < 1; throws NotApplicable outside.
PeriodTwoData period_two_data(Theta theta);

// Second iterate of the three-coordinate process on states (x, y, 1),
// x < y < 1, written in the same coordinates.
std::pair<double, double> second_iterate_F(Theta theta, double x, double y);

// dF2/dy, the transversal derivative of the second iterate.
double dF2_dy(Theta theta, double x, double y);

// dF2/dy evaluated on the diagonal (r, r).
double transversal_eigenvalue(Theta theta);

// Bisection for the parameter where the transversal eigenvalue hits -1.
Theta find_period4_threshold();

// Logistic map Q_theta(x) = 4 theta x (1 - x).
double logistic_map(Theta theta, double x);

// Smallest theta in (3/4, 1) whose critical orbit is m-periodic
// (m = 1 returns 1/2).  Scan plus bisection on Q^m(1/2) - 1/2.
Theta logistic_superstable_theta(int m);

// Periodic Dikin orbit carrying the superstable logistic m-cycle in the
// first m coordinates (n >= m; extra coordinates repeat the cycle).
EmbeddedOrbit embed_logistic_orbit(int m, std::size_t n);

// The (m-1) x (m-1) derivative of the relabeled one-step map at the
// embedded orbit; last column vanishes at the superstable parameter.
linalg::Mat embedded_orbit_jacobian(Theta theta, const EmbeddedOrbit& orbit);

// Sufficient near-theta-1 condition: the g-chain from 1/theta - 1 with
// pivot 1/(2 theta) stays increasing and ends at or below the pivot.
bool percondit_holds(Theta theta, std::size_t n);

struct NearOneResult {
  EmbeddedOrbit orbit;
  CompanionJacobian jacobian;
  linalg::Vec chain;  // y_1 < ... < y_{m-1} = pivot
};

// Construct the period-n orbit y_1 < ... < y_{m-1} <= 1/(2 theta) by
// monotone bisection on the pivot; throws NotApplicable when the
// sufficient condition fails (no extrapolation below it).
NearOneResult near_one_periodic_orbit(Theta theta, std::size_t n);

// Characteristic polynomial of the companion matrix by first-row
// expansion, check that 1 = a_m > ... > a_0 > 0, and return the
// Enestrom-Kakeya beta.  Throws ClaimViolated when monotonicity fails.
std::pair<linalg::Poly, double> certify_contraction(const CompanionJacobian& cj);

// Smallest theta in (1/2, 1) where percondit_holds(theta, n), by bisection.
double percondit_threshold(std::size_t n);

}  // namespace dikin::stability
