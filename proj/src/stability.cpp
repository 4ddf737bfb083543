#include "dikin/stability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dikin/errors.hpp"
#include "dikin/tol.hpp"

namespace dikin::stability {

namespace {

// g-chain x_{k+1} = f(x_k)/f(pivot) started at x_0 = 1/theta - 1.
linalg::Vec g_chain(double th, double pivot, std::size_t count) {
  const Theta theta(th);
  const double fp = f_map(theta, pivot);
  linalg::Vec out(count);
  double x = 1.0 / th - 1.0;
  for (std::size_t k = 0; k < count; ++k) {
    x = f_map(theta, x) / fp;
    out[k] = x;
  }
  return out;
}

bool chain_valid(const linalg::Vec& ys, double pivot) {
  for (std::size_t i = 0; i + 1 < ys.size(); ++i)
    if (!(ys[i] < ys[i + 1])) return false;
  return !ys.empty() && ys.back() <= pivot;
}

}  // namespace

bool CompanionJacobian::invariants_hold() const {
  if (sub_diagonal.size() + 1 != last_column.size()) return false;
  if (last_column.size() != period) return false;
  for (std::size_t i = 0; i < sub_diagonal.size(); ++i) {
    if (!(sub_diagonal[i] > 0.0)) return false;
    if (i + 1 < sub_diagonal.size() && !(sub_diagonal[i] > sub_diagonal[i + 1]))
      return false;
  }
  for (std::size_t i = 0; i < last_column.size(); ++i) {
    if (!(last_column[i] > 0.0 && last_column[i] < 1.0)) return false;
    if (i + 1 < last_column.size() && !(last_column[i] < last_column[i + 1]))
      return false;
  }
  return true;
}

linalg::Mat CompanionJacobian::to_matrix() const {
  const std::size_t m = period;
  linalg::Mat A(m, m);
  for (std::size_t i = 1; i < m; ++i) A.at(i, i - 1) = sub_diagonal[i - 1];
  for (std::size_t i = 0; i < m; ++i) A.at(i, m - 1) -= last_column[i];
  return A;
}

double fixed_point_r(Theta theta) {
  const double th = theta.value();
  if (!(th > 0.0)) throw PreconditionViolated("fixed_point_r: theta must be > 0");
  const double u = 1.0 - th;
  return (u + std::sqrt(u * u + 4.0 * th * u)) / (2.0 * th);
}

PeriodTwoData period_two_data(Theta theta) {
  const double th = theta.value();
  if (!(th > 2.0 / 3.0 && th < 1.0))
    throw NotApplicable("period_two_data: requires 2/3 < theta < 1");
  const double r = fixed_point_r(theta);
  const double s = (r + th - 1.0) / (r * th);
  const double gp = (2.0 - r - 2.0 * th) / (1.0 - th);
  return PeriodTwoData{th, r, s, gp};
}

std::pair<double, double> second_iterate_F(Theta theta, double x, double y) {
  const double th = theta.value();
  const double fx = f_map(theta, x);
  if (fx == 0.0) throw DegenerateInput("second_iterate_F: f(x) = 0");
  const double den = 1.0 - th * (1.0 - th) / fx;
  if (den == 0.0 || th == 1.0)
    throw DegenerateInput("second_iterate_F: vanishing denominator");
  const double fy = f_map(theta, y);
  const double F1 = fx / den;
  const double F2 = fy / (1.0 - th) * (1.0 - th * fy / fx) / den;
  return {F1, F2};
}

double dF2_dy(Theta theta, double x, double y) {
  const double th = theta.value();
  const double fx = f_map(theta, x);
  const double fy = f_map(theta, y);
  const double num = (1.0 - 2.0 * th * y) * (fx - 2.0 * th * fy);
  const double den = (1.0 - th) * (fx - th * (1.0 - th));
  if (den == 0.0) throw DegenerateInput("dF2_dy: vanishing denominator");
  return num / den;
}

double transversal_eigenvalue(Theta theta) {
  const double th = theta.value();
  if (!(th > 2.0 / 3.0 && th < 1.0))
    throw NotApplicable("transversal_eigenvalue: requires 2/3 < theta < 1");
  const double r = fixed_point_r(theta);
  return dF2_dy(theta, r, r);
}

Theta find_period4_threshold() {
  double lo = 0.80, hi = 0.88;
  double flo = transversal_eigenvalue(Theta(lo)) + 1.0;
  const double fhi = transversal_eigenvalue(Theta(hi)) + 1.0;
  if ((flo < 0.0) == (fhi < 0.0))
    throw BracketError("find_period4_threshold: no sign change in [0.80, 0.88]");
  while (hi - lo > tol::kBisectWidth) {
    const double mid = 0.5 * (lo + hi);
    const double fm = transversal_eigenvalue(Theta(mid)) + 1.0;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return Theta(0.5 * (lo + hi));
}

double logistic_map(Theta theta, double x) {
  return 4.0 * theta.value() * x * (1.0 - x);
}

namespace {

double logistic_iterate(double th, int m) {
  double x = 0.5;
  for (int k = 0; k < m; ++k) x = 4.0 * th * x * (1.0 - x);
  return x;
}

bool minimal_period(double th, int m) {
  for (int q = 1; q < m; ++q)
    if (m % q == 0 && std::fabs(logistic_iterate(th, q) - 0.5) <= 1e-6)
      return false;
  return true;
}

}  // namespace

Theta logistic_superstable_theta(int m) {
  if (m < 1 || m > 12)
    throw PreconditionViolated("logistic_superstable_theta: m outside [1, 12]");
  if (m == 1) return Theta(0.5);  // Q(1/2) = theta

  const int kScan = 10000;
  const double lo0 = 0.75, hi0 = 1.0;
  double prev = logistic_iterate(lo0, m) - 0.5;
  for (int i = 1; i <= kScan; ++i) {
    const double th = lo0 + (hi0 - lo0) * double(i) / double(kScan);
    const double cur = logistic_iterate(th, m) - 0.5;
    if (prev == 0.0 || (prev < 0.0) != (cur < 0.0)) {
      double lo = lo0 + (hi0 - lo0) * double(i - 1) / double(kScan);
      double hi = th;
      const bool lo_neg = prev < 0.0;
      for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = logistic_iterate(mid, m) - 0.5;
        if ((fm < 0.0) == lo_neg)
          lo = mid;
        else
          hi = mid;
      }
      const double root = 0.5 * (lo + hi);
      if (minimal_period(root, m)) return Theta(root);
    }
    prev = cur;
  }
  throw NoConvergence("logistic_superstable_theta: no minimal-period root found");
}

namespace {

EmbeddedOrbit build_orbit(Theta theta, std::size_t period, linalg::Vec base) {
  EmbeddedOrbit orbit{theta.value(), period, {}};
  orbit.points.emplace_back(std::move(base));
  for (std::size_t k = 1; k < period; ++k)
    orbit.points.push_back(dikin_step(theta, orbit.points.back()));
  const StateVector closed = dikin_step(theta, orbit.points.back());
  double err = 0.0;
  for (std::size_t i = 0; i < closed.dim(); ++i)
    err = std::max(err, std::fabs(closed[i] - orbit.points[0][i]));
  if (err > tol::kOrbitCycle)
    throw NoConvergence("periodic orbit failed to close: error " +
                        std::to_string(err));
  return orbit;
}

}  // namespace

EmbeddedOrbit embed_logistic_orbit(int m, std::size_t n) {
  if (n < std::size_t(m))
    throw PreconditionViolated("embed_logistic_orbit: need n >= m");
  const Theta theta = logistic_superstable_theta(m);
  // Coordinate i carries Q^{i+1}(1/2)/theta; extras repeat the cycle.
  linalg::Vec cycle(m);
  double q = 0.5;
  for (int i = 0; i < m; ++i) {
    q = logistic_map(theta, q);
    cycle[i] = q / theta.value();
  }
  linalg::Vec base(n);
  for (std::size_t i = 0; i < n; ++i) base[i] = cycle[i % m];
  return build_orbit(theta, std::size_t(m), std::move(base));
}

linalg::Mat embedded_orbit_jacobian(Theta theta, const EmbeddedOrbit& orbit) {
  const std::size_t m = orbit.period;
  const double th = theta.value();
  // Chain arrangement: y_i = Q^{i+1}(c)/theta, so y_{m-1} = 1/(2 theta)
  // and y_m = 1.  Matches the coordinates of the base point shifted by one.
  linalg::Vec y(m);
  double q = 0.5;
  q = logistic_map(theta, q);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    q = logistic_map(theta, q);
    y[i] = q / th;
  }
  y[m - 1] = 1.0;
  const double pivot = 0.5 / th;  // y_{m-1}, the critical point
  const double fp = f_map(theta, pivot);
  const double pref = 1.0 - 2.0 * th * pivot;  // identically 0 up to rounding

  linalg::Mat J(m - 1, m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double y_prev = (i == 0) ? 1.0 : y[i - 1];
    if (i >= 1) J.at(i, i - 1) = (1.0 - 2.0 * th * y[i - 1]) / fp;
    J.at(i, m - 2) -= pref * f_map(theta, y_prev) / (fp * fp);
  }
  return J;
}

bool percondit_holds(Theta theta, std::size_t n) {
  if (n < 2) throw PreconditionViolated("percondit_holds: need n >= 2");
  const double th = theta.value();
  if (!(th > 0.5 && th < 1.0)) return false;
  const double pivot = 0.5 / th;
  const linalg::Vec ys = g_chain(th, pivot, n - 1);
  return chain_valid(ys, pivot);
}

NearOneResult near_one_periodic_orbit(Theta theta, std::size_t n) {
  const double th = theta.value();
  const std::size_t m = n;  // the period equals the dimension here
  if (m < 2) throw PreconditionViolated("near_one_periodic_orbit: need n >= 2");
  if (!percondit_holds(theta, n))
    throw NotApplicable(
        "near_one_periodic_orbit: sufficient condition fails at theta = " +
        std::to_string(th) + " for n = " + std::to_string(n) +
        " (theta too small for this dimension)");

  // phi(p) = chain end - p is decreasing in p; phi(1/2theta) <= 0.
  auto phi = [&](double p) { return g_chain(th, p, m - 1).back() - p; };
  double hi = 0.5 / th;
  double lo = hi;
  int guard = 0;
  while (phi(lo) <= 0.0) {
    lo *= 0.95;
    if (++guard > 400)
      throw BracketError("near_one_periodic_orbit: no pivot bracket found");
  }
  while (hi - lo > tol::kBisectWidth * hi) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double pivot = 0.5 * (lo + hi);
  linalg::Vec ys = g_chain(th, pivot, m - 1);
  ys.back() = pivot;  // close the fixed-point equation exactly
  if (!chain_valid(ys, pivot))
    throw NotApplicable("near_one_periodic_orbit: solved chain is not ordered");

  linalg::Vec base(ys);
  base.push_back(1.0);
  EmbeddedOrbit orbit = build_orbit(theta, m, std::move(base));

  const double fp = f_map(theta, pivot);
  const double pref = 1.0 - 2.0 * th * pivot;
  CompanionJacobian cj;
  cj.period = m;
  cj.sub_diagonal.resize(m - 1);
  cj.last_column.resize(m);
  for (std::size_t i = 0; i + 1 < m; ++i)
    cj.sub_diagonal[i] = (1.0 - 2.0 * th * ys[i]) / fp;
  for (std::size_t i = 0; i < m; ++i) {
    const double y_prev = (i == 0) ? 1.0 : ys[i - 1];
    cj.last_column[i] = pref * f_map(theta, y_prev) / (fp * fp);
  }
  return NearOneResult{std::move(orbit), std::move(cj), std::move(ys)};
}

double percondit_threshold(std::size_t n) {
  double lo = 0.5 + 1e-9, hi = 1.0 - 1e-12;
  if (!percondit_holds(Theta(hi), n))
    throw NotFound("percondit_threshold: condition fails even at theta ~ 1");
  // The valid region is an interval reaching up to 1; bisect its edge.
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (percondit_holds(Theta(mid), n))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::pair<linalg::Poly, double> certify_contraction(const CompanionJacobian& cj) {
  const std::size_t m = cj.period;
  if (m < 1 || cj.last_column.size() != m || cj.sub_diagonal.size() + 1 != m)
    throw PreconditionViolated("certify_contraction: malformed CompanionJacobian");

  // First-row expansion: p_m = lambda * p_{m-1} + c_k d_k ... d_{m-1},
  // built up from the trailing 1x1 minor (lambda + c_m).
  linalg::Vec a{cj.last_column[m - 1], 1.0};
  double dprod = 1.0;
  for (std::size_t k = m - 1; k-- > 0;) {
    dprod *= cj.sub_diagonal[k];
    linalg::Vec next(a.size() + 1);
    next[0] = cj.last_column[k] * dprod;
    for (std::size_t i = 0; i < a.size(); ++i) next[i + 1] = a[i];
    a = std::move(next);
  }

  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    if (!(a[k] > 0.0 && a[k] < a[k + 1])) {
      std::string msg = "certify_contraction: coefficients not strictly "
                        "decreasing from the leading term (a =";
      for (double v : a) msg += " " + std::to_string(v);
      msg += ")";
      throw ClaimViolated(msg);
    }
  }
  linalg::Poly p{a};
  const auto [alpha, beta] = linalg::enestrom_kakeya_bounds(p);
  (void)alpha;
  return {p, beta};
}

}  // namespace dikin::stability
