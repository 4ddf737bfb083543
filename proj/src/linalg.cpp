#include "dikin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dikin/errors.hpp"
#include "dikin/tol.hpp"

namespace dikin::linalg {

namespace {

void require_same_size(const Vec& u, const Vec& v, const char* op) {
  if (u.size() != v.size())
    throw PreconditionViolated(std::string(op) + ": length mismatch (" +
                               std::to_string(u.size()) + " vs " +
                               std::to_string(v.size()) + ")");
}

void require_finite(const Vec& u, const char* op) {
  for (double x : u)
    if (!std::isfinite(x))
      throw PreconditionViolated(std::string(op) + ": non-finite entry");
}

}  // namespace

Mat::Mat(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) throw PreconditionViolated("Mat: no rows");
  Mat m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_)
      throw PreconditionViolated("Mat: ragged rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Vec Mat::row(std::size_t i) const {
  return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

Vec Mat::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

Mat Mat::multiply(const Mat& other) const {
  if (cols_ != other.rows_) throw PreconditionViolated("Mat multiply: shape");
  Mat out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double aik = at(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        out.at(i, j) += aik * other.at(k, j);
    }
  return out;
}

bool Mat::all_finite() const {
  return std::all_of(a_.begin(), a_.end(),
                     [](double x) { return std::isfinite(x); });
}

double Poly::eval(double x) const {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

std::complex<double> Poly::eval(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
  return acc;
}

void Poly::validate() const {
  if (coeffs.size() < 2)
    throw PreconditionViolated("Poly: degree must be >= 1");
  if (coeffs.back() == 0.0)
    throw PreconditionViolated("Poly: zero leading coefficient");
  for (double a : coeffs)
    if (!std::isfinite(a)) throw PreconditionViolated("Poly: non-finite coefficient");
}

Vec ew_mul(const Vec& u, const Vec& v) {
  require_same_size(u, v, "ew_mul");
  Vec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * v[i];
  require_finite(out, "ew_mul");
  return out;
}

Vec ew_div(const Vec& u, const Vec& v) {
  require_same_size(u, v, "ew_div");
  Vec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (v[i] == 0.0) throw PreconditionViolated("ew_div: zero divisor");
    out[i] = u[i] / v[i];
  }
  require_finite(out, "ew_div");
  return out;
}

Vec ew_sqrt(const Vec& u) {
  Vec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < 0.0)
      throw PreconditionViolated("ew_sqrt: negative operand");
    out[i] = std::sqrt(u[i]);
  }
  return out;
}

Vec ew_pow(const Vec& u, double p) {
  Vec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::pow(u[i], p);
  require_finite(out, "ew_pow");
  return out;
}

double dot(const Vec& u, const Vec& v) {
  require_same_size(u, v, "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

double norm2(const Vec& u) { return std::sqrt(dot(u, u)); }

double norm_inf(const Vec& u) {
  double m = 0.0;
  for (double x : u) m = std::max(m, std::fabs(x));
  return m;
}

double sum(const Vec& u) { return std::accumulate(u.begin(), u.end(), 0.0); }

double max_entry(const Vec& u) {
  if (u.empty()) throw PreconditionViolated("max_entry: empty vector");
  return *std::max_element(u.begin(), u.end());
}

double min_entry(const Vec& u) {
  if (u.empty()) throw PreconditionViolated("min_entry: empty vector");
  return *std::min_element(u.begin(), u.end());
}

Vec mat_vec(const Mat& A, const Vec& x) {
  if (A.cols() != x.size()) throw PreconditionViolated("mat_vec: shape");
  Vec out(A.rows(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) out[i] += A.at(i, j) * x[j];
  return out;
}

Vec matT_vec(const Mat& A, const Vec& y) {
  if (A.rows() != y.size()) throw PreconditionViolated("matT_vec: shape");
  Vec out(A.cols(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) out[j] += A.at(i, j) * y[i];
  return out;
}

namespace {

// Lower-triangular Cholesky factor; throws when a pivot collapses.
Mat cholesky(const Mat& M) {
  const std::size_t n = M.rows();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(M.at(i, i)));
  if (scale == 0.0) throw IllConditioned("solve_spd: zero matrix");
  Mat L(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = M.at(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= L.at(j, k) * L.at(j, k);
    if (!(d > tol::kSpdPivotRel * scale))
      throw IllConditioned("solve_spd: pivot " + std::to_string(d) +
                           " below " + std::to_string(tol::kSpdPivotRel) +
                           " * scale at column " + std::to_string(j));
    L.at(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = M.at(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= L.at(i, k) * L.at(j, k);
      L.at(i, j) = s / L.at(j, j);
    }
  }
  return L;
}

Vec chol_solve(const Mat& L, const Vec& rhs) {
  const std::size_t n = L.rows();
  Vec z(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= L.at(i, k) * z[k];
    z[i] = s / L.at(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = z[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= L.at(k, i) * z[k];
    z[i] = s / L.at(i, i);
  }
  return z;
}

}  // namespace

Vec solve_spd(const Mat& M, const Vec& rhs) {
  if (M.rows() != M.cols()) throw PreconditionViolated("solve_spd: not square");
  if (M.rows() != rhs.size()) throw PreconditionViolated("solve_spd: rhs size");
  const Mat L = cholesky(M);
  Vec z = chol_solve(L, rhs);
  // One residual-correction pass.
  Vec r = rhs;
  const Vec Mz = mat_vec(M, z);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= Mz[i];
  const Vec dz = chol_solve(L, r);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += dz[i];
  return z;
}

std::vector<std::complex<double>> poly_roots(const Poly& p) {
  p.validate();
  const std::size_t deg = p.degree();

  // Monic copy for the iteration; residuals are checked on the original.
  Vec monic(p.coeffs);
  const double lead = monic.back();
  for (double& a : monic) a /= lead;

  double max_abs = 0.0;
  for (double a : p.coeffs) max_abs = std::max(max_abs, std::fabs(a));

  // Seed radius: midpoint of the Enestrom-Kakeya annulus when defined,
  // otherwise half the Cauchy bound.
  double radius;
  const bool positive =
      std::all_of(p.coeffs.begin(), p.coeffs.end(), [](double a) { return a > 0.0; });
  if (positive) {
    auto [alpha, beta] = enestrom_kakeya_bounds(p);
    radius = 0.5 * (alpha + beta);
  } else {
    double cauchy = 0.0;
    for (std::size_t k = 0; k < deg; ++k)
      cauchy = std::max(cauchy, std::fabs(monic[k]));
    radius = 0.5 * (1.0 + cauchy);
  }
  if (!(radius > 0.0)) radius = 1.0;

  // Derivative coefficients of the monic polynomial.
  Vec dmonic(deg);
  for (std::size_t k = 1; k <= deg; ++k) dmonic[k - 1] = monic[k] * double(k);
  const Poly pm{monic};
  const Poly pd{dmonic};

  // Golden-ratio angular offset keeps seeds away from real-axis symmetry.
  const double offset = 2.0 * 3.14159265358979323846 * 0.61803398874989485;
  auto seeds = [&](double r) {
    std::vector<std::complex<double>> z(deg);
    for (std::size_t k = 0; k < deg; ++k) {
      const double ang =
          2.0 * 3.14159265358979323846 * double(k) / double(deg) + offset;
      z[k] = std::polar(r, ang);
    }
    return z;
  };
  // Backward-error acceptance: |p(z)| small relative to the evaluation
  // scale sum |a_k| |z|^k.  For roots inside the unit disc this is the
  // plain coefficient-scaled residual; for large roots an absolute bound
  // would sit below evaluation round-off.
  auto residual_ok = [&](const std::vector<std::complex<double>>& z) {
    for (const auto& root : z) {
      double scale = 0.0, zk = 1.0;
      const double r = std::abs(root);
      for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
        scale = std::max(scale, std::fabs(p.coeffs[k]) * zk);
        zk *= r;
      }
      if (!(std::abs(p.eval(root)) <= tol::kRootResidual * std::max(max_abs, scale)))
        return false;
    }
    return true;
  };

  // Aberth-Ehrlich simultaneous iteration; deterministic retry ladder of
  // seed radii covers annuli too wide for a single starting circle.
  double worst = 0.0;
  for (double scale : {1.0, 0.35, 2.5, 0.1}) {
    auto z = seeds(radius * scale);
    for (int it = 0; it < tol::kRootMaxIters; ++it) {
      double move = 0.0;
      for (std::size_t k = 0; k < deg; ++k) {
        const std::complex<double> pv = pm.eval(z[k]);
        const std::complex<double> dv = pd.eval(z[k]);
        std::complex<double> repel = 0.0;
        for (std::size_t j = 0; j < deg; ++j)
          if (j != k) repel += 1.0 / (z[k] - z[j]);
        const std::complex<double> newton =
            dv == std::complex<double>(0.0) ? pv : pv / dv;
        const std::complex<double> denom = 1.0 - newton * repel;
        const std::complex<double> d =
            denom == std::complex<double>(0.0) ? newton : newton / denom;
        z[k] -= d;
        move = std::max(move, std::abs(d));
      }
      if (move <= 1e-15 * std::max(1.0, radius * scale)) break;
    }
    if (residual_ok(z)) return z;
    for (const auto& root : z)
      worst = std::max(worst, std::abs(p.eval(root)));
  }
  throw NoConvergence("poly_roots: residual " + std::to_string(worst) +
                      " exceeds target after iteration cap");
}

std::pair<double, double> enestrom_kakeya_bounds(const Poly& p) {
  p.validate();
  for (double a : p.coeffs)
    if (!(a > 0.0))
      throw PreconditionViolated("enestrom_kakeya_bounds: nonpositive coefficient");
  double lo = p.coeffs[0] / p.coeffs[1];
  double hi = lo;
  for (std::size_t k = 1; k + 1 < p.coeffs.size(); ++k) {
    const double r = p.coeffs[k] / p.coeffs[k + 1];
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

}  // namespace dikin::linalg
