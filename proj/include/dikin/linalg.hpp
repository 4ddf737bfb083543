#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace dikin::linalg {

using Vec = std::vector<double>;

// Dense row-major matrix; everything here is small (m <= 10 in practice).
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0);
  static Mat identity(std::size_t n);
  static Mat from_rows(const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<double>& data() const { return a_; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  Mat multiply(const Mat& other) const;
  bool all_finite() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

// Polynomial a_0 + a_1 x + ... + a_m x^m with a_m != 0.
struct Poly {
  Vec coeffs;  // a_0 .. a_m

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  double eval(double x) const;
  std::complex<double> eval(std::complex<double> z) const;
  void validate() const;  // throws PreconditionViolated
};

// Coordinatewise vector operations (xs, x/s, sqrt(x) conventions).
Vec ew_mul(const Vec& u, const Vec& v);
Vec ew_div(const Vec& u, const Vec& v);
Vec ew_sqrt(const Vec& u);
Vec ew_pow(const Vec& u, double p);

double dot(const Vec& u, const Vec& v);
double norm2(const Vec& u);
double norm_inf(const Vec& u);
double sum(const Vec& u);
double max_entry(const Vec& u);
double min_entry(const Vec& u);

Vec mat_vec(const Mat& A, const Vec& x);    // A x
Vec matT_vec(const Mat& A, const Vec& y);   // A^T y

// Solve M z = rhs for symmetric positive definite M by Cholesky with one
// residual-correction pass.  Throws IllConditioned when a pivot falls
// below tol::kSpdPivotRel relative to the matrix scale.
Vec solve_spd(const Mat& M, const Vec& rhs);

// All complex roots by simultaneous (Durand-Kerner) iteration from
// deterministic seed points on a circle.  Throws NoConvergence if the
// residual target is not met within the iteration cap.
std::vector<std::complex<double>> poly_roots(const Poly& p);

// Annulus bounds (alpha, beta) for a polynomial with strictly positive
// coefficients: alpha = min a_k/a_{k+1}, beta = max a_k/a_{k+1}.
std::pair<double, double> enestrom_kakeya_bounds(const Poly& p);

}  // namespace dikin::linalg
