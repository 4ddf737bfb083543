#include "dikin/afs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "dikin/errors.hpp"
#include "dikin/tol.hpp"

namespace dikin::afs {

using linalg::Mat;
using linalg::Vec;

namespace {

// A diag(w) A^T for the normal equations.
Mat scaled_normal_matrix(const Mat& A, const Vec& w) {
  const std::size_t m = A.rows(), n = A.cols();
  Mat M(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += A.at(i, k) * w[k] * A.at(j, k);
      M.at(i, j) = acc;
      M.at(j, i) = acc;
    }
  return M;
}

}  // namespace

LinearProgram make_lp(std::string name, Mat A, Vec b, Vec c) {
  if (A.rows() == 0 || A.cols() == 0)
    throw PreconditionViolated("LinearProgram: empty matrix");
  if (!(A.rows() < A.cols()))
    throw PreconditionViolated("LinearProgram: requires m < n");
  if (b.size() != A.rows() || c.size() != A.cols())
    throw PreconditionViolated("LinearProgram: b/c dimensions do not match A");
  if (!A.all_finite())
    throw PreconditionViolated("LinearProgram: non-finite entry in A");
  try {
    (void)linalg::solve_spd(scaled_normal_matrix(A, Vec(A.cols(), 1.0)),
                            Vec(A.rows(), 0.0));
  } catch (const IllConditioned&) {
    throw PreconditionViolated("LinearProgram: A is not of full row rank");
  }
  return LinearProgram{std::move(name), std::move(A), std::move(b),
                       std::move(c), {}, {}};
}

void validate_iterate(const LinearProgram& lp, const PdIterate& it,
                      double feas_tol) {
  if (it.x.size() != lp.n() || it.s.size() != lp.n() || it.y.size() != lp.m())
    throw PreconditionViolated("PdIterate: dimension mismatch");
  for (double v : it.x)
    if (!(v > 0.0)) throw PreconditionViolated("PdIterate: x not interior");
  for (double v : it.s)
    if (!(v > 0.0)) throw PreconditionViolated("PdIterate: s not interior");
  Vec r = linalg::mat_vec(lp.A, it.x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lp.b[i];
  if (linalg::norm2(r) > feas_tol * (1.0 + linalg::norm2(lp.b)))
    throw PreconditionViolated("PdIterate: primal infeasible");
  Vec rd = linalg::matT_vec(lp.A, it.y);
  for (std::size_t i = 0; i < rd.size(); ++i) rd[i] += it.s[i] - lp.c[i];
  if (linalg::norm2(rd) > feas_tol * (1.0 + linalg::norm2(lp.c)))
    throw PreconditionViolated("PdIterate: dual infeasible");
  if (!(it.gap() > 0.0))
    throw PreconditionViolated("PdIterate: nonpositive duality gap");
}

StepControl step_control(Theta theta, const PdIterate& it) {
  const Vec w = linalg::ew_mul(it.x, it.s);
  const double alpha_max = linalg::norm2(w) / linalg::max_entry(w);
  return StepControl{theta.value(), alpha_max, theta.value() * alpha_max};
}

Directions directions(const LinearProgram& lp, const PdIterate& it) {
  const std::size_t n = lp.n();
  const Vec w = linalg::ew_mul(it.x, it.s);
  const double wn = linalg::norm2(w);
  if (!(wn > 0.0)) throw DegenerateInput("directions: xs vanished");

  // p_v = -v^3/||v^2|| computed as -v (w/||w||) so tiny gaps stay scaled.
  const Vec v = linalg::ew_sqrt(w);
  Vec pv(n);
  for (std::size_t i = 0; i < n; ++i) pv[i] = -v[i] * (w[i] / wn);

  const Vec d = linalg::ew_sqrt(linalg::ew_div(it.x, it.s));
  const Vec d2 = linalg::ew_mul(d, d);
  const Mat M = scaled_normal_matrix(lp.A, d2);
  const Vec rhs = linalg::mat_vec(lp.A, linalg::ew_mul(d, pv));
  const Vec z = linalg::solve_spd(M, rhs);

  // Row-space projection q = Q_{AD}(p_v) = D A^T z, null part p_v - q.
  const Vec Atz = linalg::matT_vec(lp.A, z);
  Directions out;
  out.dx.resize(n);
  out.ds.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double q = d[i] * Atz[i];
    out.dx[i] = d[i] * (pv[i] - q);
    out.ds[i] = Atz[i];
  }
  out.dy.resize(lp.m());
  for (std::size_t i = 0; i < lp.m(); ++i) out.dy[i] = -z[i];
  return out;
}

PdIterate afs_step(const LinearProgram& lp, const PdIterate& it, Theta theta) {
  if (!(theta.value() > 0.0 && theta.value() < 1.0))
    throw PreconditionViolated("afs_step: requires theta in (0, 1)");
  const StepControl sc = step_control(theta, it);
  const Directions dir = directions(lp, it);
  PdIterate next;
  next.x.resize(lp.n());
  next.s.resize(lp.n());
  next.y.resize(lp.m());
  for (std::size_t i = 0; i < lp.n(); ++i) {
    next.x[i] = it.x[i] + sc.alpha * dir.dx[i];
    next.s[i] = it.s[i] + sc.alpha * dir.ds[i];
    if (!(next.x[i] > 0.0) || !(next.s[i] > 0.0))
      throw NonInterior("afs_step: coordinate " + std::to_string(i) +
                        " left the positive orthant (quadratic term broke "
                        "the first-order bound)");
  }
  for (std::size_t i = 0; i < lp.m(); ++i)
    next.y[i] = it.y[i] + sc.alpha * dir.dy[i];
  return next;
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIters: return "max-iters";
    case Termination::NonInterior: return "non-interior";
    case Termination::IllConditioned: return "ill-conditioned";
  }
  return "?";
}

SolveTrace solve(const LinearProgram& lp, const PdIterate& start, Theta theta,
                 const SolverConfig& cfg) {
  if (!(cfg.epsilon > 0.0) || cfg.record_gap_threshold < cfg.epsilon)
    throw PreconditionViolated(
        "SolverConfig: need epsilon > 0 and record_gap_threshold >= epsilon");
  SolveTrace trace;
  PdIterate it = start;
  auto record = [&](std::size_t k, const PdIterate& p) {
    TraceRow row;
    row.iter = k;
    row.w = linalg::ew_mul(p.x, p.s);
    row.gap = linalg::sum(row.w);
    const double mx = linalg::max_entry(row.w);
    row.w_scaled.resize(row.w.size());
    for (std::size_t i = 0; i < row.w.size(); ++i)
      row.w_scaled[i] = row.w[i] / mx;
    row.y = p.y;
    const StepControl sc = step_control(theta, p);
    row.alpha_max = sc.alpha_max;
    row.alpha = sc.alpha;
    row.recorded = row.gap <= cfg.record_gap_threshold;
    trace.rows.push_back(std::move(row));
  };
  record(0, it);
  trace.termination = Termination::MaxIters;
  for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
    if (it.gap() <= cfg.epsilon) {
      trace.termination = Termination::Converged;
      break;
    }
    try {
      it = afs_step(lp, it, theta);
    } catch (const NonInterior& e) {
      trace.termination = Termination::NonInterior;
      trace.message = e.what();
      break;
    } catch (const IllConditioned& e) {
      trace.termination = Termination::IllConditioned;
      trace.message = e.what();
      break;
    }
    record(k, it);
  }
  if (trace.termination == Termination::MaxIters &&
      it.gap() <= cfg.epsilon)
    trace.termination = Termination::Converged;
  trace.last = std::move(it);
  return trace;
}

LinearProgram castillo_barnes() {
  const Mat A = Mat::from_rows({{1, 2, -3, -2, -1}, {-1, 2, -1, -1, -1}});
  return make_lp("castillo-barnes", A, Vec{0, 0}, Vec{10, 10, 5, 1, -1});
}

bool dual_feasibility_check(const LinearProgram& lp, const Vec& y, double tol) {
  if (y.size() != lp.m())
    throw PreconditionViolated("dual_feasibility_check: y length");
  const Vec Aty = linalg::matT_vec(lp.A, y);
  for (std::size_t i = 0; i < lp.n(); ++i)
    if (Aty[i] > lp.c[i] + tol) return false;
  return true;
}

namespace {

// Least-squares projection of v onto {Ax = b}.
Vec project_affine(const Mat& A, const Vec& b, const Vec& v) {
  Vec r = linalg::mat_vec(A, v);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  const Mat AAt = scaled_normal_matrix(A, Vec(A.cols(), 1.0));
  const Vec z = linalg::solve_spd(AAt, r);
  const Vec Atz = linalg::matT_vec(A, z);
  Vec out(v);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= Atz[i];
  return out;
}

Vec primal_start(const LinearProgram& lp) {
  Vec x = project_affine(lp.A, lp.b, Vec(lp.n(), 1.0));
  // Push negative coordinates up inside the affine set: repeatedly move
  // toward the clipped target re-projected onto {Ax = b}.
  for (int round = 0; round < 200; ++round) {
    const double lo = linalg::min_entry(x);
    const double hi = linalg::norm_inf(x);
    if (lo > 1e-6 * (1.0 + hi)) return x;
    Vec target(x);
    const double margin = 0.05 * (1.0 + hi);
    for (double& v : target) v = std::max(v, margin);
    x = project_affine(lp.A, lp.b, target);
  }
  throw NoInteriorFound("default_start: no strictly positive point of {Ax=b} found");
}

Vec dual_start(const LinearProgram& lp) {
  // Least squares toward slack e, then relaxation steps on the most
  // violated inequality of A^T y < c until all slacks clear a margin.
  Vec cm(lp.c);
  for (double& v : cm) v -= 1.0;
  const Mat AAt = scaled_normal_matrix(lp.A, Vec(lp.n(), 1.0));
  Vec y = linalg::solve_spd(AAt, linalg::mat_vec(lp.A, cm));
  for (int round = 0; round < 20000; ++round) {
    const Vec s = [&] {
      Vec t = linalg::matT_vec(lp.A, y);
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = lp.c[i] - t[i];
      return t;
    }();
    std::size_t worst = 0;
    double worst_rel = 1e300;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double rel = s[i] / (1.0 + std::fabs(lp.c[i]));
      if (rel < worst_rel) {
        worst_rel = rel;
        worst = i;
      }
    }
    if (worst_rel > 0.1) return y;
    const Vec a = lp.A.col(worst);
    const double an = linalg::dot(a, a);
    if (!(an > 0.0))
      throw NoInteriorFound("default_start: zero column in dual phase");
    const double target = 0.2 * (1.0 + std::fabs(lp.c[worst]));
    const double viol = linalg::dot(a, y) - (lp.c[worst] - target);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= 1.5 * viol * a[i] / an;
  }
  throw NoInteriorFound("default_start: no strictly feasible dual point found");
}

}  // namespace

PdIterate default_start(const LinearProgram& lp) {
  PdIterate it;
  it.x = lp.x0.empty() ? primal_start(lp) : lp.x0;
  it.y = lp.y0.empty() ? dual_start(lp) : lp.y0;
  it.s = linalg::matT_vec(lp.A, it.y);
  for (std::size_t i = 0; i < lp.n(); ++i) it.s[i] = lp.c[i] - it.s[i];
  validate_iterate(lp, it, tol::kFeasTol);
  return it;
}

PdIterate perturbed_start(const LinearProgram& lp, const PdIterate& base,
                          double sigma, Rng& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Vec xr(base.x);
    for (double& v : xr) v *= std::exp(sigma * (2.0 * uniform01(rng) - 1.0));
    Vec x = project_affine(lp.A, lp.b, xr);
    Vec y(base.y);
    for (double& v : y) v += sigma * (2.0 * uniform01(rng) - 1.0);
    Vec s = linalg::matT_vec(lp.A, y);
    for (std::size_t i = 0; i < lp.n(); ++i) s[i] = lp.c[i] - s[i];
    bool ok = true;
    for (double v : x) ok = ok && v > 0.0;
    for (double v : s) ok = ok && v > 0.0;
    if (ok) return PdIterate{std::move(x), std::move(y), std::move(s)};
  }
  throw NoInteriorFound("perturbed_start: no interior perturbation found");
}

LinearProgram load_lp_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open LP file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("bad JSON in " + path + ": " + e.what());
  }
  if (!j.contains("A") || !j.contains("b") || !j.contains("c"))
    throw UsageError("LP file must define A, b and c (no defaults)");
  try {
    const auto rows = j.at("A").get<std::vector<Vec>>();
    LinearProgram lp =
        make_lp(j.value("name", path), Mat::from_rows(rows),
                j.at("b").get<Vec>(), j.at("c").get<Vec>());
    if (j.contains("x0")) lp.x0 = j.at("x0").get<Vec>();
    if (j.contains("y0")) lp.y0 = j.at("y0").get<Vec>();
    return lp;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("bad LP data in " + path + ": " + e.what());
  }
}

AttractorCapture capture_attractor(const LinearProgram& lp, Theta theta,
                                   const SolverConfig& cfg,
                                   std::size_t restarts, double sigma,
                                   std::uint64_t seed) {
  if (restarts < 1)
    throw PreconditionViolated("capture_attractor: restarts >= 1");
  const PdIterate base = default_start(lp);
  Rng rng(seed);
  AttractorCapture cap;
  for (std::size_t run = 0; run < restarts; ++run) {
    PdIterate start;
    try {
      start = (run == 0) ? base : perturbed_start(lp, base, sigma, rng);
    } catch (const NoInteriorFound&) {
      ++cap.failed_runs;
      continue;
    }
    const SolveTrace trace = solve(lp, start, theta, cfg);
    if (trace.termination != Termination::Converged) ++cap.failed_runs;
    for (const TraceRow& r : trace.rows)
      if (r.recorded)
        cap.points.push_back({run, r.iter, r.gap, r.y});
  }
  return cap;
}

void write_trace_csv(std::ostream& os, const LinearProgram& lp,
                     const SolveTrace& trace) {
  os << "iter,gap,alpha_max,alpha";
  for (std::size_t i = 1; i <= lp.n(); ++i) os << ",w_" << i;
  for (std::size_t i = 1; i <= lp.n(); ++i) os << ",wscaled_" << i;
  for (std::size_t i = 1; i <= lp.m(); ++i) os << ",y_" << i;
  os << "\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << ',' << buf;
  };
  for (const TraceRow& r : trace.rows) {
    os << r.iter;
    put(r.gap);
    put(r.alpha_max);
    put(r.alpha);
    for (double v : r.w) put(v);
    for (double v : r.w_scaled) put(v);
    for (double v : r.y) put(v);
    os << "\n";
  }
}

}  // namespace dikin::afs
