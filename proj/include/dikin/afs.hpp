#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dikin/linalg.hpp"
#include "dikin/process.hpp"

namespace dikin::afs {

// Standard-form primal data: min c^T x s.t. A x = b, x >= 0, with the
// dual max b^T y s.t. A^T y + s = c, s >= 0 implied.
struct LinearProgram {
  std::string name;
  linalg::Mat A;  // m x n, full row rank, m < n
  linalg::Vec b;  // length m
  linalg::Vec c;  // length n
  linalg::Vec x0, y0;  // optional start overrides (empty = unused)

  std::size_t m() const { return A.rows(); }
  std::size_t n() const { return A.cols(); }
};

// Validates shape and row rank (Cholesky of A A^T must succeed).
LinearProgram make_lp(std::string name, linalg::Mat A, linalg::Vec b,
                      linalg::Vec c);

// Strictly interior primal-dual triple.
struct PdIterate {
  linalg::Vec x, y, s;

  double gap() const { return linalg::dot(x, s); }
};

// Throws PreconditionViolated when interiority or feasibility fails.
void validate_iterate(const LinearProgram& lp, const PdIterate& it,
                      double feas_tol);

struct StepControl {
  double theta;
  double alpha_max;  // ||xs|| / max(xs), in [1, sqrt(n)]
  double alpha;      // theta * alpha_max
};

StepControl step_control(Theta theta, const PdIterate& it);

struct SolverConfig {
  double epsilon = 1e-10;              // duality-gap stop
  double record_gap_threshold = 1e-3;  // plotting rule: keep gap <= this
  std::size_t max_iters = 10000;
  double feas_tol = 1e-8;
};

struct Directions {
  linalg::Vec dx, dy, ds;
};

// Search directions from the scaled projection decomposition; guarantees
// A dx = 0, ds = -A^T dy and X^-1 dx + S^-1 ds = -v^2/||v^2||.
Directions directions(const LinearProgram& lp, const PdIterate& it);

// One step with alpha = theta * alpha_max; throws NonInterior when a
// coordinate of x or s leaves the positive orthant.
PdIterate afs_step(const LinearProgram& lp, const PdIterate& it, Theta theta);

enum class Termination { Converged, MaxIters, NonInterior, IllConditioned };

const char* to_string(Termination t);

struct TraceRow {
  std::size_t iter;
  double gap;
  double alpha_max;
  double alpha;
  linalg::Vec w;         // xs
  linalg::Vec w_scaled;  // xs / max(xs)
  linalg::Vec y;
  bool recorded;  // gap <= record_gap_threshold
};

struct SolveTrace {
  std::vector<TraceRow> rows;
  Termination termination = Termination::MaxIters;
  std::string message;
  PdIterate last;
};

// Iterates afs_step until gap <= epsilon, the iteration cap, or a numeric
// failure; every outcome leaves a valid partial trace.
SolveTrace solve(const LinearProgram& lp, const PdIterate& start, Theta theta,
                 const SolverConfig& cfg);

// The 2x5 instance of the comparison study, b = 0.
LinearProgram castillo_barnes();

// A^T y <= c coordinatewise within tol.
bool dual_feasibility_check(const LinearProgram& lp, const linalg::Vec& y,
                            double tol = 1e-8);

// Deterministic interior feasible start: projection of e onto {Ax = b}
// pushed to positivity inside the null space; dual point by relaxation
// on A^T y < c.  Honors x0/y0 overrides carried by the LP.
PdIterate default_start(const LinearProgram& lp);

// Start for attractor restarts: multiplicative noise on x re-projected
// onto {Ax = b}, additive noise on y; deterministic given the engine.
PdIterate perturbed_start(const LinearProgram& lp, const PdIterate& base,
                          double sigma, Rng& rng);

// LP JSON: fields name, A (array of rows), b, c, optional x0, y0.
LinearProgram load_lp_json(const std::string& path);

// Pooled attractor capture: the default start plus `restarts - 1`
// perturbed starts, each solved to cfg.epsilon; keeps every dual iterate
// whose gap is at or below cfg.record_gap_threshold.
struct AttractorCapture {
  struct Point {
    std::size_t run;
    std::size_t iter;
    double gap;
    linalg::Vec y;
  };
  std::vector<Point> points;
  std::size_t failed_runs = 0;  // runs ending NonInterior/IllConditioned
};

AttractorCapture capture_attractor(const LinearProgram& lp, Theta theta,
                                   const SolverConfig& cfg,
                                   std::size_t restarts, double sigma,
                                   std::uint64_t seed);

// Trace CSV: iter,gap,alpha_max,alpha,w_*,wscaled_*,y_* at 17 significant
// digits, one row per iterate.
void write_trace_csv(std::ostream& os, const LinearProgram& lp,
                     const SolveTrace& trace);

}  // namespace dikin::afs
