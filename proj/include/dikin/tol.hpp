#pragma once

// Central numeric tolerances.  Every threshold used by the library lives
// here so it can be adjusted in one place.

namespace dikin::tol {

// solve_spd: a Cholesky pivot below this fraction of the largest initial
// diagonal entry counts as numerically singular.  Relative to the matrix
// scale: the AFS normal matrix shrinks with the duality gap, and an
// absolute cutoff would abort long solves that are still well conditioned.
inline constexpr double kSpdPivotRel = 1e-14;

// solve_spd residual contract: ||Mz - rhs|| <= kSpdResidual * (1 + ||rhs||).
inline constexpr double kSpdResidual = 1e-10;

// poly_roots: accept a root z when |p(z)| <= kRootResidual * max_k |a_k|.
inline constexpr double kRootResidual = 1e-8;
inline constexpr int kRootMaxIters = 600;

// Verification tolerance for constructed periodic orbits (cycle closure).
inline constexpr double kOrbitCycle = 1e-10;

// Bisection target width for scalar root finding (thresholds, pivots).
inline constexpr double kBisectWidth = 1e-14;

// Interior-point defaults (see SolverConfig for the run-time knobs).
inline constexpr double kFeasTol = 1e-8;

// Default cyclic-match tolerance of the orbit classifier.
inline constexpr double kMatchTol = 1e-7;

}  // namespace dikin::tol
