#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dikin/linalg.hpp"
#include "dikin/process.hpp"

namespace dikin::orbits {

struct OrbitConfig {
  std::size_t burn_in = 100000;
  std::size_t keep = 512;
  std::size_t period_max = 64;
  double match_tol = 1e-7;
  std::uint64_t seed = 0;
  // Burn-in doubles up to this cap while the classification is unresolved
  // (critical slowing down near bifurcations).
  std::size_t burn_in_max = 10000000;

  void validate() const;  // keep >= 2 * period_max
};

enum class Classification { ConvergedPoint, Periodic, Aperiodic };

const char* to_string(Classification c);

struct OrbitSummary {
  Classification classification = Classification::Aperiodic;
  std::size_t period = 0;  // minimal period when Periodic, 1 when converged
  std::vector<linalg::Vec> representatives;  // cycle points (sorted tail order)
  bool tolerance_widened = false;  // matched only after widening match_tol x10
  std::size_t burn_in_used = 0;
  std::string error;  // in-band failure note; empty on success
};

// Coordinate projection used by the diagrams.
struct Projection {
  enum class Kind { FixedIndex, SortedMiddle, SortedIndex };
  Kind kind = Kind::SortedMiddle;
  std::size_t index = 0;  // 0-based, for the *Index kinds

  double apply(const linalg::Vec& w) const;
  static Projection parse(const std::string& text);  // throws UsageError
  std::string describe() const;
};

using StepFn = std::function<StateVector(const StateVector&)>;

// Classify the omega-limit of the orbit of w0 under `step`: burn in,
// keep a tail, detect the minimal cyclic period by cluster matching in
// the max norm.  Unresolved tails widen the tolerance once and flag it.
OrbitSummary classify_orbit(const StepFn& step, const StateVector& w0,
                            const OrbitConfig& cfg);

// Same, also returning the kept tail (newest last).
std::pair<OrbitSummary, std::vector<linalg::Vec>> classify_orbit_with_tail(
    const StepFn& step, const StateVector& w0, const OrbitConfig& cfg);

// Classification of an already-recorded trajectory tail (AFS traces).
OrbitSummary classify_tail(const std::vector<linalg::Vec>& tail,
                           const OrbitConfig& cfg);

struct SweepPoint {
  double theta;
  std::uint64_t seed;
  OrbitSummary summary;
  std::vector<double> values;  // projected tail samples, newest last
};

// Inclusive-exclusive grid [min, max) with `steps` points.
std::vector<double> theta_grid(double theta_min, double theta_max,
                               std::size_t steps);

// Feigenbaum sweep of the Dikin process: for every (theta, seed) classify
// the orbit and project `emit` tail states.  Work items are independent;
// the parallel path (OpenMP) writes into preassigned slots so its output
// is bit-identical to the serial reference.
std::vector<SweepPoint> feigenbaum_sweep_serial(std::size_t dim,
                                                const std::vector<double>& grid,
                                                const Projection& proj,
                                                const OrbitConfig& cfg,
                                                std::size_t seeds_per_theta,
                                                std::size_t emit = 64);
std::vector<SweepPoint> feigenbaum_sweep(std::size_t dim,
                                         const std::vector<double>& grid,
                                         const Projection& proj,
                                         const OrbitConfig& cfg,
                                         std::size_t seeds_per_theta,
                                         std::size_t emit = 64);

// First theta on the grid where the predicate holds; throws NotFound.
double onset_scan(std::size_t dim,
                  const std::function<bool(const OrbitSummary&)>& predicate,
                  std::pair<double, double> bracket, double step,
                  const OrbitConfig& cfg);

// Sweep CSV: theta,seed,classification,period,value_1..value_k.
void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points,
                     std::size_t emit);

// Deterministic per-item seed derivation.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

}  // namespace dikin::orbits
