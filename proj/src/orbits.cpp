#include "dikin/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dikin/errors.hpp"

namespace dikin::orbits {

using linalg::Vec;

void OrbitConfig::validate() const {
  if (keep < 2 * period_max)
    throw PreconditionViolated("OrbitConfig: keep must be >= 2 * period_max");
  if (burn_in < 1 || burn_in_max < burn_in)
    throw PreconditionViolated("OrbitConfig: need 1 <= burn_in <= burn_in_max");
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::ConvergedPoint: return "converged-point";
    case Classification::Periodic: return "periodic";
    case Classification::Aperiodic: return "aperiodic";
  }
  return "?";
}

double Projection::apply(const Vec& w) const {
  if (w.empty()) throw PreconditionViolated("Projection: empty state");
  switch (kind) {
    case Kind::FixedIndex: {
      if (index >= w.size()) throw PreconditionViolated("Projection: index out of range");
      return w[index];
    }
    case Kind::SortedMiddle: {
      Vec s(w);
      std::sort(s.begin(), s.end());
      return s[s.size() / 2];
    }
    case Kind::SortedIndex: {
      if (index >= w.size()) throw PreconditionViolated("Projection: index out of range");
      Vec s(w);
      std::sort(s.begin(), s.end());
      return s[index];
    }
  }
  throw PreconditionViolated("Projection: bad kind");
}

Projection Projection::parse(const std::string& text) {
  auto index_of = [&](const std::string& prefix) {
    const std::string tail = text.substr(prefix.size());
    try {
      const long i = std::stol(tail);
      if (i < 1) throw UsageError("projection index is 1-based: " + text);
      return std::size_t(i - 1);
    } catch (const std::exception&) {
      throw UsageError("bad projection index in '" + text + "'");
    }
  };
  if (text == "sorted-middle") return Projection{Kind::SortedMiddle, 0};
  if (text.rfind("fixed-index:", 0) == 0)
    return Projection{Kind::FixedIndex, index_of("fixed-index:")};
  if (text.rfind("sorted-index:", 0) == 0)
    return Projection{Kind::SortedIndex, index_of("sorted-index:")};
  throw UsageError("unknown projection '" + text +
                   "' (use sorted-middle, fixed-index:<i>, sorted-index:<i>)");
}

std::string Projection::describe() const {
  switch (kind) {
    case Kind::FixedIndex: return "fixed-index:" + std::to_string(index + 1);
    case Kind::SortedMiddle: return "sorted-middle";
    case Kind::SortedIndex: return "sorted-index:" + std::to_string(index + 1);
  }
  return "?";
}

namespace {

// Minimal cyclic period of the tail under max-norm tolerance, 0 if none.
std::size_t minimal_period(const std::vector<Vec>& tail, std::size_t period_max,
                           double tol) {
  for (std::size_t p = 1; p <= period_max && p < tail.size(); ++p) {
    double worst = 0.0;
    for (std::size_t k = 0; k + p < tail.size() && worst < tol; ++k) {
      double diff = 0.0;
      const Vec& a = tail[k];
      const Vec& b = tail[k + p];
      for (std::size_t i = 0; i < a.size(); ++i)
        diff = std::max(diff, std::fabs(a[i] - b[i]));
      worst = std::max(worst, diff);
    }
    if (worst < tol) return p;
  }
  return 0;
}

OrbitSummary summarize(const std::vector<Vec>& tail, std::size_t period,
                       bool widened, std::size_t burn_used) {
  OrbitSummary s;
  s.burn_in_used = burn_used;
  s.tolerance_widened = widened;
  if (period == 0) {
    s.classification = Classification::Aperiodic;
    s.period = 0;
    return s;
  }
  s.classification = period == 1 ? Classification::ConvergedPoint
                                 : Classification::Periodic;
  s.period = period;
  s.representatives.assign(tail.end() - long(period), tail.end());
  return s;
}

}  // namespace

OrbitSummary classify_tail(const std::vector<Vec>& tail,
                           const OrbitConfig& cfg) {
  cfg.validate();
  if (tail.size() < 2) {
    OrbitSummary s;
    s.error = "classify_tail: tail too short";
    return s;
  }
  const std::size_t pmax = std::min(cfg.period_max, tail.size() / 2);
  std::size_t p = minimal_period(tail, pmax, cfg.match_tol);
  if (p != 0) return summarize(tail, p, false, 0);
  p = minimal_period(tail, pmax, 10.0 * cfg.match_tol);
  return summarize(tail, p, p != 0, 0);
}

std::pair<OrbitSummary, std::vector<Vec>> classify_orbit_with_tail(
    const StepFn& step, const StateVector& w0, const OrbitConfig& cfg) {
  cfg.validate();
  std::vector<Vec> tail;
  try {
    StateVector w = w0;
    std::size_t burned = 0;
    std::size_t chunk = cfg.burn_in;
    while (true) {
      for (std::size_t k = 0; k < chunk; ++k) w = step(w);
      burned += chunk;
      tail.clear();
      tail.reserve(cfg.keep);
      for (std::size_t k = 0; k < cfg.keep; ++k) {
        w = step(w);
        tail.push_back(w.coords());
      }
      const std::size_t p = minimal_period(tail, cfg.period_max, cfg.match_tol);
      if (p != 0) return {summarize(tail, p, false, burned), std::move(tail)};
      if (burned >= cfg.burn_in_max) break;
      chunk = std::min(burned, cfg.burn_in_max - burned);
    }
    const std::size_t p =
        minimal_period(tail, cfg.period_max, 10.0 * cfg.match_tol);
    return {summarize(tail, p, p != 0, cfg.burn_in_max), std::move(tail)};
  } catch (const Error& e) {
    OrbitSummary s;
    s.error = e.what();
    return {std::move(s), std::move(tail)};
  }
}

OrbitSummary classify_orbit(const StepFn& step, const StateVector& w0,
                            const OrbitConfig& cfg) {
  return classify_orbit_with_tail(step, w0, cfg).first;
}

std::vector<double> theta_grid(double theta_min, double theta_max,
                               std::size_t steps) {
  if (!(steps >= 1) || !(theta_max > theta_min))
    throw PreconditionViolated("theta_grid: need steps >= 1 and max > min");
  std::vector<double> grid(steps);
  const double h = (theta_max - theta_min) / double(steps);
  for (std::size_t i = 0; i < steps; ++i) grid[i] = theta_min + h * double(i);
  return grid;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  // splitmix64 over a simple combination; collision-free enough for grids.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (a + 1) +
                    0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

SweepPoint sweep_item(std::size_t dim, double theta_value,
                      const Projection& proj, const OrbitConfig& cfg,
                      std::uint64_t item_seed, std::size_t emit) {
  SweepPoint pt;
  pt.theta = theta_value;
  pt.seed = item_seed;
  try {
    const Theta theta(theta_value);
    Rng rng(item_seed);
    const StateVector w0 = random_state(dim, rng);
    auto step = [theta](const StateVector& w) { return dikin_step(theta, w); };
    auto [summary, tail] = classify_orbit_with_tail(step, w0, cfg);
    pt.summary = std::move(summary);
    const std::size_t take = std::min(emit, tail.size());
    pt.values.reserve(take);
    for (std::size_t k = tail.size() - take; k < tail.size(); ++k)
      pt.values.push_back(proj.apply(tail[k]));
  } catch (const Error& e) {
    pt.summary.error = e.what();
  }
  return pt;
}

}  // namespace

std::vector<SweepPoint> feigenbaum_sweep_serial(
    std::size_t dim, const std::vector<double>& grid, const Projection& proj,
    const OrbitConfig& cfg, std::size_t seeds_per_theta, std::size_t emit) {
  cfg.validate();
  if (seeds_per_theta < 1)
    throw PreconditionViolated("feigenbaum_sweep: seeds_per_theta >= 1");
  std::vector<SweepPoint> out(grid.size() * seeds_per_theta);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < seeds_per_theta; ++j)
      out[i * seeds_per_theta + j] = sweep_item(
          dim, grid[i], proj, cfg, derive_seed(cfg.seed, i, j), emit);
  return out;
}

std::vector<SweepPoint> feigenbaum_sweep(std::size_t dim,
                                         const std::vector<double>& grid,
                                         const Projection& proj,
                                         const OrbitConfig& cfg,
                                         std::size_t seeds_per_theta,
                                         std::size_t emit) {
  cfg.validate();
  if (seeds_per_theta < 1)
    throw PreconditionViolated("feigenbaum_sweep: seeds_per_theta >= 1");
  std::vector<SweepPoint> out(grid.size() * seeds_per_theta);
  const std::ptrdiff_t total = std::ptrdiff_t(out.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    const std::size_t i = std::size_t(idx) / seeds_per_theta;
    const std::size_t j = std::size_t(idx) % seeds_per_theta;
    out[std::size_t(idx)] = sweep_item(dim, grid[i], proj, cfg,
                                       derive_seed(cfg.seed, i, j), emit);
  }
  return out;
}

double onset_scan(std::size_t dim,
                  const std::function<bool(const OrbitSummary&)>& predicate,
                  std::pair<double, double> bracket, double step,
                  const OrbitConfig& cfg) {
  if (!(step > 0.0) || step > 1e-3 + 1e-15)
    throw PreconditionViolated("onset_scan: grid step must be in (0, 1e-3]");
  for (double th = bracket.first; th <= bracket.second + 1e-15; th += step) {
    Rng rng(derive_seed(cfg.seed, 0, 0));
    const StateVector w0 = random_state(dim, rng);
    const Theta theta(th);
    auto fn = [theta](const StateVector& w) { return dikin_step(theta, w); };
    if (predicate(classify_orbit(fn, w0, cfg))) return th;
  }
  throw NotFound("onset_scan: predicate never held in bracket");
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points,
                     std::size_t emit) {
  os << "theta,seed,classification,period";
  for (std::size_t k = 1; k <= emit; ++k) os << ",value_" << k;
  os << "\n";
  char buf[32];
  for (const SweepPoint& pt : points) {
    std::snprintf(buf, sizeof buf, "%.17g", pt.theta);
    os << buf << ',' << pt.seed << ',';
    if (!pt.summary.error.empty()) {
      os << "error";
    } else {
      os << to_string(pt.summary.classification);
      if (pt.summary.tolerance_widened) os << '?';
    }
    os << ',' << pt.summary.period;
    for (std::size_t k = 0; k < emit; ++k) {
      if (k < pt.values.size()) {
        std::snprintf(buf, sizeof buf, "%.17g", pt.values[k]);
        os << ',' << buf;
      } else {
        os << ",nan";
      }
    }
    os << "\n";
  }
}

}  // namespace dikin::orbits
