#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dikin/afs.hpp"
#include "dikin/errors.hpp"

using namespace dikin;
using namespace dikin::afs;
using linalg::Vec;

namespace {

// Residuals of the direction identities at one iterate.
struct DirCheck {
  double null_space;    // ||A dx||
  double orthogonality; // |dx . ds| scaled
  double sum_identity;  // || X^-1 dx + S^-1 ds + v^2/||v^2|| ||_inf
};

DirCheck check_directions(const LinearProgram& lp, const PdIterate& it) {
  const Directions d = directions(lp, it);
  DirCheck out;
  out.null_space = linalg::norm_inf(linalg::mat_vec(lp.A, d.dx));
  const double scale =
      1.0 + linalg::norm2(d.dx) * linalg::norm2(d.ds);
  out.orthogonality = std::fabs(linalg::dot(d.dx, d.ds)) / scale;
  const Vec w = linalg::ew_mul(it.x, it.s);
  const double wn = linalg::norm2(w);
  double worst = 0.0;
  for (std::size_t i = 0; i < lp.n(); ++i) {
    const double lhs = d.dx[i] / it.x[i] + d.ds[i] / it.s[i];
    worst = std::max(worst, std::fabs(lhs + w[i] / wn));
  }
  out.sum_identity = worst;
  return out;
}

}  // namespace

TEST_CASE("castillo-barnes instance is exactly the printed data") {
  const LinearProgram lp = castillo_barnes();
  CHECK(lp.m() == 2);
  CHECK(lp.n() == 5);
  CHECK(lp.c == Vec{10, 10, 5, 1, -1});
  CHECK(lp.b == Vec{0, 0});
  CHECK(lp.A.row(0) == Vec{1, 2, -3, -2, -1});
  CHECK(lp.A.row(1) == Vec{-1, 2, -1, -1, -1});
}

TEST_CASE("default start is interior, feasible and deterministic") {
  const LinearProgram lp = castillo_barnes();
  const PdIterate it = default_start(lp);
  validate_iterate(lp, it, 1e-8);
  CHECK(linalg::norm_inf(linalg::mat_vec(lp.A, it.x)) <= 1e-10);
  for (double v : it.s) CHECK(v > 0.0);
  // projection of e onto the null space has the closed-form value
  CHECK(it.x[0] == doctest::Approx(66.0 / 71.0).epsilon(1e-12));
  CHECK(it.x[1] == doctest::Approx(105.0 / 71.0).epsilon(1e-12));
  const PdIterate again = default_start(lp);
  CHECK(again.x == it.x);
  CHECK(again.y == it.y);
}

TEST_CASE("no interior start exists when the feasible set is a point") {
  // A = (1 1), b = 0, x >= 0 forces x = 0
  const LinearProgram lp =
      make_lp("degenerate", linalg::Mat::from_rows({{1, 1}}), Vec{0}, Vec{1, 1});
  CHECK_THROWS_AS(default_start(lp), NoInteriorFound);
}

TEST_CASE("direction identities hold at the default start and along a solve") {
  const LinearProgram lp = castillo_barnes();
  PdIterate it = default_start(lp);
  const DirCheck c0 = check_directions(lp, it);
  CHECK(c0.null_space <= 1e-8);
  CHECK(c0.orthogonality <= 1e-10);
  CHECK(c0.sum_identity <= 1e-8);
  for (int k = 0; k < 25; ++k) {
    it = afs_step(lp, it, Theta(0.5));
    const DirCheck c = check_directions(lp, it);
    CHECK(c.null_space <= 1e-8);
    CHECK(c.orthogonality <= 1e-10);
    CHECK(c.sum_identity <= 1e-8);
  }
}

TEST_CASE("one afs step decreases the gap and scales with theta") {
  const LinearProgram lp = castillo_barnes();
  const PdIterate start = default_start(lp);
  const PdIterate one = afs_step(lp, start, Theta(0.5));
  CHECK(one.gap() < start.gap());
  // theta -> 0: step shrinks linearly
  const Directions d = directions(lp, start);
  const StepControl sc = step_control(Theta(1e-6), start);
  const PdIterate tiny = afs_step(lp, start, Theta(1e-6));
  double moved = 0;
  for (std::size_t i = 0; i < lp.n(); ++i)
    moved = std::max(moved, std::fabs(tiny.x[i] - start.x[i]));
  CHECK(moved <= sc.alpha * (linalg::norm_inf(d.dx) + 1e-30) * 1.0001);
}

TEST_CASE("alpha_max is ||w||/max(w), between 1 and sqrt(n)") {
  const LinearProgram lp = castillo_barnes();
  PdIterate it = default_start(lp);
  for (int k = 0; k < 30; ++k) {
    const StepControl sc = step_control(Theta(0.7), it);
    CHECK(sc.alpha_max >= 1.0 - 1e-12);
    CHECK(sc.alpha_max <= std::sqrt(double(lp.n())) + 1e-12);
    CHECK(sc.alpha == doctest::Approx(0.7 * sc.alpha_max));
    it = afs_step(lp, it, Theta(0.7));
  }
  // on the central line w = e the maximal step is exactly sqrt(n)
  PdIterate central;
  central.x = Vec{1, 1, 1, 1};
  central.s = Vec{1, 1, 1, 1};
  central.y = Vec{0};
  const StepControl sc = step_control(Theta(0.5), central);
  CHECK(sc.alpha_max == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("solve converges on castillo-barnes for theta = 0.5") {
  const LinearProgram lp = castillo_barnes();
  const SolveTrace trace =
      solve(lp, default_start(lp), Theta(0.5), SolverConfig{});
  CHECK(trace.termination == Termination::Converged);
  CHECK(trace.rows.back().gap <= 1e-10);
  // dual iterates converge to a point: last recorded moves are tiny
  const auto& rows = trace.rows;
  const std::size_t k = rows.size() - 1;
  double move = 0;
  for (std::size_t i = 0; i < lp.m(); ++i)
    move = std::max(move, std::fabs(rows[k].y[i] - rows[k - 1].y[i]));
  CHECK(move <= 1e-3);
  CHECK(dual_feasibility_check(lp, rows[k].y));
  // the scaled w-trace approaches the all-one vector below 2/3
  double wdev = 0;
  for (double v : rows[k].w_scaled) wdev = std::max(wdev, std::fabs(v - 1.0));
  CHECK(wdev <= 1e-3);
  // feasibility drift along the whole trace
  PdIterate it = default_start(lp);
  for (int step = 0; step < 30; ++step) {
    it = afs_step(lp, it, Theta(0.5));
    CHECK(linalg::norm_inf(linalg::mat_vec(lp.A, it.x)) <= 1e-8);
    Vec rd = linalg::matT_vec(lp.A, it.y);
    for (std::size_t i = 0; i < lp.n(); ++i) rd[i] += it.s[i] - lp.c[i];
    CHECK(linalg::norm_inf(rd) <= 1e-8);
  }
}

TEST_CASE("dual feasibility check on the printed constraint system") {
  const LinearProgram lp = castillo_barnes();
  CHECK(dual_feasibility_check(lp, Vec{3.0513, 0.5522}));
  CHECK_FALSE(dual_feasibility_check(lp, Vec{100, 100}));
  CHECK_FALSE(dual_feasibility_check(lp, Vec{0, 0}));  // -y1-y2 <= -1 fails
}

TEST_CASE("solver config invariant") {
  const LinearProgram lp = castillo_barnes();
  SolverConfig cfg;
  cfg.epsilon = 1e-2;
  cfg.record_gap_threshold = 1e-3;  // below epsilon
  CHECK_THROWS_AS(solve(lp, default_start(lp), Theta(0.5), cfg),
                  PreconditionViolated);
}

TEST_CASE("trace rows flag the plotting threshold") {
  const LinearProgram lp = castillo_barnes();
  SolverConfig cfg;
  const SolveTrace trace = solve(lp, default_start(lp), Theta(0.7), cfg);
  for (const TraceRow& r : trace.rows)
    CHECK(r.recorded == (r.gap <= cfg.record_gap_threshold));
  CHECK(trace.rows.front().gap > 0.0);
}

TEST_CASE("trace csv has the pinned column layout") {
  const LinearProgram lp = castillo_barnes();
  SolverConfig cfg;
  cfg.max_iters = 5;
  const SolveTrace trace = solve(lp, default_start(lp), Theta(0.5), cfg);
  std::ostringstream os;
  write_trace_csv(os, lp, trace);
  std::istringstream in(os.str());
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "iter,gap,alpha_max,alpha,w_1,w_2,w_3,w_4,w_5,"
        "wscaled_1,wscaled_2,wscaled_3,wscaled_4,wscaled_5,y_1,y_2");
  std::string row;
  std::getline(in, row);
  CHECK(row.substr(0, 2) == "0,");
}

TEST_CASE("lp json loading validates required fields") {
  const char* path = "test_lp.json";
  {
    std::ofstream f(path);
    f << R"({"name":"toy","A":[[1,2,-3],[0,1,-1]],"b":[0,0],"c":[1,2,3],
             "x0":[1,1,1]})";
  }
  const LinearProgram lp = load_lp_json(path);
  CHECK(lp.name == "toy");
  CHECK(lp.m() == 2);
  CHECK(lp.n() == 3);
  CHECK(lp.x0 == Vec{1, 1, 1});
  // the x0 override is honored by the start construction
  const PdIterate it = default_start(lp);
  CHECK(it.x == lp.x0);
  validate_iterate(lp, it, 1e-8);
  {
    std::ofstream f(path);
    f << R"({"name":"broken","b":[0],"c":[1,2]})";
  }
  CHECK_THROWS_AS(load_lp_json(path), UsageError);
  std::remove(path);
}

TEST_CASE("attractor capture pools enough distinct feasible points") {
  const LinearProgram lp = castillo_barnes();
  const AttractorCapture cap =
      capture_attractor(lp, Theta(0.94), SolverConfig{}, 16, 0.05, 7);
  CHECK(cap.points.size() >= 100);
  for (const auto& p : cap.points) {
    CHECK(p.gap <= 1e-3);
    CHECK(dual_feasibility_check(lp, p.y));
  }
  // deterministic rerun
  const AttractorCapture cap2 =
      capture_attractor(lp, Theta(0.94), SolverConfig{}, 16, 0.05, 7);
  REQUIRE(cap2.points.size() == cap.points.size());
  for (std::size_t i = 0; i < cap.points.size(); ++i)
    CHECK(cap2.points[i].y == cap.points[i].y);
}
