#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dikin/errors.hpp"
#include "dikin/process.hpp"

using namespace dikin;
using linalg::Vec;

namespace {

double max_dev(const StateVector& a, const Vec& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("f_map values") {
  CHECK(f_map(Theta(0.95), 1.0 / 0.95 - 1.0) == doctest::Approx(0.05).epsilon(1e-13));
  CHECK(f_map(Theta(0.3), 0.0) == 0.0);
  CHECK(f_map(Theta(0.8), 1.0 / 1.6) == doctest::Approx(0.3125).epsilon(1e-15));
}

TEST_CASE("theta domain") {
  CHECK_THROWS_AS(Theta(-0.1), PreconditionViolated);
  CHECK_THROWS_AS(Theta(1.1), PreconditionViolated);
}

TEST_CASE("state vector normalization is exact") {
  const StateVector w(Vec{0.25, 0.5});
  CHECK(w[1] == 1.0);
  CHECK(w[0] == 0.5);
  CHECK_THROWS_AS(StateVector(Vec{1.0}), PreconditionViolated);
  CHECK_THROWS_AS(StateVector(Vec{0.0, 1.0}), PreconditionViolated);
}

TEST_CASE("dikin_step basics") {
  // e is a fixed point
  for (double th : {0.1, 0.5, 0.9}) {
    const StateVector e(Vec{1, 1, 1});
    const StateVector next = dikin_step(Theta(th), e);
    CHECK(max_dev(next, {1, 1, 1}) == 0.0);
  }
  // hand-evaluated two-coordinate step
  const StateVector next = dikin_step(Theta(0.7), StateVector(Vec{0.9, 1.0}));
  CHECK(next[0] == 1.0);
  CHECK(next[1] == doctest::Approx(0.3 / 0.333).epsilon(1e-12));
  // the section-5 seed: raw (1/theta-1, 1/(2 theta)) -> (0.19, 1)
  const double th = 0.95;
  const StateVector s2 = dikin_step(Theta(th), Vec{1.0 / th - 1.0, 0.5 / th});
  CHECK(s2[0] == doctest::Approx(0.19).epsilon(1e-12));
  CHECK(s2[1] == 1.0);
  // theta = 1 annihilates the maximum
  CHECK_THROWS_AS(dikin_step(Theta(1.0), StateVector(Vec{0.5, 1.0})),
                  DegenerateStep);
}

TEST_CASE("h_map values and fixed point at 1") {
  for (double th : {0.2, 0.5, 0.77})
    CHECK(h_map(Theta(th), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h_map(Theta(0.5), 0.8) == doctest::Approx(0.5 / (0.8 * 0.6)).epsilon(1e-15));
  CHECK_THROWS_AS(h_map(Theta(0.5), 0.0), DegenerateInput);
  CHECK_THROWS_AS(h_map(Theta(0.5), 2.0), DegenerateInput);
}

TEST_CASE("g_map pivots") {
  CHECK(g_map(Theta(0.8), 0.4, 0.4) == 1.0);  // self-quotient
  // g(1/theta - 1) with pivot 1/(2 theta) at 0.95 is 0.19 exactly
  const double th = 0.95;
  CHECK(g_map(Theta(th), 0.5 / th, 1.0 / th - 1.0) ==
        doctest::Approx(0.19).epsilon(1e-12));
  CHECK_THROWS_AS(g_map(Theta(0.8), 0.0, 0.3), DegenerateInput);
}

TEST_CASE("reflection is the f-symmetry") {
  const Theta th(0.8);
  CHECK(reflect(th, 1.0 / 1.6) == doctest::Approx(1.0 / 1.6).epsilon(1e-15));
  CHECK(reflect(th, 0.25) == doctest::Approx(1.0).epsilon(1e-15));
  Rng rng(7);
  for (int k = 0; k < 100; ++k) {
    const double x = 2.0 * uniform01(rng) - 0.5;
    CHECK(std::fabs(f_map(th, reflect(th, x)) - f_map(th, x)) < 1e-14);
  }
  CHECK_THROWS_AS(reflect(Theta(0.4), 0.5), PreconditionViolated);
}

TEST_CASE("symmetry about the maximum point") {
  for (double thv : {0.6, 0.8, 0.99}) {
    const Theta th(thv);
    Rng rng(11);
    for (int k = 0; k < 100; ++k) {
      const double z = uniform01(rng);
      const double c = 0.5 / thv;
      CHECK(std::fabs(f_map(th, c + z) - f_map(th, c - z)) < 1e-14);
    }
  }
}

TEST_CASE("trap interval") {
  auto [lo, hi] = trap_interval(Theta(2.0 / 3.0 + 1e-12));
  CHECK(lo == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(hi == 1.0);
  CHECK(trap_interval(Theta(1.0)).first == doctest::Approx(0.0));
  CHECK(trap_interval(Theta(0.95)).first ==
        doctest::Approx(0.0526316).epsilon(1e-5));
  CHECK_THROWS_AS(trap_interval(Theta(0.5)), NotApplicable);
}

TEST_CASE("projective invariance of the raw update") {
  Rng rng(123);
  for (double lambda : {0.125, 3.0, 17.25, 1e6}) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 2 + trial % 4;
      Vec w(n);
      for (double& v : w) v = uniform01(rng) + 1e-3;
      auto raw_update = [&](const Vec& u) {
        const double m = linalg::max_entry(u);
        Vec out(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
          out[i] = u[i] * (1.0 - 0.8 * u[i] / m);
        return out;
      };
      Vec scaled(w);
      for (double& v : scaled) v *= lambda;
      const StateVector a(raw_update(w));
      const StateVector b(raw_update(scaled));
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::fabs(a[i] - b[i]) < 1e-12);
    }
  }
}

TEST_CASE("absorption into the trap interval for theta in (1/2, 1)") {
  for (double thv : {0.7, 0.85, 0.97}) {
    const Theta th(thv);
    Rng rng(99);
    StateVector w = random_state(4, rng);
    for (int k = 0; k < 10000; ++k) w = dikin_step(th, w);
    const double floor = 1.0 / thv - 1.0 - 1e-9;
    for (int k = 0; k < 1000; ++k) {
      w = dikin_step(th, w);
      CHECK(linalg::min_entry(w.coords()) >= floor);
    }
  }
}

TEST_CASE("monotone convergence to e for theta <= 1/2") {
  for (double thv : {0.3, 0.5}) {
    const Theta th(thv);
    Rng rng(5);
    StateVector w = random_state(3, rng);
    double dev = 1.0;
    for (int k = 0; k < 100000 && dev > 1e-9; ++k) {
      const StateVector next = dikin_step(th, w);
      for (std::size_t i = 0; i < w.dim(); ++i)
        CHECK(next[i] >= w[i] - 1e-15);  // coordinates never decrease
      w = next;
      dev = 0.0;
      for (std::size_t i = 0; i < w.dim(); ++i)
        dev = std::max(dev, std::fabs(w[i] - 1.0));
    }
    CHECK(dev <= 1e-9);
  }
}

TEST_CASE("the cubic criterion is nonnegative on [0,1] for theta <= 2/3") {
  for (double thv : {0.55, 0.6, 2.0 / 3.0}) {
    for (int i = 0; i <= 10000; ++i) {
      const double x = double(i) / 10000.0;
      const double cubic = thv * x * x * x - x * x + 1.0 - thv;
      CHECK(cubic >= -1e-12);
    }
  }
}
