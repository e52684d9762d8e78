#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gaussent/analytic.hpp"
#include "gaussent/riccati.hpp"
#include "gaussent/gaussian_core.hpp"
#include "oracles.hpp"

using namespace gaussent;
using namespace gaussent::analytic;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

TEST_CASE("a+- values") {
  auto [p0, m0] = a_plus_minus(1.0, 0.0);
  CHECK(p0 == 3.0);
  CHECK(m0 == 1.0);
  auto [p1, m1] = a_plus_minus(1.0, kPi);
  CHECK(p1 == Approx(2.0));
  CHECK(m1 == Approx(2.0));
  auto [p2, m2] = a_plus_minus(1.0, kPi / 2);
  CHECK(p2 == Approx(2.0 + 2.0 / kPi));
  CHECK(m2 == Approx(2.0 - 2.0 / kPi));
  CHECK(p2 == Approx(2.6366).epsilon(1e-4));
  CHECK(m2 == Approx(1.3634).epsilon(1e-4));
  // series branch joins the direct formula smoothly
  auto [ps, ms] = a_plus_minus(2.0, 0.9e-8);
  CHECK(ps == Approx(5.0).epsilon(1e-15));
  CHECK(ms == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("a+ >= a- >= 1 and delta_sq identity") {
  for (double k2 : {0.0, 0.1, 1.0, 10.0, 1e3}) {
    for (double th : {0.0, 1e-9, 0.3, 2.0, 7.0, 100.0}) {
      auto [ap, am] = a_plus_minus(k2, th);
      if (std::sin(th) >= 0.0) CHECK(ap >= am);
      CHECK(ap >= 1.0 - 1e-15);
      CHECK(am >= 1.0 - 1e-15);
      CHECK(delta_sq(k2, th) == Approx(1.0 / (ap * am)).epsilon(1e-12));
      CHECK(ap == Approx(oracle::a_plus(k2, th)).epsilon(1e-12));
    }
  }
  CHECK(delta_sq(0.0, 3.0) == 1.0);
  CHECK(delta_sq(10.0, 1e9) == Approx(1.0 / 121.0).epsilon(1e-12));
}

TEST_CASE("lossy unrotated covariances") {
  const auto g0 = lossy_norot_covariances(100.0, 0.0);
  CHECK(g0.g11 == 1.0);
  CHECK(g0.g22 == 1.0);
  CHECK(g0.g33 == 1.0);
  CHECK(g0.g44 == 1.0);
  for (double a0 : {1.0, 10.0, 100.0, 1000.0}) {
    for (double x : {1e-13, 1e-6, 0.05, 0.5, 2.0, 5.0}) {
      const auto g = lossy_norot_covariances(a0, x);
      const auto o = oracle::lossy(a0, x);
      CHECK(g.g11 == Approx(o.g11).epsilon(1e-12));
      CHECK(g.g22 == Approx(o.g22).epsilon(1e-12));
      CHECK(g.g33 == Approx(o.g33).epsilon(1e-10));
      CHECK(g.g11 * g.g33 >= 1.0);
      CHECK(lossy_norot_delta(a0, x) == Approx(std::sqrt(o.g22 * o.g33)).epsilon(1e-10));
    }
  }
  CHECK(lossy_norot_delta(100.0, 2.0) > 1.0);
  CHECK(lossy_norot_covariances(100.0, 1e-13).g33 == Approx(1.0 - 199e-13).epsilon(1e-15));
}

TEST_CASE("lossy closed form agrees with the ODE without absorption") {
  const auto p = PhysicalParams::from_optical_depth(100.0, 1.0, 0.0, 0.0, 1e-3);
  const auto s = integrate_ode(lossy_problem(p), Mat4::Identity(), 0.05).back();
  CHECK(to_sum_diff_basis(s.gamma)(2, 2) == Approx(lossy_norot_covariances(100.0, 0.05).g33).epsilon(1e-6));
}

TEST_CASE("t_crit") {
  SUBCASE("alpha0 = 100") {
    CHECK(t_crit(100.0, 1.0) == Approx(0.0884).epsilon(1e-3));
    // numerical minimum of Delta by golden section on the oracle
    double lo = 0.0, hi = 0.5;
    const double gr = (std::sqrt(5.0) - 1) / 2;
    auto f = [](double x) { const auto o = oracle::lossy(100.0, x); return o.g22 * o.g33; };
    for (int i = 0; i < 200; ++i) {
      const double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
      (f(a) < f(b) ? hi : lo) = (f(a) < f(b) ? b : a);
    }
    CHECK(t_crit(100.0, 1.0) == Approx(0.5 * (lo + hi)).epsilon(1e-4));
  }
  SUBCASE("inverse scaling with eta") {
    for (double a0 : {10.0, 50.0, 100.0, 500.0}) {
      CHECK(t_crit(a0, 2.0) == Approx(t_crit(a0, 1.0) / 2).epsilon(1e-14));
      CHECK(0.3 * t_crit(a0, 0.3) == Approx(t_crit(a0, 1.0)).epsilon(1e-14));
    }
  }
  SUBCASE("alpha0 = 1 sits on the boundary") { CHECK(t_crit(1.0, 1.0) == Approx(0.0).scale(1.0)); }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(t_crit(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(t_crit(10.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(t_crit(0.5, 1.0), std::domain_error);
  }
}

TEST_CASE("death point") {
  for (double a0 : {2.0, 10.0, 100.0, 500.0}) {
    const double x = death_eta_t(a0);
    CHECK(lossy_norot_delta(a0, x) == Approx(1.0).epsilon(1e-10));
    CHECK(x > t_crit(a0, 1.0));
  }
  CHECK(death_eta_t(100.0) == Approx(1.176).epsilon(1e-3));
  CHECK_THROWS_AS(death_eta_t(1.0), std::domain_error);
}

TEST_CASE("depumping") {
  CHECK(depump_variance(1.7, 0.0) == 1.7);
  CHECK(depump_variance(1.0, 0.5) == Approx(1.12763).epsilon(1e-5));
  for (double x : {0.1, 0.5, 1.0}) {
    const long long n = 100000;
    CHECK(depump_sum(1.0, x / n, n) == Approx(std::exp(-x) + std::sinh(x)).epsilon(1e-4));
    CHECK(depump_recursive(1.0, x / n, n) == Approx(std::exp(-x) + std::sinh(x)).epsilon(1e-4));
  }
  SUBCASE("recursion and closed sum agree") {
    for (long long n : {1LL, 10LL, 1000LL}) {
      for (double e : {1e-5, 1e-4, 1e-3}) {
        CHECK(depump_recursive(1.3, e, n) == Approx(depump_sum(1.3, e, n)).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(depump_variance(-1.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(depump_sum(1.0, 1.0, 3), std::domain_error);
}

TEST_CASE("rotated lossy pair") {
  auto [a, b] = rotated_lossy_covariances(10.0, 0.0);
  CHECK(a == 1.0);
  CHECK(b == 1.0);
  SUBCASE("vanishing noise at fixed accumulated coupling") {
    const double k2 = 3.0;
    for (double x : {1e-4, 1e-6}) {
      auto [g11, g22] = rotated_lossy_covariances(k2 / x, x);
      CHECK(g11 == Approx(1 + k2).epsilon(10 * x * k2));
      CHECK(g22 == Approx(1 / (1 + k2)).epsilon(10 * x * k2 + 1e-9));
    }
  }
  SUBCASE("squeezing needs 1 + 2 alpha0 > 7") {
    const double x = 1e-3;
    CHECK(rotated_lossy_expansion(3.0, x).second == Approx(1.0).epsilon(1e-6));
    CHECK(rotated_lossy_expansion(2.0, x).second > 1.0);
    CHECK(rotated_lossy_expansion(10.0, x).second < 1.0);
    CHECK(rotated_lossy_covariances(2.0, x).second > 1.0);
  }
  SUBCASE("expansion matches the closed form at small eta t") {
    for (double a0 : {10.0, 100.0}) {
      const double x = 1e-5;
      CHECK(rotated_lossy_expansion(a0, x).second == Approx(rotated_lossy_covariances(a0, x).second).epsilon(1e-6));
      CHECK(rotated_lossy_expansion(a0, x).first == Approx(rotated_lossy_covariances(a0, x).first).epsilon(1e-6));
    }
  }
}
