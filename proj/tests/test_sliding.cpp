#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "afsmc/sliding.hpp"

using namespace afsmc;

namespace {

// Pascal's triangle, independent of the implementation's ratio recursion.
std::vector<std::int64_t> pascal_row(int n) {
  std::vector<std::vector<std::int64_t>> tri{{1}};
  for (int r = 1; r < n; ++r) {
    std::vector<std::int64_t> row(static_cast<std::size_t>(r) + 1, 1);
    for (int k = 1; k < r; ++k)
      row[static_cast<std::size_t>(k)] =
          tri.back()[static_cast<std::size_t>(k - 1)] +
          tri.back()[static_cast<std::size_t>(k)];
    tri.push_back(row);
  }
  return tri.back();
}

// Coefficients of (p + lambda)^(n-1) by repeated polynomial multiplication.
std::vector<double> hurwitz_expansion(int n, double lambda) {
  std::vector<double> poly{1.0};  // constant 1, ascending powers of p
  for (int k = 1; k < n; ++k) {
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += lambda * poly[i];  // lambda * p^i
      next[i + 1] += poly[i];       // p * p^i
    }
    poly = next;
  }
  return poly;
}

}  // namespace

TEST_CASE("binomial rows") {
  CHECK(binomial_coeffs(1) == std::vector<std::int64_t>{1});
  CHECK(binomial_coeffs(3) == std::vector<std::int64_t>{1, 2, 1});
  CHECK(binomial_coeffs(5) == std::vector<std::int64_t>{1, 4, 6, 4, 1});
  for (int n = 1; n <= 10; ++n) CHECK(binomial_coeffs(n) == pascal_row(n));
  CHECK_THROWS_AS(binomial_coeffs(0), std::invalid_argument);
  CHECK_THROWS_AS(binomial_coeffs(-2), std::invalid_argument);
}

TEST_CASE("surface coefficients expand (d/dt + lambda)^(n-1)") {
  const SurfaceSpec spec(3, 8.0);
  CHECK(spec.coeffs() == std::vector<double>{64.0, 16.0, 1.0});
  CHECK(spec.sdot_coeffs() == std::vector<double>{0.0, 64.0, 16.0});
  CHECK(spec.coeffs().back() == 1.0);

  for (int n = 1; n <= 6; ++n) {
    for (const double lambda : {0.5, 2.0, 8.0}) {
      const SurfaceSpec s(n, lambda);
      const auto expected = hurwitz_expansion(n, lambda);
      REQUIRE(s.coeffs().size() == expected.size());
      for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(s.coeffs()[i] == doctest::Approx(expected[i]).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(SurfaceSpec(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SurfaceSpec(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SurfaceSpec(3, -1.0), std::invalid_argument);
}

TEST_CASE("sliding variable") {
  const SurfaceSpec spec(3, 8.0);
  const std::vector<double> zero{0.0, 0.0, 0.0};
  CHECK(sliding_variable(spec, zero) == 0.0);
  const std::vector<double> pos_err{0.01, 0.0, 0.0};
  CHECK(sliding_variable(spec, pos_err) == doctest::Approx(0.64).epsilon(1e-14));

  const SurfaceSpec first_order(1, 3.0);
  const std::vector<double> e1{0.37};
  CHECK(sliding_variable(first_order, e1) == 0.37);

  const std::vector<double> wrong_dim{1.0, 2.0};
  CHECK_THROWS_AS(sliding_variable(spec, wrong_dim), std::invalid_argument);
}

TEST_CASE("sliding variable is linear in the error") {
  const SurfaceSpec spec(4, 2.5);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(4), b(4), combo(4);
    const double alpha = dist(rng);
    const double beta = dist(rng);
    for (int i = 0; i < 4; ++i) {
      a[static_cast<std::size_t>(i)] = dist(rng);
      b[static_cast<std::size_t>(i)] = dist(rng);
      combo[static_cast<std::size_t>(i)] =
          alpha * a[static_cast<std::size_t>(i)] +
          beta * b[static_cast<std::size_t>(i)];
    }
    const double lhs = sliding_variable(spec, combo);
    const double rhs =
        alpha * sliding_variable(spec, a) + beta * sliding_variable(spec, b);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("sdot feedback matches the n=3 hand expansion") {
  const SurfaceSpec spec(3, 8.0);
  const std::vector<double> zero{0.0, 0.0, 0.0};
  CHECK(sdot_feedback(spec, zero) == 0.0);
  const std::vector<double> vel_err{0.0, 0.1, 0.0};
  CHECK(sdot_feedback(spec, vel_err) == doctest::Approx(6.4).epsilon(1e-14));
  const std::vector<double> acc_err{0.0, 0.0, 0.1};
  CHECK(sdot_feedback(spec, acc_err) == doctest::Approx(1.6).epsilon(1e-14));
}

TEST_CASE("switching functions") {
  const SwitchingFn sat{SwitchKind::saturation, 1.0};
  CHECK(switch_value(sat, 0.5) == 0.5);
  CHECK(switch_value(sat, -3.0) == -1.0);
  CHECK(switch_value(sat, 3.0) == 1.0);
  CHECK(switch_value(sat, 1.0) == 1.0);  // exact at the layer edge

  const SwitchingFn sgn{SwitchKind::sign, 1.0};
  CHECK(switch_value(sgn, 0.0) == 0.0);
  CHECK(switch_value(sgn, 1e-300) == 1.0);
  CHECK(switch_value(sgn, -1e-300) == -1.0);

  const SwitchingFn th{SwitchKind::hyperbolic_tangent, 0.5};
  CHECK(std::abs(switch_value(th, 4 * 0.5) - 1.0) < 1e-3);
  CHECK(std::abs(switch_value(th, -4 * 0.5) + 1.0) < 1e-3);

  CHECK_THROWS_AS(SwitchingFn(SwitchKind::saturation, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(SwitchingFn(SwitchKind::hyperbolic_tangent, -1.0),
                  std::invalid_argument);
}

TEST_CASE("all switching kinds are odd") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (const auto kind : {SwitchKind::sign, SwitchKind::saturation,
                          SwitchKind::hyperbolic_tangent}) {
    const SwitchingFn fn{kind, 0.7};
    for (int i = 0; i < 500; ++i) {
      const double s = dist(rng);
      CHECK(switch_value(fn, -s) == doctest::Approx(-switch_value(fn, s)));
      CHECK(std::abs(switch_value(fn, s)) <= 1.0);
    }
  }
}

TEST_CASE("zeta recursion and residual-set bounds") {
  CHECK(zeta_sequence(3) == std::vector<double>{1.0, 2.0, 6.0});
  CHECK(zeta_sequence(1) == std::vector<double>{1.0});

  const SurfaceSpec first_order(1, 5.0);
  const auto b1 = convergence_region(first_order, 0.3);
  REQUIRE(b1.size() == 1);
  CHECK(b1[0] == doctest::Approx(0.3));

  const SurfaceSpec spec(3, 8.0);
  const auto b3 = convergence_region(spec, 1.0);
  REQUIRE(b3.size() == 3);
  CHECK(b3[0] == doctest::Approx(1.0 / 64.0).epsilon(1e-13));
  CHECK(b3[1] == doctest::Approx(2.0 / 8.0).epsilon(1e-13));
  CHECK(b3[2] == doctest::Approx(6.0).epsilon(1e-13));
}

TEST_CASE("residual-set bounds scale linearly in phi") {
  const SurfaceSpec spec(5, 3.0);
  const auto base = convergence_region(spec, 1.0);
  for (const double phi : {0.25, 0.5, 2.0, 7.5}) {
    const auto scaled = convergence_region(spec, phi);
    for (std::size_t i = 0; i < base.size(); ++i)
      CHECK(scaled[i] == doctest::Approx(base[i] * phi).epsilon(1e-12));
  }
}
