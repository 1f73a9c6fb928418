#include <cmath>
#include <numbers>

#include <doctest.h>

#include "dualcs/errors.hpp"
#include "dualcs/quadrature.hpp"

using namespace dualcs;

TEST_CASE("gauss-laguerre integrates e^{-x} x^k exactly") {
  for (std::size_t n : {1, 2, 5, 20, 64}) {
    const QuadratureRule r = gauss_laguerre(n);
    CHECK(r.kind == RuleKind::GaussLaguerre);
    REQUIRE(r.size() == n);
    for (std::size_t k = 0; k < std::min<std::size_t>(2 * n, 30); ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], double(k));
      CHECK(std::abs(s / std::tgamma(k + 1.0) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("gauss-laguerre with many nodes keeps log weights") {
  const QuadratureRule r = gauss_laguerre(400);
  double mass = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(r.nodes[i] > 0.0);
    if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    CHECK(std::isfinite(r.log_weights[i]));
    mass += std::exp(r.log_weights[i]);
  }
  CHECK(std::abs(mass - 1.0) < 1e-11);
  CHECK(r.log_weights.back() < -700.0);  // the plain weight underflows there
}

TEST_CASE("gauss-legendre on the unit interval") {
  for (std::size_t n : {1, 3, 10, 200}) {
    const QuadratureRule r = gauss_legendre_unit(n);
    CHECK(r.kind == RuleKind::GaussLegendre);
    for (std::size_t k = 0; k < std::min<std::size_t>(2 * n, 40); ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], double(k));
      CHECK(std::abs(s * (k + 1.0) - 1.0) < 1e-12);
    }
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(r.nodes[i] > 0.0);
      CHECK(r.nodes[i] < 1.0);
    }
  }
  CHECK_THROWS_AS(gauss_legendre_unit(0), DomainError);
  CHECK_THROWS_AS(gauss_laguerre(0), DomainError);
}

TEST_CASE("adaptive integrators") {
  const IntegrationResult a = integrate_half_line([](double x) { return std::exp(-x) * x * x; });
  CHECK(std::abs(a.value - 2.0) < 1e-12);
  const IntegrationResult b = integrate_unit_interval([](double x) { return 1.0 / std::sqrt(x); });
  CHECK(std::abs(b.value - 2.0) < 1e-10);
  const IntegrationResult c =
      integrate_half_line([](double x) { return 1.0 / (1.0 + x * x); });
  CHECK(std::abs(c.value - std::numbers::pi / 2.0) < 1e-10);
}
