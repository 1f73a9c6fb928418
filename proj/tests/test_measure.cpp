#include <cmath>
#include <numbers>

#include <doctest.h>

#include "dualcs/errors.hpp"
#include "dualcs/measure.hpp"

using namespace dualcs;

namespace {

const ModelParams kHo{{}, {}};
const ModelParams kSu11{{}, {2.0}};
const ModelParams kGeo{{3.0}, {}};

}  // namespace

TEST_CASE("weight classes") {
  const RadialWeight ho = weight_for(kHo, Family::BG);
  CHECK(ho.cls == WeightClass::Exponential);
  CHECK(ho.support == Support::HalfLine);
  CHECK(std::isinf(ho.upper()));
  CHECK(std::abs(ho.evaluate(1.5) - std::exp(-1.5)) < 1e-15);

  const RadialWeight bes = weight_for(kSu11, Family::BG);
  CHECK(bes.cls == WeightClass::BesselK);
  CHECK(bes.param == 2.0);
  // b = 2: h̃ = 2 x^{1/2} K_1(2 sqrt x)
  for (double x : {0.01, 0.5, 4.0}) {
    const double oracle = 2.0 * std::sqrt(x) * std::cyl_bessel_k(1.0, 2.0 * std::sqrt(x));
    CHECK(std::abs(bes.evaluate(x) / oracle - 1.0) < 1e-10);
  }

  const RadialWeight beta = weight_for(kGeo, Family::BG);
  CHECK(beta.cls == WeightClass::Beta);
  CHECK(beta.upper() == 1.0);
  // a = 3: h̃ = 2 (1 - x)
  CHECK(std::abs(beta.evaluate(0.25) - 1.5) < 1e-14);
  CHECK(beta.evaluate(1.5) == 0.0);
  CHECK(std::isinf(beta.log_evaluate(-0.5)));

  // KP weight of a model is the BG weight of its swap
  const RadialWeight kp = weight_for(kSu11, Family::KP);
  CHECK(kp.cls == WeightClass::Beta);
  CHECK(kp.param == 2.0);
  CHECK(weight_for(kGeo, Family::KP).cls == WeightClass::BesselK);
  CHECK(weight_for(kHo, Family::KP).cls == WeightClass::Exponential);

  CHECK_THROWS_AS(weight_for(ModelParams{{1.0}, {1.0}}, Family::BG), UnsupportedClassError);
  CHECK_THROWS_AS(weight_for(ModelParams{{}, {1.0, 2.0}}, Family::BG), UnsupportedClassError);
  CHECK_THROWS_AS(weight_for(ModelParams{{0.5}, {}}, Family::BG), ParameterError);
  CHECK_THROWS_AS(weight_for(ModelParams{{1.0}, {}}, Family::BG), ParameterError);
}

TEST_CASE("normalization constant matches the gamma ratio") {
  for (const ModelParams& m :
       {kHo, kSu11, kGeo, ModelParams{{}, {0.5}}, ModelParams{{}, {4.5}}, ModelParams{{1.7}, {}}}) {
    const RadialWeight w = weight_for(m, Family::BG);
    CHECK(std::abs(w.C / w.C_closed - 1.0) < 1e-10);
  }
  CHECK(weight_for(kGeo, Family::BG).C_closed == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(weight_for(kSu11, Family::BG).C_closed == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("moment problem by adaptive quadrature") {
  CHECK(verify_moments(weight_for(kHo, Family::BG), kHo, Family::BG, 20) < 1e-10);
  CHECK(verify_moments(weight_for(kSu11, Family::BG), kSu11, Family::BG, 15) < 1e-8);
  CHECK(verify_moments(weight_for(kGeo, Family::BG), kGeo, Family::BG, 20) < 1e-10);
  CHECK(verify_moments(weight_for(kSu11, Family::KP), kSu11, Family::KP, 20) < 1e-10);

  // a = 3 Beta moments: int x^n 2(1 - x) dx = 2 / ((n+1)(n+2)) = rho(n)
  const RadialWeight w = weight_for(kGeo, Family::BG);
  const QuadratureRule r = gauss_legendre_unit(30);
  for (std::size_t n = 0; n <= 12; ++n) {
    double s = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
      s += r.weights[k] * std::pow(r.nodes[k], double(n)) * w.evaluate(r.nodes[k]);
    }
    const double expected = 2.0 / ((n + 1.0) * (n + 2.0));
    CHECK(std::abs(s / expected - 1.0) < 1e-12);
    CHECK(std::abs(rho(kGeo, unsigned(n)) / expected - 1.0) < 1e-12);
  }
}

TEST_CASE("resolution of the identity") {
  CHECK(resolve_identity(kHo, Family::BG, 20, gauss_laguerre(200)).max_deviation < 1e-8);
  CHECK(resolve_identity(kSu11, Family::BG, 15, gauss_laguerre(200)).max_deviation < 1e-6);
  CHECK(resolve_identity(kGeo, Family::BG, 20, gauss_legendre_unit(200)).max_deviation < 1e-8);
  CHECK(resolve_identity(kSu11, Family::KP, 20, gauss_legendre_unit(100)).max_deviation < 1e-8);

  // more nodes never make it worse, down to roundoff
  for (const ModelParams& m : {kHo, kSu11}) {
    double prev = INFINITY;
    for (std::size_t nodes : {25, 50, 100, 200}) {
      const double dev = resolve_identity(m, Family::BG, 12, gauss_laguerre(nodes)).max_deviation;
      CHECK(dev <= std::max(prev, 1e-10));
      prev = dev;
    }
  }
  CHECK_THROWS_AS(resolve_identity(kHo, Family::BG, 5, gauss_legendre_unit(20)), MismatchError);
  CHECK_THROWS_AS(resolve_identity(kHo, Family::BG, 0, gauss_laguerre(20)), DomainError);
}

TEST_CASE("radial nodes carry positive weights") {
  for (const ModelParams& m : {kHo, kSu11, kGeo, ModelParams{{}, {0.5}}}) {
    const RadialWeight w = weight_for(m, Family::BG);
    const RadialNodes n = radial_nodes(w, default_rule(w, 120));
    double mass = 0.0;
    for (std::size_t k = 0; k < n.x.size(); ++k) {
      CHECK(n.x[k] > 0.0);
      CHECK(n.x[k] < w.upper());
      CHECK(w.evaluate(n.x[k]) > 0.0);
      CHECK(std::isfinite(n.log_w[k]));
      mass += std::exp(n.log_w[k]);
    }
    CHECK(std::abs(mass - 1.0) < 1e-8);
  }
}

TEST_CASE("scalar integral checks") {
  const std::vector<IntegralCheck> checks = scalar_integral_checks();
  CHECK(checks.size() == 15);
  for (const IntegralCheck& c : checks) {
    INFO(c.name);
    CHECK(c.pass);
    CHECK(c.rel_error < 1e-8);
  }
  // independent oracles for two entries: t = 1 gives e; s = 3 gives Gamma(3) Gamma(4) = 12
  bool saw_e = false;
  bool saw_12 = false;
  for (const IntegralCheck& c : checks) {
    if (std::abs(c.expected - std::numbers::e) < 1e-15) {
      saw_e = true;
      CHECK(std::abs(c.computed - std::numbers::e) < 1e-8 * std::numbers::e);
    }
    if (c.expected == 12.0) {
      saw_12 = true;
      CHECK(std::abs(c.computed - 12.0) < 1e-7);
    }
  }
  CHECK(saw_e);
  CHECK(saw_12);
}
