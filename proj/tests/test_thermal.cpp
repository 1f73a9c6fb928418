#include <cmath>
#include <complex>
#include <numbers>

#include <doctest.h>

#include "dualcs/errors.hpp"
#include "dualcs/fock.hpp"
#include "dualcs/thermal.hpp"

using namespace dualcs;
using cd = std::complex<double>;

namespace {

const ModelParams kHo{{}, {}};
const ModelParams kSu11{{}, {2.0}};
const ModelParams kGeo{{3.0}, {}};

ThermalEnsemble at_beta(double beta) {
  ThermalEnsemble e;
  e.beta = beta;
  return e;
}

}  // namespace

TEST_CASE("thermal values at beta = ln 2") {
  const ThermalEnsemble e = at_beta(std::numbers::ln2);
  CHECK(std::abs(partition_function(e) - 2.0) < 1e-14);
  CHECK(std::abs(e.n_bar() - 1.0) < 1e-14);
  CHECK(std::abs(e.ratio() - 0.5) < 1e-15);
  const std::vector<double> p = thermal_density_diag(e, 60);
  for (std::size_t n = 0; n < 60; ++n) {
    CHECK(std::abs(p[n] - std::ldexp(1.0, -int(n) - 1)) < 1e-16);
  }
  CHECK(std::abs(thermal_mandel(e) - 1.0) < 1e-12);
}

TEST_CASE("mean occupation at beta = 1") {
  CHECK(std::abs(at_beta(1.0).n_bar() - 0.58197670686932642) < 1e-15);
  // closed form check
  CHECK(std::abs(at_beta(1.0).n_bar() - 1.0 / (std::exp(1.0) - 1.0)) < 1e-15);
}

TEST_CASE("low temperature concentrates on the vacuum") {
  const std::vector<double> p = thermal_density_diag(at_beta(50.0), 10);
  CHECK(std::abs(p[0] - 1.0) < 1e-20 + 2e-22);
  CHECK(p[1] < 1e-21);
  CHECK_THROWS_AS(thermal_mandel(at_beta(800.0)), DegenerateError);
}

TEST_CASE("invalid ensembles are rejected") {
  CHECK_THROWS_AS(at_beta(0.0).validate(), DomainError);
  CHECK_THROWS_AS(at_beta(-1.0).validate(), DomainError);
  ThermalEnsemble e;
  e.hbar_omega = 0.0;
  CHECK_THROWS_AS(e.validate(), DomainError);
}

TEST_CASE("thermal moments") {
  for (double beta : {0.5, 1.0, 2.0}) {
    const ThermalEnsemble e = at_beta(beta);
    const double nb = e.n_bar();
    CHECK(std::abs(thermal_moment(e, 0) - 1.0) < 1e-14);
    CHECK(std::abs(thermal_moment(e, 1) - nb) < 1e-13 * nb);
    CHECK(std::abs(thermal_moment(e, 2) - (2.0 * nb * nb + nb)) < 1e-13 * (2 * nb * nb + nb));
    CHECK(std::abs(thermal_mandel(e) - nb) < 1e-12);
    // explicit truncation far past the automatic one
    CHECK(std::abs(thermal_mandel(e, 4000) - nb) < 1e-12);
  }
  CHECK_THROWS_AS(thermal_moment(at_beta(0.01), 2, 10), NonConvergenceError);
}

TEST_CASE("the zero-point offset cancels") {
  for (double e0 : {0.0, 0.5, 3.0}) {
    ThermalEnsemble e = at_beta(1.3);
    e.e0 = e0;
    CHECK(std::abs(thermal_mandel(e) - e.n_bar()) < 1e-12);
    CHECK(std::abs(partition_function(e) * std::exp(1.3 * e0) - partition_function(at_beta(1.3))) <
          1e-13);
  }
}

TEST_CASE("general spectrum matches the linear closed forms") {
  ThermalEnsemble e = at_beta(0.8);
  e.e0 = 0.5;
  const GeneralSpectrum g = linear_spectrum(e, 400);
  CHECK(std::abs(partition_function(g) / partition_function(e) - 1.0) < 1e-13);
  CHECK(std::abs(thermal_moment(g, 1) - e.n_bar()) < 1e-12);
  CHECK(std::abs(thermal_mandel(g) - e.n_bar()) < 1e-12);
  const std::vector<double> a = thermal_density_diag(g);
  const std::vector<double> b = thermal_density_diag(e, 400);
  for (std::size_t n = 0; n < 50; ++n) CHECK(std::abs(a[n] - b[n]) < 1e-15);
}

TEST_CASE("Q_th does not depend on the ladder representation") {
  // N = Ã+A- in every model, so tr(rho N) and tr(rho N^2) built from the
  // ladder matrices reproduce the Fock-basis values
  const ThermalEnsemble e = at_beta(1.0);
  const std::size_t n = 80;
  const std::vector<double> p = thermal_density_diag(e, n);
  for (const ModelParams& m : {kHo, kSu11, kGeo, ModelParams{{1.5}, {2.5}}}) {
    const LadderSet l = ladder_set(m, n);
    const Eigen::MatrixXd num = l.raise_tilde.dense() * l.lower.dense();
    const Eigen::MatrixXd num2 = num * num;
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      m1 += p[k] * num(k, k);
      m2 += p[k] * num2(k, k);
    }
    CHECK(std::abs((m2 - m1 * m1) / m1 - 1.0 - thermal_mandel(e)) < 1e-10);
  }
}

TEST_CASE("Husimi Q of the HO") {
  for (double beta : {0.5, 1.0, std::numbers::ln2}) {
    const ThermalEnsemble e = at_beta(beta);
    const double nb = e.n_bar();
    for (cd z : {cd(0.0), cd(0.5, 0.5), cd(2.0, -1.0)}) {
      const HusimiRoutes h = husimi_q(kHo, Family::BG, z, e);
      const double exact = std::exp(-std::norm(z) / (nb + 1.0)) / (nb + 1.0);
      CHECK(std::abs(h.kernel - exact) < 1e-14);
      CHECK(std::abs(h.direct - exact) < 1e-14);
    }
  }
}

TEST_CASE("Husimi routes agree for other models") {
  const ThermalEnsemble e = at_beta(1.0);
  for (const ModelParams& m : {kSu11, kGeo, ModelParams{{}, {0.5}}}) {
    for (Family f : {Family::BG, Family::KP}) {
      const bool unit = radius(m, f).radius == Radius::Unit;
      for (double r : {0.1, 0.5, unit ? 0.9 : 2.5}) {
        const HusimiRoutes h = husimi_q(m, f, std::polar(r, 0.4), e);
        CHECK(std::abs(h.direct - h.kernel) < 1e-13 * std::max(1.0, h.kernel));
      }
    }
  }
}

TEST_CASE("Husimi Q integrates to one over the HO measure") {
  // int d^2z/pi Q = int_0^inf Q(x) dx in x = |z|^2
  const ThermalEnsemble e = at_beta(0.7);
  double total = 0.0;
  const double dx = 0.01;
  // trapezoid on a smooth, exponentially decaying integrand
  for (int k = 0; k <= 6000; ++k) {
    const double x = k * dx;
    const double w = (k == 0 || k == 6000) ? 0.5 : 1.0;
    total += w * husimi_q(kHo, Family::BG, std::sqrt(x), e).kernel * dx;
  }
  CHECK(std::abs(total - 1.0) < 1e-5);
}

TEST_CASE("P function") {
  const ThermalEnsemble e = at_beta(std::numbers::ln2);
  const RadialWeight ho = weight_for(kHo, Family::BG);
  for (double x : {0.0, 0.3, 2.0, 7.5}) {
    // HO: P = e^{-x/n̄} / n̄ against the e^{-x} weight
    CHECK(std::abs(p_function(ho, x, 1.0) - std::exp(-x)) < 1e-15);
    const double nb = 0.4;
    CHECK(std::abs(p_function(ho, x, nb) - std::exp(-x / nb) / nb) < 1e-14 * std::exp(-x / nb) / nb + 1e-300);
  }
  CHECK(p_function(kHo, Family::BG, 0.0, e.n_bar()) == doctest::Approx(1.0).epsilon(1e-15));

  // Bessel class, x = 0 limit
  const RadialWeight bes = weight_for(kSu11, Family::BG);
  const double p0 = p_function(bes, 0.0, 1.0);
  CHECK(std::abs(p0 - p_function(bes, 1e-9, 1.0)) < 1e-6);
  const RadialWeight bes_half = weight_for(ModelParams{{}, {0.5}}, Family::BG);
  // h̃ ~ x^{b-1} near 0: ratio tends to c^{b-1} / n̄
  CHECK(std::abs(p_function(bes_half, 0.0, 1.0) - std::pow(2.0, -0.5)) < 1e-15);
  CHECK(std::abs(p_function(bes_half, 1e-12, 1.0) - std::pow(2.0, -0.5)) < 1e-5);

  // Beta class: c x must stay inside (0, 1)
  const RadialWeight beta = weight_for(kGeo, Family::BG);
  CHECK_NOTHROW(p_function(beta, 0.4, 1.0));
  CHECK_THROWS_AS(p_function(beta, 0.6, 1.0), SupportError);
  CHECK_THROWS_AS(p_function(beta, 1.2, 1.0), SupportError);
  CHECK_THROWS_AS(p_function(ho, 1.0, 0.0), DomainError);
}

TEST_CASE("P moment problem") {
  const ThermalEnsemble e = at_beta(1.0);
  const GeneralSpectrum spec = linear_spectrum(e, 30);
  for (std::size_t n = 0; n <= 10; ++n) {
    // HO: e^{-beta n} n!
    CHECK(std::abs(general_p_moment_problem(kHo, Family::BG, spec, n) /
                       (std::exp(-double(n)) * std::tgamma(n + 1.0)) -
                   1.0) < 1e-13);
    for (const ModelParams& m : {kHo, kSu11}) {
      for (Family f : {Family::BG, Family::KP}) {
        if (m == kSu11 && f == Family::KP) continue;  // geometric-type weight: support too short
        const double target = general_p_moment_problem(m, f, spec, n);
        CHECK(std::abs(p_moment(m, f, e, n, 200) / target - 1.0) < 1e-8);
      }
    }
  }
  CHECK_THROWS_AS(general_p_moment_problem(kHo, Family::BG, spec, 30), IndexError);
  CHECK_THROWS_AS(p_moment(kGeo, Family::BG, e, 1, 100), SupportError);
}

TEST_CASE("P reconstruction of the thermal density") {
  const ThermalEnsemble e = at_beta(1.0);
  const std::size_t n = 10;
  const std::vector<double> p = thermal_density_diag(e, 200);
  for (const ModelParams& m : {kHo, kSu11}) {
    const Eigen::MatrixXcd rho = p_reconstruction(m, Family::BG, e, n, 200);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(rho(i, i).real() - p[i]) < 1e-8);
      CHECK(std::abs(rho(i, i).imag()) < 1e-15);
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) CHECK(std::abs(rho(i, j)) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(p_reconstruction(kHo, Family::BG, e, 0, 50), DomainError);
}
