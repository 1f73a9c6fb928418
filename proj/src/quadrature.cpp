#include "dualcs/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dualcs/errors.hpp"

namespace dualcs {

namespace {

struct LaguerrePair {
  double ln;    // L_n(x) * 10^-scale
  double lnm1;  // L_{n-1}(x) * 10^-scale
  double log_scale;
};

LaguerrePair laguerre(std::size_t n, double x) {
  double p0 = 1.0;
  double p1 = 1.0 - x;
  double log_scale = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double dk = static_cast<double>(k);
    const double p2 = ((2.0 * dk + 1.0 - x) * p1 - dk * p0) / (dk + 1.0);
    p0 = p1;
    p1 = p2;
    if (std::abs(p1) > 1e100) {
      p0 *= 1e-100;
      p1 *= 1e-100;
      log_scale += 100.0 * std::numbers::ln10;
    }
  }
  return {p1, p0, log_scale};
}

}  // namespace

const char* to_string(RuleKind kind) {
  return kind == RuleKind::GaussLaguerre ? "gauss-laguerre" : "gauss-legendre";
}

QuadratureRule gauss_laguerre(std::size_t n) {
  if (n == 0) throw DomainError("gauss_laguerre: need at least one node");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  for (std::size_t i = 0; i < n; ++i) diag[i] = 2.0 * static_cast<double>(i) + 1.0;
  for (std::size_t i = 1; i < n; ++i) sub[i - 1] = static_cast<double>(i);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);

  QuadratureRule rule;
  rule.kind = RuleKind::GaussLaguerre;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.log_weights.resize(n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    for (int it = 0; it < 8; ++it) {
      const LaguerrePair p = laguerre(n, x);
      const double dx = x * p.ln / (dn * (p.ln - p.lnm1));
      x -= dx;
      if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon() * x) break;
    }
    const LaguerrePair p = laguerre(n, x);
    // At a root of L_n: w = x / (n L_{n-1}(x))^2.
    const double log_w =
        std::log(x) - 2.0 * std::log(dn) - 2.0 * (std::log(std::abs(p.lnm1)) + p.log_scale);
    rule.nodes[i] = x;
    rule.log_weights[i] = log_w;
    rule.weights[i] = std::exp(log_w);
  }
  return rule;
}

QuadratureRule gauss_legendre_unit(std::size_t n) {
  if (n == 0) throw DomainError("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.kind = RuleKind::GaussLegendre;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.log_weights.resize(n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 1; k < n; ++k) {
        const double dk = static_cast<double>(k);
        const double p2 = ((2.0 * dk + 1.0) * x * p1 - dk * p0) / (dk + 1.0);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = dn * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // descending cos order -> store ascending on (0, 1)
    const std::size_t j = n - 1 - i;
    rule.nodes[j] = 0.5 * (x + 1.0);
    rule.weights[j] = 0.5 * w;
    rule.log_weights[j] = std::log(0.5 * w);
  }
  return rule;
}

IntegrationResult integrate_half_line(const std::function<double(double)>& f, double tol) {
  boost::math::quadrature::exp_sinh<double> integrator;
  IntegrationResult r;
  double l1 = 0.0;
  r.value = integrator.integrate(f, tol, &r.error, &l1);
  return r;
}

IntegrationResult integrate_unit_interval(const std::function<double(double)>& f, double tol) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  IntegrationResult r;
  double l1 = 0.0;
  r.value = integrator.integrate(f, 0.0, 1.0, tol, &r.error, &l1);
  return r;
}

}  // namespace dualcs
