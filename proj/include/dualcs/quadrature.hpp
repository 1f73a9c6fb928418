#pragma once

// Fixed Gaussian rules for the radial integrals and thin wrappers over
// Boost's adaptive double-exponential integrators.

#include <cstddef>
#include <functional>
#include <vector>

namespace dualcs {

enum class RuleKind {
  GaussLaguerre,  ///< int_0^inf e^{-x} f(x) dx
  GaussLegendre,  ///< int_0^1 f(x) dx
};

const char* to_string(RuleKind kind);

struct QuadratureRule {
  RuleKind kind = RuleKind::GaussLegendre;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_weights;  ///< kept separately; Laguerre weights underflow

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Laguerre rule: Golub-Welsch start, Newton polish, weights
/// from a rescaled three-term recurrence.
QuadratureRule gauss_laguerre(std::size_t n);

/// n-point Gauss-Legendre rule mapped to (0, 1).
QuadratureRule gauss_legendre_unit(std::size_t n);

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;  ///< integrator's own error estimate
};

/// int_0^inf f(x) dx (exp-sinh).
IntegrationResult integrate_half_line(const std::function<double(double)>& f,
                                      double tol = 1e-12);

/// int_0^1 f(x) dx (tanh-sinh); f may have integrable endpoint singularities.
IntegrationResult integrate_unit_interval(const std::function<double(double)>& f,
                                          double tol = 1e-12);

}  // namespace dualcs
