#pragma once

// Resolution of the identity for the model classes whose Meijer-G weight
// reduces to elementary or Bessel functions. With x = |z|^2 the radial
// weight h̃ solves the moment problem
//
//   int x^n h̃(x) dx = rho_fam(n),
//
// and h̃ = C G(x):
//   (0,0)           G = e^{-x}                              on (0, inf)
//   (0,1), b        G = 2 x^{(b-1)/2} K_{b-1}(2 sqrt x)      on (0, inf)
//   (1,0), a > 1    G = (1-x)^{a-2} / Gamma(a-1)            on (0, 1)
// with C = prod Gamma(a_i) / prod Gamma(b_j).

#include <cstddef>
#include <string>
#include <vector>

#include "dualcs/quadrature.hpp"
#include "dualcs/states.hpp"

namespace dualcs {

enum class WeightClass { Exponential, BesselK, Beta };

const char* to_string(WeightClass c);

enum class Support { HalfLine, UnitInterval };

struct RadialWeight {
  WeightClass cls = WeightClass::Exponential;
  double param = 0.0;  ///< b for BesselK, a for Beta, unused otherwise
  Support support = Support::HalfLine;
  double C = 1.0;         ///< fixed by int h̃ = 1
  double C_closed = 1.0;  ///< Gamma-ratio form

  double upper() const;  ///< support end: +inf or 1

  /// log G(x), without the constant.
  double log_g(double x) const;
  /// log h̃(x); -inf outside the support.
  double log_evaluate(double x) const;
  double evaluate(double x) const;
};

/// Weight of the family's moment problem. The KP weight of a model is the
/// BG weight of the swapped model. Throws UnsupportedClassError outside the
/// three classes and ParameterError for a Beta weight with a <= 1.
RadialWeight weight_for(const ModelParams& model, Family family);

/// max_n |int x^n h̃ - rho_fam(n)| / rho_fam(n) over n = 0 .. n_max, by
/// adaptive quadrature. Throws QuadratureError if an integral misses 1e-9.
double verify_moments(const RadialWeight& weight, const ModelParams& model, Family family,
                      std::size_t n_max);

/// Radial nodes x_k and log weights such that
/// int g(x) h̃(x) dx ~ sum_k exp(log_w_k) g(x_k).
struct RadialNodes {
  std::vector<double> x;
  std::vector<double> log_w;
};

/// Laguerre rules are applied in x for the exponential class and in
/// t = 2 sqrt(x) for the Bessel class; Legendre rules on (0, 1) for Beta.
RadialNodes radial_nodes(const RadialWeight& weight, const QuadratureRule& rule);

/// Rule of the kind the weight class expects.
QuadratureRule default_rule(const RadialWeight& weight, std::size_t nodes);

struct IdentityResolution {
  double max_deviation = 0.0;   ///< ||M - I||_max
  std::vector<double> diagonal; ///< M_nn; off-diagonals vanish after the angular integral
};

/// M = int dmu(z) |z><z| on span{|0> .. |N-1>} with unnormalized radial
/// vectors x^{n/2} / sqrt(rho_fam(n)).
IdentityResolution resolve_identity(const ModelParams& model, Family family, std::size_t n,
                                    const QuadratureRule& rule);

struct IntegralCheck {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double rel_error = 0.0;
  bool pass = false;
};

/// int_0^inf e^{-x} I_0(2 sqrt(t x)) dx = e^t for t in {0, 0.5, 1, 2, 5}, and
/// int_0^inf x^{s-1} G^{2,0}_{0,2}(x | 0, b-1) dx = Gamma(s) Gamma(b-1+s) for
/// b = 2, s = 1 .. 10.
std::vector<IntegralCheck> scalar_integral_checks(double tol = 1e-8);

}  // namespace dualcs
