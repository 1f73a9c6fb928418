#include "dualcs/measure.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dualcs/errors.hpp"
#include "dualcs/kernels.hpp"

namespace dualcs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

IntegrationResult integrate_on_support(const RadialWeight& w,
                                       const std::function<double(double)>& f) {
  return w.support == Support::HalfLine ? integrate_half_line(f) : integrate_unit_interval(f);
}

void require_quadrature_accuracy(const IntegrationResult& r, const char* what) {
  constexpr double tol = 1e-9;
  if (!std::isfinite(r.value) || (r.error > tol && r.error > tol * std::abs(r.value))) {
    throw QuadratureError(std::string(what) + ": adaptive quadrature missed 1e-9 (estimate " +
                          std::to_string(r.error) + ")");
  }
}

}  // namespace

const char* to_string(WeightClass c) {
  switch (c) {
    case WeightClass::Exponential:
      return "exponential";
    case WeightClass::BesselK:
      return "bessel-k";
    case WeightClass::Beta:
      return "beta";
  }
  return "?";
}

double RadialWeight::upper() const {
  return support == Support::HalfLine ? std::numeric_limits<double>::infinity() : 1.0;
}

double RadialWeight::log_g(double x) const {
  switch (cls) {
    case WeightClass::Exponential:
      return -x;
    case WeightClass::BesselK:
      return std::numbers::ln2 + 0.5 * (param - 1.0) * std::log(x) +
             log_bessel_k(param - 1.0, 2.0 * std::sqrt(x));
    case WeightClass::Beta:
      return (param - 2.0) * std::log1p(-x) - log_gamma(param - 1.0);
  }
  return kNegInf;
}

double RadialWeight::log_evaluate(double x) const {
  if (!(x > 0.0) || x >= upper()) return kNegInf;
  return std::log(C) + log_g(x);
}

double RadialWeight::evaluate(double x) const { return std::exp(log_evaluate(x)); }

RadialWeight weight_for(const ModelParams& model, Family family) {
  model.validate();
  const HypergeometricSpec s = family_series(model, family);
  RadialWeight w;
  if (s.p() == 0 && s.q() == 0) {
    w.cls = WeightClass::Exponential;
  } else if (s.p() == 0 && s.q() == 1) {
    w.cls = WeightClass::BesselK;
    w.param = s.b[0];
  } else if (s.p() == 1 && s.q() == 0) {
    w.cls = WeightClass::Beta;
    w.param = s.a[0];
    w.support = Support::UnitInterval;
    if (!(w.param > 1.0)) {
      throw ParameterError("beta weight requires a > 1 (got a = " + std::to_string(w.param) +
                           "): the weight is not integrable at x = 1");
    }
  } else {
    throw UnsupportedClassError("no closed-form weight for (p, q) = (" + std::to_string(s.p()) +
                                ", " + std::to_string(s.q()) + ")");
  }
  w.C_closed = gamma_ratio(s.a, s.b);

  const IntegrationResult mass = integrate_on_support(w, [&w](double x) {
    return x > 0.0 && x < w.upper() ? std::exp(w.log_g(x)) : 0.0;
  });
  require_quadrature_accuracy(mass, "weight normalization");
  w.C = 1.0 / mass.value;
  return w;
}

double verify_moments(const RadialWeight& weight, const ModelParams& model, Family family,
                      std::size_t n_max) {
  double worst = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double dn = static_cast<double>(n);
    const double log_target = log_rho_family(model, family, static_cast<unsigned>(n));
    // integrate x^n h̃(x) / rho(n) so every moment is O(1)
    const IntegrationResult r = integrate_on_support(weight, [&](double x) {
      const double lw = weight.log_evaluate(x);
      return lw == kNegInf ? 0.0 : std::exp(dn * std::log(x) + lw - log_target);
    });
    require_quadrature_accuracy(r, "moment integral");
    worst = std::max(worst, std::abs(r.value - 1.0));
  }
  return worst;
}

QuadratureRule default_rule(const RadialWeight& weight, std::size_t nodes) {
  return weight.support == Support::HalfLine ? gauss_laguerre(nodes) : gauss_legendre_unit(nodes);
}

RadialNodes radial_nodes(const RadialWeight& weight, const QuadratureRule& rule) {
  const RuleKind want =
      weight.support == Support::HalfLine ? RuleKind::GaussLaguerre : RuleKind::GaussLegendre;
  if (rule.kind != want) {
    throw MismatchError(std::string(to_string(weight.cls)) + " weight needs a " +
                        to_string(want) + " rule");
  }
  RadialNodes out;
  out.x.resize(rule.size());
  out.log_w.resize(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double t = rule.nodes[k];
    switch (weight.cls) {
      case WeightClass::Exponential:
        out.x[k] = t;
        out.log_w[k] = rule.log_weights[k] + t + weight.log_evaluate(t);
        break;
      case WeightClass::BesselK: {
        // x = t^2 / 4, dx = t/2 dt; K_{b-1}(2 sqrt x) = K_{b-1}(t) ~ e^{-t}
        const double x = 0.25 * t * t;
        out.x[k] = x;
        out.log_w[k] = rule.log_weights[k] + t + weight.log_evaluate(x) + std::log(0.5 * t);
        break;
      }
      case WeightClass::Beta:
        out.x[k] = t;
        out.log_w[k] = rule.log_weights[k] + weight.log_evaluate(t);
        break;
    }
  }
  return out;
}

IdentityResolution resolve_identity(const ModelParams& model, Family family, std::size_t n,
                                    const QuadratureRule& rule) {
  if (n == 0) throw DomainError("resolve_identity: dimension must be positive");
  const RadialWeight weight = weight_for(model, family);
  const RadialNodes nodes = radial_nodes(weight, rule);

  std::vector<double> w(nodes.log_w.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::exp(nodes.log_w[k]);
  std::vector<double> scale(n > 1 ? n - 1 : 0);
  for (std::size_t j = 0; j < scale.size(); ++j) {
    scale[j] = 1.0 / e_family(model, family, static_cast<unsigned>(j + 1));
  }

  IdentityResolution res;
  res.diagonal = kernels::power_moments(w, nodes.x, scale, n);
  for (double d : res.diagonal) res.max_deviation = std::max(res.max_deviation, std::abs(d - 1.0));
  return res;
}

std::vector<IntegralCheck> scalar_integral_checks(double tol) {
  std::vector<IntegralCheck> out;
  const HypergeometricSpec i0{{}, {1.0}};  // 0F1(; 1; y) = I_0(2 sqrt y)

  for (double t : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    const IntegrationResult r = integrate_half_line([&](double x) {
      if (t == 0.0) return std::exp(-x);
      // I_0(y) <= e^y bounds the integrand
      if (-x + 2.0 * std::sqrt(t * x) < -745.0) return 0.0;
      return std::exp(-x + log_pfq(i0, t * x));
    });
    IntegralCheck c;
    c.name = "exp-bessel-i0 t=" + std::to_string(t).substr(0, 3);
    c.computed = r.value;
    c.expected = std::exp(t);
    c.rel_error = std::abs(c.computed - c.expected) / c.expected;
    c.pass = c.rel_error < tol;
    out.push_back(c);
  }

  const double b = 2.0;
  for (int s = 1; s <= 10; ++s) {
    const IntegrationResult r = integrate_half_line([&](double x) {
      if (!(x > 0.0)) return 0.0;
      return std::exp((s - 1.0) * std::log(x) + std::numbers::ln2 +
                      0.5 * (b - 1.0) * std::log(x) +
                      log_bessel_k(b - 1.0, 2.0 * std::sqrt(x)));
    });
    IntegralCheck c;
    c.name = "mellin-g20-02 b=2 s=" + std::to_string(s);
    c.computed = r.value;
    c.expected = std::tgamma(static_cast<double>(s)) * std::tgamma(b - 1.0 + s);
    c.rel_error = std::abs(c.computed - c.expected) / c.expected;
    c.pass = c.rel_error < tol;
    out.push_back(c);
  }
  return out;
}

}  // namespace dualcs
