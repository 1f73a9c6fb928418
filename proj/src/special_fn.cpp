#include "dualcs/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "dualcs/errors.hpp"

namespace dualcs {

namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleFactor = 1e-250;
const double kLogRescale = 250.0 * std::numbers::ln10;

// t_{n+1} / (x t_n)
double term_ratio(const HypergeometricSpec& spec, std::size_t n) {
  const double dn = static_cast<double>(n);
  double num = 1.0;
  double den = dn + 1.0;
  for (double ai : spec.a) num *= ai + dn;
  for (double bj : spec.b) den *= bj + dn;
  return num / den;
}

double eta(const HypergeometricSpec& spec) {
  double s = 0.0;
  for (double ai : spec.a) s += ai;
  for (double bj : spec.b) s -= bj;
  return s;
}

template <class T>
struct ScaledSum {
  T sum;
  double log_scale;
  std::size_t terms;
};

template <class T>
ScaledSum<T> sum_series(const HypergeometricSpec& spec, T x, const SeriesOptions& opts) {
  if (!(opts.rel_tol > 0.0)) throw DomainError("pfq: rel_tol must be positive");
  T term = T(1);
  T sum = T(1);
  double log_scale = 0.0;
  if (x == T(0)) return {sum, 0.0, 1};
  int small_run = 0;
  for (std::size_t n = 0;; ++n) {
    if (n + 2 > opts.max_terms) {
      throw NonConvergenceError("pfq: term cap of " + std::to_string(opts.max_terms) +
                                " reached before convergence");
    }
    term *= x * term_ratio(spec, n);
    sum += term;
    if (std::abs(sum) > kRescaleAbove) {
      sum *= kRescaleFactor;
      term *= kRescaleFactor;
      log_scale += kLogRescale;
    }
    if (std::abs(term) < opts.rel_tol * std::abs(sum)) {
      if (++small_run == 3) return {sum, log_scale, n + 2};
    } else {
      small_run = 0;
    }
  }
}

// log cosh(u), u >= 0, without overflow
double log_cosh(double u) {
  return u + std::log1p(std::exp(-2.0 * u)) - std::numbers::ln2;
}

}  // namespace

void HypergeometricSpec::validate() const {
  for (double ai : a) {
    if (!(ai > 0.0)) throw DomainError("upper parameters must be positive");
  }
  for (double bj : b) {
    if (!(bj > 0.0)) throw DomainError("lower parameters must be positive");
  }
}

double ConvergenceDomain::value() const {
  switch (radius) {
    case Radius::Infinite:
      return std::numeric_limits<double>::infinity();
    case Radius::Unit:
      return 1.0;
    case Radius::Zero:
      return 0.0;
  }
  return 0.0;
}

const char* to_string(Radius r) {
  switch (r) {
    case Radius::Infinite:
      return "infinite";
    case Radius::Unit:
      return "unit";
    case Radius::Zero:
      return "zero";
  }
  return "?";
}

const char* to_string(MomentProblem m) {
  switch (m) {
    case MomentProblem::Stieltjes:
      return "stieltjes";
    case MomentProblem::Hausdorff:
      return "hausdorff";
    case MomentProblem::None:
      return "none";
  }
  return "?";
}

double pochhammer(double a, unsigned n) {
  double r = 1.0;
  for (unsigned k = 0; k < n; ++k) r *= a + static_cast<double>(k);
  return r;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  return boost::math::lgamma(x);
}

double gamma_ratio(std::span<const double> b, std::span<const double> a) {
  double acc = 0.0;
  for (double bj : b) {
    if (!(bj > 0.0)) throw DomainError("gamma_ratio: arguments must be positive");
    acc += log_gamma(bj);
  }
  for (double ai : a) {
    if (!(ai > 0.0)) throw DomainError("gamma_ratio: arguments must be positive");
    acc -= log_gamma(ai);
  }
  return std::exp(acc);
}

ConvergenceDomain classify_convergence(const HypergeometricSpec& spec) {
  const std::size_t p = spec.p();
  const std::size_t q = spec.q();
  ConvergenceDomain d;
  if (p < q + 1) {
    d.radius = Radius::Infinite;
    d.moment_problem = MomentProblem::Stieltjes;
  } else if (p == q + 1) {
    d.radius = Radius::Unit;
    d.moment_problem = MomentProblem::Hausdorff;
    std::ostringstream note;
    note << "|x| = 1 accepted only for eta < 1 (eta = " << eta(spec) << ")";
    d.boundary_note = note.str();
  } else {
    d.radius = Radius::Zero;
    d.moment_problem = MomentProblem::None;
    d.boundary_note = "converges only at x = 0";
  }
  return d;
}

void require_convergent(const HypergeometricSpec& spec, double abs_x) {
  const ConvergenceDomain d = classify_convergence(spec);
  switch (d.radius) {
    case Radius::Infinite:
      return;
    case Radius::Unit:
      if (abs_x < 1.0) return;
      if (abs_x == 1.0 && eta(spec) < 1.0) return;
      throw DivergenceError("series diverges: |x| = " + std::to_string(abs_x) +
                            " outside the unit radius");
    case Radius::Zero:
      if (abs_x == 0.0) return;
      throw DivergenceError("series has zero radius of convergence");
  }
}

double pfq(const HypergeometricSpec& spec, double x, const SeriesOptions& opts) {
  spec.validate();
  require_convergent(spec, std::abs(x));
  const auto s = sum_series<double>(spec, x, opts);
  return s.sum * std::exp(s.log_scale);
}

std::complex<double> pfq(const HypergeometricSpec& spec, std::complex<double> x,
                         const SeriesOptions& opts) {
  spec.validate();
  require_convergent(spec, std::abs(x));
  const auto s = sum_series<std::complex<double>>(spec, x, opts);
  return s.sum * std::exp(s.log_scale);
}

double log_pfq(const HypergeometricSpec& spec, double x, const SeriesOptions& opts) {
  if (x < 0.0) throw DomainError("log_pfq: argument must be nonnegative");
  spec.validate();
  require_convergent(spec, x);
  const auto s = sum_series<double>(spec, x, opts);
  return std::log(s.sum) + s.log_scale;
}

WeightedSeries pfq_weighted(const HypergeometricSpec& spec, double x,
                            std::span<const TermWeight> weights, const SeriesOptions& opts) {
  if (x < 0.0) throw DomainError("pfq_weighted: argument must be nonnegative");
  spec.validate();
  require_convergent(spec, x);

  const std::size_t k = weights.size();
  std::vector<double> wsum(k);
  for (std::size_t i = 0; i < k; ++i) wsum[i] = weights[i](0);

  WeightedSeries out;
  if (x == 0.0) {
    out.means = wsum;
    out.terms = 1;
    return out;
  }

  double term = 1.0;
  double sum = 1.0;
  double log_scale = 0.0;
  int small_run = 0;
  std::size_t n = 0;
  for (;; ++n) {
    if (n + 2 > opts.max_terms) {
      throw NonConvergenceError("pfq_weighted: term cap reached before convergence");
    }
    term *= x * term_ratio(spec, n);
    sum += term;
    bool small = term < opts.rel_tol * sum;
    for (std::size_t i = 0; i < k; ++i) {
      const double wt = weights[i](n + 1) * term;
      wsum[i] += wt;
      if (!(std::abs(wt) <= opts.rel_tol * std::abs(wsum[i]))) small = false;
    }
    if (sum > kRescaleAbove) {
      sum *= kRescaleFactor;
      term *= kRescaleFactor;
      for (double& w : wsum) w *= kRescaleFactor;
      log_scale += kLogRescale;
    }
    if (small) {
      if (++small_run == 3) break;
    } else {
      small_run = 0;
    }
  }
  out.log_sum = std::log(sum) + log_scale;
  out.means.resize(k);
  for (std::size_t i = 0; i < k; ++i) out.means[i] = wsum[i] / sum;
  out.terms = n + 2;
  return out;
}

std::vector<double> series_terms(const HypergeometricSpec& spec, double x, std::size_t n_max) {
  std::vector<double> t(n_max + 1);
  t[0] = 1.0;
  for (std::size_t n = 0; n < n_max; ++n) t[n + 1] = t[n] * x * term_ratio(spec, n);
  return t;
}

double log_bessel_k(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k: argument must be positive");
  nu = std::abs(nu);

  // K_nu(x) = e^{-x} int_0^inf exp(h(t)) dt with
  // h(t) = -2x sinh^2(t/2) + log cosh(nu t), i.e. x (cosh t - 1) written so
  // that it keeps full precision for small t. h is unimodal on [0, inf);
  // locate its peak, then integrate exp(h - h_peak) until it has fallen
  // below e^-60.
  auto h = [&](double t) {
    const double s = std::sinh(0.5 * t);
    return -2.0 * x * s * s + log_cosh(nu * t);
  };

  double t_peak = 0.0;
  if (nu > 0.0) {
    double lo = 0.0;
    double hi = std::asinh(nu / x) + 1.0;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double hc = h(c);
    double hd = h(d);
    for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + hi); ++it) {
      if (hc > hd) {
        hi = d;
        d = c;
        hd = hc;
        c = hi - inv_phi * (hi - lo);
        hc = h(c);
      } else {
        lo = c;
        c = d;
        hc = hd;
        d = lo + inv_phi * (hi - lo);
        hd = h(d);
      }
    }
    t_peak = 0.5 * (lo + hi);
    if (h(0.0) > h(t_peak)) t_peak = 0.0;
  }
  const double h_peak = h(t_peak);

  double step = std::min(0.5, 0.5 / std::sqrt(x));
  double t_end = t_peak + step;
  while (h(t_end) > h_peak - 60.0) {
    step *= 1.5;
    t_end += step;
  }

  auto f = [&](double t) { return std::exp(h(t) - h_peak); };
  double err = 0.0;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, 0.0, t_end, 15, 1e-12, &err);
  if (!(integral > 0.0)) throw QuadratureError("bessel_k: integral underflow");
  return -x + h_peak + std::log(integral);
}

double bessel_k(double nu, double x) { return std::exp(log_bessel_k(nu, x)); }

}  // namespace dualcs
