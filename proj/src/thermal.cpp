#include "dualcs/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dualcs/errors.hpp"
#include "dualcs/kernels.hpp"

namespace dualcs {

namespace {

constexpr double kTailRel = 1e-12;

// p_n = (1 - r) r^n without renormalization
std::vector<double> geometric_p(const ThermalEnsemble& ens, std::size_t n) {
  const double r = ens.ratio();
  const double lead = -std::expm1(-ens.beta * ens.hbar_omega);
  std::vector<double> p(n);
  double rn = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    p[k] = lead * rn;
    rn *= r;
  }
  return p;
}

double log_partition(const ThermalEnsemble& ens) {
  const double x = ens.beta * ens.hbar_omega;
  return -x * ens.e0 - std::log(-std::expm1(-x));
}

// Boltzmann factors e^{-beta (E_n - E_min)} and their sum.
std::vector<double> shifted_boltzmann(const GeneralSpectrum& spec, double& sum) {
  if (spec.energies.empty()) throw DomainError("spectrum must not be empty");
  if (!(spec.beta > 0.0)) throw DomainError("beta must be positive");
  const double e_min = *std::min_element(spec.energies.begin(), spec.energies.end());
  std::vector<double> w(spec.energies.size());
  sum = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) {
    w[n] = std::exp(-spec.beta * (spec.energies[n] - e_min));
    sum += w[n];
  }
  return w;
}

std::vector<double> level_powers(std::size_t n, unsigned s) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = std::pow(static_cast<double>(k), s);
  return v;
}

double mandel_from_moments(double m1, double m2) {
  if (!(m1 >= std::numeric_limits<double>::epsilon())) {
    throw DegenerateError("thermal Mandel parameter undefined: <N> = " + std::to_string(m1) +
                          " (zero-temperature limit)");
  }
  return (m2 - m1 * m1) / m1 - 1.0;
}

}  // namespace

void ThermalEnsemble::validate() const {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (!(hbar_omega > 0.0)) throw DomainError("hbar_omega must be positive");
}

double ThermalEnsemble::n_bar() const {
  validate();
  return 1.0 / std::expm1(beta * hbar_omega);
}

double ThermalEnsemble::ratio() const {
  validate();
  return std::exp(-beta * hbar_omega);
}

GeneralSpectrum linear_spectrum(const ThermalEnsemble& ens, std::size_t n) {
  ens.validate();
  GeneralSpectrum s;
  s.beta = ens.beta;
  s.energies.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.energies[k] = ens.hbar_omega * (static_cast<double>(k) + ens.e0);
  }
  return s;
}

double partition_function(const ThermalEnsemble& ens) {
  ens.validate();
  return std::exp(log_partition(ens));
}

double partition_function(const GeneralSpectrum& spec) {
  double sum = 0.0;
  shifted_boltzmann(spec, sum);
  const double e_min = *std::min_element(spec.energies.begin(), spec.energies.end());
  return sum * std::exp(-spec.beta * e_min);
}

std::vector<double> thermal_density_diag(const ThermalEnsemble& ens, std::size_t n) {
  std::vector<double> p = geometric_p(ens, n);
  double mass = 0.0;
  for (double v : p) mass += v;
  if (std::abs(mass - 1.0) > 1e-14) {
    for (double& v : p) v /= mass;
  }
  return p;
}

std::vector<double> thermal_density_diag(const GeneralSpectrum& spec) {
  double sum = 0.0;
  std::vector<double> w = shifted_boltzmann(spec, sum);
  for (double& v : w) v /= sum;
  return w;
}

std::size_t thermal_truncation(const ThermalEnsemble& ens, unsigned s, double tail_rel,
                               std::size_t max_n) {
  const double r = ens.ratio();
  double sum = 0.0;
  double rn = 1.0;
  for (std::size_t n = 0; n < max_n; ++n) {
    const double dn = static_cast<double>(n);
    const double t = std::pow(dn, s) * rn;
    if (n > 0) {
      // t_{k+1}/t_k <= ((n+1)/n)^s r for k >= n
      const double q = std::pow((dn + 1.0) / dn, s) * r;
      if (q < 1.0 && t / (1.0 - q) <= tail_rel * sum) return n;
    }
    sum += t;
    rn *= r;
    if (rn == 0.0 && n > 0) return n + 1;
  }
  throw NonConvergenceError("thermal sum did not converge within " + std::to_string(max_n) +
                            " levels");
}

double thermal_moment(const ThermalEnsemble& ens, unsigned s, std::optional<std::size_t> n) {
  ens.validate();
  const std::size_t n_max = n ? *n : thermal_truncation(ens, s);
  const double x = ens.beta * ens.hbar_omega;
  const double log_z = log_partition(ens);

  double sum = 0.0;
  for (std::size_t k = 0; k < n_max; ++k) {
    const double dk = static_cast<double>(k);
    sum += std::pow(dk, s) * std::exp(-x * (dk + ens.e0) - log_z);
  }
  if (n_max > 0) {
    const double dn = static_cast<double>(n_max);
    const double t = std::pow(dn, s) * std::exp(-x * (dn + ens.e0) - log_z);
    const double q = std::pow((dn + 1.0) / dn, s) * std::exp(-x);
    if (t > 0.0 && (q >= 1.0 || t / (1.0 - q) > kTailRel * sum)) {
      throw NonConvergenceError("thermal moment: tail bound at N = " + std::to_string(n_max) +
                                " exceeds 1e-12 of the sum");
    }
  }
  return sum;
}

double thermal_moment(const GeneralSpectrum& spec, unsigned s) {
  const std::vector<double> p = thermal_density_diag(spec);
  return kernels::dot(level_powers(p.size(), s), p);
}

double thermal_mandel(const ThermalEnsemble& ens, std::optional<std::size_t> n) {
  const std::size_t n_max = n ? *n : std::max(thermal_truncation(ens, 1), thermal_truncation(ens, 2));
  return mandel_from_moments(thermal_moment(ens, 1, n_max), thermal_moment(ens, 2, n_max));
}

double thermal_mandel(const GeneralSpectrum& spec) {
  return mandel_from_moments(thermal_moment(spec, 1), thermal_moment(spec, 2));
}

HusimiRoutes husimi_q(const ModelParams& model, Family family, std::complex<double> z,
                      const ThermalEnsemble& ens, const StateOptions& opts) {
  ens.validate();
  const CoherentState st = coherent_state(model, family, z, opts);
  HusimiRoutes r;
  const std::vector<double> p = geometric_p(ens, st.truncation);
  const std::vector<double> c2 =
      kernels::abs2({st.coeffs.data(), static_cast<std::size_t>(st.coeffs.size())});
  r.direct = kernels::dot(p, c2);

  const double x = std::norm(z);
  const HypergeometricSpec spec = family_series(model, family);
  const double log_lead = std::log(-std::expm1(-ens.beta * ens.hbar_omega));  // 1/(n̄+1)
  r.kernel = std::exp(log_pfq(spec, ens.ratio() * x, opts.series) - st.log_norm_value + log_lead);
  return r;
}

double p_function(const RadialWeight& weight, double x, double n_bar) {
  if (!(n_bar > 0.0)) throw DomainError("p_function: n_bar must be positive");
  const double c = (n_bar + 1.0) / n_bar;
  if (x == 0.0) {
    // limit of h̃(cx)/h̃(x): only a Bessel weight with b < 1 diverges at 0, like x^{b-1}
    const double power =
        weight.cls == WeightClass::BesselK && weight.param < 1.0 ? weight.param - 1.0 : 0.0;
    return std::pow(c, power) / n_bar;
  }
  if (!(x > 0.0) || x >= weight.upper()) {
    throw SupportError("p_function: x = " + std::to_string(x) + " outside the weight support");
  }
  if (c * x >= weight.upper()) {
    throw SupportError("p_function: rescaled argument " + std::to_string(c * x) +
                       " leaves the support (0, 1) of the " + to_string(weight.cls) + " weight");
  }
  return std::exp(weight.log_evaluate(c * x) - weight.log_evaluate(x)) / n_bar;
}

double p_function(const ModelParams& model, Family family, double x, double n_bar) {
  return p_function(weight_for(model, family), x, n_bar);
}

double general_p_moment_problem(const ModelParams& model, Family family,
                                const GeneralSpectrum& spec, std::size_t n) {
  weight_for(model, family);  // class check
  if (n >= spec.energies.size()) throw IndexError("level outside the spectrum");
  return std::exp(-spec.beta * spec.energies[n] +
                  log_rho_family(model, family, static_cast<unsigned>(n)));
}

namespace {

// log of W_k P(x_k), the radial quadrature weight times the P function
std::vector<double> log_p_weights(const RadialWeight& w, const RadialNodes& nodes, double n_bar) {
  const double c = (n_bar + 1.0) / n_bar;
  std::vector<double> out(nodes.x.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double x = nodes.x[k];
    if (c * x >= w.upper()) {
      throw SupportError("p_function: rescaled node " + std::to_string(c * x) +
                         " leaves the support of the " + std::string(to_string(w.cls)) +
                         " weight");
    }
    out[k] = nodes.log_w[k] + w.log_evaluate(c * x) - w.log_evaluate(x) - std::log(n_bar);
  }
  return out;
}

}  // namespace

double p_moment(const ModelParams& model, Family family, const ThermalEnsemble& ens,
                std::size_t n, std::size_t nodes) {
  const RadialWeight w = weight_for(model, family);
  const RadialNodes rn = radial_nodes(w, default_rule(w, nodes));
  const std::vector<double> lp = log_p_weights(w, rn, ens.n_bar());
  const double log_z = log_partition(ens);
  const double dn = static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < lp.size(); ++k) {
    sum += std::exp(lp[k] + dn * std::log(rn.x[k]) + log_z);
  }
  return sum;
}

Eigen::MatrixXcd p_reconstruction(const ModelParams& model, Family family,
                                  const ThermalEnsemble& ens, std::size_t n, std::size_t nodes) {
  if (n == 0) throw DomainError("p_reconstruction: dimension must be positive");
  const RadialWeight w = weight_for(model, family);
  const RadialNodes rn = radial_nodes(w, default_rule(w, nodes));
  const std::vector<double> lp = log_p_weights(w, rn, ens.n_bar());

  const auto dim = static_cast<Eigen::Index>(n);
  std::vector<double> half_log_rho(n);
  for (std::size_t m = 0; m < n; ++m) {
    half_log_rho[m] = 0.5 * log_rho_family(model, family, static_cast<unsigned>(m));
  }
  const std::size_t n_phi = 2 * n + 1;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXcd u(dim);
  for (std::size_t k = 0; k < lp.size(); ++k) {
    const double lx = std::log(rn.x[k]);
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phi);
      for (std::size_t m = 0; m < n; ++m) {
        const double dm = static_cast<double>(m);
        const double amp = std::exp(0.5 * lp[k] + 0.5 * dm * lx - half_log_rho[m]);
        u[static_cast<Eigen::Index>(m)] = std::polar(amp, dm * phi);
      }
      rho.noalias() += u * u.adjoint();
    }
  }
  return rho / static_cast<double>(n_phi);
}

}  // namespace dualcs
