#pragma once

// Thermal states. For the linear spectrum E_n = hbar_omega (n + e0):
//
//   rho = 1/(n̄+1) sum_n (n̄/(n̄+1))^n |n><n|,   n̄ = 1 / (e^{beta hbar_omega} - 1)
//
// Husimi Q and the P quasi-distribution are taken in the coherent states of a
// model family.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dualcs/measure.hpp"
#include "dualcs/states.hpp"

namespace dualcs {

struct ThermalEnsemble {
  double hbar_omega = 1.0;
  double e0 = 0.0;
  double beta = 1.0;

  /// Throws DomainError unless beta > 0 and hbar_omega > 0.
  void validate() const;
  double n_bar() const;
  /// n̄ / (n̄ + 1) = e^{-beta hbar_omega}
  double ratio() const;
};

struct GeneralSpectrum {
  std::vector<double> energies;
  double beta = 1.0;
};

/// E_n for n < n.
GeneralSpectrum linear_spectrum(const ThermalEnsemble& ens, std::size_t n);

/// e^{-beta hbar_omega e0} / (1 - e^{-beta hbar_omega})
double partition_function(const ThermalEnsemble& ens);
/// sum_n e^{-beta E_n}
double partition_function(const GeneralSpectrum& spec);

/// p_n for n < n; renormalized if the truncated mass misses 1 by > 1e-14.
std::vector<double> thermal_density_diag(const ThermalEnsemble& ens, std::size_t n);
std::vector<double> thermal_density_diag(const GeneralSpectrum& spec);

/// Smallest N whose geometric tail bound for <n^s> is below tail_rel of the sum.
std::size_t thermal_truncation(const ThermalEnsemble& ens, unsigned s, double tail_rel = 1e-17,
                               std::size_t max_n = 1u << 20);

/// <n^s> = (1/Z) sum n^s e^{-beta E_n}, summed up to N (automatic if empty).
/// Throws NonConvergenceError when the tail bound at N exceeds 1e-12 of the sum.
double thermal_moment(const ThermalEnsemble& ens, unsigned s,
                      std::optional<std::size_t> n = std::nullopt);
double thermal_moment(const GeneralSpectrum& spec, unsigned s);

/// Q_th = (<n^2> - <n>^2) / <n> - 1. Throws DegenerateError when <n> is below
/// machine epsilon (zero-temperature limit).
double thermal_mandel(const ThermalEnsemble& ens, std::optional<std::size_t> n = std::nullopt);
double thermal_mandel(const GeneralSpectrum& spec);

struct HusimiRoutes {
  double direct = 0.0;  ///< sum_n p_n |<n|z>|^2
  double kernel = 0.0;  ///< N_fam(n̄/(n̄+1) |z|^2) / ((n̄+1) N_fam(|z|^2))
};

HusimiRoutes husimi_q(const ModelParams& model, Family family, std::complex<double> z,
                      const ThermalEnsemble& ens, const StateOptions& opts = {});

/// P(x) = (1/n̄) h̃(c x) / h̃(x), c = (n̄+1)/n̄. Throws SupportError when c x
/// leaves the support of h̃.
double p_function(const RadialWeight& weight, double x, double n_bar);
double p_function(const ModelParams& model, Family family, double x, double n_bar);

/// e^{-beta E_n} rho_fam(n): the n-th moment Z int x^n P(x) h̃(x) dx must take.
double general_p_moment_problem(const ModelParams& model, Family family,
                                const GeneralSpectrum& spec, std::size_t n);

/// Z int x^n P(x) h̃(x) dx by the radial rule of the weight class.
double p_moment(const ModelParams& model, Family family, const ThermalEnsemble& ens,
                std::size_t n, std::size_t nodes);

/// rho = int dmu(z) P(|z|^2) |z><z| on span{|0> .. |N-1>}: radial rule times
/// a uniform angular grid of 2N+1 points.
Eigen::MatrixXcd p_reconstruction(const ModelParams& model, Family family,
                                  const ThermalEnsemble& ens, std::size_t n, std::size_t nodes);

}  // namespace dualcs
