#pragma once

// Scalar special functions: Pochhammer symbols, Gamma ratios, generalized
// hypergeometric series pFq with convergence handling, and the modified
// Bessel function of the second kind.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dualcs {

/// Upper (a) and lower (b) parameter lists of pFq(a; b; x).
struct HypergeometricSpec {
  std::vector<double> a;
  std::vector<double> b;

  std::size_t p() const { return a.size(); }
  std::size_t q() const { return b.size(); }

  /// Throws DomainError unless every a_i > 0 and every b_j > 0.
  void validate() const;

  /// The dual spec (b; a).
  HypergeometricSpec swapped() const { return {b, a}; }
};

enum class Radius { Infinite, Unit, Zero };
enum class MomentProblem { Stieltjes, Hausdorff, None };

struct ConvergenceDomain {
  Radius radius = Radius::Infinite;
  MomentProblem moment_problem = MomentProblem::Stieltjes;
  std::string boundary_note;

  /// +inf, 1 or 0.
  double value() const;
};

const char* to_string(Radius r);
const char* to_string(MomentProblem m);

/// (a)_n by the product recurrence; (a)_0 = 1.
double pochhammer(double a, unsigned n);

/// log Gamma(x) for x > 0 (thread safe).
double log_gamma(double x);

/// prod Gamma(b_j) / prod Gamma(a_i), evaluated in log space.
double gamma_ratio(std::span<const double> b, std::span<const double> a);

struct SeriesOptions {
  double rel_tol = 1e-17;
  std::size_t max_terms = 100000;
};

/// Radius of sum x^n / rho(n) from the parameter counts, plus the moment
/// problem it leads to.
ConvergenceDomain classify_convergence(const HypergeometricSpec& spec);

/// Throws DivergenceError if |x| is outside the convergence domain. On the
/// unit circle the series is accepted only when eta = sum a - sum b < 1.
void require_convergent(const HypergeometricSpec& spec, double abs_x);

double pfq(const HypergeometricSpec& spec, double x, const SeriesOptions& opts = {});
std::complex<double> pfq(const HypergeometricSpec& spec, std::complex<double> x,
                         const SeriesOptions& opts = {});

/// log pFq(x) for x >= 0; stays finite where pfq() itself would overflow.
double log_pfq(const HypergeometricSpec& spec, double x, const SeriesOptions& opts = {});

using TermWeight = std::function<double(std::size_t)>;

/// Result of summing the series together with termwise-weighted copies.
struct WeightedSeries {
  double log_sum = 0.0;        ///< log sum_n t_n
  std::vector<double> means;   ///< sum_n w(n) t_n / sum_n t_n, one per weight
  std::size_t terms = 0;
};

/// Sums t_n = x^n / rho(n) and, in the same pass, sum w(n) t_n for each
/// weight. With w(n) = n^s this is (x d/dx)^s applied termwise. Requires
/// x >= 0.
WeightedSeries pfq_weighted(const HypergeometricSpec& spec, double x,
                            std::span<const TermWeight> weights,
                            const SeriesOptions& opts = {});

/// The first n_max + 1 terms t_n = x^n / rho(n) generated by the recurrence.
std::vector<double> series_terms(const HypergeometricSpec& spec, double x, std::size_t n_max);

/// K_nu(x) from its integral representation int_0^inf exp(-x cosh t) cosh(nu t) dt.
double bessel_k(double nu, double x);

/// log K_nu(x); finite well past the range where K_nu over/underflows.
double log_bessel_k(double nu, double x);

}  // namespace dualcs
