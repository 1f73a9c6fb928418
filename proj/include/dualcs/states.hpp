#pragma once

// Barut-Girardello (BG) and Klauder-Perelomov (KP) coherent states.
//
//   |z>_fam = N_fam(|z|^2)^{-1/2} sum_n z^n / sqrt(rho_fam(n)) |n>
//
// with rho_BG = rho, N_BG = pFq(a; b; .) and rho_KP = rhõ, N_KP = qFp(b; a; .).
// BG states are eigenvectors of A- and equal exp(z Ã+)|0> after
// normalization; KP states are eigenvectors of Ã- and equal exp(z A+)|0>.

#include <complex>
#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "dualcs/fock.hpp"
#include "dualcs/special_fn.hpp"

namespace dualcs {

enum class Family { BG, KP };

const char* to_string(Family f);
Family dual(Family f);

struct StateOptions {
  std::optional<std::size_t> truncation;  ///< explicit N; automatic when empty
  bool allow_near_boundary = false;       ///< permit 0.95 < |z| < 1 on unit-radius families
  double tail_target = 1e-16;
  std::size_t max_truncation = 2048;
  SeriesOptions series;
};

/// Largest |z| accepted on a unit-radius family without the override.
inline constexpr double kUnitRadiusGuard = 0.95;

struct CoherentState {
  Family family = Family::BG;
  ModelParams model;
  std::complex<double> z;
  std::size_t truncation = 0;
  Eigen::VectorXcd coeffs;
  double log_norm_value = 0.0;  ///< log N_fam(|z|^2)
  double norm_value = 1.0;      ///< N_fam(|z|^2); +inf if it overflows
  double tail = 0.0;            ///< 1 - sum |c_n|^2 (truncated mass)
};

/// Series spec of N_fam: (a; b) for BG, (b; a) for KP.
HypergeometricSpec family_series(const ModelParams& model, Family family);

/// log rho_fam(n).
double log_rho_family(const ModelParams& model, Family family, unsigned n);

/// e(n) for BG, ẽ(n) for KP.
double e_family(const ModelParams& model, Family family, unsigned n);

/// Convergence radius of N_fam; KP swaps the roles of p and q.
ConvergenceDomain radius(const ModelParams& model, Family family);

/// Throws DivergenceError unless |z| is admissible for the family.
void require_label_in_radius(const ModelParams& model, Family family, std::complex<double> z,
                             const StateOptions& opts = {});

/// Smallest N with |z|^{2N} / rho_fam(N) < tail_target * N_fam(|z|^2), past
/// the peak of the terms. Throws TruncationError above max_truncation.
std::size_t auto_truncation(const ModelParams& model, Family family, std::complex<double> z,
                            const StateOptions& opts = {});

CoherentState coherent_state(const ModelParams& model, Family family, std::complex<double> z,
                             const StateOptions& opts = {});
CoherentState bg_state(const ModelParams& model, std::complex<double> z,
                       const StateOptions& opts = {});
CoherentState kp_state(const ModelParams& model, std::complex<double> z,
                       const StateOptions& opts = {});

/// Displacement construction: exp(z Ã+)|0> (BG) or exp(z A+)|0> (KP), summed
/// as a terminating matrix power series and normalized.
CoherentState via_displacement(const ModelParams& model, Family family, std::complex<double> z,
                               const StateOptions& opts = {});
CoherentState bg_via_displacement(const ModelParams& model, std::complex<double> z,
                                  const StateOptions& opts = {});
CoherentState kp_via_displacement(const ModelParams& model, std::complex<double> z,
                                  const StateOptions& opts = {});

/// <z|z'> from the coefficient vectors.
std::complex<double> overlap(const CoherentState& s1, const CoherentState& s2);

/// <z|z'> from the kernel N_fam(z* z') / sqrt(N_fam(|z|^2) N_fam(|z'|^2)).
std::complex<double> overlap_kernel(const CoherentState& s1, const CoherentState& s2);

/// Projector |z><z| on the truncated space.
Eigen::MatrixXcd projector(const CoherentState& s);

/// ||A-|z> - z|z>|| for BG, ||Ã-|z> - z|z>|| for KP.
double eigen_residual(const CoherentState& s);

/// sqrt(e_fam(N)) |c_{N-1}|, the residual the truncation can produce.
double truncation_residual_bound(const CoherentState& s);

enum class JumpDirection { BgToKp, KpToBg };

/// Diagonal jump operator J (BG -> KP) or its inverse, stored as log entries.
class JumpOperator {
 public:
  JumpOperator(JumpDirection dir, std::vector<double> log_diagonal);

  JumpDirection direction() const { return dir_; }
  std::size_t dimension() const { return log_diag_.size(); }
  const std::vector<double>& log_diagonal() const { return log_diag_; }

  JumpOperator inverse() const;
  Eigen::MatrixXd dense() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

 private:
  JumpDirection dir_;
  std::vector<double> log_diag_;
};

/// J with entries sqrt(N_BG/N_KP) sqrt(rho_BG(n)/rho_KP(n)), or its inverse.
JumpOperator jump_operator(const ModelParams& model, std::complex<double> z, std::size_t dimension,
                           JumpDirection dir, const SeriesOptions& series = {});

/// Build the source state, apply J (or J^-1), and return the target state.
/// |z| must lie inside both families' radii.
CoherentState jump_apply(const ModelParams& model, std::complex<double> z, JumpDirection dir,
                         const StateOptions& opts = {});

struct StatePair {
  CoherentState first;
  CoherentState second;
};

/// (|z>_BG, |z>_KP) -> (|z>_KP, |z>_BG).
StatePair pauli_x_action(const StatePair& pair);

/// Block-diagonal form diag(J, J^-1) applied to (|z>_BG, |z>_KP).
StatePair jump_block_action(const StatePair& pair);

}  // namespace dualcs
