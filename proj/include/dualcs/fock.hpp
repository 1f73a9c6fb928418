#pragma once

// Truncated Fock space: structure functions and the four ladder operators
// A-, A+, Ã-, Ã+ of a model defined by the parameter lists a (length p) and
// b (length q):
//
//   e(n)  = n prod_j (b_j - 1 + n) / prod_i (a_i - 1 + n)
//   ẽ(n)  = n prod_i (a_i - 1 + n) / prod_j (b_j - 1 + n)
//   rho(n) = prod_{s<=n} e(s),  rhõ(n) = prod_{s<=n} ẽ(s),  rho rhõ = (n!)^2
//
// The tilde map is the swap a <-> b.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "dualcs/special_fn.hpp"

namespace dualcs {

struct ModelParams {
  std::vector<double> a;
  std::vector<double> b;

  std::size_t p() const { return a.size(); }
  std::size_t q() const { return b.size(); }

  /// Throws DomainError unless all a_i > 0 and all b_j > 0.
  void validate() const;

  /// The dual model (b; a).
  ModelParams swapped() const { return {b, a}; }

  /// Spec of the series sum x^n / rho(n), i.e. pFq(a; b; x).
  HypergeometricSpec series() const { return {a, b}; }

  bool operator==(const ModelParams&) const = default;
};

double e_n(const ModelParams& model, unsigned n);
double e_tilde_n(const ModelParams& model, unsigned n);

double log_rho(const ModelParams& model, unsigned n);
double log_rho_tilde(const ModelParams& model, unsigned n);
double rho(const ModelParams& model, unsigned n);
double rho_tilde(const ModelParams& model, unsigned n);

/// e, ẽ, log rho and log rhõ tabulated for n = 0 .. n_max.
class StructureFunctionTable {
 public:
  StructureFunctionTable(ModelParams model, std::size_t n_max);

  const ModelParams& model() const { return model_; }
  std::size_t n_max() const { return e_.size() - 1; }

  double e(std::size_t n) const { return e_.at(n); }
  double e_tilde(std::size_t n) const { return e_tilde_.at(n); }
  double log_rho(std::size_t n) const { return log_rho_.at(n); }
  double log_rho_tilde(std::size_t n) const { return log_rho_tilde_.at(n); }

 private:
  ModelParams model_;
  std::vector<double> e_;
  std::vector<double> e_tilde_;
  std::vector<double> log_rho_;
  std::vector<double> log_rho_tilde_;
};

enum class ShiftDirection {
  Lower,  ///< |n> -> |n-1>, matrix entries on the superdiagonal
  Raise,  ///< |n> -> |n+1>, matrix entries on the subdiagonal
};

/// A real operator with a single nonzero off-diagonal. amplitude(k) is the
/// matrix element between |k> and |k+1>.
class ShiftOperator {
 public:
  ShiftOperator(ShiftDirection dir, std::vector<double> amplitudes);

  ShiftDirection direction() const { return dir_; }
  std::size_t dimension() const { return amp_.size() + 1; }
  double amplitude(std::size_t k) const { return amp_.at(k); }

  ShiftOperator transpose() const;
  Eigen::MatrixXd dense() const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

 private:
  ShiftDirection dir_;
  std::vector<double> amp_;
};

struct LadderSet {
  ModelParams model;
  std::size_t dimension = 0;
  ShiftOperator lower;        ///< A-
  ShiftOperator raise;        ///< A+
  ShiftOperator lower_tilde;  ///< Ã-
  ShiftOperator raise_tilde;  ///< Ã+

  /// N̂ = diag(0, 1, ..., N-1)
  Eigen::MatrixXd number() const;
};

/// Ladder operators on span{|0>, ..., |N-1>}; N >= 2.
LadderSet ladder_set(const ModelParams& model, std::size_t dimension);

/// (A+)^n |0> / sqrt(rho(n)), or (Ã+)^n |0> / sqrt(rhõ(n)) when tilde is set.
Eigen::VectorXd fock_from_vacuum(const LadderSet& ladders, std::size_t n, bool tilde = false);

}  // namespace dualcs
