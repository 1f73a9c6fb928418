#include "dualcs/fock.hpp"

#include <cmath>
#include <string>

#include "dualcs/errors.hpp"

namespace dualcs {

namespace {

// prod_i (c_i - 1 + n)
double shifted_product(const std::vector<double>& c, unsigned n, const char* which) {
  double r = 1.0;
  for (double ci : c) {
    const double f = ci - 1.0 + static_cast<double>(n);
    if (f == 0.0) {
      throw DomainError(std::string("structure function singular: ") + which +
                        " parameter gives a zero factor at n = " + std::to_string(n));
    }
    r *= f;
  }
  return r;
}

// sum_i log (c_i)_n
double log_pochhammer_sum(const std::vector<double>& c, unsigned n) {
  double r = 0.0;
  for (double ci : c) r += log_gamma(ci + n) - log_gamma(ci);
  return r;
}

}  // namespace

void ModelParams::validate() const {
  for (double ai : a) {
    if (!(ai > 0.0)) throw DomainError("model parameters a_i must be positive");
  }
  for (double bj : b) {
    if (!(bj > 0.0)) throw DomainError("model parameters b_j must be positive");
  }
}

double e_n(const ModelParams& model, unsigned n) {
  if (n == 0) return 0.0;
  const double den = shifted_product(model.a, n, "upper");
  return static_cast<double>(n) * shifted_product(model.b, n, "lower") / den;
}

double e_tilde_n(const ModelParams& model, unsigned n) { return e_n(model.swapped(), n); }

double log_rho(const ModelParams& model, unsigned n) {
  return log_gamma(static_cast<double>(n) + 1.0) + log_pochhammer_sum(model.b, n) -
         log_pochhammer_sum(model.a, n);
}

double log_rho_tilde(const ModelParams& model, unsigned n) { return log_rho(model.swapped(), n); }

double rho(const ModelParams& model, unsigned n) { return std::exp(log_rho(model, n)); }

double rho_tilde(const ModelParams& model, unsigned n) { return std::exp(log_rho_tilde(model, n)); }

StructureFunctionTable::StructureFunctionTable(ModelParams model, std::size_t n_max)
    : model_(std::move(model)),
      e_(n_max + 1),
      e_tilde_(n_max + 1),
      log_rho_(n_max + 1),
      log_rho_tilde_(n_max + 1) {
  model_.validate();
  for (std::size_t n = 0; n <= n_max; ++n) {
    const auto k = static_cast<unsigned>(n);
    e_[n] = e_n(model_, k);
    e_tilde_[n] = e_tilde_n(model_, k);
    log_rho_[n] = dualcs::log_rho(model_, k);
    log_rho_tilde_[n] = dualcs::log_rho_tilde(model_, k);
  }
}

ShiftOperator::ShiftOperator(ShiftDirection dir, std::vector<double> amplitudes)
    : dir_(dir), amp_(std::move(amplitudes)) {}

ShiftOperator ShiftOperator::transpose() const {
  return {dir_ == ShiftDirection::Lower ? ShiftDirection::Raise : ShiftDirection::Lower, amp_};
}

Eigen::MatrixXd ShiftOperator::dense() const {
  const auto n = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double v = amp_[static_cast<std::size_t>(k)];
    if (dir_ == ShiftDirection::Lower) {
      m(k, k + 1) = v;
    } else {
      m(k + 1, k) = v;
    }
  }
  return m;
}

namespace {

template <class Vec>
Vec apply_shift(ShiftDirection dir, const std::vector<double>& amp, const Vec& v) {
  const auto n = static_cast<Eigen::Index>(amp.size() + 1);
  if (v.size() != n) throw MismatchError("shift operator: vector dimension mismatch");
  Vec out = Vec::Zero(n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double a = amp[static_cast<std::size_t>(k)];
    if (dir == ShiftDirection::Lower) {
      out[k] = a * v[k + 1];
    } else {
      out[k + 1] = a * v[k];
    }
  }
  return out;
}

}  // namespace

Eigen::VectorXcd ShiftOperator::apply(const Eigen::VectorXcd& v) const {
  return apply_shift(dir_, amp_, v);
}

Eigen::VectorXd ShiftOperator::apply(const Eigen::VectorXd& v) const {
  return apply_shift(dir_, amp_, v);
}

Eigen::MatrixXd LadderSet::number() const {
  const auto n = static_cast<Eigen::Index>(dimension);
  return Eigen::VectorXd::LinSpaced(n, 0.0, static_cast<double>(n - 1)).asDiagonal();
}

LadderSet ladder_set(const ModelParams& model, std::size_t dimension) {
  if (dimension < 2) throw DomainError("ladder_set: dimension must be at least 2");
  model.validate();
  std::vector<double> amp(dimension - 1);
  std::vector<double> amp_tilde(dimension - 1);
  for (std::size_t k = 0; k + 1 < dimension; ++k) {
    const auto n = static_cast<unsigned>(k + 1);
    amp[k] = std::sqrt(e_n(model, n));
    amp_tilde[k] = std::sqrt(e_tilde_n(model, n));
  }
  ShiftOperator lower(ShiftDirection::Lower, amp);
  ShiftOperator lower_tilde(ShiftDirection::Lower, amp_tilde);
  return LadderSet{model,           dimension, lower, lower.transpose(), lower_tilde,
                   lower_tilde.transpose()};
}

Eigen::VectorXd fock_from_vacuum(const LadderSet& ladders, std::size_t n, bool tilde) {
  if (n >= ladders.dimension) {
    throw IndexError("fock_from_vacuum: level " + std::to_string(n) +
                     " outside truncation " + std::to_string(ladders.dimension));
  }
  const ShiftOperator& up = tilde ? ladders.raise_tilde : ladders.raise;
  const ModelParams& m = ladders.model;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ladders.dimension));
  v[0] = 1.0;
  // Divide by sqrt(rho(k)/rho(k-1)) per step so intermediate vectors stay O(1).
  double prev = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto kk = static_cast<unsigned>(k);
    const double lr = tilde ? log_rho_tilde(m, kk) : log_rho(m, kk);
    v = up.apply(v) * std::exp(-0.5 * (lr - prev));
    prev = lr;
  }
  return v;
}

}  // namespace dualcs
