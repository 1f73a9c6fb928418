#include "dualcs/states.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dualcs/errors.hpp"
#include "dualcs/kernels.hpp"

namespace dualcs {

namespace {

void require_same_space(const CoherentState& s1, const CoherentState& s2) {
  if (s1.family != s2.family) throw MismatchError("states belong to different families");
  if (!(s1.model == s2.model)) throw MismatchError("states belong to different models");
  if (s1.truncation != s2.truncation) throw MismatchError("states have different truncations");
}

double tail_mass(const Eigen::VectorXcd& c) {
  const auto p = kernels::abs2({c.data(), static_cast<std::size_t>(c.size())});
  double s = 0.0;
  for (double v : p) s += v;
  return 1.0 - s;
}

std::size_t truncation_for(const ModelParams& model, Family family, std::complex<double> z,
                           const StateOptions& opts) {
  if (opts.truncation) {
    if (*opts.truncation == 0) throw DomainError("truncation must be at least 1");
    return *opts.truncation;
  }
  return auto_truncation(model, family, z, opts);
}

}  // namespace

const char* to_string(Family f) { return f == Family::BG ? "bg" : "kp"; }

Family dual(Family f) { return f == Family::BG ? Family::KP : Family::BG; }

HypergeometricSpec family_series(const ModelParams& model, Family family) {
  return family == Family::BG ? model.series() : model.swapped().series();
}

double log_rho_family(const ModelParams& model, Family family, unsigned n) {
  return family == Family::BG ? log_rho(model, n) : log_rho_tilde(model, n);
}

double e_family(const ModelParams& model, Family family, unsigned n) {
  return family == Family::BG ? e_n(model, n) : e_tilde_n(model, n);
}

ConvergenceDomain radius(const ModelParams& model, Family family) {
  return classify_convergence(family_series(model, family));
}

void require_label_in_radius(const ModelParams& model, Family family, std::complex<double> z,
                             const StateOptions& opts) {
  const double r = std::abs(z);
  const ConvergenceDomain d = radius(model, family);
  switch (d.radius) {
    case Radius::Infinite:
      return;
    case Radius::Unit:
      if (r >= 1.0) {
        throw DivergenceError(std::string(to_string(family)) + " state: |z| = " +
                              std::to_string(r) + " outside the unit radius");
      }
      if (r > kUnitRadiusGuard && !opts.allow_near_boundary) {
        throw DivergenceError(std::string(to_string(family)) + " state: |z| = " +
                              std::to_string(r) +
                              " exceeds 0.95 on a unit-radius family (override required)");
      }
      return;
    case Radius::Zero:
      if (r == 0.0) return;
      throw DivergenceError(std::string(to_string(family)) +
                            " state: normalization series has zero radius");
  }
}

std::size_t auto_truncation(const ModelParams& model, Family family, std::complex<double> z,
                            const StateOptions& opts) {
  model.validate();
  require_label_in_radius(model, family, z, opts);
  const double x = std::norm(z);
  if (x == 0.0) return 1;
  const double log_x = std::log(x);
  const double log_norm = log_pfq(family_series(model, family), x, opts.series);
  const double log_target = std::log(opts.tail_target) + log_norm;
  for (std::size_t n = 1; n <= opts.max_truncation; ++n) {
    const auto k = static_cast<unsigned>(n);
    const double log_term = static_cast<double>(n) * log_x - log_rho_family(model, family, k);
    const double log_ratio = log_x - std::log(e_family(model, family, k + 1));
    if (log_term < log_target && log_ratio < 0.0) return n;
  }
  throw TruncationError("automatic truncation exceeded cap of " +
                        std::to_string(opts.max_truncation));
}

CoherentState coherent_state(const ModelParams& model, Family family, std::complex<double> z,
                             const StateOptions& opts) {
  model.validate();
  require_label_in_radius(model, family, z, opts);
  const std::size_t n_max = truncation_for(model, family, z, opts);

  CoherentState s;
  s.family = family;
  s.model = model;
  s.z = z;
  s.truncation = n_max;
  s.coeffs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n_max));

  const double x = std::norm(z);
  s.log_norm_value = log_pfq(family_series(model, family), x, opts.series);
  s.norm_value = std::exp(s.log_norm_value);

  if (x == 0.0) {
    s.coeffs[0] = 1.0;
  } else {
    const double log_r = std::log(std::abs(z));
    const double phi = std::arg(z);
    for (std::size_t n = 0; n < n_max; ++n) {
      const double dn = static_cast<double>(n);
      const double log_mag = dn * log_r - 0.5 * log_rho_family(model, family, static_cast<unsigned>(n)) -
                             0.5 * s.log_norm_value;
      s.coeffs[static_cast<Eigen::Index>(n)] = std::polar(std::exp(log_mag), dn * phi);
    }
  }
  s.tail = tail_mass(s.coeffs);
  return s;
}

CoherentState bg_state(const ModelParams& model, std::complex<double> z, const StateOptions& opts) {
  return coherent_state(model, Family::BG, z, opts);
}

CoherentState kp_state(const ModelParams& model, std::complex<double> z, const StateOptions& opts) {
  return coherent_state(model, Family::KP, z, opts);
}

CoherentState via_displacement(const ModelParams& model, Family family, std::complex<double> z,
                               const StateOptions& opts) {
  model.validate();
  require_label_in_radius(model, family, z, opts);
  const std::size_t n_max = truncation_for(model, family, z, opts);

  CoherentState s;
  s.family = family;
  s.model = model;
  s.z = z;
  s.truncation = n_max;
  s.log_norm_value = log_pfq(family_series(model, family), std::norm(z), opts.series);
  s.norm_value = std::exp(s.log_norm_value);

  const auto dim = static_cast<Eigen::Index>(n_max);
  Eigen::VectorXcd term = Eigen::VectorXcd::Zero(dim);
  term[0] = std::exp(-0.5 * s.log_norm_value);
  Eigen::VectorXcd acc = term;
  if (n_max >= 2) {
    // BG is generated by Ã+, KP by A+. The generator is nilpotent on the
    // truncated space, so the exponential series ends after N terms.
    const LadderSet ladders = ladder_set(model, n_max);
    const ShiftOperator& gen = family == Family::BG ? ladders.raise_tilde : ladders.raise;
    for (std::size_t k = 1; k < n_max; ++k) {
      term = gen.apply(term) * (z / static_cast<double>(k));
      acc += term;
    }
  }
  s.coeffs = std::move(acc);
  s.tail = tail_mass(s.coeffs);
  return s;
}

CoherentState bg_via_displacement(const ModelParams& model, std::complex<double> z,
                                  const StateOptions& opts) {
  return via_displacement(model, Family::BG, z, opts);
}

CoherentState kp_via_displacement(const ModelParams& model, std::complex<double> z,
                                  const StateOptions& opts) {
  return via_displacement(model, Family::KP, z, opts);
}

std::complex<double> overlap(const CoherentState& s1, const CoherentState& s2) {
  require_same_space(s1, s2);
  return s1.coeffs.dot(s2.coeffs);  // conjugates the first argument
}

std::complex<double> overlap_kernel(const CoherentState& s1, const CoherentState& s2) {
  require_same_space(s1, s2);
  const std::complex<double> k = pfq(family_series(s1.model, s1.family), std::conj(s1.z) * s2.z);
  return k * std::exp(-0.5 * (s1.log_norm_value + s2.log_norm_value));
}

Eigen::MatrixXcd projector(const CoherentState& s) { return s.coeffs * s.coeffs.adjoint(); }

double eigen_residual(const CoherentState& s) {
  if (s.truncation < 2) return std::abs(s.z) * std::abs(s.coeffs[0]);
  const LadderSet ladders = ladder_set(s.model, s.truncation);
  const ShiftOperator& down = s.family == Family::BG ? ladders.lower : ladders.lower_tilde;
  return (down.apply(s.coeffs) - s.z * s.coeffs).norm();
}

double truncation_residual_bound(const CoherentState& s) {
  const double e = e_family(s.model, s.family, static_cast<unsigned>(s.truncation));
  return std::sqrt(e) * std::abs(s.coeffs[static_cast<Eigen::Index>(s.truncation - 1)]);
}

JumpOperator::JumpOperator(JumpDirection dir, std::vector<double> log_diagonal)
    : dir_(dir), log_diag_(std::move(log_diagonal)) {}

JumpOperator JumpOperator::inverse() const {
  std::vector<double> inv(log_diag_.size());
  for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = -log_diag_[i];
  return {dir_ == JumpDirection::BgToKp ? JumpDirection::KpToBg : JumpDirection::BgToKp,
          std::move(inv)};
}

Eigen::MatrixXd JumpOperator::dense() const {
  Eigen::VectorXd d(static_cast<Eigen::Index>(log_diag_.size()));
  for (std::size_t i = 0; i < log_diag_.size(); ++i) {
    d[static_cast<Eigen::Index>(i)] = std::exp(log_diag_[i]);
  }
  return d.asDiagonal();
}

Eigen::VectorXcd JumpOperator::apply(const Eigen::VectorXcd& v) const {
  if (static_cast<std::size_t>(v.size()) != log_diag_.size()) {
    throw MismatchError("jump operator: vector dimension mismatch");
  }
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const std::complex<double> c = v[i];
    // multiply in log magnitude: entries and coefficients can be far apart in scale
    out[i] = c == 0.0 ? std::complex<double>(0.0)
                      : std::polar(std::exp(std::log(std::abs(c)) +
                                            log_diag_[static_cast<std::size_t>(i)]),
                                   std::arg(c));
  }
  return out;
}

JumpOperator jump_operator(const ModelParams& model, std::complex<double> z, std::size_t dimension,
                           JumpDirection dir, const SeriesOptions& series) {
  model.validate();
  const double x = std::norm(z);
  const double log_n_bg = log_pfq(family_series(model, Family::BG), x, series);
  const double log_n_kp = log_pfq(family_series(model, Family::KP), x, series);
  std::vector<double> d(dimension);
  for (std::size_t n = 0; n < dimension; ++n) {
    const auto k = static_cast<unsigned>(n);
    d[n] = 0.5 * (log_n_bg - log_n_kp) + 0.5 * (log_rho(model, k) - log_rho_tilde(model, k));
  }
  JumpOperator j(JumpDirection::BgToKp, std::move(d));
  return dir == JumpDirection::BgToKp ? j : j.inverse();
}

CoherentState jump_apply(const ModelParams& model, std::complex<double> z, JumpDirection dir,
                         const StateOptions& opts) {
  model.validate();
  require_label_in_radius(model, Family::BG, z, opts);
  require_label_in_radius(model, Family::KP, z, opts);
  StateOptions o = opts;
  if (!o.truncation) {
    o.truncation = std::max(auto_truncation(model, Family::BG, z, opts),
                            auto_truncation(model, Family::KP, z, opts));
  }
  const Family source = dir == JumpDirection::BgToKp ? Family::BG : Family::KP;
  const CoherentState src = coherent_state(model, source, z, o);
  const JumpOperator j = jump_operator(model, z, src.truncation, dir, opts.series);

  CoherentState out = src;
  out.family = dual(source);
  out.coeffs = j.apply(src.coeffs);
  out.log_norm_value = log_pfq(family_series(model, out.family), std::norm(z), opts.series);
  out.norm_value = std::exp(out.log_norm_value);
  out.tail = tail_mass(out.coeffs);
  return out;
}

StatePair pauli_x_action(const StatePair& pair) {
  const CoherentState& a = pair.first;
  const CoherentState& b = pair.second;
  if (!(a.model == b.model) || a.z != b.z || a.truncation != b.truncation) {
    throw MismatchError("pauli_x_action: states must share model, label and truncation");
  }
  return {b, a};
}

StatePair jump_block_action(const StatePair& pair) {
  const CoherentState& bg = pair.first;
  const CoherentState& kp = pair.second;
  if (bg.family != Family::BG || kp.family != Family::KP) {
    throw MismatchError("jump_block_action: expected the pair (BG, KP)");
  }
  if (!(bg.model == kp.model) || bg.z != kp.z || bg.truncation != kp.truncation) {
    throw MismatchError("jump_block_action: states must share model, label and truncation");
  }
  const JumpOperator j = jump_operator(bg.model, bg.z, bg.truncation, JumpDirection::BgToKp);
  StatePair out{kp, bg};
  out.first.coeffs = j.apply(bg.coeffs);
  out.second.coeffs = j.inverse().apply(kp.coeffs);
  out.first.tail = tail_mass(out.first.coeffs);
  out.second.tail = tail_mass(out.second.coeffs);
  return out;
}

}  // namespace dualcs
