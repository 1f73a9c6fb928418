#include <cmath>
#include <string>
#include <vector>

#include "dualcs/cli.hpp"
#include "dualcs/errors.hpp"
#include "dualcs/measure.hpp"
#include "dualcs/statistics.hpp"
#include "dualcs/thermal.hpp"

namespace dualcs::cli {

namespace {

Check make_check(std::string name, double error, double tol, std::string note = {}) {
  return {std::move(name), error, tol, error <= tol ? "pass" : "fail", std::move(note)};
}

Check skipped(std::string name, double tol, std::string note) {
  return {std::move(name), 0.0, tol, "skip", std::move(note)};
}

// Labels well inside the family's radius; empty for a zero radius.
std::vector<std::complex<double>> labels_for(const ModelParams& m, Family f) {
  switch (radius(m, f).radius) {
    case Radius::Infinite:
      return {{0.5, 0.0}, {1.0, 0.5}, {2.0, 0.0}};
    case Radius::Unit:
      return {{0.3, 0.0}, {0.4, 0.3}, {0.8, 0.0}};
    case Radius::Zero:
      break;
  }
  return {};
}

double max_coeff_diff(const CoherentState& s1, const CoherentState& s2) {
  if (s1.coeffs.size() != s2.coeffs.size()) return INFINITY;
  return (s1.coeffs - s2.coeffs).cwiseAbs().maxCoeff();
}

Check rho_duality(const ModelParams& m) {
  double worst = 0.0;
  for (unsigned n = 0; n <= 50; ++n) {
    const double d = log_rho(m, n) + log_rho_tilde(m, n) - 2.0 * log_gamma(n + 1.0);
    worst = std::max(worst, std::abs(std::expm1(d)));
  }
  return make_check("rho-duality", worst, 1e-12, "n <= 50");
}

Check commutators(const ModelParams& m) {
  const std::size_t n = 64;
  const LadderSet l = ladder_set(m, n);
  const Eigen::MatrixXd am = l.lower.dense();
  const Eigen::MatrixXd ap = l.raise.dense();
  const Eigen::MatrixXd tm = l.lower_tilde.dense();
  const Eigen::MatrixXd tp = l.raise_tilde.dense();
  const auto b = static_cast<Eigen::Index>(n - 1);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(b, b);
  const Eigen::MatrixXd c1 = tm * ap - ap * tm;
  const Eigen::MatrixXd c2 = am * tp - tp * am;
  const double err = std::max((c1.topLeftCorner(b, b) - id).cwiseAbs().maxCoeff(),
                              (c2.topLeftCorner(b, b) - id).cwiseAbs().maxCoeff());
  return make_check("canonical-commutators", err, 1e-12, "N = 64, leading block");
}

}  // namespace

std::vector<Check> run_checks(const ModelParams& model, Family family, const VerifyOptions& opts) {
  model.validate();
  std::vector<Check> out;
  out.push_back(rho_duality(model));
  out.push_back(commutators(model));

  const auto labels = labels_for(model, family);
  if (labels.empty()) {
    out.push_back(skipped("definition-equivalence", 1e-12, "zero radius"));
    out.push_back(skipped("residual-tail-bound", 1e-16, "zero radius"));
    out.push_back(skipped("eigenvalue-residual", 1e-10, "zero radius"));
    out.push_back(skipped("dual-swap-identity", 1e-15, "zero radius"));
    out.push_back(skipped("euler-moment-routes", 1e-10, "zero radius"));
  } else {
    double def = 0.0;
    double res = 0.0;
    double over_bound = 0.0;
    double swap = 0.0;
    double euler = 0.0;
    for (auto z : labels) {
      const CoherentState s = coherent_state(model, family, z);
      def = std::max(def, max_coeff_diff(s, via_displacement(model, family, z)));
      over_bound = std::max(over_bound, eigen_residual(s) - truncation_residual_bound(s));
      StateOptions wide;
      wide.truncation = 2 * s.truncation;
      res = std::max(res, eigen_residual(coherent_state(model, family, z, wide)));
      swap = std::max(swap, max_coeff_diff(s, coherent_state(model.swapped(), dual(family), z)));
      for (unsigned p = 1; p <= 4; ++p) {
        const MomentRoutes r = expectation_n_power(s, p);
        euler = std::max(euler, std::abs(r.direct - r.euler) / std::max(1e-300, std::abs(r.euler)));
      }
    }
    out.push_back(make_check("definition-equivalence", def, 1e-12));
    out.push_back(make_check("residual-tail-bound", std::max(over_bound, 0.0), 1e-16,
                             "automatic N"));
    out.push_back(make_check("eigenvalue-residual", res, 1e-10, "N = 2 x automatic"));
    out.push_back(make_check("dual-swap-identity", swap, 1e-15));
    out.push_back(make_check("euler-moment-routes", euler, 1e-10, "s <= 4"));
  }

  const RadialWeight w = weight_for(model, family);
  out.push_back(make_check("normalization-constant", std::abs(w.C / w.C_closed - 1.0), 1e-8,
                           to_string(w.cls)));
  out.push_back(make_check("moment-problem", verify_moments(w, model, family, 20), 1e-8,
                           "n <= 20"));
  out.push_back(make_check(
      "identity-resolution",
      resolve_identity(model, family, opts.identity_dim, default_rule(w, opts.nodes)).max_deviation,
      1e-6, "N = " + std::to_string(opts.identity_dim) + ", nodes = " + std::to_string(opts.nodes)));

  const std::complex<double> zj(0.4, 0.0);
  const bool both = labels_for(model, Family::BG).size() && labels_for(model, Family::KP).size();
  if (both) {
    const CoherentState bg = bg_state(model, zj);
    StateOptions same_n;
    same_n.truncation = bg.truncation;
    const CoherentState kp = kp_state(model, zj, same_n);
    const JumpOperator j = jump_operator(model, zj, bg.truncation, JumpDirection::BgToKp);
    const double jump_err = (j.apply(bg.coeffs) - kp.coeffs).norm();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(bg.truncation));
    const double inv_err =
        ((j.inverse().dense() * j.dense()).diagonal() - ones).cwiseAbs().maxCoeff();
    out.push_back(make_check("jump-operator", std::max(jump_err, inv_err), 1e-12, "|z| = 0.4"));
    const StatePair twice = pauli_x_action(pauli_x_action({bg, kp}));
    out.push_back(make_check("pauli-x-squared",
                             std::max(max_coeff_diff(twice.first, bg),
                                      max_coeff_diff(twice.second, kp)),
                             0.0));
  } else {
    out.push_back(skipped("jump-operator", 1e-12, "a family has zero radius"));
    out.push_back(skipped("pauli-x-squared", 0.0, "a family has zero radius"));
  }

  const ThermalEnsemble ens{1.0, 0.0, opts.beta};
  out.push_back(make_check("thermal-mandel", std::abs(thermal_mandel(ens) - ens.n_bar()), 1e-10,
                           "beta = " + format_double(opts.beta)));
  if (!labels.empty()) {
    double hus = 0.0;
    for (auto z : labels) {
      const HusimiRoutes h = husimi_q(model, family, z, ens);
      hus = std::max(hus, std::abs(h.direct - h.kernel));
    }
    out.push_back(make_check("husimi-routes", hus, 1e-10));
  } else {
    out.push_back(skipped("husimi-routes", 1e-10, "zero radius"));
  }

  try {
    const std::size_t n = 20;
    const Eigen::MatrixXcd rho = p_reconstruction(model, family, ens, n, opts.nodes);
    const std::vector<double> p = thermal_density_diag(ens, n);
    double diag = 0.0;
    double off = 0.0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      for (Eigen::Index k = 0; k < rho.cols(); ++k) {
        if (i == k) {
          diag = std::max(diag, std::abs(rho(i, i) - p[static_cast<std::size_t>(i)]));
        } else {
          off = std::max(off, std::abs(rho(i, k)));
        }
      }
    }
    out.push_back(make_check("p-reconstruction-diagonal", diag, 1e-6, "N = 20"));
    out.push_back(make_check("p-reconstruction-offdiagonal", off, 1e-10, "N = 20"));
  } catch (const SupportError& e) {
    out.push_back(skipped("p-reconstruction-diagonal", 1e-6, "P outside weight support"));
    out.push_back(skipped("p-reconstruction-offdiagonal", 1e-10, "P outside weight support"));
  }

  double scalar = 0.0;
  for (const IntegralCheck& c : scalar_integral_checks()) scalar = std::max(scalar, c.rel_error);
  out.push_back(make_check("scalar-integrals", scalar, 1e-8));
  return out;
}

}  // namespace dualcs::cli
