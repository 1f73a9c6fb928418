#pragma once

// Photon statistics of pure coherent states.

#include <optional>
#include <vector>

#include "dualcs/states.hpp"

namespace dualcs {

enum class Classification { SubPoissonian, Poissonian, SuperPoissonian };

const char* to_string(Classification c);

/// |Q| below this counts as Poissonian.
inline constexpr double kPoissonianThreshold = 1e-9;

Classification classify(double mandel_q);

struct PhotonStatistics {
  std::vector<double> distribution;  ///< P_n = |c_n|^2
  double mean = 0.0;
  double second_moment = 0.0;
  std::optional<double> mandel_q;  ///< empty when the mean vanishes
  Classification classification = Classification::Poissonian;
  bool degenerate = false;  ///< z = 0: Q undefined, reported as the Poissonian limit
};

PhotonStatistics photon_distribution(const CoherentState& state);

struct MomentRoutes {
  double direct = 0.0;  ///< sum n^s P_n over the truncated state
  double euler = 0.0;   ///< (x d/dx)^s N(x) / N(x), termwise on the full series
};

MomentRoutes expectation_n_power(const CoherentState& state, unsigned s);

/// Q = x [N''/N' - N'/N] at x = |z|^2, derivatives taken termwise.
/// Throws DegenerateError at z = 0.
double mandel_q(const CoherentState& state);

struct OrderedRoutes {
  double matrix = 0.0;  ///< <z| f(A+A-) |z> (BG) or <z| f(Ã+Ã-) |z> (KP)
  double euler = 0.0;   ///< f(e(theta)) on the normalization series
};

/// f(y) = sum_k coeffs[k] y^k.
OrderedRoutes expectation_ordered_function(const CoherentState& state,
                                           const std::vector<double>& coeffs);

}  // namespace dualcs
