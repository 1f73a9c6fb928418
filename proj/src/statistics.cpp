#include "dualcs/statistics.hpp"

#include <cmath>

#include "dualcs/errors.hpp"
#include "dualcs/kernels.hpp"

namespace dualcs {

namespace {

std::vector<double> level_powers(std::size_t n, unsigned s) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = std::pow(static_cast<double>(k), s);
  return v;
}

double poly(const std::vector<double>& coeffs, double y) {
  double r = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * y + *it;
  return r;
}

std::vector<double> distribution_of(const CoherentState& state) {
  return kernels::abs2({state.coeffs.data(), static_cast<std::size_t>(state.coeffs.size())});
}

}  // namespace

const char* to_string(Classification c) {
  switch (c) {
    case Classification::SubPoissonian:
      return "sub-poissonian";
    case Classification::Poissonian:
      return "poissonian";
    case Classification::SuperPoissonian:
      return "super-poissonian";
  }
  return "?";
}

Classification classify(double q) {
  if (std::abs(q) < kPoissonianThreshold) return Classification::Poissonian;
  return q < 0.0 ? Classification::SubPoissonian : Classification::SuperPoissonian;
}

PhotonStatistics photon_distribution(const CoherentState& state) {
  PhotonStatistics st;
  st.distribution = distribution_of(state);
  const std::size_t n = st.distribution.size();
  st.mean = kernels::dot(level_powers(n, 1), st.distribution);
  st.second_moment = kernels::dot(level_powers(n, 2), st.distribution);
  if (st.mean > 0.0) {
    const double q = (st.second_moment - st.mean * st.mean) / st.mean - 1.0;
    st.mandel_q = q;
    st.classification = classify(q);
  } else {
    st.degenerate = true;
    st.classification = Classification::Poissonian;
  }
  return st;
}

MomentRoutes expectation_n_power(const CoherentState& state, unsigned s) {
  MomentRoutes r;
  const std::vector<double> p = distribution_of(state);
  r.direct = kernels::dot(level_powers(p.size(), s), p);
  const TermWeight w = [s](std::size_t n) { return std::pow(static_cast<double>(n), s); };
  const WeightedSeries ws = pfq_weighted(family_series(state.model, state.family),
                                         std::norm(state.z), {&w, 1});
  r.euler = ws.means[0];
  return r;
}

double mandel_q(const CoherentState& state) {
  const double x = std::norm(state.z);
  if (x == 0.0) throw DegenerateError("Mandel parameter undefined at z = 0");
  // x N'/N = <n>, x^2 N''/N = <n(n-1)>
  const TermWeight w[2] = {
      [](std::size_t n) { return static_cast<double>(n); },
      [](std::size_t n) { return static_cast<double>(n) * (static_cast<double>(n) - 1.0); }};
  const WeightedSeries ws = pfq_weighted(family_series(state.model, state.family), x, w);
  const double first = ws.means[0];
  const double falling = ws.means[1];
  if (!(first > 0.0)) throw DegenerateError("Mandel parameter undefined: vanishing mean");
  return falling / first - first;
}

OrderedRoutes expectation_ordered_function(const CoherentState& state,
                                           const std::vector<double>& coeffs) {
  const ModelParams& m = state.model;
  const Family fam = state.family;
  OrderedRoutes r;

  const std::vector<double> p = distribution_of(state);
  std::vector<double> f_diag(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    f_diag[n] = poly(coeffs, e_family(m, fam, static_cast<unsigned>(n)));
  }
  r.matrix = kernels::dot(f_diag, p);

  const TermWeight w = [&](std::size_t n) {
    return poly(coeffs, e_family(m, fam, static_cast<unsigned>(n)));
  };
  const WeightedSeries ws = pfq_weighted(family_series(m, fam), std::norm(state.z), {&w, 1});
  r.euler = ws.means[0];
  return r;
}

}  // namespace dualcs
