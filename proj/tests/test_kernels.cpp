#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "dualcs/kernels.hpp"
#include "dualcs/measure.hpp"
#include "dualcs/statistics.hpp"

using namespace dualcs;
namespace k = dualcs::kernels;

namespace {

std::vector<k::Isa> simd_variants() {
  std::vector<k::Isa> v;
  for (k::Isa isa : {k::Isa::Avx2, k::Isa::Neon}) {
    if (k::available(isa)) v.push_back(isa);
  }
  return v;
}

struct IsaGuard {
  k::Isa saved = k::active_isa();
  ~IsaGuard() { k::set_isa(saved); }
};

}  // namespace

TEST_CASE("scalar variant is always present") {
  CHECK(k::available(k::Isa::Scalar));
  IsaGuard g;
  k::set_isa(k::Isa::Scalar);
  CHECK(k::active_isa() == k::Isa::Scalar);
  for (k::Isa isa : {k::Isa::Avx2, k::Isa::Neon}) {
    if (!k::available(isa)) CHECK_THROWS_AS(k::set_isa(isa), std::invalid_argument);
  }
  MESSAGE("active variants: scalar" << (k::available(k::Isa::Avx2) ? " avx2" : "")
                                    << (k::available(k::Isa::Neon) ? " neon" : ""));
}

TEST_CASE("dot matches the scalar reference") {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  const k::KernelTable& ref = k::table(k::Isa::Scalar);
  for (k::Isa isa : simd_variants()) {
    const k::KernelTable& simd = k::table(isa);
    for (std::size_t n = 0; n < 70; ++n) {
      for (std::size_t offset : {0, 1, 3}) {
        std::vector<double> a(n + offset);
        std::vector<double> b(n + offset);
        double mag = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          a[i] = g(rng);
          b[i] = g(rng);
        }
        for (std::size_t i = offset; i < a.size(); ++i) mag += std::abs(a[i] * b[i]);
        const double r = ref.dot(a.data() + offset, b.data() + offset, n);
        const double s = simd.dot(a.data() + offset, b.data() + offset, n);
        CHECK(std::abs(r - s) <= 1e-15 * (mag + 1e-300) * 4);
      }
    }
  }
}

TEST_CASE("abs2 matches the scalar reference") {
  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  const k::KernelTable& ref = k::table(k::Isa::Scalar);
  for (k::Isa isa : simd_variants()) {
    const k::KernelTable& simd = k::table(isa);
    for (std::size_t n = 0; n < 41; ++n) {
      std::vector<std::complex<double>> in(n);
      for (auto& c : in) c = {g(rng), g(rng)};
      std::vector<double> r(n);
      std::vector<double> s(n);
      ref.abs2(in.data(), r.data(), n);
      simd.abs2(in.data(), s.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(r[i] - s[i]) <= 4.5e-16 * r[i]);
        CHECK(std::abs(r[i] - std::norm(in[i])) <= 4.5e-16 * r[i]);
      }
    }
  }
}

TEST_CASE("power_moments matches the scalar reference") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  const k::KernelTable& ref = k::table(k::Isa::Scalar);
  for (k::Isa isa : simd_variants()) {
    const k::KernelTable& simd = k::table(isa);
    for (std::size_t nodes : {0, 1, 3, 4, 7, 33, 200}) {
      const std::size_t n_out = 12;
      std::vector<double> w(nodes);
      std::vector<double> x(nodes);
      std::vector<double> scale(n_out - 1);
      for (auto& v : w) v = u(rng);
      for (auto& v : x) v = u(rng);
      for (auto& v : scale) v = u(rng);
      std::vector<double> r(n_out);
      std::vector<double> s(n_out);
      std::vector<double> work(nodes);
      ref.power_moments(w.data(), x.data(), nodes, scale.data(), r.data(), n_out, work.data());
      simd.power_moments(w.data(), x.data(), nodes, scale.data(), s.data(), n_out, work.data());
      for (std::size_t m = 0; m < n_out; ++m) {
        CHECK(std::abs(r[m] - s[m]) <= 1e-14 * std::abs(r[m]) + 1e-300);
      }
    }
  }
}

TEST_CASE("power_moments against a direct oracle") {
  const std::vector<double> w{0.5, 0.25, 0.25};
  const std::vector<double> x{1.0, 2.0, 4.0};
  const std::vector<double> scale{1.0, 0.5, 1.0 / 3.0};
  const std::vector<double> out = k::power_moments(w, x, scale, 4);
  // sum_k w_k x_k^m / m!
  for (std::size_t m = 0; m < 4; ++m) {
    double e = 0.0;
    for (std::size_t i = 0; i < 3; ++i) e += w[i] * std::pow(x[i], double(m)) / std::tgamma(m + 1.0);
    CHECK(out[m] == doctest::Approx(e).epsilon(1e-15));
  }
}

TEST_CASE("library results agree across variants") {
  IsaGuard g;
  const ModelParams su11{{}, {2.0}};
  k::set_isa(k::Isa::Scalar);
  const PhotonStatistics ref = photon_distribution(bg_state(su11, {1.7, 0.4}));
  const double ref_id =
      resolve_identity(su11, Family::BG, 15, gauss_laguerre(200)).max_deviation;
  for (k::Isa isa : simd_variants()) {
    k::set_isa(isa);
    const PhotonStatistics s = photon_distribution(bg_state(su11, {1.7, 0.4}));
    CHECK(std::abs(s.mean - ref.mean) < 1e-14 * ref.mean);
    CHECK(std::abs(s.second_moment - ref.second_moment) < 1e-14 * ref.second_moment);
    const double id = resolve_identity(su11, Family::BG, 15, gauss_laguerre(200)).max_deviation;
    CHECK(std::abs(id - ref_id) < 1e-12);
  }
}
