#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "dualcs/kernels.hpp"
#include "kernels_impl.hpp"

namespace dualcs::kernels {

namespace {

constexpr KernelTable kScalar{&scalar::dot, &scalar::abs2, &scalar::power_moments};
#if defined(DUALCS_HAVE_AVX2)
constexpr KernelTable kAvx2{&avx2::dot, &avx2::abs2, &avx2::power_moments};
#endif
#if defined(DUALCS_HAVE_NEON)
constexpr KernelTable kNeon{&neon::dot, &neon::abs2, &neon::power_moments};
#endif

Isa best_isa() {
  if (available(Isa::Avx2)) return Isa::Avx2;
  if (available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

Isa initial_isa() {
  if (const char* env = std::getenv("DUALCS_ISA")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && available(Isa::Avx2)) return Isa::Avx2;
    if (v == "neon" && available(Isa::Neon)) return Isa::Neon;
  }
  return best_isa();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "?";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(DUALCS_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(DUALCS_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!available(isa)) {
    throw std::invalid_argument(std::string("kernel variant not available: ") + to_string(isa));
  }
  current().store(isa, std::memory_order_relaxed);
}

const KernelTable& table(Isa isa) {
  if (!available(isa)) {
    throw std::invalid_argument(std::string("kernel variant not available: ") + to_string(isa));
  }
  switch (isa) {
#if defined(DUALCS_HAVE_AVX2)
    case Isa::Avx2:
      return kAvx2;
#endif
#if defined(DUALCS_HAVE_NEON)
    case Isa::Neon:
      return kNeon;
#endif
    default:
      return kScalar;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  return table(active_isa()).dot(a.data(), b.data(), a.size());
}

void abs2(std::span<const std::complex<double>> in, std::span<double> out) {
  if (in.size() != out.size()) throw std::invalid_argument("abs2: length mismatch");
  table(active_isa()).abs2(in.data(), out.data(), in.size());
}

std::vector<double> abs2(std::span<const std::complex<double>> in) {
  std::vector<double> out(in.size());
  abs2(in, out);
  return out;
}

std::vector<double> power_moments(std::span<const double> w, std::span<const double> x,
                                  std::span<const double> scale, std::size_t n_out) {
  if (w.size() != x.size()) throw std::invalid_argument("power_moments: length mismatch");
  if (n_out > 0 && scale.size() + 1 < n_out) {
    throw std::invalid_argument("power_moments: scale too short");
  }
  std::vector<double> out(n_out);
  if (n_out == 0) return out;
  std::vector<double> work(w.size());
  table(active_isa()).power_moments(w.data(), x.data(), w.size(), scale.data(), out.data(), n_out,
                                    work.data());
  return out;
}

}  // namespace dualcs::kernels
