#pragma once

// Data-parallel inner loops shared by the quadrature, statistics and thermal
// code. Each kernel has a scalar reference implementation and vectorized
// variants; the widest one the CPU supports is selected at first use.
//
// Set DUALCS_ISA=scalar|avx2|neon in the environment to pin a variant.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dualcs::kernels {

enum class Isa { Scalar, Avx2, Neon };

const char* to_string(Isa isa);

/// True if the variant was compiled in and the running CPU supports it.
bool available(Isa isa);

/// Variant currently used by the free functions below.
Isa active_isa();

/// Pin a variant. Throws std::invalid_argument if it is not available.
void set_isa(Isa isa);

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*abs2)(const std::complex<double>* in, double* out, std::size_t n);
  // out[m] = sum_k u_k(m), u_k(0) = w_k, u_k(m+1) = u_k(m) * x_k * scale[m].
  // work must hold `nodes` doubles.
  void (*power_moments)(const double* w, const double* x, std::size_t nodes, const double* scale,
                        double* out, std::size_t n_out, double* work);
};

/// Kernel table of a specific variant (must be available).
const KernelTable& table(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);

/// out[n] = |in[n]|^2
void abs2(std::span<const std::complex<double>> in, std::span<double> out);
std::vector<double> abs2(std::span<const std::complex<double>> in);

/// Weighted power sums out[m] = sum_k w_k prod_{j<m} (x_k scale_j) for
/// m = 0 .. n_out-1; scale needs at least n_out - 1 entries. With
/// scale_j = 1 / e(j+1) this yields sum_k w_k x_k^m / rho(m).
std::vector<double> power_moments(std::span<const double> w, std::span<const double> x,
                                  std::span<const double> scale, std::size_t n_out);

}  // namespace dualcs::kernels
