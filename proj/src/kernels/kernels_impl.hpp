#pragma once

#include <complex>
#include <cstddef>

namespace dualcs::kernels {

#define DUALCS_DECLARE_KERNELS(ns)                                                          \
  namespace ns {                                                                            \
  double dot(const double* a, const double* b, std::size_t n);                              \
  void abs2(const std::complex<double>* in, double* out, std::size_t n);                    \
  void power_moments(const double* w, const double* x, std::size_t nodes, const double* scale, \
                     double* out, std::size_t n_out, double* work);                         \
  }

DUALCS_DECLARE_KERNELS(scalar)
DUALCS_DECLARE_KERNELS(avx2)
DUALCS_DECLARE_KERNELS(neon)

#undef DUALCS_DECLARE_KERNELS

}  // namespace dualcs::kernels
