// Reference implementations. The vector variants are tested against these.

#include "kernels_impl.hpp"

namespace dualcs::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void abs2(const std::complex<double>* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = in[i].real();
    const double im = in[i].imag();
    out[i] = re * re + im * im;
  }
}

void power_moments(const double* w, const double* x, std::size_t nodes, const double* scale,
                   double* out, std::size_t n_out, double* work) {
  for (std::size_t k = 0; k < nodes; ++k) work[k] = w[k];
  for (std::size_t m = 0; m < n_out; ++m) {
    double s = 0.0;
    for (std::size_t k = 0; k < nodes; ++k) s += work[k];
    out[m] = s;
    if (m + 1 == n_out) break;
    const double c = scale[m];
    for (std::size_t k = 0; k < nodes; ++k) work[k] = work[k] * x[k] * c;
  }
}

}  // namespace dualcs::kernels::scalar
