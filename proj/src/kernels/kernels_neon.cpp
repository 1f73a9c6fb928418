// NEON (AArch64) variants. Advanced SIMD is mandatory on AArch64, so no
// runtime probe is needed beyond the compile-time guard.

#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace dualcs::kernels::neon {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void abs2(const std::complex<double>* in, double* out, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(in);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2x2_t v = vld2q_f64(p + 2 * i);  // de-interleaved re / im
    vst1q_f64(out + i, vaddq_f64(vmulq_f64(v.val[0], v.val[0]), vmulq_f64(v.val[1], v.val[1])));
  }
  for (; i < n; ++i) {
    const double re = p[2 * i];
    const double im = p[2 * i + 1];
    out[i] = re * re + im * im;
  }
}

void power_moments(const double* w, const double* x, std::size_t nodes, const double* scale,
                   double* out, std::size_t n_out, double* work) {
  for (std::size_t k = 0; k < nodes; ++k) work[k] = w[k];
  const std::size_t vec_end = nodes - nodes % 2;
  for (std::size_t m = 0; m < n_out; ++m) {
    const bool last = m + 1 == n_out;
    const float64x2_t c = vdupq_n_f64(last ? 0.0 : scale[m]);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < vec_end; k += 2) {
      const float64x2_t u = vld1q_f64(work + k);
      acc = vaddq_f64(acc, u);
      if (!last) vst1q_f64(work + k, vmulq_f64(vmulq_f64(u, vld1q_f64(x + k)), c));
    }
    double s = vaddvq_f64(acc);
    for (std::size_t k = vec_end; k < nodes; ++k) {
      s += work[k];
      if (!last) work[k] = work[k] * x[k] * scale[m];
    }
    out[m] = s;
  }
}

}  // namespace dualcs::kernels::neon
