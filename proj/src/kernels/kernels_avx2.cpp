// AVX2 variants. Compiled with -mavx2 -mfma; only called after a CPUID check.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace dualcs::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void abs2(const std::complex<double>* in, double* out, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(in);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(p + 2 * i);      // r0 i0 r1 i1
    const __m256d v1 = _mm256_loadu_pd(p + 2 * i + 4);  // r2 i2 r3 i3
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    // h = |c0|^2 |c2|^2 |c1|^2 |c3|^2
    _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0)));
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
  const std::size_t vec_end = nodes - nodes % 4;
  for (std::size_t m = 0; m < n_out; ++m) {
    const bool last = m + 1 == n_out;
    const __m256d c = _mm256_set1_pd(last ? 0.0 : scale[m]);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < vec_end; k += 4) {
      const __m256d u = _mm256_loadu_pd(work + k);
      acc = _mm256_add_pd(acc, u);
      if (!last) {
        _mm256_storeu_pd(work + k, _mm256_mul_pd(_mm256_mul_pd(u, _mm256_loadu_pd(x + k)), c));
      }
    }
    double s = hsum(acc);
    for (std::size_t k = vec_end; k < nodes; ++k) {
      s += work[k];
      if (!last) work[k] = work[k] * x[k] * scale[m];
    }
    out[m] = s;
  }
}

}  // namespace dualcs::kernels::avx2
