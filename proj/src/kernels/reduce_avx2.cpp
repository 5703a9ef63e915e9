#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "modecatch/kernels/reduce.hpp"

namespace modecatch::kernels {

namespace {

inline double hsum128(__m128d v) {
  const __m128d hi = _mm_unpackhi_pd(v, v);
  return _mm_cvtsd_f64(_mm_add_sd(v, hi));
}

}  // namespace

// Two complex values per iteration; the two partial sums accumulate even and
// odd pairs separately, so the result differs from the sequential reference
// only by rounding.
double weighted_abs2_sum_avx2(const std::complex<double>* z, const double* w, std::size_t n) {
  const double* zd = reinterpret_cast<const double*>(z);
  __m128d acc = _mm_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(zd + 2 * i);  // r0 i0 r1 i1
    const __m256d sq = _mm256_mul_pd(v, v);
    const __m128d lo = _mm256_castpd256_pd128(sq);
    const __m128d hi = _mm256_extractf128_pd(sq, 1);
    const __m128d sums = _mm_hadd_pd(lo, hi);  // |z0|^2 |z1|^2
    const __m128d wv = _mm_loadu_pd(w + i);
    acc = _mm_add_pd(acc, _mm_mul_pd(sums, wv));
  }
  double out = hsum128(acc);
  for (; i < n; ++i) {
    const double re = z[i].real();
    const double im = z[i].imag();
    out += (re * re + im * im) * w[i];
  }
  return out;
}

double abs2_sum_avx2(const std::complex<double>* z, std::size_t n) {
  const double* zd = reinterpret_cast<const double*>(z);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(zd + 2 * i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  double out = hsum128(_mm_add_pd(lo, hi));
  for (; i < n; ++i) {
    const double re = z[i].real();
    const double im = z[i].imag();
    out += re * re + im * im;
  }
  return out;
}

}  // namespace modecatch::kernels

#endif  // x86_64
