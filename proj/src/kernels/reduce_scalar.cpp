#include "modecatch/kernels/dispatch.hpp"
#include "modecatch/kernels/reduce.hpp"

namespace modecatch::kernels {

double weighted_abs2_sum_scalar(const std::complex<double>* z, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = z[i].real();
    const double im = z[i].imag();
    acc += (re * re + im * im) * w[i];
  }
  return acc;
}

double abs2_sum_scalar(const std::complex<double>* z, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = z[i].real();
    const double im = z[i].imag();
    acc += re * re + im * im;
  }
  return acc;
}

double weighted_abs2_sum(const std::complex<double>* z, const double* w, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_backend() == Backend::avx2) return weighted_abs2_sum_avx2(z, w, n);
#endif
  return weighted_abs2_sum_scalar(z, w, n);
}

double abs2_sum(const std::complex<double>* z, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_backend() == Backend::avx2) return abs2_sum_avx2(z, n);
#endif
  return abs2_sum_scalar(z, n);
}

}  // namespace modecatch::kernels
