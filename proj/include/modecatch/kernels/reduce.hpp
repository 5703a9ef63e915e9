#pragma once

#include <complex>
#include <cstddef>

namespace modecatch::kernels {

/// sum_i w_i |z_i|^2 over interleaved complex data.
double weighted_abs2_sum(const std::complex<double>* z, const double* w, std::size_t n);

/// sum_i |z_i|^2 over interleaved complex data.
double abs2_sum(const std::complex<double>* z, std::size_t n);

// Individual backends, exposed for equivalence tests. The SIMD variants use a
// different accumulation order than the sequential reference, so agreement is
// up to rounding, not bitwise.
double weighted_abs2_sum_scalar(const std::complex<double>* z, const double* w, std::size_t n);
double abs2_sum_scalar(const std::complex<double>* z, std::size_t n);
#if defined(__x86_64__) || defined(_M_X64)
double weighted_abs2_sum_avx2(const std::complex<double>* z, const double* w, std::size_t n);
double abs2_sum_avx2(const std::complex<double>* z, std::size_t n);
#endif

}  // namespace modecatch::kernels
