#pragma once

#include <cstddef>

namespace modecatch::kernels {

/// One fixed-step RK4 update of the two-time correlation pair system,
/// applied to a batch of independent lanes that share the drive:
///
///   u' =  i g(t) v - (alpha/2) u
///   v' = -i g(t) u - (beta/2)  v
///
/// Arrays are separated re/im (SoA). g is sampled at the step start,
/// midpoint and end so every RK4 stage sees the exact drive value.
struct PairOdeStep {
  double alpha = 0.0;
  double beta = 0.0;
  double g_start = 0.0;
  double g_mid = 0.0;
  double g_end = 0.0;
  double h = 0.0;
};

void pair_ode_rk4_step(double* ur, double* ui, double* vr, double* vi, std::size_t n,
                       const PairOdeStep& s);

// Individual backends, exposed for equivalence tests.
void pair_ode_rk4_step_scalar(double* ur, double* ui, double* vr, double* vi, std::size_t n,
                              const PairOdeStep& s);
#if defined(__x86_64__) || defined(_M_X64)
void pair_ode_rk4_step_avx2(double* ur, double* ui, double* vr, double* vi, std::size_t n,
                            const PairOdeStep& s);
#endif

}  // namespace modecatch::kernels
