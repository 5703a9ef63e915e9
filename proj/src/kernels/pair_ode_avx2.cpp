#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "modecatch/kernels/pair_ode.hpp"

namespace modecatch::kernels {

// Four lanes per iteration, same mul/add sequence as the scalar reference
// (plain _mm256_mul/add/sub, no FMA) so results match bitwise. Negation uses
// a sign-mask xor to mirror scalar unary minus exactly.
void pair_ode_rk4_step_avx2(double* ur, double* ui, double* vr, double* vi, std::size_t n,
                            const PairOdeStep& s) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d ha = _mm256_set1_pd(0.5 * s.alpha);
  const __m256d hb = _mm256_set1_pd(0.5 * s.beta);
  const __m256d g0 = _mm256_set1_pd(s.g_start);
  const __m256d gm = _mm256_set1_pd(s.g_mid);
  const __m256d g1 = _mm256_set1_pd(s.g_end);
  const __m256d ng0 = _mm256_xor_pd(g0, sign);
  const __m256d ngm = _mm256_xor_pd(gm, sign);
  const __m256d ng1 = _mm256_xor_pd(g1, sign);
  const __m256d h = _mm256_set1_pd(s.h);
  const __m256d h2 = _mm256_set1_pd(0.5 * s.h);
  const __m256d h6 = _mm256_set1_pd(s.h / 6.0);
  const __m256d two = _mm256_set1_pd(2.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d u0r = _mm256_loadu_pd(ur + i);
    const __m256d u0i = _mm256_loadu_pd(ui + i);
    const __m256d v0r = _mm256_loadu_pd(vr + i);
    const __m256d v0i = _mm256_loadu_pd(vi + i);

    __m256d k1ur = _mm256_sub_pd(_mm256_mul_pd(ng0, v0i), _mm256_mul_pd(ha, u0r));
    __m256d k1ui = _mm256_sub_pd(_mm256_mul_pd(g0, v0r), _mm256_mul_pd(ha, u0i));
    __m256d k1vr = _mm256_sub_pd(_mm256_mul_pd(g0, u0i), _mm256_mul_pd(hb, v0r));
    __m256d k1vi = _mm256_sub_pd(_mm256_mul_pd(ng0, u0r), _mm256_mul_pd(hb, v0i));

    __m256d aur = _mm256_add_pd(u0r, _mm256_mul_pd(h2, k1ur));
    __m256d aui = _mm256_add_pd(u0i, _mm256_mul_pd(h2, k1ui));
    __m256d avr = _mm256_add_pd(v0r, _mm256_mul_pd(h2, k1vr));
    __m256d avi = _mm256_add_pd(v0i, _mm256_mul_pd(h2, k1vi));

    __m256d k2ur = _mm256_sub_pd(_mm256_mul_pd(ngm, avi), _mm256_mul_pd(ha, aur));
    __m256d k2ui = _mm256_sub_pd(_mm256_mul_pd(gm, avr), _mm256_mul_pd(ha, aui));
    __m256d k2vr = _mm256_sub_pd(_mm256_mul_pd(gm, aui), _mm256_mul_pd(hb, avr));
    __m256d k2vi = _mm256_sub_pd(_mm256_mul_pd(ngm, aur), _mm256_mul_pd(hb, avi));

    __m256d bur = _mm256_add_pd(u0r, _mm256_mul_pd(h2, k2ur));
    __m256d bui = _mm256_add_pd(u0i, _mm256_mul_pd(h2, k2ui));
    __m256d bvr = _mm256_add_pd(v0r, _mm256_mul_pd(h2, k2vr));
    __m256d bvi = _mm256_add_pd(v0i, _mm256_mul_pd(h2, k2vi));

    __m256d k3ur = _mm256_sub_pd(_mm256_mul_pd(ngm, bvi), _mm256_mul_pd(ha, bur));
    __m256d k3ui = _mm256_sub_pd(_mm256_mul_pd(gm, bvr), _mm256_mul_pd(ha, bui));
    __m256d k3vr = _mm256_sub_pd(_mm256_mul_pd(gm, bui), _mm256_mul_pd(hb, bvr));
    __m256d k3vi = _mm256_sub_pd(_mm256_mul_pd(ngm, bur), _mm256_mul_pd(hb, bvi));

    __m256d cur = _mm256_add_pd(u0r, _mm256_mul_pd(h, k3ur));
    __m256d cui = _mm256_add_pd(u0i, _mm256_mul_pd(h, k3ui));
    __m256d cvr = _mm256_add_pd(v0r, _mm256_mul_pd(h, k3vr));
    __m256d cvi = _mm256_add_pd(v0i, _mm256_mul_pd(h, k3vi));

    __m256d k4ur = _mm256_sub_pd(_mm256_mul_pd(ng1, cvi), _mm256_mul_pd(ha, cur));
    __m256d k4ui = _mm256_sub_pd(_mm256_mul_pd(g1, cvr), _mm256_mul_pd(ha, cui));
    __m256d k4vr = _mm256_sub_pd(_mm256_mul_pd(g1, cui), _mm256_mul_pd(hb, cvr));
    __m256d k4vi = _mm256_sub_pd(_mm256_mul_pd(ng1, cur), _mm256_mul_pd(hb, cvi));

    __m256d sur = _mm256_add_pd(_mm256_add_pd(k1ur, _mm256_mul_pd(two, k2ur)),
                                _mm256_add_pd(_mm256_mul_pd(two, k3ur), k4ur));
    __m256d sui = _mm256_add_pd(_mm256_add_pd(k1ui, _mm256_mul_pd(two, k2ui)),
                                _mm256_add_pd(_mm256_mul_pd(two, k3ui), k4ui));
    __m256d svr = _mm256_add_pd(_mm256_add_pd(k1vr, _mm256_mul_pd(two, k2vr)),
                                _mm256_add_pd(_mm256_mul_pd(two, k3vr), k4vr));
    __m256d svi = _mm256_add_pd(_mm256_add_pd(k1vi, _mm256_mul_pd(two, k2vi)),
                                _mm256_add_pd(_mm256_mul_pd(two, k3vi), k4vi));

    _mm256_storeu_pd(ur + i, _mm256_add_pd(u0r, _mm256_mul_pd(h6, sur)));
    _mm256_storeu_pd(ui + i, _mm256_add_pd(u0i, _mm256_mul_pd(h6, sui)));
    _mm256_storeu_pd(vr + i, _mm256_add_pd(v0r, _mm256_mul_pd(h6, svr)));
    _mm256_storeu_pd(vi + i, _mm256_add_pd(v0i, _mm256_mul_pd(h6, svi)));
  }

  if (i < n) {
    pair_ode_rk4_step_scalar(ur + i, ui + i, vr + i, vi + i, n - i, s);
  }
}

}  // namespace modecatch::kernels

#endif  // x86_64
