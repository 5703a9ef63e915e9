#include "modecatch/kernels/dispatch.hpp"
#include "modecatch/kernels/pair_ode.hpp"

namespace modecatch::kernels {

// Reference path. The per-lane arithmetic and its order are mirrored exactly
// by the AVX2 variant (no FMA contraction on either side), so the two
// backends produce bitwise-identical states.
void pair_ode_rk4_step_scalar(double* ur, double* ui, double* vr, double* vi, std::size_t n,
                              const PairOdeStep& s) {
  const double ha = 0.5 * s.alpha;
  const double hb = 0.5 * s.beta;
  const double h2 = 0.5 * s.h;
  const double h6 = s.h / 6.0;

  for (std::size_t i = 0; i < n; ++i) {
    const double u0r = ur[i], u0i = ui[i], v0r = vr[i], v0i = vi[i];

    const double k1ur = -s.g_start * v0i - ha * u0r;
    const double k1ui = s.g_start * v0r - ha * u0i;
    const double k1vr = s.g_start * u0i - hb * v0r;
    const double k1vi = -s.g_start * u0r - hb * v0i;

    const double aur = u0r + h2 * k1ur;
    const double aui = u0i + h2 * k1ui;
    const double avr = v0r + h2 * k1vr;
    const double avi = v0i + h2 * k1vi;

    const double k2ur = -s.g_mid * avi - ha * aur;
    const double k2ui = s.g_mid * avr - ha * aui;
    const double k2vr = s.g_mid * aui - hb * avr;
    const double k2vi = -s.g_mid * aur - hb * avi;

    const double bur = u0r + h2 * k2ur;
    const double bui = u0i + h2 * k2ui;
    const double bvr = v0r + h2 * k2vr;
    const double bvi = v0i + h2 * k2vi;

    const double k3ur = -s.g_mid * bvi - ha * bur;
    const double k3ui = s.g_mid * bvr - ha * bui;
    const double k3vr = s.g_mid * bui - hb * bvr;
    const double k3vi = -s.g_mid * bur - hb * bvi;

    const double cur = u0r + s.h * k3ur;
    const double cui = u0i + s.h * k3ui;
    const double cvr = v0r + s.h * k3vr;
    const double cvi = v0i + s.h * k3vi;

    const double k4ur = -s.g_end * cvi - ha * cur;
    const double k4ui = s.g_end * cvr - ha * cui;
    const double k4vr = s.g_end * cui - hb * cvr;
    const double k4vi = -s.g_end * cur - hb * cvi;

    ur[i] = u0r + h6 * ((k1ur + 2.0 * k2ur) + (2.0 * k3ur + k4ur));
    ui[i] = u0i + h6 * ((k1ui + 2.0 * k2ui) + (2.0 * k3ui + k4ui));
    vr[i] = v0r + h6 * ((k1vr + 2.0 * k2vr) + (2.0 * k3vr + k4vr));
    vi[i] = v0i + h6 * ((k1vi + 2.0 * k2vi) + (2.0 * k3vi + k4vi));
  }
}

void pair_ode_rk4_step(double* ur, double* ui, double* vr, double* vi, std::size_t n,
                       const PairOdeStep& s) {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_backend() == Backend::avx2) {
    pair_ode_rk4_step_avx2(ur, ui, vr, vi, n, s);
    return;
  }
#endif
  pair_ode_rk4_step_scalar(ur, ui, vr, vi, n, s);
}

}  // namespace modecatch::kernels
