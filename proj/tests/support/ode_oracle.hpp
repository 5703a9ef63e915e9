#pragma once

// Test-only reference integration, kept independent of the library's solvers:
// plain fixed-step RK4 on the capture equation
//   d'(t) = -kappa(t)/2 d(t) + sqrt(kappa(t)) f(t)
// plus small search helpers used to derive expected values.

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

struct CaptureState {
  std::complex<double> d{0.0, 0.0};
  double energy_out = 0.0;
};

template <class F, class K>
CaptureState integrate_capture(F f, K kappa, double t0, double t1, int steps,
                               std::complex<double> d0 = {0.0, 0.0}) {
  CaptureState s;
  s.d = d0;
  const double h = (t1 - t0) / steps;
  auto deriv = [&](double t, const CaptureState& st) {
    const double k = kappa(t);
    const double sk = std::sqrt(k);
    CaptureState out;
    out.d = -0.5 * k * st.d + sk * f(t);
    out.energy_out = std::norm(f(t) - sk * st.d);
    return out;
  };
  for (int i = 0; i < steps; ++i) {
    const double t = t0 + i * h;
    const CaptureState k1 = deriv(t, s);
    CaptureState s2{s.d + 0.5 * h * k1.d, 0.0};
    const CaptureState k2 = deriv(t + 0.5 * h, s2);
    CaptureState s3{s.d + 0.5 * h * k2.d, 0.0};
    const CaptureState k3 = deriv(t + 0.5 * h, s3);
    CaptureState s4{s.d + h * k3.d, 0.0};
    const CaptureState k4 = deriv(t + h, s4);
    s.d += h / 6.0 * (k1.d + 2.0 * (k2.d + k3.d) + k4.d);
    s.energy_out += h / 6.0 * (k1.energy_out + 2.0 * (k2.energy_out + k3.energy_out) +
                               k4.energy_out);
  }
  return s;
}

/// argmax of a scalar function over a dense scan plus golden-section refine.
template <class F>
double argmax(F f, double a, double b, int scan = 4000) {
  double best_t = a, best_v = f(a);
  for (int i = 1; i <= scan; ++i) {
    const double t = a + (b - a) * i / scan;
    const double v = f(t);
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  }
  double lo = std::max(a, best_t - (b - a) / scan);
  double hi = std::min(b, best_t + (b - a) / scan);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  for (int k = 0; k < 200; ++k) {
    if (f(c) < f(d)) {
      lo = c;
    } else {
      hi = d;
    }
    c = hi - gr * (hi - lo);
    d = lo + gr * (hi - lo);
  }
  return 0.5 * (lo + hi);
}

/// first root of f on [a,b] by scan plus bisection.
template <class F>
double first_root(F f, double a, double b, int scan = 20000) {
  double prev_t = a, prev_v = f(a);
  for (int i = 1; i <= scan; ++i) {
    const double t = a + (b - a) * i / scan;
    const double v = f(t);
    if ((prev_v > 0.0 && v <= 0.0) || (prev_v < 0.0 && v >= 0.0)) {
      double lo = prev_t, hi = t, flo = prev_v;
      for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo > 0.0) == (fm > 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev_t = t;
    prev_v = v;
  }
  return std::nan("");
}

}  // namespace oracle
