#include "modecatch/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "modecatch/errors.hpp"
#include "modecatch/units.hpp"

namespace modecatch {

namespace {

struct Moments {
  double n_a = 0.0;
  double n_c = 0.0;
  double m_re = 0.0;
  double m_im = 0.0;
};

// Closed moment system of the two-mode-squeezing drift with vacuum inputs:
//   n_a' = -kappa_o n_a + 2 g Im(m)
//   n_c' = -kappa_e n_c + 2 g Im(m)
//   m'   = i g (n_a + n_c + 1) - (kappa_o + kappa_e)/2 m
Moments derivative(const Moments& s, double g, double kappa_o, double kappa_e) {
  Moments d;
  d.n_a = -kappa_o * s.n_a + 2.0 * g * s.m_im;
  d.n_c = -kappa_e * s.n_c + 2.0 * g * s.m_im;
  const double kbar = 0.5 * (kappa_o + kappa_e);
  d.m_re = -kbar * s.m_re;
  d.m_im = g * (s.n_a + s.n_c + 1.0) - kbar * s.m_im;
  return d;
}

Moments axpy(const Moments& s, double h, const Moments& d) {
  return {s.n_a + h * d.n_a, s.n_c + h * d.n_c, s.m_re + h * d.m_re, s.m_im + h * d.m_im};
}

}  // namespace

MomentTrajectory evolve_equal_time_moments(const SystemParams& params, const PumpShape& pump,
                                           const TimeGrid& grid, const MomentOptions& opts) {
  grid.validate();
  const double kappa_o = params.kappa_o();
  const double kappa_e = params.kappa_e();

  double dt_target = opts.dt;
  if (dt_target <= 0.0) {
    const double g_max = max_squeezing_strength(pump, params, grid);
    double scale = std::min(1.0 / kappa_o, 1.0 / kappa_e);
    if (g_max > 0.0) scale = std::min(scale, 1.0 / g_max);
    dt_target = scale / 20.0;
  }

  MomentTrajectory traj;
  traj.grid = grid;
  traj.n_a.resize(grid.n_points);
  traj.n_c.resize(grid.n_points);
  traj.m_ac.resize(grid.n_points);

  auto g_at = [&](double t) { return squeezing_strength(pump, params, t); };

  Moments s;  // vacuum start
  const int n_sub = std::max(1, static_cast<int>(std::ceil(grid.dt() / dt_target)));
  const double h = grid.dt() / n_sub;

  auto record = [&](int node) {
    traj.n_a[node] = s.n_a;
    traj.n_c[node] = s.n_c;
    traj.m_ac[node] = {s.m_re, s.m_im};
  };
  record(0);

  for (int node = 0; node + 1 < grid.n_points; ++node) {
    const double t0 = grid.t(node);
    for (int k = 0; k < n_sub; ++k) {
      const double t = t0 + k * h;
      const double g1 = g_at(t);
      const double gm = g_at(t + 0.5 * h);
      const double g2 = g_at(t + h);
      const Moments d1 = derivative(s, g1, kappa_o, kappa_e);
      const Moments d2 = derivative(axpy(s, 0.5 * h, d1), gm, kappa_o, kappa_e);
      const Moments d3 = derivative(axpy(s, 0.5 * h, d2), gm, kappa_o, kappa_e);
      const Moments d4 = derivative(axpy(s, h, d3), g2, kappa_o, kappa_e);
      s.n_a += h / 6.0 * (d1.n_a + 2.0 * (d2.n_a + d3.n_a) + d4.n_a);
      s.n_c += h / 6.0 * (d1.n_c + 2.0 * (d2.n_c + d3.n_c) + d4.n_c);
      s.m_re += h / 6.0 * (d1.m_re + 2.0 * (d2.m_re + d3.m_re) + d4.m_re);
      s.m_im += h / 6.0 * (d1.m_im + 2.0 * (d2.m_im + d3.m_im) + d4.m_im);

      const double magnitude =
          std::max({std::abs(s.n_a), std::abs(s.n_c), std::hypot(s.m_re, s.m_im)});
      if (!(magnitude <= opts.divergence_bound)) {
        const double t_fail = t + h;
        throw DivergenceError("moment propagation diverged at t = " +
                                  std::to_string(units::ns_from_seconds(t_fail)) +
                                  " ns (moments exceeded " +
                                  std::to_string(opts.divergence_bound) + ")",
                              t_fail);
      }
    }
    record(node + 1);
  }
  return traj;
}

}  // namespace modecatch
