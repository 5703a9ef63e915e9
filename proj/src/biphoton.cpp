#include "modecatch/biphoton.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "modecatch/errors.hpp"
#include "modecatch/kernels/pair_ode.hpp"
#include "modecatch/kernels/reduce.hpp"
#include "modecatch/units.hpp"

namespace modecatch {

namespace {

using cd = std::complex<double>;

// Propagates the regression pair for every anchor of one triangle in a single
// sweep. Lanes share the drive g(t), so the update is the batched kernel:
// lane i holds (u, v) = (<X_late X_early-pair moment>, partner moment) with
// u' = i g v - alpha/2 u, v' = -i g u - beta/2 v.
//
// Upper triangle (t2 >= t1): anchor i activates at node i with
//   u = <a c>(t1_i), v = <a'a>(t1_i); alpha = kappa_e, beta = kappa_o;
//   K(i, j) = u_i recorded while sweeping t2.
// Lower triangle: anchor j activates with v = <c'c>(t2_j); alpha = kappa_o,
// beta = kappa_e; K(i, j) = u_j recorded while sweeping t1.
struct TriangleSweep {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> ur, ui, vr, vi;

  void reserve(int n) {
    ur.reserve(n);
    ui.reserve(n);
    vr.reserve(n);
    vi.reserve(n);
  }

  void activate(cd u, double v) {
    ur.push_back(u.real());
    ui.push_back(u.imag());
    vr.push_back(v);
    vi.push_back(0.0);
  }

  std::size_t lanes() const { return ur.size(); }

  void advance(double t0, double h, int n_sub, const std::function<double(double)>& g_at) {
    for (int k = 0; k < n_sub; ++k) {
      const double t = t0 + k * h;
      kernels::PairOdeStep step;
      step.alpha = alpha;
      step.beta = beta;
      step.g_start = g_at(t);
      step.g_mid = g_at(t + 0.5 * h);
      step.g_end = g_at(t + h);
      step.h = h;
      kernels::pair_ode_rk4_step(ur.data(), ui.data(), vr.data(), vi.data(), lanes(), step);
    }
  }

  double max_abs() const {
    double m = 0.0;
    for (std::size_t i = 0; i < lanes(); ++i) {
      m = std::max(m, std::hypot(ur[i], ui[i]));
    }
    return m;
  }
};

}  // namespace

double BiphotonKernel::quadrature_abs2_integral() const {
  const auto w = grid.trapezoid_weights();
  double total = 0.0;
  for (int j = 0; j < grid.n_points; ++j) {
    total += w[static_cast<std::size_t>(j)] *
             kernels::weighted_abs2_sum(values.col(j).data(), w.data(),
                                        static_cast<std::size_t>(grid.n_points));
  }
  return total;
}

BiphotonKernel biphoton_kernel_from_moments(const SystemParams& params, const PumpShape& pump,
                                            const MomentTrajectory& moments,
                                            const KernelOptions& opts) {
  const TimeGrid& grid = moments.grid;
  const int n = grid.n_points;
  const int n_sub = std::max(1, static_cast<int>(std::ceil(grid.dt() / opts.inner_dt)));
  const double h = grid.dt() / n_sub;

  auto g_at = [&](double t) { return squeezing_strength(pump, params, t); };

  BiphotonKernel kernel;
  kernel.grid = grid;
  kernel.output_ports = opts.output_ports;
  kernel.values = Eigen::MatrixXcd::Zero(n, n);

  auto check_divergence = [&](const TriangleSweep& sweep, double t) {
    if (!(sweep.max_abs() <= opts.divergence_bound)) {
      throw DivergenceError("two-time propagation diverged at t = " +
                                std::to_string(units::ns_from_seconds(t)) + " ns",
                            t);
    }
  };

  // Upper triangle: sweep t2, anchors at each t1.
  {
    TriangleSweep sweep;
    sweep.alpha = params.kappa_e();
    sweep.beta = params.kappa_o();
    sweep.reserve(n);
    for (int j = 0; j < n; ++j) {
      if (j > 0) sweep.advance(grid.t(j - 1), h, n_sub, g_at);
      sweep.activate(moments.m_ac[j], moments.n_a[j]);
      for (int i = 0; i <= j; ++i) {
        kernel.values(i, j) = cd(sweep.ur[i], sweep.ui[i]);
      }
      check_divergence(sweep, grid.t(j));
    }
  }

  // Lower triangle: sweep t1, anchors at each t2.
  {
    TriangleSweep sweep;
    sweep.alpha = params.kappa_o();
    sweep.beta = params.kappa_e();
    sweep.reserve(n);
    for (int i = 0; i < n; ++i) {
      if (i > 0) sweep.advance(grid.t(i - 1), h, n_sub, g_at);
      sweep.activate(moments.m_ac[i], moments.n_c[i]);
      for (int j = 0; j < i; ++j) {
        kernel.values(i, j) = cd(sweep.ur[j], sweep.ui[j]);
      }
      check_divergence(sweep, grid.t(i));
    }
  }

  if (opts.output_ports) {
    kernel.values *= std::sqrt(params.kappa_o_c * params.kappa_e_c);
  }

  kernel.norm = kernel.quadrature_abs2_integral();
  kernel.generation_probability = kernel.norm;
  if (kernel.norm > 0.0) {
    kernel.values /= std::sqrt(kernel.norm);
    // Deterministic global phase: largest-modulus entry made real positive.
    Eigen::Index imax = 0, jmax = 0;
    double best = -1.0;
    for (Eigen::Index j = 0; j < kernel.values.cols(); ++j) {
      for (Eigen::Index i = 0; i < kernel.values.rows(); ++i) {
        const double a = std::norm(kernel.values(i, j));
        if (a > best) {
          best = a;
          imax = i;
          jmax = j;
        }
      }
    }
    const cd peak = kernel.values(imax, jmax);
    const double mag = std::abs(peak);
    if (mag > 0.0) kernel.values *= std::conj(peak) / mag;
  }
  return kernel;
}

BiphotonKernel biphoton_kernel(const SystemParams& params, const PumpShape& pump,
                               const TimeGrid& grid, const KernelOptions& opts) {
  MomentOptions mopts;
  mopts.divergence_bound = opts.divergence_bound;
  const MomentTrajectory moments = evolve_equal_time_moments(params, pump, grid, mopts);
  return biphoton_kernel_from_moments(params, pump, moments, opts);
}

}  // namespace modecatch
