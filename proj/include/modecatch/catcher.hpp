#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "modecatch/time_grid.hpp"

namespace modecatch {

/// Input photon for the receiving cavity: grid samples plus the evaluator the
/// integrator calls between nodes. Sampled sources interpolate linearly and
/// vanish outside the window; analytic sources keep their exact form.
struct InputPhoton {
  TimeGrid grid;
  std::vector<std::complex<double>> samples;
  std::function<std::complex<double>(double)> profile;
  double norm = 0.0;  // quadrature norm after construction; 0 only for the zero photon

  /// Renormalizes to unit quadrature norm (identically-zero input is kept as is).
  static InputPhoton from_samples(const TimeGrid& grid,
                                  std::vector<std::complex<double>> samples);

  /// Samples f on the grid. renormalize=false trusts the caller that f has
  /// unit norm (exact analytic profiles).
  static InputPhoton from_function(const TimeGrid& grid,
                                   std::function<std::complex<double>(double)> f,
                                   bool renormalize = true);
};

struct FixedRule {
  double kappa1 = 0.0;
};

struct FunctionRule {
  std::function<double(double)> kappa1;
};

/// Hold kappa_init until the balance time, then kappa1(t) = |f_in(t)|^2 over
/// the accumulated cavity energy, clamped to [kappa_min, kappa_max].
struct BalancedRule {
  double kappa_init = 0.0;
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  double t_b = 0.0;       // balance time found during synthesis, s
  double d_b_abs2 = 0.0;  // |d(t_b)|^2
};

struct CouplingSchedule {
  TimeGrid grid;
  std::vector<double> kappa1;    // sampled schedule at the nodes
  int balance_index = 0;         // first node at or after t_b (0 when not applicable)
  std::vector<std::uint8_t> clamped;  // nodes where the rule hit a bound
  std::variant<FixedRule, FunctionRule, BalancedRule> rule;

  static CouplingSchedule from_fixed(const TimeGrid& grid, double kappa1);
  static CouplingSchedule from_function(const TimeGrid& grid,
                                        std::function<double(double)> kappa1);
};

struct CaptureOptions {
  double inner_dt = 0.0;  // 0: grid.dt()/64
};

/// Full capture trajectory. Energy bookkeeping is co-integrated:
/// eta(t) + integral|d_out|^2 = integral|f_in|^2 at every sample.
struct CaptureRun {
  InputPhoton photon;
  CouplingSchedule schedule;
  std::vector<std::complex<double>> d;
  std::vector<std::complex<double>> d_out;
  std::vector<double> eta;
  std::vector<double> energy_in;
  std::vector<double> energy_out;
  double bookkeeping_residual = 0.0;  // max |eta + energy_out - energy_in|
  double energy_out_at_balance = 0.0;
};

/// Phase 1 holds kappa_init and waits for the outgoing field to cross zero;
/// phase 2 keeps the balance by construction. Throws NoBalanceError when no
/// crossing occurs in the window.
CouplingSchedule synthesize_schedule(const InputPhoton& photon, double kappa1_init,
                                     double kappa_min, double kappa_max,
                                     const CaptureOptions& opts = {});

CaptureRun simulate_capture(const InputPhoton& photon, const CouplingSchedule& schedule,
                            const CaptureOptions& opts = {});

struct CaptureSummary {
  double eta_final = 0.0;
  double t_b = 0.0;  // NaN when the schedule has no balance phase
  double reflected_before_balance = 0.0;
  double kappa_max_used = 0.0;
  double kappa_min_after_balance = 0.0;
  double bookkeeping_residual = 0.0;
  bool clamped_anywhere = false;
};

CaptureSummary capture_report(const CaptureRun& run);

}  // namespace modecatch
