#pragma once

#include <complex>
#include <vector>

#include "modecatch/pump.hpp"
#include "modecatch/system_params.hpp"
#include "modecatch/time_grid.hpp"

namespace modecatch {

struct MomentOptions {
  /// Inner integration step; 0 derives min(1/kappa_o, 1/kappa_e, 1/g_max)/20.
  double dt = 0.0;
  /// Moments above this abort with a DivergenceError.
  double divergence_bound = 1e3;
};

/// Equal-time second moments of the two-mode-squeezing dynamics from vacuum,
/// sampled on the grid. First moments stay zero; <a c'> and <a a> stay zero
/// by the pairing structure, so {n_a, n_c, <a c>} is a closed set.
struct MomentTrajectory {
  TimeGrid grid;
  std::vector<double> n_a;                 // <a'a>
  std::vector<double> n_c;                 // <c'c>
  std::vector<std::complex<double>> m_ac;  // <a c>
};

MomentTrajectory evolve_equal_time_moments(const SystemParams& params, const PumpShape& pump,
                                           const TimeGrid& grid,
                                           const MomentOptions& opts = {});

}  // namespace modecatch
