#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "modecatch/pump.hpp"
#include "modecatch/system_params.hpp"
#include "modecatch/time_grid.hpp"

namespace modecatch {

struct FockOptions {
  double inner_dt = 0.05e-9;
  bool output_ports = true;
  /// Population of the top Fock level above this flags a truncation warning.
  double top_population_warn = 1e-6;
};

/// Truncated-Fock Lindblad result: the coincidence density |f(t1,t2)|^2
/// (unnormalized, extraction-port scaled) obtained by regression for both
/// detection orderings. Validation oracle for the Gaussian engine.
struct FockCorrelator {
  TimeGrid grid;
  Eigen::MatrixXd pair_probability;  // row t1 (optical), column t2 (microwave)
  double max_trace_residual = 0.0;
  double max_top_population = 0.0;
  bool truncation_warning = false;
};

/// cutoff_* is the highest retained photon number of each mode (>= 3).
FockCorrelator fock_correlator_oracle(const SystemParams& params, const PumpShape& pump,
                                      const TimeGrid& grid, int cutoff_optical,
                                      int cutoff_microwave, const FockOptions& opts = {});

/// Equal-time expectations from the same Lindblad propagation, for
/// cross-checking the moment engine.
struct FockMoments {
  TimeGrid grid;
  std::vector<double> n_a;
  std::vector<double> n_c;
  std::vector<std::complex<double>> m_ac;
  double max_trace_residual = 0.0;
  double max_top_population = 0.0;
};

FockMoments fock_equal_time_moments(const SystemParams& params, const PumpShape& pump,
                                    const TimeGrid& grid, int cutoff_optical,
                                    int cutoff_microwave, const FockOptions& opts = {});

}  // namespace modecatch
