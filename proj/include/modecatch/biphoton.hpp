#pragma once

#include <Eigen/Dense>
#include <complex>

#include "modecatch/moments.hpp"

namespace modecatch {

struct KernelOptions {
  /// Step for the two-time row propagation between grid nodes.
  double inner_dt = 0.05e-9;
  /// Scale by sqrt(kappa_o_c * kappa_e_c): pair amplitude of the fields at the
  /// extraction ports. false gives the intracavity correlator instead.
  bool output_ports = true;
  double divergence_bound = 1e3;
};

/// Pair amplitude K(t1, t2) sampled on grid x grid and unit-normalized under
/// trapezoidal quadrature. Row i is the optical time t1_i, column j the
/// microwave time t2_j. The global phase is fixed so the entry of largest
/// modulus is real positive.
struct BiphotonKernel {
  TimeGrid grid;
  Eigen::MatrixXcd values;
  double norm = 0.0;                    // pre-normalization integral of |f|^2
  double generation_probability = 0.0;  // same integral; the pair-emission scale
  bool output_ports = true;

  /// Quadrature value of the double integral of |K|^2 (1 after normalization).
  double quadrature_abs2_integral() const;
};

/// Two-time pair correlator of the pumped transducer, computed by propagating
/// the regression pair from the equal-time moments along each triangle.
BiphotonKernel biphoton_kernel(const SystemParams& params, const PumpShape& pump,
                               const TimeGrid& grid, const KernelOptions& opts = {});

/// Same, reusing a precomputed equal-time trajectory on the identical grid.
BiphotonKernel biphoton_kernel_from_moments(const SystemParams& params, const PumpShape& pump,
                                            const MomentTrajectory& moments,
                                            const KernelOptions& opts = {});

}  // namespace modecatch
