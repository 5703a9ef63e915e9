#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "modecatch/biphoton.hpp"

namespace modecatch {

/// Expansion of the pair amplitude into orthonormal temporal mode pairs,
/// K(t1,t2) = sum_k sqrt(lambda_k) f_k^o(t1) f_k^e(t2) under trapezoidal
/// quadrature. Each pair's free phase is rotated so the microwave mode's
/// largest-modulus sample is real positive.
struct SchmidtDecomposition {
  TimeGrid grid;
  std::vector<double> lambdas;       // full spectrum, descending, sums to 1
  Eigen::MatrixXcd optical_modes;    // column k: f_k^o on the grid
  Eigen::MatrixXcd microwave_modes;  // column k: f_k^e on the grid
  double entropy = 0.0;              // -sum lambda ln lambda, nats
  double truncation_mass = 0.0;      // sum of the kept lambdas
  int kept_modes = 0;
};

/// Weighted SVD of the normalized kernel. magnitude_only decomposes |K|
/// instead of K for comparison runs.
SchmidtDecomposition schmidt_decompose(const BiphotonKernel& kernel, int max_modes,
                                       bool magnitude_only = false);

/// -sum lambda_k ln(lambda_k) with 0 ln 0 := 0. Requires lambda_k >= 0 and
/// sum lambda = 1 within 1e-8.
double entanglement_entropy(const std::vector<double>& lambdas);

enum class ModeBranch { optical, microwave };

struct ModeProfile {
  std::vector<std::complex<double>> amplitude;
  std::vector<double> abs2;
};

/// The dominant temporal mode of the requested branch.
ModeProfile zero_mode_profile(const SchmidtDecomposition& decomp, ModeBranch branch);

/// Rebuild the kernel from the kept modes (testing aid).
Eigen::MatrixXcd reconstruct_kernel(const SchmidtDecomposition& decomp);

}  // namespace modecatch
