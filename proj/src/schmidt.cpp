#include "modecatch/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace modecatch {

SchmidtDecomposition schmidt_decompose(const BiphotonKernel& kernel, int max_modes,
                                       bool magnitude_only) {
  if (max_modes < 1) throw std::invalid_argument("schmidt_decompose: max_modes must be >= 1");
  kernel.grid.validate();
  const int n = kernel.grid.n_points;
  if (kernel.values.rows() != n || kernel.values.cols() != n) {
    throw std::invalid_argument("schmidt_decompose: kernel shape does not match its grid");
  }
  const double integral = kernel.quadrature_abs2_integral();
  if (std::abs(integral - 1.0) > 1e-8) {
    throw std::invalid_argument("schmidt_decompose: kernel is not unit-normalized");
  }

  const auto w = kernel.grid.trapezoid_weights();
  Eigen::VectorXd sqrt_w(n);
  for (int i = 0; i < n; ++i) sqrt_w(i) = std::sqrt(w[static_cast<std::size_t>(i)]);

  // Quadrature-weighted matrix: M_ij = sqrt(w_i) K_ij sqrt(w_j); its singular
  // values are the sqrt(lambda) of the continuous decomposition.
  Eigen::MatrixXcd m(n, n);
  if (magnitude_only) {
    m = kernel.values.cwiseAbs().cast<std::complex<double>>();
  } else {
    m = kernel.values;
  }
  m = sqrt_w.asDiagonal() * m * sqrt_w.asDiagonal();

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd s = svd.singularValues();
  const double s2_total = s.squaredNorm();
  if (!(s2_total > 0)) throw std::invalid_argument("schmidt_decompose: zero kernel");

  SchmidtDecomposition out;
  out.grid = kernel.grid;
  out.lambdas.resize(static_cast<std::size_t>(s.size()));
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    out.lambdas[static_cast<std::size_t>(k)] = s(k) * s(k) / s2_total;
  }
  out.entropy = entanglement_entropy(out.lambdas);

  const int kept = std::min<int>(max_modes, static_cast<int>(s.size()));
  out.kept_modes = kept;
  out.truncation_mass = 0.0;
  for (int k = 0; k < kept; ++k) out.truncation_mass += out.lambdas[static_cast<std::size_t>(k)];

  out.optical_modes.resize(n, kept);
  out.microwave_modes.resize(n, kept);
  for (int k = 0; k < kept; ++k) {
    Eigen::VectorXcd fo = svd.matrixU().col(k);
    Eigen::VectorXcd fe = svd.matrixV().col(k).conjugate();
    for (int i = 0; i < n; ++i) {
      fo(i) /= sqrt_w(i);
      fe(i) /= sqrt_w(i);
    }
    // One phase per pair is free: rotate so the microwave mode's
    // largest-modulus sample is real positive (deterministic catcher input).
    Eigen::Index peak = 0;
    fe.cwiseAbs().maxCoeff(&peak);
    const std::complex<double> ph = fe(peak);
    if (std::abs(ph) > 0) {
      const std::complex<double> rot = std::conj(ph) / std::abs(ph);
      fe *= rot;
      fo *= std::conj(rot);
    }
    out.optical_modes.col(k) = fo;
    out.microwave_modes.col(k) = fe;
  }
  return out;
}

double entanglement_entropy(const std::vector<double>& lambdas) {
  double total = 0.0;
  for (double l : lambdas) {
    if (l < -1e-12) throw std::invalid_argument("entanglement_entropy: negative weight");
    total += l;
  }
  if (std::abs(total - 1.0) > 1e-8) {
    throw std::invalid_argument("entanglement_entropy: weights must sum to 1");
  }
  double s = 0.0;
  for (double l : lambdas) {
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

ModeProfile zero_mode_profile(const SchmidtDecomposition& decomp, ModeBranch branch) {
  if (decomp.kept_modes < 1) throw std::invalid_argument("zero_mode_profile: empty decomposition");
  const Eigen::MatrixXcd& modes =
      branch == ModeBranch::optical ? decomp.optical_modes : decomp.microwave_modes;
  ModeProfile profile;
  const int n = decomp.grid.n_points;
  profile.amplitude.resize(static_cast<std::size_t>(n));
  profile.abs2.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    profile.amplitude[static_cast<std::size_t>(i)] = modes(i, 0);
    profile.abs2[static_cast<std::size_t>(i)] = std::norm(modes(i, 0));
  }
  return profile;
}

Eigen::MatrixXcd reconstruct_kernel(const SchmidtDecomposition& decomp) {
  const int n = decomp.grid.n_points;
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n, n);
  for (int mode = 0; mode < decomp.kept_modes; ++mode) {
    k += std::sqrt(decomp.lambdas[static_cast<std::size_t>(mode)]) *
         decomp.optical_modes.col(mode) * decomp.microwave_modes.col(mode).transpose();
  }
  return k;
}

}  // namespace modecatch
