#pragma once

#include <cmath>
#include <stdexcept>

namespace modecatch {

/// Transducer mode and coupling rates, all angular (rad/s).
struct SystemParams {
  double kappa_e_i = 0.0;  // microwave intrinsic loss
  double kappa_e_c = 0.0;  // microwave extraction coupling
  double kappa_o_i = 0.0;  // optical intrinsic loss
  double kappa_o_c = 0.0;  // optical extraction coupling
  double g0 = 0.0;         // single-photon electro-optic coupling
  double omega_o = 0.0;    // optical mode frequency, bookkeeping only
  double omega_e = 0.0;    // microwave mode frequency, bookkeeping only

  double kappa_e() const { return kappa_e_i + kappa_e_c; }
  double kappa_o() const { return kappa_o_i + kappa_o_c; }

  /// The squeezing strength must stay below this for the linearized
  /// two-mode-squeezing dynamics to remain stable.
  double instability_threshold() const { return 0.5 * std::sqrt(kappa_e() * kappa_o()); }

  void validate() const {
    if (!(kappa_e_i > 0) || !(kappa_e_c > 0) || !(kappa_o_i > 0) || !(kappa_o_c > 0) ||
        !(g0 > 0)) {
      throw std::invalid_argument("SystemParams: all rates must be strictly positive");
    }
    if (!(omega_o > 0) || !(omega_e > 0)) {
      throw std::invalid_argument("SystemParams: mode frequencies must be strictly positive");
    }
  }
};

/// Fraction of each photon that exits through the measured extraction port.
struct ExtractionEfficiencies {
  double optical;
  double microwave;
};

inline ExtractionEfficiencies extraction_efficiencies(const SystemParams& p) {
  return {p.kappa_o_c / p.kappa_o(), p.kappa_e_c / p.kappa_e()};
}

}  // namespace modecatch
