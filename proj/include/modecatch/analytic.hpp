#pragma once

#include <stdexcept>

namespace modecatch::analytic {

/// Photon with the natural emission profile f_in(t) = sqrt(gamma) e^{-gamma t/2}, t >= 0.
struct ExpDecayPhoton {
  double gamma = 0.0;  // energy decay rate, rad/s

  void validate() const {
    if (!(gamma > 0)) throw std::invalid_argument("ExpDecayPhoton: gamma must be positive");
  }
};

/// Photon that rises at gamma1 until t0, then decays at gamma2; unit norm on (-inf, inf).
struct PiecewiseExpPhoton {
  double gamma1 = 0.0;  // rise rate, rad/s
  double gamma2 = 0.0;  // decay rate, rad/s
  double t0 = 0.0;      // turnover instant, s

  void validate() const {
    if (!(gamma1 > 0) || !(gamma2 > 0))
      throw std::invalid_argument("PiecewiseExpPhoton: rates must be positive");
  }
};

// Closed forms for capturing the exponential-decay photon with a receiving
// cavity of coupling rate kappa1. All use the exact limit branch when
// |kappa1/gamma - 1| < 1e-8, where the generic expressions are 0/0.

/// Cavity amplitude d(t) under constant coupling, d(0) = 0.
double fixed_coupling_amplitude(const ExpDecayPhoton& photon, double kappa1, double t);

/// Capture efficiency |d(t)|^2 under constant coupling.
double fixed_coupling_efficiency(const ExpDecayPhoton& photon, double kappa1, double t);

/// Time at which the fixed-coupling efficiency peaks.
double peak_time(const ExpDecayPhoton& photon, double kappa1);

/// First time the outgoing field vanishes (cavity leakage cancels the
/// reflected input) under constant coupling.
double balance_time(const ExpDecayPhoton& photon, double kappa1);

/// Coupling-rate schedule that maintains the balance condition for t >= t_b.
/// Throws std::domain_error for t < t_b.
double tunable_schedule(const ExpDecayPhoton& photon, double kappa1, double t);

/// Cavity amplitude for t >= t_b when the schedule keeps the balance: all
/// later input energy accumulates in the cavity.
double tunable_amplitude(const ExpDecayPhoton& photon, double kappa1, double t);

/// Efficiency curve of the tuned capture: fixed-coupling before t_b,
/// accumulated energy after.
double tunable_efficiency(const ExpDecayPhoton& photon, double kappa1, double t);

/// Asymptotic efficiency of the tuned capture.
double tunable_efficiency_limit(const ExpDecayPhoton& photon, double kappa1);

/// The rise-then-decay profile that a tuned cavity absorbs completely.
double ideal_profile(const PiecewiseExpPhoton& photon, double t);

/// Coupling schedule that captures the ideal profile with unit efficiency.
double ideal_schedule(const PiecewiseExpPhoton& photon, double t);

/// Efficiency curve of the ideal capture; tends to 1 as t -> infinity.
double ideal_efficiency(const PiecewiseExpPhoton& photon, double t);

struct RisingExpCapture {
  double amplitude;
  double efficiency;
};

/// Perfect capture of the time-reversed emission profile sqrt(gamma) e^{gamma t/2},
/// t <= 0, with kappa1 fixed to gamma. Throws std::domain_error for t > 0.
RisingExpCapture rising_exponential_capture(double gamma, double t);

}  // namespace modecatch::analytic
