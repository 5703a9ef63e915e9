#include "modecatch/analytic.hpp"

#include <cmath>

namespace modecatch::analytic {

namespace {

constexpr double kDegenerateWindow = 1e-8;  // |kappa1/gamma - 1| below this uses the limit branch

bool degenerate(double gamma, double kappa1) {
  return std::abs(kappa1 / gamma - 1.0) < kDegenerateWindow;
}

void require_positive_kappa(double kappa1) {
  if (!(kappa1 > 0)) throw std::invalid_argument("kappa1 must be positive");
}

// (e^{-gamma t/2} - e^{-kappa1 t/2}) / (kappa1 - gamma), computed through
// expm1 so the near-degenerate cancellation stays accurate.
double exp_difference_ratio(double gamma, double kappa1, double t) {
  const double x = 0.5 * (kappa1 - gamma) * t;
  return std::exp(-0.5 * gamma * t) * (-std::expm1(-x)) / (kappa1 - gamma);
}

}  // namespace

double fixed_coupling_amplitude(const ExpDecayPhoton& photon, double kappa1, double t) {
  photon.validate();
  require_positive_kappa(kappa1);
  if (t < 0) throw std::domain_error("fixed_coupling_amplitude: t must be non-negative");
  const double g = photon.gamma;
  if (degenerate(g, kappa1)) {
    return std::sqrt(g * kappa1) * t * std::exp(-0.5 * g * t);
  }
  return 2.0 * std::sqrt(g * kappa1) * exp_difference_ratio(g, kappa1, t);
}

double fixed_coupling_efficiency(const ExpDecayPhoton& photon, double kappa1, double t) {
  const double d = fixed_coupling_amplitude(photon, kappa1, t);
  return d * d;
}

double peak_time(const ExpDecayPhoton& photon, double kappa1) {
  photon.validate();
  require_positive_kappa(kappa1);
  const double g = photon.gamma;
  if (degenerate(g, kappa1)) return 2.0 / g;
  // 2 ln(kappa1/gamma) / (kappa1 - gamma)
  return 2.0 * std::log1p((kappa1 - g) / g) / (kappa1 - g);
}

double balance_time(const ExpDecayPhoton& photon, double kappa1) {
  photon.validate();
  require_positive_kappa(kappa1);
  const double g = photon.gamma;
  if (degenerate(g, kappa1)) return 1.0 / g;
  // 2 ln(2 kappa1/(kappa1 + gamma)) / (kappa1 - gamma)
  return 2.0 * std::log1p((kappa1 - g) / (kappa1 + g)) / (kappa1 - g);
}

double tunable_schedule(const ExpDecayPhoton& photon, double kappa1, double t) {
  photon.validate();
  require_positive_kappa(kappa1);
  const double g = photon.gamma;
  const double t_b = balance_time(photon, kappa1);
  if (t < t_b * (1.0 - 1e-12) - 1e-300) {
    throw std::domain_error("tunable_schedule: t must not precede the balance time");
  }
  const double num = kappa1 * g * std::exp(-g * t);
  const double den = kappa1 * (std::exp(-g * t_b) - std::exp(-g * t)) + g * std::exp(-g * t_b);
  return num / den;
}

double tunable_amplitude(const ExpDecayPhoton& photon, double kappa1, double t) {
  photon.validate();
  require_positive_kappa(kappa1);
  const double g = photon.gamma;
  const double t_b = balance_time(photon, kappa1);
  if (t < t_b * (1.0 - 1e-12) - 1e-300) {
    throw std::domain_error("tunable_amplitude: t must not precede the balance time");
  }
  const double captured_at_tb = fixed_coupling_efficiency(photon, kappa1, t_b);
  return std::sqrt(std::exp(-g * t_b) - std::exp(-g * t) + captured_at_tb);
}

double tunable_efficiency(const ExpDecayPhoton& photon, double kappa1, double t) {
  const double t_b = balance_time(photon, kappa1);
  if (t < t_b) return fixed_coupling_efficiency(photon, kappa1, t);
  const double d = tunable_amplitude(photon, kappa1, t);
  return d * d;
}

double tunable_efficiency_limit(const ExpDecayPhoton& photon, double kappa1) {
  photon.validate();
  require_positive_kappa(kappa1);
  const double t_b = balance_time(photon, kappa1);
  return std::exp(-photon.gamma * t_b) + fixed_coupling_efficiency(photon, kappa1, t_b);
}

double ideal_profile(const PiecewiseExpPhoton& photon, double t) {
  photon.validate();
  const double a = std::sqrt(photon.gamma1 * photon.gamma2 / (photon.gamma1 + photon.gamma2));
  if (t <= photon.t0) return a * std::exp(0.5 * photon.gamma1 * (t - photon.t0));
  return a * std::exp(-0.5 * photon.gamma2 * (t - photon.t0));
}

double ideal_schedule(const PiecewiseExpPhoton& photon, double t) {
  photon.validate();
  if (t <= photon.t0) return photon.gamma1;
  const double g1 = photon.gamma1;
  const double g2 = photon.gamma2;
  return g1 * g2 / ((g1 + g2) * std::exp(g2 * (t - photon.t0)) - g1);
}

double ideal_efficiency(const PiecewiseExpPhoton& photon, double t) {
  photon.validate();
  const double g1 = photon.gamma1;
  const double g2 = photon.gamma2;
  const double base = g2 / (g1 + g2);
  if (t <= photon.t0) return base * std::exp(g1 * (t - photon.t0));
  return base + g1 / (g1 + g2) * (-std::expm1(-g2 * (t - photon.t0)));
}

RisingExpCapture rising_exponential_capture(double gamma, double t) {
  if (!(gamma > 0)) throw std::invalid_argument("gamma must be positive");
  if (t > 0) throw std::domain_error("rising_exponential_capture: t must be non-positive");
  return {std::exp(0.5 * gamma * t), std::exp(gamma * t)};
}

}  // namespace modecatch::analytic
