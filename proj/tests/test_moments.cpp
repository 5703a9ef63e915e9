#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "modecatch/errors.hpp"
#include "modecatch/fock_oracle.hpp"
#include "modecatch/moments.hpp"
#include "modecatch/config.hpp"
#include "modecatch/units.hpp"

using namespace modecatch;

namespace {

// Small natural-unit system keeps the Fock cross-checks fast. The rate ratio
// mirrors the device regime (optical loss far above microwave loss).
SystemParams natural_params(double kappa_o = 40.0, double kappa_e = 2.0) {
  SystemParams p;
  p.kappa_o_i = 0.5 * kappa_o;
  p.kappa_o_c = 0.5 * kappa_o;
  p.kappa_e_i = 0.25 * kappa_e;
  p.kappa_e_c = 0.75 * kappa_e;
  p.g0 = 1.0;
  p.omega_o = 1.0;
  p.omega_e = 1.0;
  return p;
}

PumpShape constant_pump(double multiplier, double t_end) {
  PumpShape p;
  p.shape = TabulatedPump{{{-1.0, multiplier}, {t_end + 1.0, multiplier}}};
  return p;
}

SystemParams reference_params() { return RunConfig{}.to_system_params(); }

}  // namespace

TEST_CASE("zero pump keeps the vacuum") {
  const SystemParams p = natural_params();
  const TimeGrid grid(0.0, 5.0, 21);
  const auto traj = evolve_equal_time_moments(p, constant_pump(0.0, 5.0), grid);
  for (int i = 0; i < grid.n_points; ++i) {
    CHECK(traj.n_a[i] == 0.0);
    CHECK(traj.n_c[i] == 0.0);
    CHECK(std::abs(traj.m_ac[i]) == 0.0);
  }
}

TEST_CASE("steady state under a weak constant pump matches the fock oracle") {
  const SystemParams p = natural_params();
  const double g = 0.01 * p.instability_threshold();
  const double t_end = 12.0;  // many microwave lifetimes
  const TimeGrid grid(0.0, t_end, 25);
  const auto traj = evolve_equal_time_moments(p, constant_pump(g / p.g0, t_end), grid);

  const auto fock = fock_equal_time_moments(p, constant_pump(g / p.g0, t_end), grid, 3, 3,
                                            FockOptions{2e-3, true, 1e-6});
  const int last = grid.n_points - 1;
  const double ratio_gauss = traj.n_c[last] / traj.n_a[last];
  const double ratio_fock = fock.n_c[last] / fock.n_a[last];
  CHECK(ratio_gauss == doctest::Approx(ratio_fock).epsilon(0.01));
  // analytic steady state of the closed moment system: n_c/n_a = kappa_o/kappa_e
  CHECK(ratio_gauss == doctest::Approx(p.kappa_o() / p.kappa_e()).epsilon(0.01));
}

TEST_CASE("free decay after the pump switches off") {
  const SystemParams p = natural_params();
  PumpShape pump;
  pump.shape = PiecewiseExpPump{0.3 * p.instability_threshold() / p.g0, 2.0, 4.0};
  const TimeGrid grid(0.0, 14.0, 141);
  const auto traj = evolve_equal_time_moments(p, pump, grid);

  // locate the cutoff node and check n_c(t) = n_c(t_off) e^{-kappa_e (t - t_off)}
  int off = 0;
  while (grid.t(off) < 4.0) ++off;
  const double n0 = traj.n_c[off];
  CHECK(n0 > 0.0);
  for (int i = off; i < grid.n_points; ++i) {
    const double expected = n0 * std::exp(-p.kappa_e() * (grid.t(i) - grid.t(off)));
    CHECK(traj.n_c[i] == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("physicality bounds hold along the trajectory") {
  const SystemParams p = natural_params();
  PumpShape pump;
  pump.shape = GaussianPump{0.8 * p.instability_threshold() / p.g0, 0.5, 2.0};
  const TimeGrid grid(0.0, 8.0, 161);
  const auto traj = evolve_equal_time_moments(p, pump, grid);

  bool excited = false;
  for (int i = 0; i < grid.n_points; ++i) {
    const double m2 = std::norm(traj.m_ac[i]);
    CHECK(traj.n_a[i] >= -1e-15);
    CHECK(traj.n_c[i] >= -1e-15);
    CHECK(m2 <= traj.n_a[i] * (traj.n_c[i] + 1.0) + 1e-12);
    CHECK(m2 <= (traj.n_a[i] + 1.0) * traj.n_c[i] + 1e-12);
    if (traj.n_c[i] > 1e-6) excited = true;
  }
  CHECK(excited);
}

TEST_CASE("reference gaussian pump stays deep in the weak-pair regime") {
  const SystemParams p = reference_params();
  PumpShape pump;
  pump.shape = GaussianPump{6.5, units::seconds_from_ns(40.0), units::seconds_from_ns(120.0)};
  const TimeGrid grid(0.0, units::seconds_from_ns(600.0), 121);
  const auto traj = evolve_equal_time_moments(p, pump, grid);
  double n_c_max = 0.0;
  for (double v : traj.n_c) n_c_max = std::max(n_c_max, v);
  CHECK(n_c_max > 0.0);
  CHECK(n_c_max < 0.01);
}

TEST_CASE("above-threshold pump raises a divergence error naming the time") {
  const SystemParams p = natural_params();
  // far beyond threshold for the whole window: exponential growth past the bound
  const PumpShape pump = constant_pump(2000.0, 5.0);
  const TimeGrid grid(0.0, 5.0, 21);
  CHECK_FALSE(stability_check(pump, p, grid).stable);
  CHECK_THROWS_AS(evolve_equal_time_moments(p, pump, grid), DivergenceError);
  try {
    evolve_equal_time_moments(p, pump, grid);
  } catch (const DivergenceError& e) {
    CHECK(e.t > 0.0);
    CHECK(e.t <= 5.0);
    CHECK(std::string(e.what()).find("ns") != std::string::npos);
  }
}
