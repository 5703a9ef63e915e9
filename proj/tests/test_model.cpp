#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "modecatch/config.hpp"
#include "modecatch/pump.hpp"
#include "modecatch/units.hpp"

using namespace modecatch;

namespace {

SystemParams reference_params() { return RunConfig{}.to_system_params(); }

PumpShape piecewise_reference() {
  PumpShape p;
  p.shape = PiecewiseExpPump{5.5, 12e6, units::seconds_from_ns(220.0)};
  return p;
}

PumpShape gaussian_reference() {
  PumpShape p;
  p.shape = GaussianPump{6.5, units::seconds_from_ns(40.0), units::seconds_from_ns(120.0)};
  return p;
}

TimeGrid reference_grid() { return TimeGrid(0.0, units::seconds_from_ns(600.0), 241); }

}  // namespace

TEST_CASE("reference rates match the nominal device table") {
  const SystemParams p = reference_params();
  CHECK(p.kappa_e() == doctest::Approx(units::rad_per_s_from_two_pi_mhz(1.8)).epsilon(1e-14));
  CHECK(p.kappa_o() == doctest::Approx(units::rad_per_s_from_two_pi_ghz(1.3)).epsilon(1e-14));
  CHECK(p.g0 == doctest::Approx(units::rad_per_s_from_two_pi_khz(260)).epsilon(1e-14));
  CHECK_NOTHROW(p.validate());

  SystemParams bad = p;
  bad.kappa_e_i = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("squeezing strength of the piecewise-exponential pump") {
  const SystemParams p = reference_params();
  const PumpShape pump = piecewise_reference();
  const double mu = units::seconds_from_ns(220.0);

  // just below the cutoff the envelope reaches its peak multiplier
  CHECK(squeezing_strength(pump, p, mu - 1e-15) == doctest::Approx(5.5 * p.g0).epsilon(1e-7));
  // zero branch from the cutoff on
  CHECK(squeezing_strength(pump, p, mu) == 0.0);
  CHECK(squeezing_strength(pump, p, mu + 50e-9) == 0.0);
  // exponential rise at half the rise rate
  const double t1 = 100e-9, t2 = 150e-9;
  const double ratio = squeezing_strength(pump, p, t2) / squeezing_strength(pump, p, t1);
  CHECK(ratio == doctest::Approx(std::exp(0.5 * 12e6 * (t2 - t1))).epsilon(1e-12));
}

TEST_CASE("squeezing strength of the gaussian pump") {
  const SystemParams p = reference_params();
  const PumpShape pump = gaussian_reference();
  const double nu = units::seconds_from_ns(120.0);
  CHECK(squeezing_strength(pump, p, nu) == doctest::Approx(6.5 * p.g0).epsilon(1e-12));
  const double sigma = units::seconds_from_ns(40.0);
  CHECK(squeezing_strength(pump, p, nu + sigma) ==
        doctest::Approx(6.5 * p.g0 * std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("tabulated pump interpolates and clamps to zero outside") {
  const SystemParams p = reference_params();
  PumpShape pump;
  pump.shape = TabulatedPump{{{10e-9, 1.0}, {20e-9, 3.0}, {30e-9, 0.0}}};
  CHECK_NOTHROW(pump.validate());
  CHECK(squeezing_strength(pump, p, 15e-9) == doctest::Approx(2.0 * p.g0).epsilon(1e-12));
  CHECK(squeezing_strength(pump, p, 5e-9) == 0.0);
  CHECK(squeezing_strength(pump, p, 35e-9) == 0.0);

  PumpShape bad;
  bad.shape = TabulatedPump{{{10e-9, 1.0}, {10e-9, 2.0}}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  PumpShape neg;
  neg.shape = TabulatedPump{{{10e-9, -1.0}}};
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
}

TEST_CASE("pump validation rejects non-positive parameters") {
  PumpShape p;
  p.shape = PiecewiseExpPump{0.0, 12e6, 220e-9};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.shape = GaussianPump{6.5, 0.0, 120e-9};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("squeezing strength is non-negative for random inputs") {
  const SystemParams p = reference_params();
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> time_dist(-1e-6, 1e-6);
  std::uniform_real_distribution<double> pos(0.1, 10.0);
  for (int i = 0; i < 500; ++i) {
    PumpShape pump;
    switch (i % 3) {
      case 0:
        pump.shape = PiecewiseExpPump{pos(rng), pos(rng) * 1e7, pos(rng) * 1e-7};
        break;
      case 1:
        pump.shape = GaussianPump{pos(rng), pos(rng) * 1e-8, time_dist(rng)};
        break;
      default:
        pump.shape = TabulatedPump{{{-1e-7, pos(rng)}, {0.0, pos(rng)}, {1e-7, pos(rng)}}};
        break;
    }
    CHECK(squeezing_strength(pump, p, time_dist(rng)) >= 0.0);
  }
}

TEST_CASE("stability margin for the gaussian reference pump") {
  const SystemParams p = reference_params();
  const StabilityReport r = stability_check(gaussian_reference(), p, reference_grid());
  CHECK(r.stable);
  // max g = 6.5 g0 at the center node; threshold = sqrt(kappa_e kappa_o)/2
  CHECK(r.margin == doctest::Approx(0.0698726).epsilon(1e-4));
}

TEST_CASE("stability check edge cases") {
  const SystemParams p = reference_params();
  PumpShape zero;
  zero.shape = TabulatedPump{{{0.0, 0.0}, {600e-9, 0.0}}};
  const StabilityReport r0 = stability_check(zero, p, reference_grid());
  CHECK(r0.stable);
  CHECK(r0.margin == 0.0);

  PumpShape strong;
  strong.shape = GaussianPump{200.0, units::seconds_from_ns(40.0), units::seconds_from_ns(120.0)};
  CHECK_FALSE(stability_check(strong, p, reference_grid()).stable);
}

TEST_CASE("config round-trips the two-pi unit convention") {
  RunConfig cfg;
  cfg.system.kappa_e_i_two_pi_MHz = 0.55;
  const SystemParams p = cfg.to_system_params();
  CHECK(p.kappa_e_i == doctest::Approx(units::two_pi * 0.55e6).epsilon(1e-15));

  const std::string text = cfg.serialize();
  CHECK(text.find("kappa_e_i_two_pi_MHz = 0.55\n") != std::string::npos);
  const RunConfig back = RunConfig::parse(text);
  CHECK(back.system.kappa_e_i_two_pi_MHz == 0.55);
  CHECK(back.serialize() == text);
}

TEST_CASE("pump rise rate two-pi switch") {
  RunConfig cfg;
  cfg.pump.rise_rate_MHz = 12.0;
  cfg.pump.rise_rate_includes_two_pi = false;
  auto plain = std::get<PiecewiseExpPump>(cfg.to_pump_shape().shape);
  CHECK(plain.rise_rate == doctest::Approx(12e6).epsilon(1e-15));
  cfg.pump.rise_rate_includes_two_pi = true;
  auto two_pi = std::get<PiecewiseExpPump>(cfg.to_pump_shape().shape);
  CHECK(two_pi.rise_rate == doctest::Approx(units::two_pi * 12e6).epsilon(1e-15));
}

TEST_CASE("time grid invariants") {
  CHECK_THROWS_AS(TimeGrid(0.0, 0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 1), std::invalid_argument);
  const TimeGrid g(0.0, 1.0, 5);
  CHECK(g.dt() == doctest::Approx(0.25));
  const auto w = g.trapezoid_weights();
  double total = 0.0;
  for (double x : w) total += x;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("extraction efficiencies from the coupling ratios") {
  const SystemParams p = reference_params();
  const auto e = extraction_efficiencies(p);
  CHECK(e.microwave == doctest::Approx(1.25 / 1.8).epsilon(1e-12));
  CHECK(e.optical == doctest::Approx(0.5).epsilon(1e-12));

  SystemParams lossless = p;
  lossless.kappa_e_i = 0.0;
  lossless.kappa_o_i = 0.0;
  const auto e1 = extraction_efficiencies(lossless);
  CHECK(e1.microwave == doctest::Approx(1.0));
  CHECK(e1.optical == doctest::Approx(1.0));
}
