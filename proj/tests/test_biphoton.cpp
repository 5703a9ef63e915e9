#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <nlohmann/json.hpp>

#include "modecatch/biphoton.hpp"
#include "modecatch/config.hpp"
#include "modecatch/io_util.hpp"
#include "modecatch/units.hpp"

using namespace modecatch;

namespace {

SystemParams reference_params() { return RunConfig{}.to_system_params(); }

PumpShape row_a_pump() {
  PumpShape p;
  p.shape = PiecewiseExpPump{5.5, 12e6, units::seconds_from_ns(220.0)};
  return p;
}

PumpShape row_b_pump() {
  PumpShape p;
  p.shape = GaussianPump{6.5, units::seconds_from_ns(40.0), units::seconds_from_ns(120.0)};
  return p;
}

double triangle_mass(const BiphotonKernel& k, bool upper, int margin_cells = 0) {
  const auto w = k.grid.trapezoid_weights();
  double mass = 0.0;
  for (int i = 0; i < k.grid.n_points; ++i) {
    for (int j = 0; j < k.grid.n_points; ++j) {
      const bool in_region = upper ? (j > i + margin_cells) : (i > j + margin_cells);
      if (in_region) mass += w[i] * w[j] * std::norm(k.values(i, j));
    }
  }
  return mass;
}

}  // namespace

TEST_CASE("zero pump gives the zero kernel") {
  const SystemParams p = reference_params();
  PumpShape pump;
  pump.shape = TabulatedPump{{{0.0, 0.0}, {600e-9, 0.0}}};
  const TimeGrid grid(0.0, units::seconds_from_ns(600.0), 41);
  const auto kernel = biphoton_kernel(p, pump, grid);
  CHECK(kernel.generation_probability == 0.0);
  CHECK(kernel.norm == 0.0);
  CHECK(kernel.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kernel normalization and mass distribution for the reference pumps") {
  const SystemParams p = reference_params();
  const TimeGrid grid(0.0, units::seconds_from_ns(600.0), 121);

  const auto kernel_a = biphoton_kernel(p, row_a_pump(), grid);
  CHECK(kernel_a.quadrature_abs2_integral() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(kernel_a.generation_probability > 0.0);
  CHECK(kernel_a.values.allFinite());

  // the microwave photon is likely to arrive after the optical one:
  // |K|^2 mass concentrates at t2 > t1
  const double upper_a = triangle_mass(kernel_a, true);
  const double lower_a = triangle_mass(kernel_a, false);
  CHECK(upper_a > 5.0 * lower_a);
  CHECK(upper_a > 0.8);

  const auto kernel_b = biphoton_kernel(p, row_b_pump(), grid);
  CHECK(kernel_b.quadrature_abs2_integral() == doctest::Approx(1.0).epsilon(1e-10));
  const double upper_b = triangle_mass(kernel_b, true);
  const double lower_b = triangle_mass(kernel_b, false);
  CHECK(upper_b > 0.8);
  // weight below the diagonal exists but is weak (one photon must outlive
  // the fast optical decay)
  CHECK(lower_b > 0.0);
  CHECK(lower_b < 0.1);
}

TEST_CASE("global phase convention leaves the peak entry real positive") {
  const SystemParams p = reference_params();
  const TimeGrid grid(0.0, units::seconds_from_ns(600.0), 81);
  const auto kernel = biphoton_kernel(p, row_b_pump(), grid);
  Eigen::Index imax = 0, jmax = 0;
  kernel.values.cwiseAbs().maxCoeff(&imax, &jmax);
  const auto peak = kernel.values(imax, jmax);
  CHECK(peak.real() > 0.0);
  CHECK(std::abs(peak.imag()) < 1e-12 * peak.real());
}

TEST_CASE("scaling covariance in the weak-pump regime") {
  const SystemParams p = reference_params();
  const TimeGrid grid(0.0, units::seconds_from_ns(600.0), 61);

  PumpShape weak;
  weak.shape = GaussianPump{1.0, units::seconds_from_ns(40.0), units::seconds_from_ns(120.0)};
  PumpShape doubled;
  doubled.shape = GaussianPump{2.0, units::seconds_from_ns(40.0), units::seconds_from_ns(120.0)};

  const auto k1 = biphoton_kernel(p, weak, grid);
  const auto k2 = biphoton_kernel(p, doubled, grid);

  CHECK(k2.generation_probability / k1.generation_probability ==
        doctest::Approx(4.0).epsilon(0.10));

  const double diff = (k1.values - k2.values).norm() / k1.values.norm();
  CHECK(diff < 0.02);
}

TEST_CASE("kernel self-convergence in the inner step") {
  const SystemParams p = reference_params();
  const TimeGrid grid(0.0, units::seconds_from_ns(600.0), 41);
  KernelOptions fine;
  fine.inner_dt = 0.025e-9;
  KernelOptions coarse;
  coarse.inner_dt = 0.05e-9;
  const auto ka = biphoton_kernel(p, row_b_pump(), grid, coarse);
  const auto kb = biphoton_kernel(p, row_b_pump(), grid, fine);
  const double diff = (ka.values - kb.values).norm() / kb.values.norm();
  CHECK(diff < 1e-4);
  CHECK(ka.generation_probability ==
        doctest::Approx(kb.generation_probability).epsilon(1e-4));
}

TEST_CASE("intracavity switch removes the extraction-port scale") {
  const SystemParams p = reference_params();
  const TimeGrid grid(0.0, units::seconds_from_ns(600.0), 31);
  KernelOptions ports;
  KernelOptions bare;
  bare.output_ports = false;
  const auto k_ports = biphoton_kernel(p, row_b_pump(), grid, ports);
  const auto k_bare = biphoton_kernel(p, row_b_pump(), grid, bare);
  CHECK(k_ports.generation_probability / k_bare.generation_probability ==
        doctest::Approx(p.kappa_o_c * p.kappa_e_c).epsilon(1e-9));
  // normalized shapes identical
  const double diff = (k_ports.values - k_bare.values).norm() / k_bare.values.norm();
  CHECK(diff < 1e-12);
}

TEST_CASE("kernel csv and sidecar round-trip") {
  const SystemParams p = reference_params();
  const TimeGrid grid(0.0, units::seconds_from_ns(600.0), 31);
  const auto kernel = biphoton_kernel(p, row_b_pump(), grid);

  const auto dir = std::filesystem::temp_directory_path() / "modecatch_kernel_rt";
  std::filesystem::create_directories(dir);
  io::write_file(dir / "kernel.csv", io::kernel_csv(kernel));
  io::write_file(dir / "kernel_meta.json",
                 io::kernel_meta_json(kernel, "gaussian", "deadbeef").dump(2));

  const auto loaded = io::load_kernel(dir / "kernel.csv", dir / "kernel_meta.json");
  CHECK(loaded.grid == kernel.grid);
  CHECK(loaded.norm == kernel.norm);
  CHECK(loaded.generation_probability == kernel.generation_probability);
  CHECK((loaded.values - kernel.values).cwiseAbs().maxCoeff() == 0.0);
}
