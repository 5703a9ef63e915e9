#include "modecatch/pipeline.hpp"

#include <nlohmann/json.hpp>
#include <string>

#include "modecatch/errors.hpp"
#include "modecatch/fock_oracle.hpp"
#include "modecatch/io_util.hpp"
#include "modecatch/units.hpp"

namespace modecatch {

namespace {

// The fock engine yields |f|^2 only; its kernel is the magnitude sqrt(|f|^2),
// which keeps the quadrature normalization semantics identical.
BiphotonKernel kernel_from_fock(const FockCorrelator& fock) {
  BiphotonKernel kernel;
  kernel.grid = fock.grid;
  kernel.output_ports = true;
  const int n = fock.grid.n_points;
  kernel.values = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      kernel.values(i, j) = std::sqrt(std::max(0.0, fock.pair_probability(i, j)));
    }
  }
  kernel.norm = kernel.quadrature_abs2_integral();
  kernel.generation_probability = kernel.norm;
  if (kernel.norm > 0.0) kernel.values /= std::sqrt(kernel.norm);
  return kernel;
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& config, const std::filesystem::path& out_dir) {
  PipelineResult result;
  result.config = config;
  result.out_dir = out_dir;

  io::ManifestWriter manifest(out_dir);
  manifest.set_config_hash(config.hash());
  manifest.set_engine(config.engine.type);
  manifest.emit("config_echo.ini", config.serialize());

  std::string stage = "setup";
  try {
    const SystemParams params = config.to_system_params();
    const PumpShape pump = config.to_pump_shape();
    const TimeGrid grid = config.to_time_grid();

    stage = "stability";
    const StabilityReport stability = stability_check(pump, params, grid);
    if (!stability.stable) {
      throw DivergenceError("pump exceeds the parametric-instability threshold (margin " +
                                std::to_string(stability.margin) + ")",
                            grid.t_start);
    }

    stage = "dynamics";
    manifest.emit("pump.csv", io::pump_csv(params, pump, grid));
    result.moments = evolve_equal_time_moments(params, pump, grid);
    manifest.emit("moments.csv", io::moments_csv(result.moments));

    if (config.engine.type == "gaussian") {
      KernelOptions kopts;
      kopts.inner_dt = units::seconds_from_ns(config.engine.inner_dt_ns);
      kopts.output_ports = config.engine.output_ports;
      result.kernel = biphoton_kernel_from_moments(params, pump, result.moments, kopts);
    } else if (config.engine.type == "fock") {
      FockOptions fopts;
      fopts.inner_dt = units::seconds_from_ns(config.engine.fock_inner_dt_ns);
      fopts.output_ports = config.engine.output_ports;
      const FockCorrelator fock =
          fock_correlator_oracle(params, pump, grid, config.engine.fock_cutoff_optical,
                                 config.engine.fock_cutoff_microwave, fopts);
      result.kernel = kernel_from_fock(fock);
    } else {
      throw ConfigError("unknown engine type '" + config.engine.type + "'");
    }
    manifest.emit("kernel.csv", io::kernel_csv(result.kernel));
    manifest.emit("kernel_meta.json",
                  io::kernel_meta_json(result.kernel, config.engine.type, config.hash()).dump(2) +
                      "\n");

    stage = "schmidt";
    result.schmidt =
        schmidt_decompose(result.kernel, config.schmidt.max_modes, config.schmidt.magnitude_only);
    manifest.emit("schmidt_modes_optical.csv", io::modes_csv(result.schmidt, ModeBranch::optical));
    manifest.emit("schmidt_modes_microwave.csv",
                  io::modes_csv(result.schmidt, ModeBranch::microwave));
    manifest.emit("schmidt_meta.json", io::schmidt_meta_json(result.schmidt).dump(2) + "\n");

    const ModeProfile zero_mode = zero_mode_profile(result.schmidt, ModeBranch::microwave);
    manifest.emit("photon_microwave_zero.csv", io::photon_csv(grid, zero_mode.amplitude));

    stage = "catcher";
    const InputPhoton photon = InputPhoton::from_samples(grid, zero_mode.amplitude);
    CaptureOptions copts;
    copts.inner_dt = units::seconds_from_ns(config.catcher.inner_dt_ns);
    const CouplingSchedule schedule = synthesize_schedule(
        photon, units::rad_per_s_from_two_pi_mhz(config.catcher.kappa1_init_two_pi_MHz),
        units::rad_per_s_from_two_pi_mhz(config.catcher.kappa_min_two_pi_MHz),
        units::rad_per_s_from_two_pi_mhz(config.catcher.kappa_max_two_pi_MHz), copts);
    result.capture = simulate_capture(photon, schedule, copts);
    result.summary = capture_report(result.capture);
    manifest.emit("capture.csv", io::capture_csv(result.capture));
    manifest.emit("capture_summary.json",
                  io::capture_summary_json(result.summary).dump(2) + "\n");
  } catch (const std::exception& e) {
    manifest.mark_failed(stage, e.what());
    manifest.finalize();
    throw;
  }

  manifest.finalize();
  return result;
}

}  // namespace modecatch
