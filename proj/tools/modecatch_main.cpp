#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "modecatch/analytic.hpp"
#include "modecatch/errors.hpp"
#include "modecatch/fock_oracle.hpp"
#include "modecatch/io_util.hpp"
#include "modecatch/pipeline.hpp"
#include "modecatch/units.hpp"

namespace {

using namespace modecatch;
using nlohmann::json;

// Exit codes: 0 success, 2 usage/config error, 3 numeric failure.
constexpr int kUsageError = 2;
constexpr int kNumericError = 3;

std::filesystem::path resolve_out_dir(const std::string& flag_value, const std::string& fallback) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("MODECATCH_OUT")) return env;
  return fallback;
}

void cmd_analytic(double gamma_two_pi_mhz, double kappa1_two_pi_mhz, double t_max_ns,
                  int n_points, const std::filesystem::path& out_dir) {
  if (!(gamma_two_pi_mhz > 0) || !(kappa1_two_pi_mhz > 0) || !(t_max_ns > 0) || n_points < 2) {
    throw std::invalid_argument("analytic: gamma, kappa1 and t-max must be positive");
  }
  const double gamma = units::rad_per_s_from_two_pi_mhz(gamma_two_pi_mhz);
  const double kappa1 = units::rad_per_s_from_two_pi_mhz(kappa1_two_pi_mhz);
  const analytic::ExpDecayPhoton photon{gamma};
  const TimeGrid grid(0.0, units::seconds_from_ns(t_max_ns), n_points);

  const double t_m = analytic::peak_time(photon, kappa1);
  const double t_b = analytic::balance_time(photon, kappa1);

  io::ManifestWriter manifest(out_dir);
  manifest.set_engine("analytic");

  std::string fixed = "t_ns,kappa1_two_pi_MHz,d,eta\n";
  std::string tunable = "t_ns,kappa1_two_pi_MHz,d,eta\n";
  for (int i = 0; i < grid.n_points; ++i) {
    const double t = grid.t(i);
    const double d_fixed = analytic::fixed_coupling_amplitude(photon, kappa1, t);
    fixed += io::format_double(units::ns_from_seconds(t)) + "," +
             io::format_double(kappa1_two_pi_mhz) + "," + io::format_double(d_fixed) + "," +
             io::format_double(d_fixed * d_fixed) + "\n";
    const double k_t = t < t_b ? kappa1 : analytic::tunable_schedule(photon, kappa1, t);
    const double d_t = t < t_b ? d_fixed : analytic::tunable_amplitude(photon, kappa1, t);
    tunable += io::format_double(units::ns_from_seconds(t)) + "," +
               io::format_double(units::two_pi_mhz_from_rad_per_s(k_t)) + "," +
               io::format_double(d_t) + "," + io::format_double(d_t * d_t) + "\n";
  }
  manifest.emit("analytic_fixed.csv", fixed);
  manifest.emit("analytic_tunable.csv", tunable);

  const json markers{
      {"gamma_two_pi_MHz", gamma_two_pi_mhz},
      {"kappa1_two_pi_MHz", kappa1_two_pi_mhz},
      {"t_m_ns", units::ns_from_seconds(t_m)},
      {"t_b_ns", units::ns_from_seconds(t_b)},
      {"eta_max_fixed", analytic::fixed_coupling_efficiency(photon, kappa1, t_m)},
      {"eta_limit_tunable", analytic::tunable_efficiency_limit(photon, kappa1)},
      {"note", "eta_limit_tunable is the closed-form asymptote of the tuned capture"}};
  manifest.emit("analytic_markers.json", markers.dump(2) + "\n");
  manifest.finalize();
}

RunConfig load_config(const std::string& config_path, const std::vector<std::string>& overrides,
                      const std::string& engine_flag) {
  RunConfig cfg =
      config_path.empty() ? RunConfig{} : RunConfig::parse_file(config_path);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--set expects section.key=value, got '" + kv + "'");
    }
    cfg.set_key(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!engine_flag.empty()) cfg.engine.type = engine_flag;
  return cfg;
}

void cmd_transduce(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  const SystemParams params = cfg.to_system_params();
  const PumpShape pump = cfg.to_pump_shape();
  const TimeGrid grid = cfg.to_time_grid();

  const StabilityReport stability = stability_check(pump, params, grid);
  if (!stability.stable) {
    throw DivergenceError("pump exceeds the parametric-instability threshold (margin " +
                              std::to_string(stability.margin) + ")",
                          grid.t_start);
  }

  io::ManifestWriter manifest(out_dir);
  manifest.set_config_hash(cfg.hash());
  manifest.set_engine(cfg.engine.type);
  manifest.emit("config_echo.ini", cfg.serialize());
  manifest.emit("pump.csv", io::pump_csv(params, pump, grid));

  const MomentTrajectory moments = evolve_equal_time_moments(params, pump, grid);
  manifest.emit("moments.csv", io::moments_csv(moments));

  BiphotonKernel kernel;
  if (cfg.engine.type == "fock") {
    FockOptions fopts;
    fopts.inner_dt = units::seconds_from_ns(cfg.engine.fock_inner_dt_ns);
    fopts.output_ports = cfg.engine.output_ports;
    const FockCorrelator fock =
        fock_correlator_oracle(params, pump, grid, cfg.engine.fock_cutoff_optical,
                               cfg.engine.fock_cutoff_microwave, fopts);
    kernel.grid = grid;
    kernel.output_ports = fopts.output_ports;
    kernel.values = Eigen::MatrixXcd::Zero(grid.n_points, grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
      for (int j = 0; j < grid.n_points; ++j) {
        kernel.values(i, j) = std::sqrt(std::max(0.0, fock.pair_probability(i, j)));
      }
    }
    kernel.norm = kernel.quadrature_abs2_integral();
    kernel.generation_probability = kernel.norm;
    if (kernel.norm > 0) kernel.values /= std::sqrt(kernel.norm);
  } else if (cfg.engine.type == "gaussian") {
    KernelOptions kopts;
    kopts.inner_dt = units::seconds_from_ns(cfg.engine.inner_dt_ns);
    kopts.output_ports = cfg.engine.output_ports;
    kernel = biphoton_kernel_from_moments(params, pump, moments, kopts);
  } else {
    throw ConfigError("unknown engine type '" + cfg.engine.type + "'");
  }
  manifest.emit("kernel.csv", io::kernel_csv(kernel));
  manifest.emit("kernel_meta.json",
                io::kernel_meta_json(kernel, cfg.engine.type, cfg.hash()).dump(2) + "\n");
  manifest.finalize();
}

int run(int argc, char** argv) {
  CLI::App app{"modecatch: shaped-pump photon-pair generation, temporal-mode analysis,\n"
               "and tunable-coupling microwave photon capture"};
  app.require_subcommand(1);

  // analytic
  auto* analytic_cmd = app.add_subcommand(
      "analytic", "Closed-form capture curves for an exponential-decay photon");
  double gamma_mhz = 2.0, kappa1_mhz = 2.0, t_max_ns = 800.0;
  int n_points = 1601;
  std::string out_flag;
  analytic_cmd->add_option("--gamma-two-pi-mhz", gamma_mhz, "photon decay rate / 2pi MHz");
  analytic_cmd->add_option("--kappa1-two-pi-mhz", kappa1_mhz, "cavity coupling rate / 2pi MHz");
  analytic_cmd->add_option("--t-max-ns", t_max_ns, "window length in ns");
  analytic_cmd->add_option("--n-points", n_points, "samples in the emitted curves");
  analytic_cmd->add_option("-o,--out", out_flag, "output directory");

  // shared config options
  std::string config_path, engine_flag;
  std::vector<std::string> overrides;

  auto add_config_opts = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file (key = value sections)");
    cmd->add_option("--engine", engine_flag, "override engine: gaussian | fock");
    cmd->add_option("--set", overrides, "override a key: section.key=value");
    cmd->add_option("-o,--out", out_flag, "output directory");
  };

  auto* transduce_cmd =
      app.add_subcommand("transduce", "Simulate the pumped transducer and emit the pair kernel");
  add_config_opts(transduce_cmd);

  auto* pipeline_cmd = app.add_subcommand(
      "pipeline", "Full run: transduce, Schmidt-decompose, capture the microwave mode");
  add_config_opts(pipeline_cmd);

  // schmidt
  auto* schmidt_cmd =
      app.add_subcommand("schmidt", "Decompose an exported kernel into temporal modes");
  std::string kernel_path, meta_path;
  int max_modes = 8;
  bool magnitude_only = false;
  schmidt_cmd->add_option("--kernel", kernel_path, "kernel.csv path")->required();
  schmidt_cmd->add_option("--meta", meta_path, "kernel_meta.json path")->required();
  schmidt_cmd->add_option("--max-modes", max_modes, "modes to keep");
  schmidt_cmd->add_flag("--magnitude-only", magnitude_only, "decompose |K| instead of K");
  schmidt_cmd->add_option("-o,--out", out_flag, "output directory");

  // catch
  auto* catch_cmd =
      app.add_subcommand("catch", "Capture an externally supplied photon profile");
  std::string photon_path;
  double kappa1_init_mhz = 2.0, kappa_min_mhz = 0.0, kappa_max_mhz = 20.0, inner_dt_ns = 0.05;
  catch_cmd->add_option("--photon", photon_path, "photon CSV (t_ns,re,im)")->required();
  catch_cmd->add_option("--kappa1-init-two-pi-mhz", kappa1_init_mhz, "initial coupling");
  catch_cmd->add_option("--kappa-min-two-pi-mhz", kappa_min_mhz, "lower tunability bound");
  catch_cmd->add_option("--kappa-max-two-pi-mhz", kappa_max_mhz, "upper tunability bound");
  catch_cmd->add_option("--inner-dt-ns", inner_dt_ns, "integration step");
  catch_cmd->add_option("-o,--out", out_flag, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kUsageError;
  }

  try {
    if (analytic_cmd->parsed()) {
      cmd_analytic(gamma_mhz, kappa1_mhz, t_max_ns, n_points,
                   resolve_out_dir(out_flag, "analytic_out"));
    } else if (transduce_cmd->parsed()) {
      const RunConfig cfg = load_config(config_path, overrides, engine_flag);
      cmd_transduce(cfg, resolve_out_dir(out_flag, cfg.output.dir));
    } else if (pipeline_cmd->parsed()) {
      const RunConfig cfg = load_config(config_path, overrides, engine_flag);
      run_pipeline(cfg, resolve_out_dir(out_flag, cfg.output.dir));
    } else if (schmidt_cmd->parsed()) {
      const BiphotonKernel kernel = io::load_kernel(kernel_path, meta_path);
      const SchmidtDecomposition decomp = schmidt_decompose(kernel, max_modes, magnitude_only);
      io::ManifestWriter manifest(resolve_out_dir(out_flag, "schmidt_out"));
      manifest.set_engine("schmidt");
      manifest.emit("schmidt_modes_optical.csv", io::modes_csv(decomp, ModeBranch::optical));
      manifest.emit("schmidt_modes_microwave.csv", io::modes_csv(decomp, ModeBranch::microwave));
      manifest.emit("schmidt_meta.json", io::schmidt_meta_json(decomp).dump(2) + "\n");
      const ModeProfile zero = zero_mode_profile(decomp, ModeBranch::microwave);
      manifest.emit("photon_microwave_zero.csv", io::photon_csv(decomp.grid, zero.amplitude));
      manifest.finalize();
    } else if (catch_cmd->parsed()) {
      const InputPhoton photon = io::load_photon_csv(photon_path);
      CaptureOptions copts;
      copts.inner_dt = units::seconds_from_ns(inner_dt_ns);
      const CouplingSchedule schedule = synthesize_schedule(
          photon, units::rad_per_s_from_two_pi_mhz(kappa1_init_mhz),
          units::rad_per_s_from_two_pi_mhz(kappa_min_mhz),
          units::rad_per_s_from_two_pi_mhz(kappa_max_mhz), copts);
      const CaptureRun run = simulate_capture(photon, schedule, copts);
      const CaptureSummary summary = capture_report(run);
      io::ManifestWriter manifest(resolve_out_dir(out_flag, "catch_out"));
      manifest.set_engine("catch");
      manifest.emit("capture.csv", io::capture_csv(run));
      manifest.emit("capture_summary.json", io::capture_summary_json(summary).dump(2) + "\n");
      manifest.finalize();
      std::cout << "eta_final = " << summary.eta_final << "\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const io::CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const NoBalanceError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericError;
  } catch (const DivergenceError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericError;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
