#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "modecatch/pump.hpp"
#include "modecatch/system_params.hpp"
#include "modecatch/time_grid.hpp"

namespace modecatch {

// Run configuration in the file's own units (2*pi*frequency for rates, ns for
// times). The raw numbers are kept so a parsed config re-serializes with the
// exact values it was given; rad/s conversions happen in the accessors.

struct SystemSection {
  double kappa_e_i_two_pi_MHz = 0.55;
  double kappa_e_c_two_pi_MHz = 1.25;
  double kappa_o_i_two_pi_GHz = 0.65;
  double kappa_o_c_two_pi_GHz = 0.65;
  double g0_two_pi_kHz = 260.0;
  double omega_o_two_pi_THz = 190.0;
  double omega_e_two_pi_GHz = 5.0;
};

struct PumpSection {
  std::string shape = "piecewise_exp";  // piecewise_exp | gaussian | tabulated
  double amplitude = 5.5;
  double rise_rate_MHz = 12.0;
  bool rise_rate_includes_two_pi = false;
  double cutoff_ns = 220.0;
  double sigma_ns = 40.0;
  double center_ns = 120.0;
  std::vector<std::pair<double, double>> samples_ns_mult;  // tabulated shape
};

struct GridSection {
  double t_start_ns = 0.0;
  double t_end_ns = 600.0;
  int n_points = 241;
};

struct EngineSection {
  std::string type = "gaussian";  // gaussian | fock
  double inner_dt_ns = 0.05;
  bool output_ports = true;
  int fock_cutoff_optical = 4;
  int fock_cutoff_microwave = 4;
  double fock_inner_dt_ns = 0.05;
};

struct SchmidtSection {
  int max_modes = 8;
  bool magnitude_only = false;
};

struct CatcherSection {
  double kappa1_init_two_pi_MHz = 2.0;
  double kappa_min_two_pi_MHz = 0.0;
  double kappa_max_two_pi_MHz = 20.0;
  double inner_dt_ns = 0.05;
};

struct OutputSection {
  std::string dir = "out";
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  SystemSection system;
  PumpSection pump;
  GridSection grid;
  EngineSection engine;
  SchmidtSection schmidt;
  CatcherSection catcher;
  OutputSection output;

  SystemParams to_system_params() const;
  PumpShape to_pump_shape() const;
  TimeGrid to_time_grid() const;

  /// Canonical text form; parse(serialize()) round-trips every value.
  std::string serialize() const;
  std::string hash() const;  // fnv1a64 of the canonical form, hex

  static RunConfig parse(const std::string& text);
  static RunConfig parse_file(const std::filesystem::path& path);

  /// Apply a "section.key=value" override (CLI flags beat file keys).
  void set_key(const std::string& dotted_key, const std::string& value);
};

}  // namespace modecatch
