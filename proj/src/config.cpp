#include "modecatch/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "modecatch/io_util.hpp"
#include "modecatch/units.hpp"

namespace modecatch {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, int line) {
  try {
    return io::parse_double(v);
  } catch (const std::exception&) {
    throw ConfigError("config line " + std::to_string(line) + ": invalid number '" + v + "'");
  }
}

int to_int(const std::string& v, int line) {
  int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError("config line " + std::to_string(line) + ": invalid integer '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& v, int line) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("config line " + std::to_string(line) + ": expected true/false, got '" + v +
                    "'");
}

std::vector<std::pair<double, double>> to_samples(const std::string& v, int line) {
  std::vector<std::pair<double, double>> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line) +
                        ": tabulated samples use t_ns:multiplier");
    }
    out.emplace_back(to_double(trim(item.substr(0, colon)), line),
                     to_double(trim(item.substr(colon + 1)), line));
  }
  return out;
}

std::string samples_to_string(const std::vector<std::pair<double, double>>& samples) {
  std::string out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i) out += ", ";
    out += io::format_double(samples[i].first) + ":" + io::format_double(samples[i].second);
  }
  return out;
}

}  // namespace

SystemParams RunConfig::to_system_params() const {
  using namespace units;
  SystemParams p;
  p.kappa_e_i = rad_per_s_from_two_pi_mhz(system.kappa_e_i_two_pi_MHz);
  p.kappa_e_c = rad_per_s_from_two_pi_mhz(system.kappa_e_c_two_pi_MHz);
  p.kappa_o_i = rad_per_s_from_two_pi_ghz(system.kappa_o_i_two_pi_GHz);
  p.kappa_o_c = rad_per_s_from_two_pi_ghz(system.kappa_o_c_two_pi_GHz);
  p.g0 = rad_per_s_from_two_pi_khz(system.g0_two_pi_kHz);
  p.omega_o = rad_per_s_from_two_pi_thz(system.omega_o_two_pi_THz);
  p.omega_e = rad_per_s_from_two_pi_ghz(system.omega_e_two_pi_GHz);
  p.validate();
  return p;
}

PumpShape RunConfig::to_pump_shape() const {
  PumpShape shape;
  if (pump.shape == "piecewise_exp") {
    PiecewiseExpPump p;
    p.amplitude = pump.amplitude;
    p.rise_rate = pump.rise_rate_MHz * 1e6 *
                  (pump.rise_rate_includes_two_pi ? units::two_pi : 1.0);
    p.cutoff = units::seconds_from_ns(pump.cutoff_ns);
    shape.shape = p;
  } else if (pump.shape == "gaussian") {
    GaussianPump p;
    p.amplitude = pump.amplitude;
    p.sigma = units::seconds_from_ns(pump.sigma_ns);
    p.center = units::seconds_from_ns(pump.center_ns);
    shape.shape = p;
  } else if (pump.shape == "tabulated") {
    TabulatedPump p;
    for (const auto& [t_ns, mult] : pump.samples_ns_mult) {
      p.samples.emplace_back(units::seconds_from_ns(t_ns), mult);
    }
    shape.shape = p;
  } else {
    throw ConfigError("unknown pump shape '" + pump.shape + "'");
  }
  shape.validate();
  return shape;
}

TimeGrid RunConfig::to_time_grid() const {
  return TimeGrid(units::seconds_from_ns(grid.t_start_ns), units::seconds_from_ns(grid.t_end_ns),
                  grid.n_points);
}

std::string RunConfig::serialize() const {
  std::string out;
  auto kv = [&](const std::string& key, const std::string& value) {
    out += key + " = " + value + "\n";
  };
  auto kvd = [&](const std::string& key, double v) { kv(key, io::format_double(v)); };
  auto kvi = [&](const std::string& key, int v) { kv(key, std::to_string(v)); };
  auto kvb = [&](const std::string& key, bool v) { kv(key, v ? "true" : "false"); };

  out += "[system]\n";
  kvd("kappa_e_i_two_pi_MHz", system.kappa_e_i_two_pi_MHz);
  kvd("kappa_e_c_two_pi_MHz", system.kappa_e_c_two_pi_MHz);
  kvd("kappa_o_i_two_pi_GHz", system.kappa_o_i_two_pi_GHz);
  kvd("kappa_o_c_two_pi_GHz", system.kappa_o_c_two_pi_GHz);
  kvd("g0_two_pi_kHz", system.g0_two_pi_kHz);
  kvd("omega_o_two_pi_THz", system.omega_o_two_pi_THz);
  kvd("omega_e_two_pi_GHz", system.omega_e_two_pi_GHz);
  out += "\n[pump]\n";
  kv("shape", pump.shape);
  kvd("amplitude", pump.amplitude);
  kvd("rise_rate_MHz", pump.rise_rate_MHz);
  kvb("rise_rate_includes_two_pi", pump.rise_rate_includes_two_pi);
  kvd("cutoff_ns", pump.cutoff_ns);
  kvd("sigma_ns", pump.sigma_ns);
  kvd("center_ns", pump.center_ns);
  if (!pump.samples_ns_mult.empty()) kv("samples_ns_mult", samples_to_string(pump.samples_ns_mult));
  out += "\n[grid]\n";
  kvd("t_start_ns", grid.t_start_ns);
  kvd("t_end_ns", grid.t_end_ns);
  kvi("n_points", grid.n_points);
  out += "\n[engine]\n";
  kv("type", engine.type);
  kvd("inner_dt_ns", engine.inner_dt_ns);
  kvb("output_ports", engine.output_ports);
  kvi("fock_cutoff_optical", engine.fock_cutoff_optical);
  kvi("fock_cutoff_microwave", engine.fock_cutoff_microwave);
  kvd("fock_inner_dt_ns", engine.fock_inner_dt_ns);
  out += "\n[schmidt]\n";
  kvi("max_modes", schmidt.max_modes);
  kvb("magnitude_only", schmidt.magnitude_only);
  out += "\n[catcher]\n";
  kvd("kappa1_init_two_pi_MHz", catcher.kappa1_init_two_pi_MHz);
  kvd("kappa_min_two_pi_MHz", catcher.kappa_min_two_pi_MHz);
  kvd("kappa_max_two_pi_MHz", catcher.kappa_max_two_pi_MHz);
  kvd("inner_dt_ns", catcher.inner_dt_ns);
  out += "\n[output]\n";
  kv("dir", output.dir);
  return out;
}

std::string RunConfig::hash() const { return io::fnv1a64_hex(serialize()); }

void RunConfig::set_key(const std::string& dotted_key, const std::string& value) {
  const auto dot = dotted_key.find('.');
  if (dot == std::string::npos) {
    throw ConfigError("override '" + dotted_key + "' must be section.key");
  }
  const std::string section = dotted_key.substr(0, dot);
  const std::string key = dotted_key.substr(dot + 1);
  const int line = 0;

  if (section == "system") {
    if (key == "kappa_e_i_two_pi_MHz") system.kappa_e_i_two_pi_MHz = to_double(value, line);
    else if (key == "kappa_e_c_two_pi_MHz") system.kappa_e_c_two_pi_MHz = to_double(value, line);
    else if (key == "kappa_o_i_two_pi_GHz") system.kappa_o_i_two_pi_GHz = to_double(value, line);
    else if (key == "kappa_o_c_two_pi_GHz") system.kappa_o_c_two_pi_GHz = to_double(value, line);
    else if (key == "g0_two_pi_kHz") system.g0_two_pi_kHz = to_double(value, line);
    else if (key == "omega_o_two_pi_THz") system.omega_o_two_pi_THz = to_double(value, line);
    else if (key == "omega_e_two_pi_GHz") system.omega_e_two_pi_GHz = to_double(value, line);
    else throw ConfigError("unknown key system." + key);
  } else if (section == "pump") {
    if (key == "shape") pump.shape = value;
    else if (key == "amplitude") pump.amplitude = to_double(value, line);
    else if (key == "rise_rate_MHz") pump.rise_rate_MHz = to_double(value, line);
    else if (key == "rise_rate_includes_two_pi") pump.rise_rate_includes_two_pi = to_bool(value, line);
    else if (key == "cutoff_ns") pump.cutoff_ns = to_double(value, line);
    else if (key == "sigma_ns") pump.sigma_ns = to_double(value, line);
    else if (key == "center_ns") pump.center_ns = to_double(value, line);
    else if (key == "samples_ns_mult") pump.samples_ns_mult = to_samples(value, line);
    else throw ConfigError("unknown key pump." + key);
  } else if (section == "grid") {
    if (key == "t_start_ns") grid.t_start_ns = to_double(value, line);
    else if (key == "t_end_ns") grid.t_end_ns = to_double(value, line);
    else if (key == "n_points") grid.n_points = to_int(value, line);
    else throw ConfigError("unknown key grid." + key);
  } else if (section == "engine") {
    if (key == "type") engine.type = value;
    else if (key == "inner_dt_ns") engine.inner_dt_ns = to_double(value, line);
    else if (key == "output_ports") engine.output_ports = to_bool(value, line);
    else if (key == "fock_cutoff_optical") engine.fock_cutoff_optical = to_int(value, line);
    else if (key == "fock_cutoff_microwave") engine.fock_cutoff_microwave = to_int(value, line);
    else if (key == "fock_inner_dt_ns") engine.fock_inner_dt_ns = to_double(value, line);
    else throw ConfigError("unknown key engine." + key);
  } else if (section == "schmidt") {
    if (key == "max_modes") schmidt.max_modes = to_int(value, line);
    else if (key == "magnitude_only") schmidt.magnitude_only = to_bool(value, line);
    else throw ConfigError("unknown key schmidt." + key);
  } else if (section == "catcher") {
    if (key == "kappa1_init_two_pi_MHz") catcher.kappa1_init_two_pi_MHz = to_double(value, line);
    else if (key == "kappa_min_two_pi_MHz") catcher.kappa_min_two_pi_MHz = to_double(value, line);
    else if (key == "kappa_max_two_pi_MHz") catcher.kappa_max_two_pi_MHz = to_double(value, line);
    else if (key == "inner_dt_ns") catcher.inner_dt_ns = to_double(value, line);
    else throw ConfigError("unknown key catcher." + key);
  } else if (section == "output") {
    if (key == "dir") output.dir = value;
    else throw ConfigError("unknown key output." + key);
  } else {
    throw ConfigError("unknown section '" + section + "'");
  }
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_no) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": key outside any section");
    }
    try {
      cfg.set_key(section + "." + key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(e.what()) + " (line " + std::to_string(line_no) + ")");
    }
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::filesystem::path& path) {
  return parse(io::read_file(path));
}

}  // namespace modecatch
