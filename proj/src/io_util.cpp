#include "modecatch/io_util.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "modecatch/units.hpp"

namespace modecatch::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

double parse_double(const std::string& s) {
  double out = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || p != end) {
    throw std::invalid_argument("invalid number '" + s + "'");
  }
  return out;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& data) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
  return std::string(buf);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (line_no == 1) {
      table.header = fields;
      continue;
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      try {
        row.push_back(parse_double(f));
      } catch (const std::exception&) {
        throw CsvError("csv line " + std::to_string(line_no) + ": invalid field '" + f + "'");
      }
    }
    if (!table.header.empty() && row.size() != table.header.size()) {
      throw CsvError("csv line " + std::to_string(line_no) + ": expected " +
                     std::to_string(table.header.size()) + " fields, got " +
                     std::to_string(row.size()));
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw CsvError("csv line 1: missing header");
  return table;
}

namespace {

json grid_json(const TimeGrid& grid) {
  return json{{"t_start_ns", units::ns_from_seconds(grid.t_start)},
              {"t_end_ns", units::ns_from_seconds(grid.t_end)},
              {"n_points", grid.n_points}};
}

TimeGrid grid_from_json(const json& j) {
  return TimeGrid(units::seconds_from_ns(j.at("t_start_ns").get<double>()),
                  units::seconds_from_ns(j.at("t_end_ns").get<double>()),
                  j.at("n_points").get<int>());
}

}  // namespace

std::string pump_csv(const SystemParams& params, const PumpShape& pump, const TimeGrid& grid) {
  std::string out = "t_ns,g_two_pi_MHz\n";
  for (int i = 0; i < grid.n_points; ++i) {
    const double t = grid.t(i);
    out += format_double(units::ns_from_seconds(t)) + "," +
           format_double(units::two_pi_mhz_from_rad_per_s(squeezing_strength(pump, params, t))) +
           "\n";
  }
  return out;
}

std::string moments_csv(const MomentTrajectory& traj) {
  std::string out = "t_ns,n_a,n_c,m_re,m_im\n";
  for (int i = 0; i < traj.grid.n_points; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i);
    out += format_double(units::ns_from_seconds(traj.grid.t(i))) + "," +
           format_double(traj.n_a[idx]) + "," + format_double(traj.n_c[idx]) + "," +
           format_double(traj.m_ac[idx].real()) + "," + format_double(traj.m_ac[idx].imag()) +
           "\n";
  }
  return out;
}

std::string kernel_csv(const BiphotonKernel& kernel) {
  std::string out = "i,j,t1_ns,t2_ns,re,im\n";
  const int n = kernel.grid.n_points;
  out.reserve(static_cast<std::size_t>(n) * n * 64);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out += std::to_string(i) + "," + std::to_string(j) + "," +
             format_double(units::ns_from_seconds(kernel.grid.t(i))) + "," +
             format_double(units::ns_from_seconds(kernel.grid.t(j))) + "," +
             format_double(kernel.values(i, j).real()) + "," +
             format_double(kernel.values(i, j).imag()) + "\n";
    }
  }
  return out;
}

json kernel_meta_json(const BiphotonKernel& kernel, const std::string& engine,
                      const std::string& config_hash) {
  return json{{"grid", grid_json(kernel.grid)},
              {"norm", kernel.norm},
              {"generation_probability", kernel.generation_probability},
              {"engine", engine},
              {"output_ports", kernel.output_ports},
              {"config_hash", config_hash}};
}

std::string modes_csv(const SchmidtDecomposition& decomp, ModeBranch branch) {
  const Eigen::MatrixXcd& modes =
      branch == ModeBranch::optical ? decomp.optical_modes : decomp.microwave_modes;
  std::string out = "k,t_ns,re,im,abs2\n";
  for (int k = 0; k < decomp.kept_modes; ++k) {
    for (int i = 0; i < decomp.grid.n_points; ++i) {
      out += std::to_string(k) + "," + format_double(units::ns_from_seconds(decomp.grid.t(i))) +
             "," + format_double(modes(i, k).real()) + "," + format_double(modes(i, k).imag()) +
             "," + format_double(std::norm(modes(i, k))) + "\n";
    }
  }
  return out;
}

json schmidt_meta_json(const SchmidtDecomposition& decomp) {
  return json{{"lambdas", decomp.lambdas},
              {"entropy_nats", decomp.entropy},
              {"kept_modes", decomp.kept_modes},
              {"truncation_mass", decomp.truncation_mass},
              {"grid", grid_json(decomp.grid)}};
}

std::string photon_csv(const TimeGrid& grid, const std::vector<std::complex<double>>& amplitude) {
  std::string out = "t_ns,re,im\n";
  for (int i = 0; i < grid.n_points; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i);
    out += format_double(units::ns_from_seconds(grid.t(i))) + "," +
           format_double(amplitude[idx].real()) + "," + format_double(amplitude[idx].imag()) +
           "\n";
  }
  return out;
}

std::string capture_csv(const CaptureRun& run) {
  std::string out = "t_ns,fin_re,fin_im,kappa1_MHz_over_2pi,d_abs2,dout_abs2,eta\n";
  const TimeGrid& grid = run.photon.grid;
  for (int i = 0; i < grid.n_points; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i);
    out += format_double(units::ns_from_seconds(grid.t(i))) + "," +
           format_double(run.photon.samples[idx].real()) + "," +
           format_double(run.photon.samples[idx].imag()) + "," +
           format_double(units::two_pi_mhz_from_rad_per_s(run.schedule.kappa1[idx])) + "," +
           format_double(std::norm(run.d[idx])) + "," + format_double(std::norm(run.d_out[idx])) +
           "," + format_double(run.eta[idx]) + "\n";
  }
  return out;
}

json capture_summary_json(const CaptureSummary& summary) {
  json j{{"eta_final", summary.eta_final},
         {"reflected_before_balance", summary.reflected_before_balance},
         {"kappa_max_used_two_pi_MHz", units::two_pi_mhz_from_rad_per_s(summary.kappa_max_used)},
         {"kappa_min_after_balance_two_pi_MHz",
          units::two_pi_mhz_from_rad_per_s(summary.kappa_min_after_balance)},
         {"bookkeeping_residual", summary.bookkeeping_residual},
         {"clamped_anywhere", summary.clamped_anywhere}};
  if (std::isnan(summary.t_b)) {
    j["t_b_ns"] = nullptr;
  } else {
    j["t_b_ns"] = units::ns_from_seconds(summary.t_b);
  }
  return j;
}

BiphotonKernel load_kernel(const std::filesystem::path& csv_path,
                           const std::filesystem::path& meta_path) {
  const json meta = json::parse(read_file(meta_path));
  BiphotonKernel kernel;
  kernel.grid = grid_from_json(meta.at("grid"));
  kernel.norm = meta.at("norm").get<double>();
  kernel.generation_probability = meta.at("generation_probability").get<double>();
  kernel.output_ports = meta.at("output_ports").get<bool>();

  const CsvTable table = parse_csv(read_file(csv_path));
  const int ci = table.column("i");
  const int cj = table.column("j");
  const int cre = table.column("re");
  const int cim = table.column("im");
  if (ci < 0 || cj < 0 || cre < 0 || cim < 0) {
    throw CsvError("kernel csv: required columns i,j,re,im missing");
  }
  const int n = kernel.grid.n_points;
  kernel.values = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const int i = static_cast<int>(row[static_cast<std::size_t>(ci)]);
    const int j = static_cast<int>(row[static_cast<std::size_t>(cj)]);
    if (i < 0 || i >= n || j < 0 || j >= n) {
      throw CsvError("kernel csv row " + std::to_string(r + 2) + ": index out of range");
    }
    kernel.values(i, j) = {row[static_cast<std::size_t>(cre)], row[static_cast<std::size_t>(cim)]};
  }
  return kernel;
}

InputPhoton load_photon_csv(const std::filesystem::path& path) {
  const CsvTable table = parse_csv(read_file(path));
  const int ct = table.column("t_ns");
  const int cre = table.column("re");
  const int cim = table.column("im");
  if (ct < 0 || cre < 0 || cim < 0) {
    throw CsvError("photon csv: required columns t_ns,re,im missing");
  }
  if (table.rows.size() < 2) throw CsvError("photon csv: need at least two samples");
  const int n = static_cast<int>(table.rows.size());
  const double t0 = units::seconds_from_ns(table.rows.front()[static_cast<std::size_t>(ct)]);
  const double t1 = units::seconds_from_ns(table.rows.back()[static_cast<std::size_t>(ct)]);
  TimeGrid grid(t0, t1, n);
  const double dt = grid.dt();
  std::vector<std::complex<double>> samples(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& row = table.rows[static_cast<std::size_t>(i)];
    const double t = units::seconds_from_ns(row[static_cast<std::size_t>(ct)]);
    if (std::abs(t - grid.t(i)) > 1e-6 * dt + 1e-15) {
      throw CsvError("photon csv row " + std::to_string(i + 2) + ": non-uniform time spacing");
    }
    samples[static_cast<std::size_t>(i)] = {row[static_cast<std::size_t>(cre)],
                                            row[static_cast<std::size_t>(cim)]};
  }
  return InputPhoton::from_samples(grid, std::move(samples));
}

ManifestWriter::ManifestWriter(std::filesystem::path out_dir) : dir_(std::move(out_dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path ManifestWriter::emit(const std::string& name, const std::string& content) {
  const auto path = dir_ / name;
  write_file(path, content);
  entries_.emplace_back(name, fnv1a64_hex(content));
  sizes_.push_back(content.size());
  return path;
}

void ManifestWriter::set_config_hash(const std::string& hash) { config_hash_ = hash; }
void ManifestWriter::set_engine(const std::string& engine) { engine_ = engine; }

void ManifestWriter::mark_failed(const std::string& stage, const std::string& error) {
  status_ = "failed";
  failed_stage_ = stage;
  error_ = error;
}

std::filesystem::path ManifestWriter::finalize() {
  json files = json::array();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    files.push_back(json{{"path", entries_[i].first},
                         {"bytes", sizes_[i]},
                         {"fnv1a64", entries_[i].second}});
  }
  json manifest{{"config_hash", config_hash_},
                {"engine", engine_},
                {"status", status_},
                {"files", files}};
  if (status_ == "failed") {
    manifest["failed_stage"] = failed_stage_;
    manifest["error"] = error_;
  }
  const auto path = dir_ / "manifest.json";
  write_file(path, manifest.dump(2) + "\n");
  return path;
}

}  // namespace modecatch::io
