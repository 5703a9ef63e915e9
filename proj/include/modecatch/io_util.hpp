#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "modecatch/biphoton.hpp"
#include "modecatch/catcher.hpp"
#include "modecatch/schmidt.hpp"
#include "modecatch/time_grid.hpp"

namespace modecatch::io {

/// Shortest round-trip decimal form (std::to_chars).
std::string format_double(double v);

/// Strict double parse of a whole field; throws std::invalid_argument.
double parse_double(const std::string& s);

std::uint64_t fnv1a64(const std::string& data);
std::string fnv1a64_hex(const std::string& data);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed CSV with a header row; all fields numeric.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

/// Throws CsvError naming the 1-based line of the first malformed row.
CsvTable parse_csv(const std::string& text);

// Writers return the serialized file content; callers persist it and record
// the checksum in the manifest.

std::string pump_csv(const SystemParams& params, const PumpShape& pump, const TimeGrid& grid);
std::string moments_csv(const MomentTrajectory& traj);
std::string kernel_csv(const BiphotonKernel& kernel);
nlohmann::json kernel_meta_json(const BiphotonKernel& kernel, const std::string& engine,
                                const std::string& config_hash);
std::string modes_csv(const SchmidtDecomposition& decomp, ModeBranch branch);
nlohmann::json schmidt_meta_json(const SchmidtDecomposition& decomp);
std::string photon_csv(const TimeGrid& grid, const std::vector<std::complex<double>>& amplitude);
std::string capture_csv(const CaptureRun& run);
nlohmann::json capture_summary_json(const CaptureSummary& summary);

/// Kernel from its CSV plus JSON sidecar.
BiphotonKernel load_kernel(const std::filesystem::path& csv_path,
                           const std::filesystem::path& meta_path);

/// Photon samples from a (t_ns, re, im) CSV; validates uniform spacing.
InputPhoton load_photon_csv(const std::filesystem::path& path);

/// Collects (path, bytes, checksum) entries and emits manifest.json.
class ManifestWriter {
 public:
  explicit ManifestWriter(std::filesystem::path out_dir);

  /// Writes content to out_dir/name and records it.
  std::filesystem::path emit(const std::string& name, const std::string& content);

  void set_config_hash(const std::string& hash);
  void set_engine(const std::string& engine);
  void mark_failed(const std::string& stage, const std::string& error);

  /// Writes manifest.json; every emitted file has exactly one entry.
  std::filesystem::path finalize();

 private:
  std::filesystem::path dir_;
  std::string config_hash_;
  std::string engine_;
  std::string status_ = "ok";
  std::string failed_stage_;
  std::string error_;
  std::vector<std::pair<std::string, std::string>> entries_;  // name, checksum
  std::vector<std::uint64_t> sizes_;
};

}  // namespace modecatch::io
