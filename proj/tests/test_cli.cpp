#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>

#include "modecatch/io_util.hpp"

// Drives the installed binary through std::system: flags, exit codes and the
// emitted files are the contract under test.

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kBin = MODECATCH_BIN;

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("modecatch_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = kBin.string() + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string gaussian_config(const fs::path& dir, int n_points = 81) {
  const std::string text =
      "[pump]\n"
      "shape = gaussian\n"
      "amplitude = 6.5\n"
      "sigma_ns = 40\n"
      "center_ns = 120\n"
      "[grid]\n"
      "n_points = " + std::to_string(n_points) + "\n";
  const fs::path path = dir / "run.ini";
  modecatch::io::write_file(path, text);
  return path.string();
}

}  // namespace

TEST_CASE("analytic subcommand emits curves and markers") {
  const auto dir = fresh_dir("analytic");
  const int rc = run_cli("analytic --gamma-two-pi-mhz 2 --kappa1-two-pi-mhz 2 -o " + dir.string());
  REQUIRE(rc == 0);
  CHECK(fs::exists(dir / "analytic_fixed.csv"));
  CHECK(fs::exists(dir / "analytic_tunable.csv"));
  const auto markers = json::parse(modecatch::io::read_file(dir / "analytic_markers.json"));
  // fixed-coupling peak 4/e^2 at t = 2/gamma ~ 159.15 ns
  CHECK(markers.at("t_m_ns").get<double>() == doctest::Approx(159.1549).epsilon(1e-4));
  CHECK(markers.at("eta_max_fixed").get<double>() == doctest::Approx(0.5413411).epsilon(1e-6));
  CHECK(markers.at("eta_limit_tunable").get<double>() ==
        doctest::Approx(0.7357589).epsilon(1e-6));
}

TEST_CASE("analytic subcommand rejects a zero coupling rate") {
  const auto dir = fresh_dir("analytic_bad");
  const int rc =
      run_cli("analytic --gamma-two-pi-mhz 2 --kappa1-two-pi-mhz 0 -o " + dir.string());
  CHECK(rc == 2);
}

TEST_CASE("unknown flags and missing subcommands exit with the usage code") {
  CHECK(run_cli("") == 2);
  CHECK(run_cli("analytic --no-such-flag 1") == 2);
  CHECK(run_cli("catch") == 2);  // --photon is required
}

TEST_CASE("pipeline runs from a config and the catch subcommand reproduces it") {
  const auto dir = fresh_dir("pipeline");
  const auto cfg = gaussian_config(dir);
  const fs::path out = dir / "run";
  REQUIRE(run_cli("pipeline --config " + cfg + " -o " + out.string()) == 0);

  for (const char* name :
       {"config_echo.ini", "pump.csv", "moments.csv", "kernel.csv", "kernel_meta.json",
        "schmidt_modes_optical.csv", "schmidt_modes_microwave.csv", "schmidt_meta.json",
        "photon_microwave_zero.csv", "capture.csv", "capture_summary.json", "manifest.json"}) {
    CHECK(fs::exists(out / name));
  }

  const auto manifest = json::parse(modecatch::io::read_file(out / "manifest.json"));
  CHECK(manifest.at("status") == "ok");
  // every emitted file appears exactly once with a matching checksum
  for (const auto& entry : manifest.at("files")) {
    const auto content = modecatch::io::read_file(out / entry.at("path").get<std::string>());
    CHECK(modecatch::io::fnv1a64_hex(content) == entry.at("fnv1a64").get<std::string>());
  }

  const auto summary = json::parse(modecatch::io::read_file(out / "capture_summary.json"));
  const double eta_pipeline = summary.at("eta_final").get<double>();
  CHECK(eta_pipeline > 0.5);

  // standalone catch of the exported zero mode: same code path, same answer
  const fs::path out2 = dir / "catch";
  REQUIRE(run_cli("catch --photon " + (out / "photon_microwave_zero.csv").string() + " -o " +
                  out2.string()) == 0);
  const auto summary2 = json::parse(modecatch::io::read_file(out2 / "capture_summary.json"));
  CHECK(std::abs(summary2.at("eta_final").get<double>() - eta_pipeline) <= 1e-9);
}

TEST_CASE("catch subcommand rejects malformed photon files") {
  const auto dir = fresh_dir("catch_bad");
  modecatch::io::write_file(dir / "empty.csv", "");
  CHECK(run_cli("catch --photon " + (dir / "empty.csv").string() + " -o " +
                (dir / "o").string()) == 2);
  modecatch::io::write_file(dir / "broken.csv", "t_ns,re,im\n0,0.1,0\n1,x,0\n");
  CHECK(run_cli("catch --photon " + (dir / "broken.csv").string() + " -o " +
                (dir / "o2").string()) == 2);
}

TEST_CASE("numeric failures exit with code 3 and leave a failure marker") {
  const auto dir = fresh_dir("unstable");
  const auto cfg = gaussian_config(dir);
  const fs::path out = dir / "run";
  const int rc = run_cli("pipeline --config " + cfg + " --set pump.amplitude=200 -o " +
                         out.string());
  CHECK(rc == 3);
  const auto manifest = json::parse(modecatch::io::read_file(out / "manifest.json"));
  CHECK(manifest.at("status") == "failed");
  CHECK(manifest.at("files").size() >= 1);  // partial outputs retained
}

TEST_CASE("transduce then schmidt chain on exported files") {
  const auto dir = fresh_dir("chain");
  const auto cfg = gaussian_config(dir, 61);
  const fs::path tout = dir / "transduce";
  REQUIRE(run_cli("transduce --config " + cfg + " -o " + tout.string()) == 0);
  CHECK(fs::exists(tout / "kernel.csv"));

  const fs::path sout = dir / "schmidt";
  REQUIRE(run_cli("schmidt --kernel " + (tout / "kernel.csv").string() + " --meta " +
                  (tout / "kernel_meta.json").string() + " -o " + sout.string()) == 0);
  const auto meta = json::parse(modecatch::io::read_file(sout / "schmidt_meta.json"));
  const auto lambdas = meta.at("lambdas").get<std::vector<double>>();
  REQUIRE(lambdas.size() >= 2);
  CHECK(lambdas[0] > lambdas[1]);
}

TEST_CASE("MODECATCH_OUT overrides the default output directory") {
  const auto dir = fresh_dir("envout");
  const std::string cmd = "MODECATCH_OUT=" + (dir / "env_dir").string() + " " + kBin.string() +
                          " analytic --gamma-two-pi-mhz 2 --kappa1-two-pi-mhz 2 >/dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(fs::exists(dir / "env_dir" / "analytic_markers.json"));
}
