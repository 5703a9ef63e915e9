#pragma once

#include <filesystem>
#include <optional>

#include "modecatch/biphoton.hpp"
#include "modecatch/catcher.hpp"
#include "modecatch/config.hpp"
#include "modecatch/schmidt.hpp"

namespace modecatch {

/// End-to-end run: pump -> two-time kernel -> Schmidt modes -> capture.
/// Emits the figure-ready files plus a manifest tying them to the config
/// hash. On a numeric failure the partial outputs stay on disk with a failure
/// marker in the manifest, and the error is rethrown.
struct PipelineResult {
  RunConfig config;
  MomentTrajectory moments;
  BiphotonKernel kernel;
  SchmidtDecomposition schmidt;
  CaptureRun capture;
  CaptureSummary summary;
  std::filesystem::path out_dir;
};

PipelineResult run_pipeline(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace modecatch
