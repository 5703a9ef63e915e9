#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "modecatch/system_params.hpp"
#include "modecatch/time_grid.hpp"

namespace modecatch {

/// Squeezing strength that grows exponentially and switches off at `cutoff`:
/// g(t) = amplitude * exp(rise_rate*(t-cutoff)/2) * g0 for t < cutoff, 0 after.
struct PiecewiseExpPump {
  double amplitude = 0.0;  // multiplier of g0 just before cutoff
  double rise_rate = 0.0;  // 1/s
  double cutoff = 0.0;     // s
};

/// Gaussian envelope: g(t) = amplitude * exp(-(t-center)^2/(2 sigma^2)) * g0.
struct GaussianPump {
  double amplitude = 0.0;  // multiplier of g0 at the center
  double sigma = 0.0;      // s
  double center = 0.0;     // s
};

/// Sampled g(t)/g0 multiplier; linear interpolation, zero outside the range.
struct TabulatedPump {
  std::vector<std::pair<double, double>> samples;  // (time s, multiplier)
};

struct PumpShape {
  std::variant<PiecewiseExpPump, GaussianPump, TabulatedPump> shape;

  void validate() const;
};

/// Pump-enhanced squeezing strength g(t), rad/s.
double squeezing_strength(const PumpShape& pump, const SystemParams& params, double t);

/// Largest g(t) over the grid nodes.
double max_squeezing_strength(const PumpShape& pump, const SystemParams& params,
                              const TimeGrid& grid);

struct StabilityReport {
  bool stable = false;
  double margin = 0.0;  // max g / instability threshold
};

/// True when the pump stays below the parametric-instability threshold on the grid.
StabilityReport stability_check(const PumpShape& pump, const SystemParams& params,
                                const TimeGrid& grid);

}  // namespace modecatch
