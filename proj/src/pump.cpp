#include "modecatch/pump.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace modecatch {

namespace {

double tabulated_multiplier(const TabulatedPump& tab, double t) {
  const auto& s = tab.samples;
  if (s.empty()) return 0.0;
  if (t < s.front().first || t > s.back().first) return 0.0;
  auto it = std::lower_bound(s.begin(), s.end(), t,
                             [](const auto& a, double b) { return a.first < b; });
  if (it == s.begin()) return it->second;
  if (it == s.end()) return s.back().second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double frac = (t - lo.first) / (hi.first - lo.first);
  return lo.second * (1.0 - frac) + hi.second * frac;
}

}  // namespace

void PumpShape::validate() const {
  std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PiecewiseExpPump>) {
          if (!(p.amplitude > 0) || !(p.rise_rate > 0) || !(p.cutoff > 0)) {
            throw std::invalid_argument(
                "PiecewiseExpPump: amplitude, rise rate and cutoff must be positive");
          }
        } else if constexpr (std::is_same_v<T, GaussianPump>) {
          if (!(p.amplitude > 0) || !(p.sigma > 0)) {
            throw std::invalid_argument("GaussianPump: amplitude and sigma must be positive");
          }
        } else {
          for (std::size_t i = 0; i < p.samples.size(); ++i) {
            if (p.samples[i].second < 0) {
              throw std::invalid_argument("TabulatedPump: multipliers must be non-negative");
            }
            if (i > 0 && !(p.samples[i].first > p.samples[i - 1].first)) {
              throw std::invalid_argument("TabulatedPump: times must be strictly increasing");
            }
          }
        }
      },
      shape);
}

double squeezing_strength(const PumpShape& pump, const SystemParams& params, double t) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PiecewiseExpPump>) {
          if (t >= p.cutoff) return 0.0;
          return p.amplitude * std::exp(0.5 * p.rise_rate * (t - p.cutoff)) * params.g0;
        } else if constexpr (std::is_same_v<T, GaussianPump>) {
          const double x = (t - p.center) / p.sigma;
          return p.amplitude * std::exp(-0.5 * x * x) * params.g0;
        } else {
          return tabulated_multiplier(p, t) * params.g0;
        }
      },
      pump.shape);
}

double max_squeezing_strength(const PumpShape& pump, const SystemParams& params,
                              const TimeGrid& grid) {
  double g_max = 0.0;
  for (int i = 0; i < grid.n_points; ++i) {
    g_max = std::max(g_max, squeezing_strength(pump, params, grid.t(i)));
  }
  return g_max;
}

StabilityReport stability_check(const PumpShape& pump, const SystemParams& params,
                                const TimeGrid& grid) {
  const double g_max = max_squeezing_strength(pump, params, grid);
  const double threshold = params.instability_threshold();
  StabilityReport report;
  report.margin = g_max / threshold;
  report.stable = g_max < threshold;
  return report;
}

}  // namespace modecatch
