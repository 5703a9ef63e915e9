#pragma once

#include <stdexcept>
#include <vector>

namespace modecatch {

/// Uniform sampling grid shared by time series and two-time kernels.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  int n_points = 0;

  TimeGrid() = default;
  TimeGrid(double start, double end, int n) : t_start(start), t_end(end), n_points(n) {
    validate();
  }

  void validate() const {
    if (!(t_end > t_start)) throw std::invalid_argument("TimeGrid: t_end must exceed t_start");
    if (n_points < 2) throw std::invalid_argument("TimeGrid: need at least two points");
  }

  double dt() const { return (t_end - t_start) / (n_points - 1); }
  double t(int i) const { return t_start + dt() * i; }

  /// Trapezoidal quadrature weights: dt/2 at the ends, dt inside.
  std::vector<double> trapezoid_weights() const {
    std::vector<double> w(static_cast<std::size_t>(n_points), dt());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
  }

  bool operator==(const TimeGrid&) const = default;
};

}  // namespace modecatch
