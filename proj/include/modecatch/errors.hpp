#pragma once

#include <stdexcept>
#include <string>

namespace modecatch {

/// Moment or correlation propagation left the physical regime.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double t_fail)
      : std::runtime_error(what), t(t_fail) {}
  double t;  // first offending time, seconds
};

/// The outgoing field never crossed zero within the window, so the balanced
/// schedule cannot start. Carries the smallest |d_out| reached; retrying with
/// a different kappa1_init may succeed.
class NoBalanceError : public std::runtime_error {
 public:
  NoBalanceError(const std::string& what, double min_abs)
      : std::runtime_error(what), min_abs_dout(min_abs) {}
  double min_abs_dout;
};

}  // namespace modecatch
