#include "modecatch/catcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "modecatch/errors.hpp"
#include "modecatch/kernels/reduce.hpp"
#include "modecatch/units.hpp"

namespace modecatch {

namespace {

using cd = std::complex<double>;

constexpr double kTinyEnergy = 1e-300;

std::function<cd(double)> linear_interpolator(const TimeGrid& grid, std::vector<cd> samples) {
  return [grid, samples = std::move(samples)](double t) -> cd {
    if (t < grid.t_start || t > grid.t_end) return cd(0.0, 0.0);
    const double x = (t - grid.t_start) / grid.dt();
    const int i = std::min(static_cast<int>(x), grid.n_points - 2);
    const double frac = x - i;
    return samples[static_cast<std::size_t>(i)] * (1.0 - frac) +
           samples[static_cast<std::size_t>(i) + 1] * frac;
  };
}

enum class RateMode { fixed, function, balanced };

struct Rates {
  RateMode mode = RateMode::fixed;
  double kappa_hold = 0.0;  // fixed mode, and the balanced pre-crossing hold
  const std::function<double(double)>* fn = nullptr;
  double kappa_min = 0.0;
  double kappa_max = 0.0;
};

struct State {
  cd d{0.0, 0.0};
  double design = 0.0;  // accumulated cavity energy driving the balanced rate
  double e_in = 0.0;
  double e_out = 0.0;
};

struct Deriv {
  cd d;
  double design;
  double e_in;
  double e_out;
};

State axpy(const State& s, double h, const Deriv& k) {
  return {s.d + h * k.d, s.design + h * k.design, s.e_in + h * k.e_in, s.e_out + h * k.e_out};
}

struct Integrator {
  const InputPhoton* photon = nullptr;
  Rates rates;
  bool past_balance = false;

  double rate_at(double t, const State& s, bool* clamped_out = nullptr) const {
    if (clamped_out) *clamped_out = false;
    switch (rates.mode) {
      case RateMode::fixed:
        return rates.kappa_hold;
      case RateMode::function: {
        const double k = (*rates.fn)(t);
        if (k < 0.0) throw std::invalid_argument("coupling schedule: negative kappa1");
        return k;
      }
      case RateMode::balanced: {
        if (!past_balance) return rates.kappa_hold;
        const double af2 = std::norm(photon->profile(t));
        const double k_raw = af2 / std::max(s.design, kTinyEnergy);
        const double k = std::clamp(k_raw, rates.kappa_min, rates.kappa_max);
        if (clamped_out) *clamped_out = (k != k_raw);
        return k;
      }
    }
    return 0.0;
  }

  Deriv deriv(double t, const State& s) const {
    const cd f = photon->profile(t);
    const double af2 = std::norm(f);
    bool clamped = false;
    double k;
    bool balance_rule_active = false;
    if (rates.mode == RateMode::balanced && past_balance) {
      const double k_raw = af2 / std::max(s.design, kTinyEnergy);
      k = std::clamp(k_raw, rates.kappa_min, rates.kappa_max);
      clamped = (k != k_raw);
      balance_rule_active = true;
    } else if (rates.mode == RateMode::function) {
      k = (*rates.fn)(t);
      if (k < 0.0) throw std::invalid_argument("coupling schedule: negative kappa1");
    } else {
      k = rates.kappa_hold;
    }
    const double sk = std::sqrt(k);
    Deriv out;
    out.d = -0.5 * k * s.d + sk * f;
    // Balanced and unclamped: all incoming energy accumulates in the cavity.
    // Otherwise track the actual cavity energy so the rule resumes from it.
    if (balance_rule_active && !clamped) {
      out.design = af2;
    } else {
      out.design = 2.0 * (std::conj(s.d) * out.d).real();
    }
    out.e_in = af2;
    out.e_out = std::norm(f - sk * s.d);
    return out;
  }

  void rk4(double t, double h, State& s) const {
    const Deriv k1 = deriv(t, s);
    const Deriv k2 = deriv(t + 0.5 * h, axpy(s, 0.5 * h, k1));
    const Deriv k3 = deriv(t + 0.5 * h, axpy(s, 0.5 * h, k2));
    const Deriv k4 = deriv(t + h, axpy(s, h, k3));
    s.d += h / 6.0 * (k1.d + 2.0 * (k2.d + k3.d) + k4.d);
    s.design += h / 6.0 * (k1.design + 2.0 * (k2.design + k3.design) + k4.design);
    s.e_in += h / 6.0 * (k1.e_in + 2.0 * (k2.e_in + k3.e_in) + k4.e_in);
    s.e_out += h / 6.0 * (k1.e_out + 2.0 * (k2.e_out + k3.e_out) + k4.e_out);
  }
};

struct IntegrationOutput {
  std::vector<cd> d, d_out;
  std::vector<double> eta, e_in, e_out, kappa_nodes;
  std::vector<std::uint8_t> clamped;
  double t_b = std::numeric_limits<double>::quiet_NaN();
  double d_b_abs2 = 0.0;
  double e_out_at_balance = 0.0;
  double min_abs_dout = std::numeric_limits<double>::infinity();
  bool balanced = false;
};

// Single forward pass over the grid with per-interval substepping. In
// balanced mode the zero crossing of the outgoing field is either detected
// (synthesis, known_tb = NaN) or replayed at the recorded time with the same
// step placement, which reproduces the synthesis trajectory exactly.
IntegrationOutput integrate(const InputPhoton& photon, const Rates& rates, double inner_dt,
                            double known_tb) {
  const TimeGrid& grid = photon.grid;
  const int n = grid.n_points;
  const double dt_target = inner_dt > 0 ? inner_dt : grid.dt() / 64.0;

  // Balance detection runs on the real part in the frame where the photon's
  // peak sample is real positive.
  double max_abs_f = 0.0;
  std::size_t peak = 0;
  for (std::size_t i = 0; i < photon.samples.size(); ++i) {
    const double a = std::abs(photon.samples[i]);
    if (a > max_abs_f) {
      max_abs_f = a;
      peak = i;
    }
  }
  cd rot(1.0, 0.0);
  if (max_abs_f > 0.0) rot = std::conj(photon.samples[peak]) / std::abs(photon.samples[peak]);
  const double arm_threshold = 1e-4 * max_abs_f;

  Integrator integ;
  integ.photon = &photon;
  integ.rates = rates;
  const bool balanced_mode = rates.mode == RateMode::balanced;
  const bool detect = balanced_mode && std::isnan(known_tb);

  IntegrationOutput out;
  out.d.resize(n);
  out.d_out.resize(n);
  out.eta.resize(n);
  out.e_in.resize(n);
  out.e_out.resize(n);
  out.kappa_nodes.resize(n);
  out.clamped.assign(static_cast<std::size_t>(n), 0);

  State s;
  bool armed = false;

  auto balance_signal = [&](double t, const State& st) {
    const cd dout = photon.profile(t) - std::sqrt(rates.kappa_hold) * st.d;
    out.min_abs_dout = std::min(out.min_abs_dout, std::abs(dout));
    return (rot * dout).real();
  };

  auto switch_to_balance = [&](double t_b) {
    integ.past_balance = true;
    out.balanced = true;
    out.t_b = t_b;
    out.d_b_abs2 = std::norm(s.d);
    out.e_out_at_balance = s.e_out;
    s.design = std::norm(s.d);
  };

  auto record = [&](int node) {
    const double t = grid.t(node);
    bool clamped = false;
    const double k = integ.rate_at(t, s, &clamped);
    const std::size_t idx = static_cast<std::size_t>(node);
    out.d[idx] = s.d;
    out.d_out[idx] = photon.profile(t) - std::sqrt(k) * s.d;
    out.eta[idx] = std::norm(s.d);
    out.e_in[idx] = s.e_in;
    out.e_out[idx] = s.e_out;
    out.kappa_nodes[idx] = k;
    out.clamped[idx] = clamped ? 1 : 0;
  };

  // Integrates [t0, t0+span] with uniform substeps; pre-balance detection and
  // the crossing switch happen inside. Returns after the whole span is done.
  auto run_span = [&](double t0, double span) {
    double seg_start = t0;
    double remaining = span;
    while (remaining > 0.0) {
      if (balanced_mode && !integ.past_balance && !detect) {
        // Replay: split the segment at the recorded balance time.
        if (known_tb <= seg_start) {
          switch_to_balance(known_tb);
        } else if (known_tb < seg_start + remaining) {
          // Same step placement as synthesis: full substeps by index, then a
          // partial step onto the recorded balance time.
          const int n_sub = std::max(1, static_cast<int>(std::ceil(remaining / dt_target)));
          const double h = remaining / n_sub;
          int k = 0;
          while (seg_start + (k + 1) * h <= known_tb) {
            integ.rk4(seg_start + k * h, h, s);
            ++k;
          }
          const double t = seg_start + k * h;
          const double hpart = known_tb - t;
          if (hpart > 0.0) integ.rk4(t, hpart, s);
          switch_to_balance(known_tb);
          const double done = known_tb - seg_start;
          seg_start = known_tb;
          remaining -= done;
          continue;
        }
      }

      const int n_sub = std::max(1, static_cast<int>(std::ceil(remaining / dt_target)));
      const double h = remaining / n_sub;
      bool switched = false;
      for (int k = 0; k < n_sub; ++k) {
        const double t = seg_start + k * h;
        if (detect && !integ.past_balance) {
          const double bal_start = balance_signal(t, s);
          if (!armed && bal_start > arm_threshold) armed = true;
          const State saved = s;
          integ.rk4(t, h, s);
          const double bal_end = balance_signal(t + h, s);
          if (armed && bal_end <= 0.0) {
            double t_b = t + h;
            if (bal_end < 0.0 && bal_start > 0.0) {
              t_b = t + h * (bal_start / (bal_start - bal_end));
            }
            s = saved;
            const double hpart = t_b - t;
            if (hpart > 0.0) integ.rk4(t, hpart, s);
            switch_to_balance(t_b);
            const double done = t_b - seg_start;
            seg_start = t_b;
            remaining -= done;
            switched = true;
            break;
          }
        } else {
          integ.rk4(t, h, s);
        }
      }
      if (!switched) remaining = 0.0;
    }
  };

  if (detect) {
    const double bal0 = balance_signal(grid.t_start, s);
    if (bal0 > arm_threshold) armed = true;
  }
  record(0);
  for (int node = 0; node + 1 < n; ++node) {
    run_span(grid.t(node), grid.dt());
    record(node + 1);
  }

  if (detect && !integ.past_balance) {
    throw NoBalanceError("no balance crossing within the window (min |d_out| = " +
                             std::to_string(out.min_abs_dout) + ")",
                         out.min_abs_dout);
  }
  return out;
}

}  // namespace

InputPhoton InputPhoton::from_samples(const TimeGrid& grid, std::vector<cd> samples) {
  grid.validate();
  if (static_cast<int>(samples.size()) != grid.n_points) {
    throw std::invalid_argument("InputPhoton: sample count does not match the grid");
  }
  const auto w = grid.trapezoid_weights();
  const double q = kernels::weighted_abs2_sum(samples.data(), w.data(), samples.size());
  InputPhoton p;
  p.grid = grid;
  if (q > 0.0) {
    const double scale = 1.0 / std::sqrt(q);
    for (auto& z : samples) z *= scale;
    p.norm = 1.0;
  } else {
    p.norm = 0.0;  // the zero photon stays representable
  }
  p.samples = std::move(samples);
  p.profile = linear_interpolator(grid, p.samples);
  return p;
}

InputPhoton InputPhoton::from_function(const TimeGrid& grid, std::function<cd(double)> f,
                                       bool renormalize) {
  grid.validate();
  std::vector<cd> samples(static_cast<std::size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) samples[static_cast<std::size_t>(i)] = f(grid.t(i));
  if (renormalize) return from_samples(grid, std::move(samples));
  InputPhoton p;
  p.grid = grid;
  p.samples = std::move(samples);
  p.profile = std::move(f);
  p.norm = 1.0;
  return p;
}

CouplingSchedule CouplingSchedule::from_fixed(const TimeGrid& grid, double kappa1) {
  grid.validate();
  if (!(kappa1 > 0)) throw std::invalid_argument("CouplingSchedule: kappa1 must be positive");
  CouplingSchedule s;
  s.grid = grid;
  s.kappa1.assign(static_cast<std::size_t>(grid.n_points), kappa1);
  s.clamped.assign(static_cast<std::size_t>(grid.n_points), 0);
  s.rule = FixedRule{kappa1};
  return s;
}

CouplingSchedule CouplingSchedule::from_function(const TimeGrid& grid,
                                                 std::function<double(double)> kappa1) {
  grid.validate();
  CouplingSchedule s;
  s.grid = grid;
  s.kappa1.resize(static_cast<std::size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) {
    const double k = kappa1(grid.t(i));
    if (k < 0) throw std::invalid_argument("CouplingSchedule: negative kappa1 sample");
    s.kappa1[static_cast<std::size_t>(i)] = k;
  }
  s.clamped.assign(static_cast<std::size_t>(grid.n_points), 0);
  s.rule = FunctionRule{std::move(kappa1)};
  return s;
}

CouplingSchedule synthesize_schedule(const InputPhoton& photon, double kappa1_init,
                                     double kappa_min, double kappa_max,
                                     const CaptureOptions& opts) {
  photon.grid.validate();
  if (!(kappa1_init > 0)) {
    throw std::invalid_argument("synthesize_schedule: kappa1_init must be positive");
  }
  if (!(kappa_min >= 0) || !(kappa_max > kappa_min)) {
    throw std::invalid_argument("synthesize_schedule: invalid bounds");
  }
  if (kappa1_init < kappa_min || kappa1_init > kappa_max) {
    throw std::invalid_argument("synthesize_schedule: kappa1_init outside bounds");
  }

  Rates rates;
  rates.mode = RateMode::balanced;
  rates.kappa_hold = kappa1_init;
  rates.kappa_min = kappa_min;
  rates.kappa_max = kappa_max;

  IntegrationOutput run =
      integrate(photon, rates, opts.inner_dt, std::numeric_limits<double>::quiet_NaN());

  CouplingSchedule s;
  s.grid = photon.grid;
  s.kappa1 = std::move(run.kappa_nodes);
  s.clamped = std::move(run.clamped);
  int balance_index = photon.grid.n_points - 1;
  for (int i = 0; i < photon.grid.n_points; ++i) {
    if (photon.grid.t(i) >= run.t_b) {
      balance_index = i;
      break;
    }
  }
  s.balance_index = balance_index;
  s.rule = BalancedRule{kappa1_init, kappa_min, kappa_max, run.t_b, run.d_b_abs2};
  return s;
}

CaptureRun simulate_capture(const InputPhoton& photon, const CouplingSchedule& schedule,
                            const CaptureOptions& opts) {
  if (!(photon.grid == schedule.grid)) {
    throw std::invalid_argument("simulate_capture: photon and schedule grids differ");
  }
  for (double k : schedule.kappa1) {
    if (k < 0) throw std::invalid_argument("simulate_capture: negative kappa1 sample");
  }

  Rates rates;
  double known_tb = std::numeric_limits<double>::quiet_NaN();
  if (const auto* fixed = std::get_if<FixedRule>(&schedule.rule)) {
    rates.mode = RateMode::fixed;
    rates.kappa_hold = fixed->kappa1;
  } else if (const auto* fn = std::get_if<FunctionRule>(&schedule.rule)) {
    rates.mode = RateMode::function;
    rates.fn = &fn->kappa1;
  } else {
    const auto& bal = std::get<BalancedRule>(schedule.rule);
    rates.mode = RateMode::balanced;
    rates.kappa_hold = bal.kappa_init;
    rates.kappa_min = bal.kappa_min;
    rates.kappa_max = bal.kappa_max;
    known_tb = bal.t_b;
  }

  IntegrationOutput run = integrate(photon, rates, opts.inner_dt, known_tb);

  CaptureRun out;
  out.photon = photon;
  out.schedule = schedule;
  out.d = std::move(run.d);
  out.d_out = std::move(run.d_out);
  out.eta = std::move(run.eta);
  out.energy_in = std::move(run.e_in);
  out.energy_out = std::move(run.e_out);
  out.energy_out_at_balance = run.e_out_at_balance;
  double residual = 0.0;
  for (std::size_t i = 0; i < out.eta.size(); ++i) {
    residual = std::max(residual, std::abs(out.eta[i] + out.energy_out[i] - out.energy_in[i]));
  }
  out.bookkeeping_residual = residual;
  return out;
}

CaptureSummary capture_report(const CaptureRun& run) {
  CaptureSummary s;
  s.eta_final = run.eta.back();
  s.bookkeeping_residual = run.bookkeeping_residual;
  s.kappa_max_used = *std::max_element(run.schedule.kappa1.begin(), run.schedule.kappa1.end());
  s.clamped_anywhere = std::any_of(run.schedule.clamped.begin(), run.schedule.clamped.end(),
                                   [](std::uint8_t c) { return c != 0; });
  if (const auto* bal = std::get_if<BalancedRule>(&run.schedule.rule)) {
    s.t_b = bal->t_b;
    s.reflected_before_balance = run.energy_out_at_balance;
    s.kappa_min_after_balance =
        *std::min_element(run.schedule.kappa1.begin() + run.schedule.balance_index,
                          run.schedule.kappa1.end());
  } else {
    s.t_b = std::numeric_limits<double>::quiet_NaN();
    s.reflected_before_balance = 0.0;
    s.kappa_min_after_balance =
        *std::min_element(run.schedule.kappa1.begin(), run.schedule.kappa1.end());
  }
  return s;
}

}  // namespace modecatch
