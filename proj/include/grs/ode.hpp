#pragma once

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size Eigen states.
//
// The right-hand side returns std::nullopt when the state sits inside a
// singularity guard; such stages are treated like rejected steps, and the
// integration ends with Status::Guard once the step cannot shrink further.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>

namespace grs::ode {

struct Control {
  double h_init = 1e-3;
  double h_min = 1e-12;
  double h_max = 5e-4;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  std::size_t max_steps = 1'000'000;
};

enum class Status { Reached, Guard, StepUnderflow, MaxSteps };

struct Statistics {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t guard_hits = 0;
};

/// Integrates y' = rhs(t, y) from t0 towards t_end (either direction).
/// `on_accept(t, y)` is called for the initial state and after every
/// accepted step.
template <typename State, typename Rhs, typename Observer>
Status integrate(Rhs&& rhs, double t0, State y0, double t_end, const Control& control, Observer&& on_accept,
                 Statistics* stats = nullptr) {
  // Dormand-Prince tableau; b is the fifth-order row (a7*), e = b5 - b4.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  Statistics local;
  Statistics& st = stats ? *stats : local;
  const double dir = t_end >= t0 ? 1.0 : -1.0;
  double t = t0;
  State y = y0;
  on_accept(t, y);

  std::optional<State> k1 = rhs(t, y);
  if (!k1) return Status::Guard;
  double h = std::min(control.h_init, control.h_max);
  bool last_failure_guard = false;

  while (dir * (t_end - t) > 0) {
    if (st.accepted >= control.max_steps) return Status::MaxSteps;
    const double remaining = std::abs(t_end - t);
    h = std::min(h, control.h_max);
    // Split the last stretch evenly instead of leaving a sliver step, which
    // would place two nodes almost on top of each other.
    if (h >= remaining) {
      h = remaining;
    } else if (h > 0.5 * remaining) {
      h = 0.5 * remaining;
    }
    if (h < control.h_min) {
      // The final sliver before t_end may legitimately be tiny.
      if (remaining >= control.h_min) {
        return last_failure_guard ? Status::Guard : Status::StepUnderflow;
      }
    }
    const double hs = dir * h;

    std::optional<State> k2, k3, k4, k5, k6, k7;
    State y_new;
    bool guard = false;
    if (!(k2 = rhs(t + c2 * hs, y + hs * a21 * *k1))) guard = true;
    if (!guard && !(k3 = rhs(t + c3 * hs, y + hs * (a31 * *k1 + a32 * *k2)))) guard = true;
    if (!guard && !(k4 = rhs(t + c4 * hs, y + hs * (a41 * *k1 + a42 * *k2 + a43 * *k3)))) guard = true;
    if (!guard && !(k5 = rhs(t + c5 * hs, y + hs * (a51 * *k1 + a52 * *k2 + a53 * *k3 + a54 * *k4)))) guard = true;
    if (!guard &&
        !(k6 = rhs(t + hs, y + hs * (a61 * *k1 + a62 * *k2 + a63 * *k3 + a64 * *k4 + a65 * *k5)))) {
      guard = true;
    }
    if (!guard) {
      y_new = y + hs * (b1 * *k1 + b3 * *k3 + b4 * *k4 + b5 * *k5 + b6 * *k6);
      if (!(k7 = rhs(t + hs, y_new))) guard = true;
    }
    if (guard) {
      ++st.guard_hits;
      ++st.rejected;
      last_failure_guard = true;
      h *= 0.5;
      if (h < control.h_min) return Status::Guard;
      continue;
    }

    const State err = hs * (e1 * *k1 + e3 * *k3 + e4 * *k4 + e5 * *k5 + e6 * *k6 + e7 * *k7);
    const State scale =
        (control.abs_tol + control.rel_tol * y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array()).matrix();
    const double norm = std::sqrt((err.array() / scale.array()).square().mean());

    if (!std::isfinite(norm) || norm > 1.0) {
      ++st.rejected;
      last_failure_guard = false;
      const double factor = std::isfinite(norm) ? std::max(0.2, 0.9 * std::pow(norm, -0.2)) : 0.2;
      h *= std::min(factor, 0.9);
      if (h < control.h_min) return Status::StepUnderflow;
      continue;
    }

    ++st.accepted;
    last_failure_guard = false;
    t = (std::abs(t_end - (t + hs)) < 1e-14 * std::max(1.0, std::abs(t_end))) ? t_end : t + hs;
    y = y_new;
    k1 = k7;
    on_accept(t, y);
    const double grow = norm == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(norm, -0.2)));
    h *= grow;
  }
  return Status::Reached;
}

}  // namespace grs::ode
