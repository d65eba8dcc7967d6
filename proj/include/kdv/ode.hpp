#ifndef KDV_ODE_HPP
#define KDV_ODE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>

#include <Eigen/Core>

#include "kdv/errors.hpp"

namespace kdv {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-300;
  double initial_step = 1e-2;
  std::size_t max_steps = 10'000'000;
};

/// Adaptive Dormand-Prince 5(4) integration of y' = rhs(x, y) from x0 to x1
/// (either direction). The local error is measured against the norm of the
/// whole state, so solutions that grow or decay exponentially keep their
/// relative accuracy.
template <typename State, typename Rhs>
State integrate_dopri5(Rhs&& rhs, double x0, double x1, State y, const OdeOptions& opts = {}) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double span = x1 - x0;
  if (span == 0) return y;
  const double dir = span > 0 ? 1.0 : -1.0;
  double h = dir * std::min(opts.initial_step, std::abs(span));
  double x = x0;

  State k1 = rhs(x, y);
  for (std::size_t step = 0; step < opts.max_steps; ++step) {
    if (dir * (x + h - x1) > 0) h = x1 - x;

    const State k2 = rhs(x + c2 * h, State(y + h * a21 * k1));
    const State k3 = rhs(x + c3 * h, State(y + h * (a31 * k1 + a32 * k2)));
    const State k4 = rhs(x + c4 * h, State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
    const State k5 =
        rhs(x + c5 * h, State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    const State k6 =
        rhs(x + h, State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    const State y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const State k7 = rhs(x + h, y_new);
    const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double scale = opts.atol + opts.rtol * std::max(y.norm(), y_new.norm());
    const double ratio = err.norm() / scale;
    if (!std::isfinite(ratio)) throw IntegratorFailure("ODE integration produced non-finite values");

    if (ratio <= 1.0) {
      x += h;
      y = y_new;
      k1 = k7;
      if (dir * (x - x1) >= 0) return y;
    }
    const double factor =
        ratio == 0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
    h *= factor;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(x))) {
      throw IntegratorFailure("ODE step size underflow");
    }
  }
  throw IntegratorFailure("ODE integration exceeded the step budget");
}

}  // namespace kdv

#endif  // KDV_ODE_HPP
