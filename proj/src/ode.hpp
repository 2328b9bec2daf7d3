#pragma once

// Adaptive RKF78 integration onto a sample grid with a projection after every accepted step.

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <vector>

#include "ein/types.hpp"

namespace ein::detail {

using State = std::vector<double>;

template <class Sys, class Fix, class Out>
void integrate_grid(Sys&& sys, State& x, double u0, double u1, int samples, double tol, Fix&& fix,
                    Out&& out) {
  namespace ode = boost::numeric::odeint;
  auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_fehlberg78<State>());
  double u = u0;
  double dt = (u1 - u0) / std::max(samples - 1, 1) / 4.0;
  if (dt == 0) dt = 1e-3;
  out(u, x);
  for (int i = 1; i < samples; ++i) {
    double target = u0 + (u1 - u0) * i / (samples - 1);
    int guard = 0;
    while (target - u > 1e-14 * (1 + std::abs(target))) {
      double step = std::min(dt, target - u);
      bool clipped = step < dt;
      double before = u;
      auto res = stepper.try_step(sys, x, u, step);
      if (res == ode::success) {
        fix(x);
        if (!clipped) dt = step;
      } else {
        dt = step;
        if (dt < 1e-13 * (1 + std::abs(before))) throw NumericError("integration failure: step size underflow");
      }
      if (++guard > 10000000) throw NumericError("integration failure: too many steps");
    }
    u = target;
    out(u, x);
  }
}

}  // namespace ein::detail
