// Classical fixed-step fourth-order Runge-Kutta over any state type
// with `State + State` and `double * State` defined.

#pragma once

namespace optocool::detail {

template <class State, class Rhs>
State rk4_step(const State& y, double t, double h, Rhs&& rhs) {
    const double half = 0.5 * h;
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + half, y + half * k1);
    const State k3 = rhs(t + half, y + half * k2);
    const State k4 = rhs(t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace optocool::detail
