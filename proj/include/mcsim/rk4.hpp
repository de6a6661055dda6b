#pragma once

#include <array>
#include <cstddef>

namespace mcsim {

template <std::size_t N>
using StateVec = std::array<double, N>;

template <std::size_t N>
StateVec<N> axpy(const StateVec<N>& x, double h, const StateVec<N>& k) {
    StateVec<N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = x[i] + h * k[i];
    return out;
}

/// One classical fourth-order Runge-Kutta step of dx/dt = f(tau, x), where tau
/// is the time offset inside the step (0, dt/2 or dt).
template <std::size_t N, class F>
StateVec<N> rk4_step(F&& f, const StateVec<N>& x, double dt) {
    const StateVec<N> k1 = f(0.0, x);
    const StateVec<N> k2 = f(0.5 * dt, axpy(x, 0.5 * dt, k1));
    const StateVec<N> k3 = f(0.5 * dt, axpy(x, 0.5 * dt, k2));
    const StateVec<N> k4 = f(dt, axpy(x, dt, k3));
    StateVec<N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

}  // namespace mcsim
