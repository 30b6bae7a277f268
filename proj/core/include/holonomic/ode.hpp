#pragma once

#include <array>
#include <cstddef>

namespace holonomic {

template <std::size_t N>
using OdeState = std::array<double, N>;

/// One classical fourth-order Runge–Kutta step of y' = f(t, y).
template <std::size_t N, typename F>
OdeState<N> rk4_step(F&& f, double t, const OdeState<N>& y, double h) {
  auto axpy = [](const OdeState<N>& base, double s, const OdeState<N>& dir) {
    OdeState<N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = base[i] + s * dir[i];
    return out;
  };
  const OdeState<N> k1 = f(t, y);
  const OdeState<N> k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
  const OdeState<N> k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
  const OdeState<N> k4 = f(t + h, axpy(y, h, k3));
  OdeState<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
  return out;
}

}  // namespace holonomic
