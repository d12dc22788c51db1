#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "cqt/state.hpp"

namespace cqt::test {

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random valid X state; |z_i| is a uniform fraction of sqrt(a_i b_i) with a
/// uniform phase.
inline XState random_xstate(std::mt19937_64& rng, bool complex_phases = true) {
  XState x;
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    x.a[i] = -std::log(1.0 - uniform(rng));
    x.b[i] = -std::log(1.0 - uniform(rng));
    total += x.a[i] + x.b[i];
  }
  for (int i = 0; i < 4; ++i) {
    x.a[i] /= total;
    x.b[i] /= total;
    const double r = uniform(rng) * std::sqrt(x.a[i] * x.b[i]);
    const double phase = complex_phases ? uniform(rng, 0.0, 2.0 * std::numbers::pi) : 0.0;
    x.z[i] = std::polar(r, phase);
  }
  return x;
}

/// Random two-qubit density matrix G G^dag / Tr, G complex Gaussian.
inline Matrix4c random_density4(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Matrix4c g;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(n(rng), n(rng));
  }
  Matrix4c m = g * g.adjoint();
  return m / m.trace().real();
}

inline Matrix4c werner4(double v) {
  Vector4c phi = Vector4c::Zero();
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  return v * phi * phi.adjoint() + (1.0 - v) * Matrix4c::Identity() / 4.0;
}

}  // namespace cqt::test
