#pragma once

// Random inputs shared by the unit tests.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "teleportality/channels.hpp"
#include "teleportality/linalg.hpp"
#include "teleportality/states.hpp"

namespace testing {

using namespace teleportality;

inline constexpr double kPi = std::numbers::pi;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<Complex> gaussian_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

inline StateVector random_state(std::mt19937_64& rng, int n_qubits) {
  return StateVector::normalized(gaussian_vector(rng, std::size_t{1} << n_qubits));
}

inline CMatrix random_matrix(std::mt19937_64& rng, std::size_t dim) {
  CMatrix m(dim);
  const auto v = gaussian_vector(rng, dim * dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = v[r * dim + c];
  return m;
}

// G G^dagger / Tr; full rank with probability one.
inline DensityMatrix random_density(std::mt19937_64& rng, std::size_t dim) {
  const CMatrix g = random_matrix(rng, dim);
  CMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = r; c < dim; ++c) rho(c, r) = std::conj(rho(r, c));
  return DensityMatrix(rho);
}

inline ResourceParams random_resource(std::mt19937_64& rng) {
  return {uniform(rng, 0.0, kPi / 2), uniform(rng, -kPi / 2, 3 * kPi / 2)};
}

inline ChannelParams random_channel(std::mt19937_64& rng) { return {uniform(rng, 0.0, kPi / 2), uniform(rng, 0.0, 1.0)}; }

inline std::vector<Complex> basis(std::size_t dim, std::size_t k) {
  std::vector<Complex> v(dim);
  v[k] = 1.0;
  return v;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace testing
