#ifndef DPHASE_RANDOM_HPP
#define DPHASE_RANDOM_HPP

#include <random>

#include "dphase/types.hpp"

namespace dphase {

// N x N matrix with independent standard complex Gaussian entries.
inline Operator random_ginibre(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Operator g(n, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) g(r, c) = Complex(normal(rng), normal(rng));
  }
  return g;
}

// G^dagger G / Tr(G^dagger G): Hermitian, unit trace, positive semidefinite.
inline Operator random_density(int n, std::mt19937_64& rng) {
  const Operator g = random_ginibre(n, rng);
  Operator rho = g.adjoint() * g;
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

inline Operator random_hermitian(int n, std::mt19937_64& rng) {
  const Operator g = random_ginibre(n, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace dphase

#endif  // DPHASE_RANDOM_HPP
