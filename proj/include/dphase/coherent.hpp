#ifndef DPHASE_COHERENT_HPP
#define DPHASE_COHERENT_HPP

#include "dphase/space.hpp"
#include "dphase/types.hpp"

namespace dphase {

// Discrete vacuum: <u_g|0,0> = theta3(2 a g | 2 i a) / sqrt(norm2),
// a = 1/2N. Unit norm, even in g, invariant under the Fourier operator.
const Ket& vacuum(const SpaceContext& ctx);

// Closed form of the vacuum normalization,
//   N^2 = [theta3(0|ia) theta3(0|4ia) + theta4(0|ia) theta2(0|4ia)] / (2 sqrt(a)).
double vacuum_normalization_squared(int n);

// Unnormalized amplitudes theta3(2 a g | 2 i a), g = -ell..ell.
Eigen::VectorXd vacuum_amplitudes(int n);

// |mu, nu> = sqrt(N) S(mu, -nu) |0,0>.
Ket coherent_state(const SpaceContext& ctx, long long mu, long long nu);

// sum_k theta3(2 a k | 2ia) theta3(2 a (k + mu) | 2ia) exp(-2 pi i k nu / N).
// Direct O(N) sum; the reference for a_closed().
Complex a_series(const SpaceContext& ctx, long long mu, long long nu);

// Four-term theta3/theta4 product form of A(mu, nu).
Complex a_closed(const SpaceContext& ctx, long long mu, long long nu);

// K(eta, xi) = exp(-2 pi i a eta xi) A(eta, xi) / N^2 from a_closed(). Real up
// to roundoff; ctx.overlap() holds the cached real table.
Complex overlap_k(const SpaceContext& ctx, long long eta, long long xi);

// <eta, xi | mu, nu> =
//   exp{2 pi i a [-mu nu + eta xi + 2 xi (mu - eta)]} A(mu - eta, nu - xi) / N^2.
Complex overlap_closed(const SpaceContext& ctx, long long eta, long long xi, long long mu,
                       long long nu);

}  // namespace dphase

#endif  // DPHASE_COHERENT_HPP
