#ifndef DPHASE_SCHWINGER_HPP
#define DPHASE_SCHWINGER_HPP

#include <Eigen/Dense>

#include "dphase/space.hpp"
#include "dphase/types.hpp"

namespace dphase {

// U^alpha V^beta, built by index arithmetic: V^beta |u_c> = |u_{c-beta}>,
// then the diagonal phase of U^alpha on the target row.
Operator weyl_monomial(const SpaceContext& ctx, long long alpha, long long beta);

// S(eta, xi) = N^{-1/2} U^eta V^xi exp(i pi eta xi / N). Labels are folded to
// [-ell, ell] before use, so S(eta + N, xi) == S(eta, xi).
Operator schwinger_element(const SpaceContext& ctx, long long eta, long long xi);

// c(eta, xi) = Tr[S^dagger(eta, xi) O]; row/column k of the result holds
// label k - ell. Throws DomainError on a dimension mismatch.
Eigen::MatrixXcd decompose(const SpaceContext& ctx, const Operator& op);

// sum c(eta, xi) S(eta, xi), the inverse of decompose().
Operator compose(const SpaceContext& ctx, const Eigen::MatrixXcd& coefficients);

// Tr(A B) in O(N^2).
inline Complex trace_of_product(const Operator& a, const Operator& b) {
  return (a.array() * b.transpose().array()).sum();
}

}  // namespace dphase

#endif  // DPHASE_SCHWINGER_HPP
