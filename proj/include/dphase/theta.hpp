#ifndef DPHASE_THETA_HPP
#define DPHASE_THETA_HPP

// Jacobi theta functions for complex argument z and lattice parameter tau in
// the upper half plane, in the convention
//
//   theta3(z|tau) = sum_a exp(i pi tau a^2 + 2 pi i z a)
//   theta2(z|tau) = sum_a exp(i pi tau (a+1/2)^2 + 2 pi i z (a+1/2))
//   theta4(z|tau) = theta3(z + 1/2 | tau)
//
// The series is summed outward from the index of the largest term, so
// arguments such as theta3(i mu | 2iN), whose dominant term sits far from
// a = 0 when |mu| is large, keep full accuracy.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <string>

#include "dphase/errors.hpp"

namespace dphase::theta {

template <std::floating_point Real>
struct ThetaParams {
  std::complex<Real> z;
  std::complex<Real> tau;
  Real tol;
};

template <std::floating_point Real>
constexpr Real default_tolerance() {
  return Real(1e-15);
}

// Hard cap on the half-width of the summation window.
inline constexpr long long kMaxHalfWidth = 1'000'000;

namespace detail {

template <std::floating_point Real>
void validate(const std::complex<Real>& tau, Real tol) {
  if (!(tau.imag() > Real(0))) {
    throw DomainError("theta: series diverges for Im(tau) <= 0 (Im(tau) = " +
                      std::to_string(static_cast<double>(tau.imag())) + ")");
  }
  if (!(tol > Real(0))) {
    throw DomainError("theta: truncation tolerance must be positive");
  }
}

// sum over integer a (a != 0 if skip_zero) of
//   exp(i pi tau (a + offset)^2 + 2 pi i z (a + offset)).
template <std::floating_point Real>
std::complex<Real> lattice_sum(const std::complex<Real>& z, const std::complex<Real>& tau, Real tol,
                               Real offset, bool skip_zero) {
  validate(tau, tol);
  constexpr Real pi = std::numbers::pi_v<Real>;
  const std::complex<Real> i_unit(0, 1);

  auto term = [&](long long a) {
    const Real n = static_cast<Real>(a) + offset;
    return std::exp(i_unit * pi * tau * (n * n) + Real(2) * i_unit * pi * z * n);
  };

  // |term| = exp(-pi Im(tau) n^2 - 2 pi Im(z) n) peaks at n = -Im(z)/Im(tau).
  const Real peak = -z.imag() / tau.imag() - offset;
  if (!std::isfinite(peak) || std::abs(peak) > Real(1e15)) {
    throw PrecisionError("theta: dominant term index out of range");
  }
  const auto center = static_cast<long long>(std::llround(peak));

  const std::complex<Real> center_term = term(center);
  const Real threshold =
      Real(1e-2) * tol * std::min(Real(1), std::abs(center_term));

  std::complex<Real> sum(0);
  if (!(skip_zero && center == 0)) sum += center_term;

  int small_up = 0;
  int small_down = 0;
  for (long long k = 1; small_up < 3 || small_down < 3; ++k) {
    if (k > kMaxHalfWidth) {
      throw PrecisionError("theta: truncation did not converge within " +
                           std::to_string(kMaxHalfWidth) + " terms per side");
    }
    if (small_up < 3) {
      const long long a = center + k;
      const auto t = term(a);
      if (!(skip_zero && a == 0)) sum += t;
      small_up = std::abs(t) <= threshold ? small_up + 1 : 0;
    }
    if (small_down < 3) {
      const long long a = center - k;
      const auto t = term(a);
      if (!(skip_zero && a == 0)) sum += t;
      small_down = std::abs(t) <= threshold ? small_down + 1 : 0;
    }
  }
  return sum;
}

}  // namespace detail

template <std::floating_point Real>
std::complex<Real> theta3(const std::complex<Real>& z, const std::complex<Real>& tau,
                          Real tol = default_tolerance<Real>()) {
  return detail::lattice_sum(z, tau, tol, Real(0), false);
}

template <std::floating_point Real>
std::complex<Real> theta2(const std::complex<Real>& z, const std::complex<Real>& tau,
                          Real tol = default_tolerance<Real>()) {
  return detail::lattice_sum(z, tau, tol, Real(0.5), false);
}

template <std::floating_point Real>
std::complex<Real> theta4(const std::complex<Real>& z, const std::complex<Real>& tau,
                          Real tol = default_tolerance<Real>()) {
  return theta3(z + Real(0.5), tau, tol);
}

// theta3(z|tau) - 1, summed without the unit a = 0 term. Keeps full
// relative precision when theta3 is close to 1 (large Im(tau)).
template <std::floating_point Real>
std::complex<Real> theta3_minus_one(const std::complex<Real>& z, const std::complex<Real>& tau,
                                    Real tol = default_tolerance<Real>()) {
  return detail::lattice_sum(z, tau, tol, Real(0), true);
}

template <std::floating_point Real>
std::complex<Real> theta3(const ThetaParams<Real>& p) {
  return theta3(p.z, p.tau, p.tol);
}
template <std::floating_point Real>
std::complex<Real> theta2(const ThetaParams<Real>& p) {
  return theta2(p.z, p.tau, p.tol);
}
template <std::floating_point Real>
std::complex<Real> theta4(const ThetaParams<Real>& p) {
  return theta4(p.z, p.tau, p.tol);
}

}  // namespace dphase::theta

#endif  // DPHASE_THETA_HPP
