#include "dphase/coherent.hpp"

#include <cmath>
#include <string>

#include "dphase/errors.hpp"
#include "dphase/overlap_table.hpp"
#include "dphase/theta.hpp"

namespace dphase {

namespace {

constexpr double kThetaTol = 1e-16;

double parity(long long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

Complex th3(Complex z, Complex tau) { return theta::theta3(z, tau, kThetaTol); }
Complex th4(Complex z, Complex tau) { return theta::theta4(z, tau, kThetaTol); }
Complex th2(Complex z, Complex tau) { return theta::theta2(z, tau, kThetaTol); }

}  // namespace

Eigen::VectorXd vacuum_amplitudes(int n) {
  const int ell = (n - 1) / 2;
  const double a = 0.5 / n;
  Eigen::VectorXd amps(n);
  for (int k = 0; k < n; ++k) {
    amps(k) = th3(2.0 * a * (k - ell), Complex(0.0, 2.0 * a)).real();
  }
  return amps;
}

double vacuum_normalization_squared(int n) {
  const double a = 0.5 / n;
  const Complex ia(0.0, a);
  const Complex sum = th3(0.0, ia) * th3(0.0, 4.0 * ia) + th4(0.0, ia) * th2(0.0, 4.0 * ia);
  return sum.real() / (2.0 * std::sqrt(a));
}

const Ket& vacuum(const SpaceContext& ctx) { return ctx.vacuum(); }

Ket coherent_state(const SpaceContext& ctx, long long mu, long long nu) {
  // sqrt(N) S(mu, -nu) = U^mu V^-nu exp(-i pi mu nu / N), labels folded.
  const int n = ctx.dimension();
  const int m = fold_label(mu, n);
  const int v = fold_label(-nu, n);
  const Complex phase = root_of_unity(static_cast<long long>(m) * v, 2 * n);
  const Ket& vac = ctx.vacuum();
  Ket out(n);
  for (int r = 0; r < n; ++r) {
    // (V^v psi)(r) = psi(r + v)
    out(r) = phase * root_of_unity(static_cast<long long>(m) * ctx.label(r), n) *
             vac(ctx.index(ctx.label(r) + v));
  }
  return out;
}

Complex a_series(const SpaceContext& ctx, long long mu, long long nu) {
  const double a = ctx.a();
  const Complex tau(0.0, 2.0 * a);
  Complex sum = 0.0;
  for (int k = -ctx.ell(); k <= ctx.ell(); ++k) {
    sum += th3(2.0 * a * k, tau) * th3(2.0 * a * static_cast<double>(k + mu), tau) *
           root_of_unity(-static_cast<long long>(k) * nu, ctx.dimension());
  }
  return sum;
}

Complex a_closed(const SpaceContext& ctx, long long mu, long long nu) {
  const int n = ctx.dimension();
  const double a = ctx.a();
  const Complex tau(0.0, a);
  const double am = a * static_cast<double>(mu);
  const double an = a * static_cast<double>(nu);
  const Complex t3m = th3(am, tau);
  const Complex t4m = th4(am, tau);
  const Complex t3n = th3(an, tau);
  const Complex t4n = th4(an, tau);
  const Complex braces = t3m * t3n + t3m * t4n * parity(mu) + t4m * t3n * parity(nu) +
                         t4m * t4n * parity(mu + nu + n);
  return root_of_unity(mu * nu, 2 * n) * braces / (4.0 * std::sqrt(a));
}

Complex overlap_k(const SpaceContext& ctx, long long eta, long long xi) {
  const int n = ctx.dimension();
  return root_of_unity(-eta * xi, 2 * n) * a_closed(ctx, eta, xi) /
         ctx.vacuum_normalization_squared();
}

Complex overlap_closed(const SpaceContext& ctx, long long eta, long long xi, long long mu,
                       long long nu) {
  const int n = ctx.dimension();
  const long long e = fold_label(eta, n);
  const long long x = fold_label(xi, n);
  const long long m = fold_label(mu, n);
  const long long v = fold_label(nu, n);
  const Complex phase = root_of_unity(-m * v + e * x + 2 * x * (m - e), 2 * n);
  return phase * a_closed(ctx, fold_label(m - e, n), fold_label(v - x, n)) /
         ctx.vacuum_normalization_squared();
}

OverlapTable::OverlapTable(int n) : n_(n), ell_((n - 1) / 2) {
  const Complex tau(0.0, 2.0 * n);
  gauss_.resize(n);
  t3_minus_one_.resize(n);
  t2_.resize(n);
  for (int k = 0; k < n; ++k) {
    const double x = k - ell_;
    gauss_[k] = std::exp(-kPi * x * x / (2.0 * n));
    t3_minus_one_[k] = theta::theta3_minus_one(Complex(0.0, x), tau, kThetaTol).real();
    t2_[k] = th2(Complex(0.0, x), tau).real();
  }

  auto bracket = [&](int ei, int xj) {
    const int eta = ei - ell_;
    const int xi = xj - ell_;
    const double t3e = 1.0 + t3_minus_one_[ei];
    const double t3x = 1.0 + t3_minus_one_[xj];
    return t3e * t3x + parity(eta) * t3e * t2_[xj] + parity(xi) * t2_[ei] * t3x +
           parity(eta + xi + n) * t2_[ei] * t2_[xj];
  };
  bracket0_ = bracket(ell_, ell_);

  values_.resize(n, n);
  log_values_.resize(n, n);
  for (int ei = 0; ei < n; ++ei) {
    for (int xj = 0; xj < n; ++xj) {
      const double ratio = bracket(ei, xj) / bracket0_;
      if (!(ratio > 0.0) || !std::isfinite(ratio)) {
        throw BranchError("overlap K(" + std::to_string(ei - ell_) + ", " +
                          std::to_string(xj - ell_) + ") has bracket ratio " + std::to_string(ratio) +
                          " and is not strictly positive; [K]^(-s) has no principal branch");
      }
      const double eta = ei - ell_;
      const double xi = xj - ell_;
      log_values_(ei, xj) = -kPi * (eta * eta + xi * xi) / (2.0 * n) + std::log(ratio);
      values_(ei, xj) = gauss_[ei] * gauss_[xj] * ratio;
    }
  }
  values_(ell_, ell_) = 1.0;
  log_values_(ell_, ell_) = 0.0;
}

double OverlapTable::bracket_shift(int ei, int xj) const {
  const int eta = ei - ell_;
  const int xi = xj - ell_;
  const int o = ell_;
  const double me = t3_minus_one_[ei];
  const double mx = t3_minus_one_[xj];
  const double m0 = t3_minus_one_[o];
  const double t20 = t2_[o];
  const double t3e = 1.0 + me;
  const double t3x = 1.0 + mx;
  const double t30 = 1.0 + m0;
  return (me - m0) + (mx - m0) + (me * mx - m0 * m0) +
         (parity(eta) * t3e * t2_[xj] - t30 * t20) +
         (parity(xi) * t2_[ei] * t3x - t20 * t30) +
         (parity(eta + xi + n_) * t2_[ei] * t2_[xj] - parity(n_) * t20 * t20);
}

double OverlapTable::deviation_from_gaussian(long long eta, long long xi) const {
  const int ei = fold_label(eta, n_) + ell_;
  const int xj = fold_label(xi, n_) + ell_;
  return gauss_[ei] * gauss_[xj] * (bracket_shift(ei, xj) / bracket0_);
}

}  // namespace dphase
