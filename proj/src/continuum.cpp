#include "dphase/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dphase/errors.hpp"
#include "dphase/parallel.hpp"

namespace dphase {

ScalingFrame ScalingFrame::make(int n, double p0) {
  if (n < 1 || n % 2 == 0) throw DomainError("scaling frame needs odd N >= 1");
  if (!(p0 > 0.0) || !std::isfinite(p0)) throw DomainError("p0 must be positive and finite");
  return ScalingFrame{n, std::sqrt(2.0 * kPi / n), p0, 1.0 / p0};
}

std::pair<Operator, Operator> position_momentum(const SpaceContext& ctx, const ScalingFrame& frame) {
  const int n = ctx.dimension();
  if (frame.n != n) throw DomainError("scaling frame dimension does not match space");
  Eigen::VectorXd q_spectrum(n);
  Eigen::VectorXd p_spectrum(n);
  for (int k = 0; k < n; ++k) {
    q_spectrum(k) = ctx.label(k) * frame.epsilon * frame.q0;
    p_spectrum(k) = ctx.label(k) * frame.epsilon * frame.p0;
  }
  Operator q = q_spectrum.cast<Complex>().asDiagonal();
  // Columns of the Fourier operator are the v-basis kets.
  const Operator f = ctx.fourier();
  Operator p = f * p_spectrum.cast<Complex>().asDiagonal() * f.adjoint();
  return {std::move(q), std::move(p)};
}

namespace {

template <typename PointError>
double window_max(const SpaceContext& ctx, const ScalingFrame& frame, double window,
                  PointError&& point_error) {
  if (!(window > 0.0)) throw DomainError("window must be positive");
  if (frame.n != ctx.dimension()) throw DomainError("scaling frame dimension does not match space");
  double worst = 0.0;
  bool any = false;
  for (int eta = -ctx.ell(); eta <= ctx.ell(); ++eta) {
    const double p = frame.p0 * frame.epsilon * eta;
    if (std::abs(p) > window) continue;
    for (int xi = -ctx.ell(); xi <= ctx.ell(); ++xi) {
      const double q = frame.q0 * frame.epsilon * xi;
      if (std::abs(q) > window) continue;
      any = true;
      worst = std::max(worst, point_error(eta, xi, p, q));
    }
  }
  if (!any) throw DomainError("no grid point lies inside the window");
  return worst;
}

// exp(-pi (eta^2 + xi^2) / 2N) - exp(-[(p0 eps eta)^2 + (q0 eps xi)^2] / 4), with
// the exponent difference formed symbolically so it vanishes for p0 = q0 = 1.
double frame_shift(const ScalingFrame& frame, int eta, int xi, double natural) {
  const double c = kPi / (2.0 * frame.n);
  const double dp = (frame.p0 - 1.0) * (frame.p0 + 1.0);
  const double dq = (frame.q0 - 1.0) * (frame.q0 + 1.0);
  return -natural * std::expm1(-c * (dp * double(eta) * eta + dq * double(xi) * xi));
}

}  // namespace

double gaussian_overlap_error(const SpaceContext& ctx, const ScalingFrame& frame, double window) {
  const OverlapTable& table = ctx.overlap();
  const int n = ctx.dimension();
  return window_max(ctx, frame, window, [&](int eta, int xi, double, double) {
    // K - G_frame = (K - G_natural) + (G_natural - G_frame); the first term is
    // taken from the table without cancellation.
    const double natural = std::exp(-kPi * (double(eta) * eta + double(xi) * xi) / (2.0 * n));
    return std::abs(table.deviation_from_gaussian(eta, xi) + frame_shift(frame, eta, xi, natural));
  });
}

double vacuum_husimi_error(const SpaceContext& ctx, const ScalingFrame& frame, double window) {
  const OverlapTable& table = ctx.overlap();
  const int n = ctx.dimension();
  return window_max(ctx, frame, window, [&](int eta, int xi, double, double) {
    const double natural = std::exp(-kPi * (double(eta) * eta + double(xi) * xi) / (2.0 * n));
    const double dev = table.deviation_from_gaussian(eta, xi);
    // K^2 - G^2 = dev (K + G), and G^2 - G_frame^2 factors the same way.
    const double shift = frame_shift(frame, eta, xi, natural);
    const double framed = natural - shift;
    return std::abs(dev * (table(eta, xi) + natural) + shift * (natural + framed));
  });
}

Complex vacuum_commutator(const SpaceContext& ctx, const ScalingFrame& frame) {
  const auto [q, p] = position_momentum(ctx, frame);
  const Ket& vac = ctx.vacuum();
  const Operator comm = q * p - p * q;
  return vac.dot(comm * vac);
}

ConvergenceReport convergence_sweep(std::span<const int> ns, double window) {
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1 || ns[i] % 2 == 0) {
      throw DomainError("convergence sweep needs odd dimensions, got " + std::to_string(ns[i]));
    }
    if (i > 0 && ns[i] <= ns[i - 1]) {
      throw DomainError("convergence sweep dimensions must be strictly ascending");
    }
  }
  ConvergenceReport report;
  report.rows.resize(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    const SpaceContext ctx = make_space(ns[i]);
    const ScalingFrame frame = ScalingFrame::make(ns[i]);
    report.rows[i] = {ns[i], frame.epsilon, gaussian_overlap_error(ctx, frame, window)};
  });
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].max_error > 1.05 * report.rows[i - 1].max_error) {
      report.non_increasing = false;
    }
  }
  return report;
}

}  // namespace dphase
