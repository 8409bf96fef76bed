#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "dphase/continuum.hpp"
#include "dphase/errors.hpp"
#include "dphase/space.hpp"

using namespace dphase;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Direct window maximum of |K - exp(-(p^2 + q^2)/4)| by plain subtraction.
double naive_error(const SpaceContext& ctx, const ScalingFrame& f, double window) {
  double worst = 0.0;
  for (int e = -ctx.ell(); e <= ctx.ell(); ++e) {
    for (int x = -ctx.ell(); x <= ctx.ell(); ++x) {
      const double p = f.p0 * f.epsilon * e;
      const double q = f.q0 * f.epsilon * x;
      if (std::abs(p) > window || std::abs(q) > window) continue;
      worst = std::max(worst, std::abs(ctx.overlap()(e, x) - std::exp(-(p * p + q * q) / 4.0)));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("scaling frame") {
  const ScalingFrame f = ScalingFrame::make(11, 2.0);
  CHECK(f.epsilon == doctest::Approx(std::sqrt(2.0 * kPi / 11)));
  CHECK(f.p0 * f.q0 == doctest::Approx(1.0));
  CHECK_THROWS_AS(ScalingFrame::make(11, 0.0), DomainError);
  CHECK_THROWS_AS(ScalingFrame::make(11, -1.0), DomainError);
  CHECK_THROWS_AS(ScalingFrame::make(10), DomainError);
}

TEST_CASE("position and momentum operators") {
  const SpaceContext c3 = make_space(3);
  const ScalingFrame f3 = ScalingFrame::make(3, 1.5);
  const auto [q3, p3] = position_momentum(c3, f3);
  CHECK(std::abs(q3(0, 0) + f3.epsilon * f3.q0) < 1e-15);
  CHECK(std::abs(q3(1, 1)) < 1e-15);
  CHECK(std::abs(q3(2, 2) - f3.epsilon * f3.q0) < 1e-15);

  for (int n : {3, 7, 11}) {
    const SpaceContext ctx = make_space(n);
    for (double p0 : {1.0, 0.7}) {
      const ScalingFrame f = ScalingFrame::make(n, p0);
      const auto [q, p] = position_momentum(ctx, f);
      CHECK(max_abs(q - q.adjoint()) < 1e-15);
      CHECK(max_abs(p - p.adjoint()) < 1e-14);
      CHECK(std::abs(q.trace()) < 1e-13);
      CHECK(std::abs(p.trace()) < 1e-13);
      const Operator iq = Complex(0.0, f.epsilon / f.q0) * q;
      const Operator ip = Complex(0.0, f.epsilon / f.p0) * p;
      const Operator u = iq.exp();
      const Operator v = ip.exp();
      CHECK(max_abs(u - ctx.u_operator()) < (n == 7 ? 1e-12 : 1e-11));
      CHECK(max_abs(v - ctx.v_operator()) < 1e-11);
    }
  }
  CHECK_THROWS_AS(position_momentum(make_space(5), ScalingFrame::make(7)), DomainError);
}

TEST_CASE("Gaussian overlap error") {
  for (int n = 3; n <= 41; n += 2) {
    const SpaceContext ctx = make_space(n);
    const double e = gaussian_overlap_error(ctx, ScalingFrame::make(n), 2.0);
    CHECK(std::isfinite(e));
    CHECK(e < 1.0);
  }
  // Where plain subtraction resolves the error, both routes agree.
  for (int n : {3, 5, 11, 15}) {
    const SpaceContext ctx = make_space(n);
    for (double p0 : {1.0, 1.3}) {
      const ScalingFrame f = ScalingFrame::make(n, p0);
      CHECK(std::abs(gaussian_overlap_error(ctx, f, 2.0) - naive_error(ctx, f, 2.0)) < 1e-15);
    }
  }
  const SpaceContext c11 = make_space(11);
  const SpaceContext c101 = make_space(101);
  CHECK(gaussian_overlap_error(c101, ScalingFrame::make(101), 2.0) <
        gaussian_overlap_error(c11, ScalingFrame::make(11), 2.0));
  // A window holding only the origin sees K(0,0) = 1 against 1.
  CHECK(gaussian_overlap_error(c11, ScalingFrame::make(11), 0.1) == 0.0);
  CHECK_THROWS_AS(gaussian_overlap_error(c11, ScalingFrame::make(11), 0.0), DomainError);
  CHECK_THROWS_AS(gaussian_overlap_error(c11, ScalingFrame::make(11), -1.0), DomainError);
}

TEST_CASE("reference error values") {
  // Reference values from a 130-digit evaluation of the vacuum inner products.
  const std::vector<std::pair<int, double>> ref = {{11, 1.06647e-5}, {21, 3.0447e-11}, {41, 2.73022e-22},
                                                   {81, 7.59819e-47}};
  for (const auto& [n, value] : ref) {
    const double e = gaussian_overlap_error(make_space(n), ScalingFrame::make(n), 2.0);
    CHECK(std::abs(e / value - 1.0) < 1e-5);
  }
}

TEST_CASE("vacuum Husimi convergence") {
  double prev = 1.0;
  for (int n : {11, 21, 41, 81}) {
    const SpaceContext ctx = make_space(n);
    const double e = vacuum_husimi_error(ctx, ScalingFrame::make(n), 2.0);
    CHECK(e < prev);
    prev = e;
  }
  const SpaceContext c11 = make_space(11);
  const ScalingFrame f = ScalingFrame::make(11);
  double naive = 0.0;
  for (int e = -5; e <= 5; ++e) {
    for (int x = -5; x <= 5; ++x) {
      const double p = f.epsilon * e, q = f.epsilon * x;
      if (std::abs(p) > 2.0 || std::abs(q) > 2.0) continue;
      naive = std::max(naive, std::abs(std::pow(c11.overlap()(e, x), 2) - std::exp(-(p * p + q * q) / 2.0)));
    }
  }
  CHECK(std::abs(vacuum_husimi_error(c11, f, 2.0) - naive) < 1e-15);
}

TEST_CASE("vacuum commutator tends to i") {
  double prev = 1.0;
  for (int n : {5, 11, 21, 41}) {
    const SpaceContext ctx = make_space(n);
    const double dist = std::abs(vacuum_commutator(ctx, ScalingFrame::make(n)) - Complex(0.0, 1.0));
    CHECK(dist < prev);
    prev = dist;
  }
  const SpaceContext c161 = make_space(161);
  CHECK(std::abs(vacuum_commutator(c161, ScalingFrame::make(161)) - Complex(0.0, 1.0)) < 0.1);
  // The u_0 diagonal element vanishes identically.
  const auto [q, p] = position_momentum(make_space(11), ScalingFrame::make(11));
  CHECK(std::abs((q * p - p * q)(5, 5)) < 1e-14);
}

TEST_CASE("convergence sweep") {
  const std::vector<int> ns = {11, 21, 41, 81, 161};
  const ConvergenceReport r = convergence_sweep(ns, 2.0);
  REQUIRE(r.rows.size() == 5);
  for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].max_error < r.rows[i - 1].max_error);
  CHECK(r.non_increasing);
  CHECK(r.rows[0].n == 11);
  CHECK(r.rows[4].epsilon == doctest::Approx(std::sqrt(2.0 * kPi / 161)));

  const std::vector<int> one = {21};
  CHECK(convergence_sweep(one, 2.0).rows.size() == 1);
  CHECK(convergence_sweep(one, 2.0).non_increasing);
  const std::vector<int> three = {3};
  CHECK_NOTHROW(convergence_sweep(three, 2.0));

  const std::vector<int> even = {11, 20};
  const std::vector<int> unsorted = {21, 11};
  CHECK_THROWS_AS(convergence_sweep(even, 2.0), DomainError);
  CHECK_THROWS_AS(convergence_sweep(unsorted, 2.0), DomainError);
}
