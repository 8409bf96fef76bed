#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dphase/coherent.hpp"
#include "dphase/errors.hpp"
#include "dphase/kernel.hpp"
#include "dphase/space.hpp"
#include "dphase/theta.hpp"

using namespace dphase;
using theta::theta2;
using theta::theta3;

namespace {

const Complex I(0.0, 1.0);

// theta3(2 a g | 2 i a) by a plain long-double sum over |alpha| <= 60.
double vacuum_amplitude_oracle(int n, int g) {
  const long double a = 0.5L / n;
  const long double pi = 3.14159265358979323846264338327950288L;
  long double sum = 0.0L;
  for (int alpha = -60; alpha <= 60; ++alpha) {
    sum += std::exp(-2.0L * pi * a * alpha * alpha) * std::cos(4.0L * pi * a * g * alpha);
  }
  return static_cast<double>(sum);
}

Ket vacuum_oracle(int n) {
  const int ell = (n - 1) / 2;
  Ket v(n);
  for (int g = -ell; g <= ell; ++g) v(g + ell) = vacuum_amplitude_oracle(n, g);
  return v / v.norm();
}

// sqrt(N) S(mu, -nu)|0,0> from dense matrix powers of U and V.
Ket coherent_oracle(const SpaceContext& ctx, int mu, int nu) {
  const int n = ctx.dimension();
  auto power = [n](const Operator& b, int k) {
    Operator out = Operator::Identity(n, n);
    for (int i = 0; i < ((k % n) + n) % n; ++i) out = out * b;
    return out;
  };
  const Operator s = power(ctx.u_operator(), mu) * power(ctx.v_operator(), -nu) *
                     std::exp(Complex(0.0, -kPi * mu * nu / n));
  return s * vacuum_oracle(n);
}

// Even and odd lattice contributions to A(mu, nu).
Complex a_even(int n, int mu, int nu) {
  const double a = 0.5 / n;
  return double(n) * theta3(Complex(2.0 * a * nu, -2.0 * a * mu), Complex(0.0, 4.0 * a)) *
         theta3(Complex(0.0, mu), Complex(0.0, 2.0 * n)) * std::exp(-2.0 * kPi * a * mu * mu);
}

Complex a_odd(int n, int mu, int nu) {
  const double a = 0.5 / n;
  return double(n) * theta3(Complex(2.0 * a * nu, -2.0 * a * (mu + n)), Complex(0.0, 4.0 * a)) *
         theta2(Complex(0.0, mu), Complex(0.0, 2.0 * n)) *
         std::exp(-kPi * n / 2.0 - kPi * mu - 2.0 * kPi * a * mu * mu);
}

double rel(Complex x, Complex y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); }

}  // namespace

TEST_CASE("vacuum matches the brute-force theta amplitudes") {
  for (int n = 1; n <= 21; n += 2) {
    const SpaceContext ctx = make_space(n);
    CHECK((ctx.vacuum() - vacuum_oracle(n)).norm() < 1e-14);
    CHECK(std::abs(ctx.vacuum().norm() - 1.0) < 1e-14);
    CHECK((ctx.fourier() * ctx.vacuum() - ctx.vacuum()).norm() < 1e-11);
    const double direct = vacuum_amplitudes(n).squaredNorm();
    CHECK(std::abs(vacuum_normalization_squared(n) - direct) / direct < 1e-11);
  }
  const SpaceContext c7 = make_space(7);
  for (int k = 0; k <= 3; ++k) CHECK(c7.vacuum()(3 + k) == c7.vacuum()(3 - k));
  CHECK((vacuum(c7) - c7.vacuum()).norm() == 0.0);
}

TEST_CASE("coherent states against dense displacement") {
  for (int n : {3, 5, 7}) {
    const SpaceContext ctx = make_space(n);
    const int ell = ctx.ell();
    for (int m = -ell; m <= ell; ++m) {
      for (int v = -ell; v <= ell; ++v) {
        const Ket c = coherent_state(ctx, m, v);
        CHECK((c - coherent_oracle(ctx, m, v)).norm() < 1e-13);
        CHECK(std::abs(c.norm() - 1.0) < 1e-12);
      }
    }
    CHECK((coherent_state(ctx, 0, 0) - ctx.vacuum()).norm() < 1e-15);
    CHECK((coherent_state(ctx, 1 + n, -2 * n) - coherent_state(ctx, 1, 0)).norm() < 1e-14);
  }
}

TEST_CASE("A series symmetry, periodicity and zero point") {
  const SpaceContext c5 = make_space(5);
  for (int m = -2; m <= 2; ++m) {
    for (int v = -2; v <= 2; ++v) {
      CHECK(rel(a_series(c5, m, v), a_series(c5, v, m)) < 1e-13);
      CHECK(rel(a_series(c5, m + 5, v), a_series(c5, m, v)) < 1e-13);
      CHECK(rel(a_closed(c5, m + 5, v - 10), a_closed(c5, m, v)) < 1e-12);
      CHECK(rel(a_closed(c5, m, v), a_closed(c5, v, m)) < 1e-12);
    }
  }
  const SpaceContext c3 = make_space(3);
  double sq = 0.0;
  for (int k = -1; k <= 1; ++k) sq += std::pow(vacuum_amplitude_oracle(3, k), 2);
  const Complex a00 = a_series(c3, 0, 0);
  CHECK(a00.real() > 0.0);
  CHECK(std::abs(a00.imag()) < 1e-15);
  CHECK(std::abs(a00.real() - sq) / sq < 1e-14);
}

TEST_CASE("A series equals the Gram entries of the unnormalized vacuum") {
  // K(eta, xi) = exp(-2 pi i a eta xi) A(eta, xi) / N^2 with K from dense kets.
  for (int n : {3, 5, 7}) {
    const SpaceContext ctx = make_space(n);
    const double norm2 = vacuum_amplitudes(n).squaredNorm();
    const Ket vac = vacuum_oracle(n);
    for (int e = -ctx.ell(); e <= ctx.ell(); ++e) {
      for (int x = -ctx.ell(); x <= ctx.ell(); ++x) {
        const Complex k = vac.dot(coherent_oracle(ctx, e, x));
        const Complex expected = k * norm2 * std::exp(Complex(0.0, kPi * e * x / n));
        CHECK(std::abs(a_series(ctx, e, x) - expected) < 1e-12 * norm2);
      }
    }
  }
}

TEST_CASE("closed form of A over the full grid") {
  for (int n : {3, 5, 7, 9, 11}) {
    const SpaceContext ctx = make_space(n);
    double worst = 0.0;
    for (int m = -ctx.ell(); m <= ctx.ell(); ++m) {
      for (int v = -ctx.ell(); v <= ctx.ell(); ++v) worst = std::max(worst, rel(a_closed(ctx, m, v), a_series(ctx, m, v)));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("even/odd decomposition of A") {
  const SpaceContext c5 = make_space(5);
  CHECK(rel(a_even(5, 1, 1) + a_odd(5, 1, 1), a_closed(c5, 1, 1)) < 1e-10);
  std::mt19937_64 rng(3);
  for (int n : {3, 7, 11}) {
    const SpaceContext ctx = make_space(n);
    std::uniform_int_distribution<int> label(-ctx.ell(), ctx.ell());
    for (int k = 0; k < 10; ++k) {
      const int m = label(rng), v = label(rng);
      CHECK(rel(a_even(n, m, v) + a_odd(n, m, v), a_closed(ctx, m, v)) < 1e-10);
    }
  }
}

TEST_CASE("overlap K: closed form, table and brute force") {
  for (int n : {3, 5, 7, 9}) {
    const SpaceContext ctx = make_space(n);
    const Ket vac = vacuum_oracle(n);
    const int ell = ctx.ell();
    CHECK(std::abs(ctx.overlap()(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(overlap_k(ctx, 0, 0) - 1.0) < 1e-12);
    for (int e = -ell; e <= ell; ++e) {
      for (int x = -ell; x <= ell; ++x) {
        const Complex brute = vac.dot(coherent_oracle(ctx, e, x));
        CHECK(std::abs(overlap_k(ctx, e, x) - brute) < 1e-10);
        CHECK(std::abs(ctx.overlap()(e, x) - brute) < 1e-12);
        CHECK(std::abs(overlap_k(ctx, e, x).imag()) < 1e-11);
        CHECK(ctx.overlap()(e, x) == ctx.overlap()(-e, -x));
        CHECK(std::abs(ctx.overlap()(e, x) - ctx.overlap()(x, e)) < 1e-15);
        CHECK(ctx.overlap()(e, x) <= 1.0 + 1e-15);
      }
    }
  }
  const SpaceContext c7 = make_space(7);
  CHECK(std::abs(overlap_k(c7, 1, 2) - c7.vacuum().dot(coherent_state(c7, 1, 2))) < 1e-10);
}

TEST_CASE("overlap table stays positive with full relative accuracy") {
  for (int n = 3; n <= 21; n += 2) CHECK(make_space(n).overlap().min_value() > 0.0);
  // Corner values of large spaces sit far below double epsilon.
  const OverlapTable big(161);
  CHECK(big.min_value() > 0.0);
  const double corner = big(80, 80);
  const double g = std::exp(-kPi * 2.0 * 80 * 80 / (2.0 * 161));
  CHECK(corner > 0.5 * g);
  CHECK(corner < 2.0 * g);
}

TEST_CASE("logarithmic overlaps survive underflow in the largest spaces") {
  const OverlapTable big(2001);
  const double ln_g = -kPi * 2.0 * 1000 * 1000 / (2.0 * 2001);
  CHECK(big(1000, 1000) == 0.0);  // e^-1570 is below the smallest subnormal
  const Eigen::MatrixXd& lk = big.log_values();
  CHECK(lk.allFinite());
  CHECK(std::abs(lk(2000, 2000) - ln_g) < std::log(2.0));
  CHECK(lk(1000, 1000) == 0.0);
  // Where K is representable both forms agree.
  const OverlapTable mid(161);
  for (int i = 0; i < 161; i += 8) {
    for (int j = 0; j < 161; j += 8) CHECK(std::abs(std::exp(mid.log_values()(i, j)) / mid.values()(i, j) - 1.0) < 1e-13);
  }
}

TEST_CASE("deviation from the Gaussian agrees with direct subtraction where resolvable") {
  const SpaceContext ctx = make_space(11);
  for (int e = -5; e <= 5; ++e) {
    for (int x = -5; x <= 5; ++x) {
      const double direct = ctx.overlap()(e, x) - std::exp(-kPi * (e * e + x * x) / 22.0);
      CHECK(std::abs(ctx.overlap().deviation_from_gaussian(e, x) - direct) < 1e-15);
    }
  }
  CHECK(ctx.overlap().deviation_from_gaussian(0, 0) == 0.0);
}

TEST_CASE("general overlap closed form") {
  std::mt19937_64 rng(11);
  for (int n : {5, 7}) {
    const SpaceContext ctx = make_space(n);
    std::uniform_int_distribution<int> label(-ctx.ell(), ctx.ell());
    for (int k = 0; k < 50; ++k) {
      const int e = label(rng), x = label(rng), m = label(rng), v = label(rng);
      const Complex brute = coherent_oracle(ctx, e, x).dot(coherent_oracle(ctx, m, v));
      CHECK(std::abs(overlap_closed(ctx, e, x, m, v) - brute) < 1e-10);
    }
    CHECK(std::abs(overlap_closed(ctx, 1, 2, 1, 2) - 1.0) < 1e-12);
    CHECK(std::abs(overlap_closed(ctx, 0, 0, 2, -1) - overlap_k(ctx, 2, -1)) < 1e-12);
  }
}

TEST_CASE("coherent states resolve the identity") {
  for (int n : {3, 5, 7, 11}) {
    const SpaceContext ctx = make_space(n);
    Operator sum = Operator::Zero(n, n);
    for (int m = -ctx.ell(); m <= ctx.ell(); ++m) {
      for (int v = -ctx.ell(); v <= ctx.ell(); ++v) {
        const Ket c = coherent_state(ctx, m, v);
        sum += c * c.adjoint();
      }
    }
    CHECK((sum / double(n) - Operator::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("squared overlaps are the Husimi-Husimi trace") {
  const SpaceContext ctx = make_space(5);
  for (int m = -2; m <= 2; ++m) {
    for (int v = -2; v <= 2; ++v) {
      for (int s = -2; s <= 2; ++s) {
        for (int l = -2; l <= 2; ++l) {
          const Complex tp = trace_product(ctx, -1.0, -1.0, {m, v}, {s, l});
          CHECK(std::abs(tp - std::norm(overlap_closed(ctx, m, v, s, l))) < 1e-12);
        }
      }
    }
  }
}
