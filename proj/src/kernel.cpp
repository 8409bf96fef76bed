#include "dphase/kernel.hpp"

#include <cmath>
#include <string>

#include "dphase/errors.hpp"
#include "dphase/parallel.hpp"

namespace dphase {

namespace {

void require_square(int n, Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (rows != n || cols != n) {
    throw DomainError(std::string(what) + " is " + std::to_string(rows) + "x" +
                      std::to_string(cols) + ", expected " + std::to_string(n) + "x" +
                      std::to_string(n));
  }
}

// W(d, k) = exp(sign 2 pi i d k / N) over labels.
Eigen::MatrixXcd fourier_matrix(int n, int sign) {
  const int ell = (n - 1) / 2;
  Eigen::MatrixXcd w(n, n);
  for (int d = 0; d < n; ++d) {
    for (int k = 0; k < n; ++k) {
      w(d, k) = root_of_unity(static_cast<long long>(sign) * (d - ell) * (k - ell), n);
    }
  }
  return w;
}

std::string distribution_label(OrderParameter s) {
  if (s.value() == Complex(0.0, 0.0)) return "wigner";
  if (s.value() == Complex(-1.0, 0.0)) return "husimi";
  if (s.value() == Complex(1.0, 0.0)) return "p";
  return "s-ordered";
}

}  // namespace

OrderParameter::OrderParameter(Complex s) : s_(s) {
  if (!(std::abs(s) <= 1.0 + 1e-14)) {
    throw DomainError("order parameter must satisfy |s| <= 1, got |s| = " +
                      std::to_string(std::abs(s)));
  }
}

Eigen::MatrixXcd overlap_power(const SpaceContext& ctx, Complex s) {
  const Eigen::MatrixXd& k = ctx.overlap().values();
  const Eigen::MatrixXd& lk = ctx.overlap().log_values();
  const bool integral = s.imag() == 0.0 && std::round(s.real()) == s.real();
  Eigen::MatrixXcd w(k.rows(), k.cols());
  for (Eigen::Index j = 0; j < k.cols(); ++j) {
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
      // pow keeps integer powers of representable K accurate to rounding.
      if (integral && k(i, j) > 0.0) {
        w(i, j) = std::pow(k(i, j), static_cast<int>(-s.real()));
      } else {
        w(i, j) = std::exp(-s * lk(i, j));
      }
    }
  }
  return w;
}

KernelFamily::KernelFamily(const SpaceContext& ctx, OrderParameter s)
    : n_(ctx.dimension()),
      ell_(ctx.ell()),
      s_(s),
      flags_(std::make_unique<std::once_flag[]>(static_cast<std::size_t>(n_) * n_)),
      kernels_(static_cast<std::size_t>(n_) * n_) {
  const Eigen::MatrixXcd weight = overlap_power(ctx, s.value());
  profile_.resize(n_, n_);
  for (int xj = 0; xj < n_; ++xj) {
    const int xi = xj - ell_;
    for (int di = 0; di < n_; ++di) {
      const int d = di - ell_;
      Complex acc = 0.0;
      for (int ei = 0; ei < n_; ++ei) {
        const long long eta = ei - ell_;
        acc += root_of_unity(2 * eta * d + eta * xi, 2 * n_) * weight(ei, xj);
      }
      profile_(xj, di) = acc;
    }
  }
}

Operator KernelFamily::build(int mu, int nu) const {
  Operator t = Operator::Zero(n_, n_);
  const double inv_n = 1.0 / n_;
  for (int xj = 0; xj < n_; ++xj) {
    const int xi = xj - ell_;
    const Complex phase = inv_n * root_of_unity(-static_cast<long long>(xi) * mu, n_);
    for (int r = 0; r < n_; ++r) {
      const int row = r - ell_;
      const int c = fold_label(row + xi, n_) + ell_;
      t(r, c) = phase * profile_(xj, fold_label(row - nu, n_) + ell_);
    }
  }
  return t;
}

const Operator& KernelFamily::operator()(long long mu, long long nu) const {
  const int m = fold_label(mu, n_);
  const int v = fold_label(nu, n_);
  const std::size_t slot = static_cast<std::size_t>(m + ell_) * n_ + (v + ell_);
  std::call_once(flags_[slot], [&] { kernels_[slot] = build(m, v); });
  return kernels_[slot];
}

void KernelFamily::materialize_all() const {
  const std::size_t total = static_cast<std::size_t>(n_) * n_;
  parallel_for(total, [&](std::size_t slot) {
    (*this)(static_cast<int>(slot / n_) - ell_, static_cast<int>(slot % n_) - ell_);
  });
}

Operator kernel_t(const SpaceContext& ctx, OrderParameter s, long long mu, long long nu) {
  const KernelFamily family(ctx, s);
  return family(mu, nu);
}

PhaseGrid map_operator(const KernelFamily& family, const Operator& op) {
  const int n = family.dimension();
  const int ell = (n - 1) / 2;
  require_square(n, op.rows(), op.cols(), "operator");
  const Eigen::MatrixXcd& h = family.profile();

  // g(xi, nu) = sum_r h(xi, r - nu) O(r + xi, r)
  Eigen::MatrixXcd g(n, n);
  for (int xj = 0; xj < n; ++xj) {
    const int xi = xj - ell;
    for (int vj = 0; vj < n; ++vj) {
      const int nu = vj - ell;
      Complex acc = 0.0;
      for (int r = 0; r < n; ++r) {
        const int row = r - ell;
        acc += h(xj, fold_label(row - nu, n) + ell) * op(fold_label(row + xi, n) + ell, r);
      }
      g(xj, vj) = acc;
    }
  }
  // F(mu, nu) = (1/N) sum_xi exp(-2 pi i xi mu / N) g(xi, nu)
  PhaseGrid grid;
  grid.dimension = n;
  grid.s = family.order();
  grid.label = distribution_label(family.order());
  grid.values = (fourier_matrix(n, -1) * g) / static_cast<double>(n);
  return grid;
}

PhaseGrid map_operator(const SpaceContext& ctx, const Operator& op, OrderParameter s) {
  require_square(ctx.dimension(), op.rows(), op.cols(), "operator");
  return map_operator(KernelFamily(ctx, s), op);
}

Operator reconstruct(const KernelFamily& family, const PhaseGrid& grid) {
  const int n = family.dimension();
  const int ell = (n - 1) / 2;
  if (grid.dimension != n) {
    throw DomainError("grid dimension " + std::to_string(grid.dimension) +
                      " does not match space dimension " + std::to_string(n));
  }
  require_square(n, grid.values.rows(), grid.values.cols(), "grid");
  const Eigen::MatrixXcd& h = family.profile();

  // fhat(xi, nu) = sum_mu F(mu, nu) exp(-2 pi i xi mu / N)
  const Eigen::MatrixXcd fhat = fourier_matrix(n, -1) * grid.values;
  const double scale = 1.0 / (static_cast<double>(n) * n);
  Operator op(n, n);
  for (int r = 0; r < n; ++r) {
    const int row = r - ell;
    for (int c = 0; c < n; ++c) {
      const int xj = fold_label((c - ell) - row, n) + ell;
      Complex acc = 0.0;
      for (int vj = 0; vj < n; ++vj) {
        acc += fhat(xj, vj) * h(xj, fold_label(row - (vj - ell), n) + ell);
      }
      op(r, c) = scale * acc;
    }
  }
  return op;
}

Operator reconstruct(const SpaceContext& ctx, const PhaseGrid& grid, OrderParameter s) {
  if (grid.dimension != ctx.dimension()) {
    throw DomainError("grid dimension " + std::to_string(grid.dimension) +
                      " does not match space dimension " + std::to_string(ctx.dimension()));
  }
  return reconstruct(KernelFamily(ctx, s), grid);
}

void validate_density(const Operator& rho, double tol) {
  if (rho.rows() != rho.cols()) throw ValidationError("density matrix is not square");
  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol) {
    throw ValidationError("density matrix is not Hermitian (max |rho - rho^dagger| = " +
                          std::to_string(asym) + ")");
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > tol) {
    throw ValidationError("density matrix trace is " + std::to_string(tr.real()) + " + " +
                          std::to_string(tr.imag()) + "i, expected 1");
  }
}

PhaseGrid wigner(const SpaceContext& ctx, const Operator& rho) {
  require_square(ctx.dimension(), rho.rows(), rho.cols(), "density matrix");
  validate_density(rho);
  return map_operator(ctx, rho, OrderParameter(0.0));
}

PhaseGrid husimi(const SpaceContext& ctx, const Operator& rho) {
  require_square(ctx.dimension(), rho.rows(), rho.cols(), "density matrix");
  validate_density(rho);
  return map_operator(ctx, rho, OrderParameter(-1.0));
}

PhaseGrid pfunction(const SpaceContext& ctx, const Operator& rho) {
  require_square(ctx.dimension(), rho.rows(), rho.cols(), "density matrix");
  validate_density(rho);
  return map_operator(ctx, rho, OrderParameter(1.0));
}

Complex trace_product(const SpaceContext& ctx, OrderParameter s, OrderParameter t,
                      const LabelPair& p1, const LabelPair& p2) {
  const int n = ctx.dimension();
  const int ell = ctx.ell();
  const Eigen::MatrixXcd weight = overlap_power(ctx, s.value() + t.value());
  const long long dmu = static_cast<long long>(p2.eta) - p1.eta;
  const long long dnu = static_cast<long long>(p2.xi) - p1.xi;
  Complex acc = 0.0;
  for (int ei = 0; ei < n; ++ei) {
    for (int xj = 0; xj < n; ++xj) {
      acc += root_of_unity((ei - ell) * dmu + (xj - ell) * dnu, n) * weight(ei, xj);
    }
  }
  return acc / static_cast<double>(n);
}

double smoothing_weight(const SpaceContext& ctx, const LabelPair& p1, const LabelPair& p2) {
  return trace_product(ctx, OrderParameter(0.0), OrderParameter(-1.0), p2, p1).real();
}

Complex folding_lambda(const SpaceContext& ctx, long long dmu, long long dnu) {
  const int n = ctx.dimension();
  const int ell = ctx.ell();
  const Eigen::MatrixXd& k = ctx.overlap().values();
  Complex acc = 0.0;
  for (int ei = 0; ei < n; ++ei) {
    for (int xj = 0; xj < n; ++xj) {
      acc += root_of_unity((ei - ell) * dmu + (xj - ell) * dnu, n) / k(ei, xj);
    }
  }
  return acc / static_cast<double>(n);
}

namespace {

// (1/N) sum exp{2 pi i (eta d + xi e) / N} M(eta, xi) over the difference grid.
Eigen::MatrixXcd difference_transform(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  const Eigen::MatrixXcd w = fourier_matrix(n, +1);
  return (w * m * w.transpose()) / static_cast<double>(n);
}

}  // namespace

Eigen::MatrixXcd smoothing_profile(const SpaceContext& ctx) {
  return difference_transform(ctx.overlap().values().cast<Complex>());
}

Eigen::MatrixXcd folding_profile(const SpaceContext& ctx) {
  return difference_transform(ctx.overlap().values().cwiseInverse().cast<Complex>());
}

Eigen::MatrixXcd cyclic_convolve(const Eigen::MatrixXcd& profile, const Eigen::MatrixXcd& values) {
  const int n = static_cast<int>(values.rows());
  require_square(n, profile.rows(), profile.cols(), "profile");
  require_square(n, values.rows(), values.cols(), "grid");
  const int ell = (n - 1) / 2;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    for (int v = 0; v < n; ++v) {
      Complex acc = 0.0;
      for (int sg = 0; sg < n; ++sg) {
        const int d = fold_label(m - sg, n) + ell;
        for (int lm = 0; lm < n; ++lm) {
          acc += profile(d, fold_label(v - lm, n) + ell) * values(sg, lm);
        }
      }
      out(m, v) = acc / static_cast<double>(n);
    }
  }
  return out;
}

PhaseGrid smooth(const SpaceContext& ctx, const PhaseGrid& grid) {
  if (grid.dimension != ctx.dimension()) throw DomainError("grid dimension mismatch");
  PhaseGrid out;
  out.dimension = grid.dimension;
  out.s = OrderParameter(grid.s.value() - 1.0);
  out.label = distribution_label(out.s);
  out.values = cyclic_convolve(smoothing_profile(ctx), grid.values);
  return out;
}

PhaseGrid unfold(const SpaceContext& ctx, const PhaseGrid& grid) {
  if (grid.dimension != ctx.dimension()) throw DomainError("grid dimension mismatch");
  PhaseGrid out;
  out.dimension = grid.dimension;
  out.s = OrderParameter(grid.s.value() + 1.0);
  out.label = distribution_label(out.s);
  out.values = cyclic_convolve(folding_profile(ctx), grid.values);
  return out;
}

Complex trace_pair_rule(const SpaceContext& ctx, const Operator& a, const Operator& b,
                        OrderParameter s) {
  const PhaseGrid fa = map_operator(ctx, a, s);
  const PhaseGrid fb = map_operator(ctx, b, -s);
  return (fa.values.array() * fb.values.array()).sum() / static_cast<double>(ctx.dimension());
}

}  // namespace dphase
