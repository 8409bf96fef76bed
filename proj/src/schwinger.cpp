#include "dphase/schwinger.hpp"

#include <cmath>

#include "dphase/errors.hpp"

namespace dphase {

namespace {

void require_dimension(const SpaceContext& ctx, Eigen::Index rows, Eigen::Index cols) {
  if (rows != ctx.dimension() || cols != ctx.dimension()) {
    throw DomainError("operator is " + std::to_string(rows) + "x" + std::to_string(cols) +
                      ", expected " + std::to_string(ctx.dimension()) + "x" +
                      std::to_string(ctx.dimension()));
  }
}

}  // namespace

Operator weyl_monomial(const SpaceContext& ctx, long long alpha, long long beta) {
  const int n = ctx.dimension();
  Operator m = Operator::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    const int r = ctx.index(ctx.label(c) - beta);
    m(r, c) = root_of_unity(alpha * ctx.label(r), n);
  }
  return m;
}

Operator schwinger_element(const SpaceContext& ctx, long long eta, long long xi) {
  const int n = ctx.dimension();
  const int e = fold_label(eta, n);
  const int x = fold_label(xi, n);
  const Complex scale = root_of_unity(static_cast<long long>(e) * x, 2 * n) /
                        std::sqrt(static_cast<double>(n));
  return scale * weyl_monomial(ctx, e, x);
}

Eigen::MatrixXcd decompose(const SpaceContext& ctx, const Operator& op) {
  require_dimension(ctx, op.rows(), op.cols());
  const int n = ctx.dimension();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  // Tr[S(-eta,-xi) O] = N^{-1/2} exp(i pi eta xi / N) sum_r exp(-2 pi i eta r / N) O(r - xi, r)
  Eigen::MatrixXcd coeff(n, n);
  for (int ei = 0; ei < n; ++ei) {
    const int eta = ctx.label(ei);
    for (int xj = 0; xj < n; ++xj) {
      const int xi = ctx.label(xj);
      Complex acc = 0.0;
      for (int r = 0; r < n; ++r) {
        acc += root_of_unity(-static_cast<long long>(eta) * ctx.label(r), n) *
               op(ctx.index(ctx.label(r) - xi), r);
      }
      coeff(ei, xj) = scale * root_of_unity(static_cast<long long>(eta) * xi, 2 * n) * acc;
    }
  }
  return coeff;
}

Operator compose(const SpaceContext& ctx, const Eigen::MatrixXcd& coefficients) {
  require_dimension(ctx, coefficients.rows(), coefficients.cols());
  const int n = ctx.dimension();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  // S(eta, xi) has entry N^{-1/2} exp(i pi eta xi / N) exp(2 pi i eta r / N) at (r, r + xi).
  Operator op(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int xi = fold_label(ctx.label(c) - ctx.label(r), n);
      Complex acc = 0.0;
      for (int ei = 0; ei < n; ++ei) {
        const int eta = ctx.label(ei);
        acc += coefficients(ei, ctx.index(xi)) *
               root_of_unity(static_cast<long long>(eta) * xi + 2LL * eta * ctx.label(r), 2 * n);
      }
      op(r, c) = scale * acc;
    }
  }
  return op;
}

}  // namespace dphase
