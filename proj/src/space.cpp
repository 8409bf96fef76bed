#include "dphase/space.hpp"

#include <cmath>
#include <string>

#include "dphase/coherent.hpp"
#include "dphase/errors.hpp"

namespace dphase {

SpaceContext make_space(int n, int max_dimension) {
  if (n < 1 || n % 2 == 0) {
    throw DomainError("dimension must be odd and positive, got " + std::to_string(n));
  }
  if (n > max_dimension) {
    throw DomainError("dimension " + std::to_string(n) + " exceeds the configured maximum " +
                      std::to_string(max_dimension));
  }
  SpaceContext ctx;
  ctx.n_ = n;
  ctx.ell_ = (n - 1) / 2;
  ctx.u_phases_.resize(n);
  for (int k = 0; k < n; ++k) ctx.u_phases_(k) = root_of_unity(k - ctx.ell_, n);

  const Eigen::VectorXd amplitudes = vacuum_amplitudes(n);
  ctx.normalization_squared_ = vacuum_normalization_squared(n);
  ctx.vacuum_ = (amplitudes / std::sqrt(ctx.normalization_squared_)).cast<Complex>();
  ctx.overlap_ = OverlapTable(n);
  return ctx;
}

Operator SpaceContext::u_operator() const { return u_phases_.asDiagonal(); }

Operator SpaceContext::v_operator() const {
  // V |u_m> = |u_{m-1}>
  Operator v = Operator::Zero(n_, n_);
  for (int c = 0; c < n_; ++c) v(index(label(c) - 1), c) = 1.0;
  return v;
}

Operator SpaceContext::fourier() const {
  Operator f(n_, n_);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) {
      f(r, c) = scale * root_of_unity(static_cast<long long>(label(r)) * label(c), n_);
    }
  }
  return f;
}

Ket SpaceContext::u_basis(long long label) const {
  Ket k = Ket::Zero(n_);
  k(index(label)) = 1.0;
  return k;
}

Ket SpaceContext::v_basis(long long label) const {
  const int g = fold_label(label, n_);
  Ket k(n_);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  for (int r = 0; r < n_; ++r) k(r) = scale * root_of_unity(static_cast<long long>(this->label(r)) * g, n_);
  return k;
}

}  // namespace dphase
