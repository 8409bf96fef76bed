#ifndef DPHASE_SPACE_HPP
#define DPHASE_SPACE_HPP

#include "dphase/overlap_table.hpp"
#include "dphase/types.hpp"

namespace dphase {

inline constexpr int kDefaultMaxDimension = 2001;

// Immutable description of an odd-dimensional state space: label range,
// Schwinger unitaries U and V, the Fourier operator, the discrete vacuum and
// the overlap table K. The u-basis is the computational basis and U is
// diagonal there:
//
//   U |u_g> = exp(2 pi i g / N) |u_g>,   <u_m|v_g> = exp(2 pi i m g / N) / sqrt(N),
//   V |u_m> = |u_{m-1}>,                 U^a V^b = exp(-2 pi i a b / N) V^b U^a.
//
// Construct with make_space(). Safe to share across threads.
class SpaceContext {
 public:
  int dimension() const { return n_; }
  int ell() const { return ell_; }
  // a = 1 / 2N
  double a() const { return 0.5 / n_; }

  // Row/column index of a label (folded mod N).
  int index(long long label) const { return fold_label(label, n_) + ell_; }
  int label(int index) const { return index - ell_; }

  // Diagonal of U.
  const Eigen::VectorXcd& u_phases() const { return u_phases_; }

  Operator u_operator() const;
  Operator v_operator() const;
  // sum_g |v_g><u_g|; column g is |v_g>.
  Operator fourier() const;

  Ket u_basis(long long label) const;
  Ket v_basis(long long label) const;

  const Ket& vacuum() const { return vacuum_; }
  // N^2 from the closed theta form.
  double vacuum_normalization_squared() const { return normalization_squared_; }
  const OverlapTable& overlap() const { return overlap_; }

 private:
  friend SpaceContext make_space(int n, int max_dimension);

  int n_ = 1;
  int ell_ = 0;
  Eigen::VectorXcd u_phases_;
  Ket vacuum_;
  double normalization_squared_ = 1.0;
  OverlapTable overlap_;
};

// Throws DomainError for even, nonpositive or oversized N.
SpaceContext make_space(int n, int max_dimension = kDefaultMaxDimension);

}  // namespace dphase

#endif  // DPHASE_SPACE_HPP
