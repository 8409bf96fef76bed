#ifndef DPHASE_OVERLAP_TABLE_HPP
#define DPHASE_OVERLAP_TABLE_HPP

#include <vector>

#include <Eigen/Dense>

#include "dphase/types.hpp"

namespace dphase {

// Cached coherent-state overlaps K(eta, xi) = <0,0|eta,xi> on the full label
// grid. Values are real and strictly positive (checked on construction).
//
// The table is built from the lattice form
//
//   K(eta, xi) = g(eta) g(xi) B(eta, xi) / B(0, 0),  g(x) = exp(-pi x^2 / 2N)
//   B = t3(eta) t3(xi) + (-1)^eta t3(eta) t2(xi) + (-1)^xi t2(eta) t3(xi)
//       + (-1)^(eta + xi + N) t2(eta) t2(xi)
//
// with t3(x) = theta3(i x | 2iN) and t2(x) = theta2(i x | 2iN). Every factor is
// a sum of positive terms, so K keeps full relative accuracy even where it is
// far below the double-precision epsilon. For N beyond roughly 950 the corner
// values underflow double range; log K stays finite and is kept alongside.
class OverlapTable {
 public:
  OverlapTable() = default;
  explicit OverlapTable(int n);

  int dimension() const { return n_; }

  // Labels are folded mod N.
  double operator()(long long eta, long long xi) const {
    return values_(fold_label(eta, n_) + ell_, fold_label(xi, n_) + ell_);
  }

  // Row/column k holds label k - ell.
  const Eigen::MatrixXd& values() const { return values_; }

  // ln K on the same layout; finite wherever K > 0, including underflowed cells.
  const Eigen::MatrixXd& log_values() const { return log_values_; }

  // K(eta, xi) - exp(-pi (eta^2 + xi^2) / 2N), computed without cancellation.
  double deviation_from_gaussian(long long eta, long long xi) const;

  double min_value() const { return values_.minCoeff(); }
  double min_log_value() const { return log_values_.minCoeff(); }

 private:
  // Bracket B(eta, xi) - B(0, 0).
  double bracket_shift(int eta, int xi) const;

  int n_ = 0;
  int ell_ = 0;
  std::vector<double> gauss_;
  std::vector<double> t3_minus_one_;
  std::vector<double> t2_;
  double bracket0_ = 1.0;
  Eigen::MatrixXd values_;
  Eigen::MatrixXd log_values_;
};

}  // namespace dphase

#endif  // DPHASE_OVERLAP_TABLE_HPP
