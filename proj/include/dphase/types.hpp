#ifndef DPHASE_TYPES_HPP
#define DPHASE_TYPES_HPP

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace dphase {

using Complex = std::complex<double>;

// N x N operator in the u-basis; row/column k holds label k - ell.
using Operator = Eigen::MatrixXcd;
// Length-N state vector in the u-basis.
using Ket = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Representative of label modulo n in the symmetric interval [-ell, ell].
// n must be odd and positive.
constexpr int fold_label(long long label, int n) {
  const int ell = (n - 1) / 2;
  long long r = (label + ell) % n;
  if (r < 0) r += n;
  return static_cast<int>(r) - ell;
}

// A phase-space or displacement label pair, always stored folded.
struct LabelPair {
  int eta = 0;
  int xi = 0;

  static LabelPair folded(long long eta, long long xi, int n) {
    return {fold_label(eta, n), fold_label(xi, n)};
  }

  friend bool operator==(const LabelPair&, const LabelPair&) = default;
};

// exp(2 pi i k / n) with k reduced first so large products stay exact.
inline Complex root_of_unity(long long k, int n) {
  long long r = k % n;
  if (r < 0) r += n;
  const double angle = 2.0 * kPi * static_cast<double>(r) / n;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace dphase

#endif  // DPHASE_TYPES_HPP
