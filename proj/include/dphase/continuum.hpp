#ifndef DPHASE_CONTINUUM_HPP
#define DPHASE_CONTINUUM_HPP

#include <span>
#include <utility>
#include <vector>

#include "dphase/space.hpp"
#include "dphase/types.hpp"

namespace dphase {

// epsilon = sqrt(2 pi / N); p0 q0 = 1.
struct ScalingFrame {
  int n = 1;
  double epsilon = 0.0;
  double p0 = 1.0;
  double q0 = 1.0;

  // Throws DomainError unless p0 > 0.
  static ScalingFrame make(int n, double p0 = 1.0);
};

// Q = sum_m m eps q0 |u_m><u_m|,  P = sum_m m eps p0 |v_m><v_m|.
std::pair<Operator, Operator> position_momentum(const SpaceContext& ctx, const ScalingFrame& frame);

// max |K(eta, xi) - exp(-[(p0 eps eta)^2 + (q0 eps xi)^2] / 4)| over grid points
// with |p0 eps eta| <= window and |q0 eps xi| <= window. Throws DomainError if
// no grid point qualifies or window <= 0.
double gaussian_overlap_error(const SpaceContext& ctx, const ScalingFrame& frame, double window);

// Same window, comparing the vacuum Husimi function K^2 with
// exp(-[(p0 eps eta)^2 + (q0 eps xi)^2] / 2).
double vacuum_husimi_error(const SpaceContext& ctx, const ScalingFrame& frame, double window);

// <0,0| [Q, P] |0,0>; tends to i.
Complex vacuum_commutator(const SpaceContext& ctx, const ScalingFrame& frame);

struct ConvergenceRow {
  int n = 0;
  double epsilon = 0.0;
  double max_error = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  // Each error at most 5% above its predecessor. Always true for one row.
  bool non_increasing = true;
};

// gaussian_overlap_error for each N (p0 = q0 = 1), evaluated in parallel.
// Ns must be odd and sorted ascending.
ConvergenceReport convergence_sweep(std::span<const int> ns, double window);

}  // namespace dphase

#endif  // DPHASE_CONTINUUM_HPP
