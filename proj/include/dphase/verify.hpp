#ifndef DPHASE_VERIFY_HPP
#define DPHASE_VERIFY_HPP

#include <string>
#include <vector>

#include "dphase/config.hpp"
#include "dphase/types.hpp"

namespace dphase {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerificationReport {
  int dimension = 0;
  std::vector<Complex> orders;
  std::vector<CheckResult> checks;
  // max |K|^(-Re s) over the grid, per order parameter (informational).
  std::vector<double> conditioning;

  bool passed() const;
  std::string to_json() const;
  std::string to_text() const;
};

inline constexpr int kMaxVerifyDimension = 21;

// Runs the theta, Schwinger, coherent-state and kernel identity suites at
// dimension n for each order parameter in orders. Throws DomainError for even
// n or n > kMaxVerifyDimension.
VerificationReport run_verification(int n, const std::vector<Complex>& orders,
                                    const Tolerances& tolerances, unsigned seed = 2024);

}  // namespace dphase

#endif  // DPHASE_VERIFY_HPP
