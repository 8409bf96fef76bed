#ifndef DPHASE_ERRORS_HPP
#define DPHASE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dphase {

// Argument outside the mathematical domain of an operation (even N, |s| > 1,
// Im(tau) <= 0, dimension mismatch, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A series could not be truncated within the hard term cap.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input failed a semantic check (non-Hermitian density matrix, wrong trace).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The overlap table produced a value for which [K]^(-s) has no unambiguous
// principal branch (non-positive or non-real K).
class BranchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed operator or grid file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dphase

#endif  // DPHASE_ERRORS_HPP
