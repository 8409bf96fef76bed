#ifndef DPHASE_KERNEL_HPP
#define DPHASE_KERNEL_HPP

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dphase/space.hpp"
#include "dphase/types.hpp"

namespace dphase {

// Complex order parameter s with |s| <= 1. s = 0, -1, +1 select the Wigner,
// Husimi and Glauber-Sudarshan kernels.
class OrderParameter {
 public:
  OrderParameter() = default;
  // Throws DomainError when |s| > 1.
  OrderParameter(Complex s);  // NOLINT
  OrderParameter(double s) : OrderParameter(Complex(s, 0.0)) {}  // NOLINT

  Complex value() const { return s_; }
  bool is_real() const { return s_.imag() == 0.0; }
  OrderParameter conj() const { return OrderParameter(std::conj(s_)); }
  OrderParameter operator-() const { return OrderParameter(-s_); }

  friend bool operator==(const OrderParameter&, const OrderParameter&) = default;

 private:
  Complex s_{0.0, 0.0};
};

// Phase-space function F(mu, nu) on the N x N torus, tagged with the order
// parameter of the kernel that produced it. values(k, j) holds
// F(k - ell, j - ell).
struct PhaseGrid {
  int dimension = 0;
  OrderParameter s;
  std::string label;
  Eigen::MatrixXcd values;

  Complex at(long long mu, long long nu) const {
    const int ell = (dimension - 1) / 2;
    return values(fold_label(mu, dimension) + ell, fold_label(nu, dimension) + ell);
  }
};

// [K(eta, xi)]^(-s) = exp(-s ln K) on the label grid. Throws BranchError if
// the overlap table holds a non-positive value.
Eigen::MatrixXcd overlap_power(const SpaceContext& ctx, Complex exponent);

// The mapping kernels T^(s)(mu, nu) for one order parameter:
//
//   T^(s)(mu, nu) = (1/N) sum_{eta,xi} U^eta V^xi exp[-2 pi i (xi mu + eta nu)/N]
//                   exp(i pi eta xi / N) [K(eta, xi)]^(-s)
//
// With this pairing T^(-1)(mu, nu) = |mu,nu><mu,nu| for the coherent states of
// coherent_state(). Since K(eta, xi) = K(xi, eta), the trace relations
// (trace_product, smoothing_weight, folding_lambda) are symmetric in the pairing.
//
// Construction precomputes the O(N^2) profile table in O(N^3); each kernel is
// then materialized on first access in O(N^2) and cached. Concurrent first
// access is safe.
class KernelFamily {
 public:
  KernelFamily(const SpaceContext& ctx, OrderParameter s);

  int dimension() const { return n_; }
  OrderParameter order() const { return s_; }

  const Operator& operator()(long long mu, long long nu) const;

  // Materializes all N^2 kernels, in parallel.
  void materialize_all() const;

  // h(xi, d) = sum_eta exp(2 pi i eta d / N) exp(i pi eta xi / N) [K(eta, xi)]^(-s),
  // indexed by xi + ell and d + ell. T^(s)(mu, nu) has entry
  // (1/N) exp(-2 pi i xi mu / N) h(xi, r - nu) at row r, column r + xi.
  const Eigen::MatrixXcd& profile() const { return profile_; }

 private:
  Operator build(int mu, int nu) const;

  int n_;
  int ell_;
  OrderParameter s_;
  Eigen::MatrixXcd profile_;
  std::unique_ptr<std::once_flag[]> flags_;
  mutable std::vector<Operator> kernels_;
};

// T^(s)(mu, nu) as a standalone operator.
Operator kernel_t(const SpaceContext& ctx, OrderParameter s, long long mu, long long nu);

// F(mu, nu) = Tr[T^(s)(mu, nu) O] on the full grid, in O(N^3).
PhaseGrid map_operator(const KernelFamily& family, const Operator& op);
PhaseGrid map_operator(const SpaceContext& ctx, const Operator& op, OrderParameter s);

// O = (1/N) sum F(mu, nu) T^(s)(mu, nu). Inverts map_operator() when the grid
// was produced with -s. Throws DomainError on a dimension mismatch.
Operator reconstruct(const KernelFamily& family, const PhaseGrid& grid);
Operator reconstruct(const SpaceContext& ctx, const PhaseGrid& grid, OrderParameter s);

// Throws ValidationError unless rho is Hermitian and has unit trace (to 1e-10).
void validate_density(const Operator& rho, double tol = 1e-10);

PhaseGrid wigner(const SpaceContext& ctx, const Operator& rho);     // s = 0
PhaseGrid husimi(const SpaceContext& ctx, const Operator& rho);     // s = -1
PhaseGrid pfunction(const SpaceContext& ctx, const Operator& rho);  // s = +1

// Tr[T^(s)(p1) T^(t)(p2)]
//   = (1/N) sum exp{2 pi i [eta (mu' - mu) + xi (nu' - nu)] / N} [K]^(-(s + t)).
Complex trace_product(const SpaceContext& ctx, OrderParameter s, OrderParameter t,
                      const LabelPair& p1, const LabelPair& p2);

// <mu,nu| G(sigma,lambda) |mu,nu> = Tr[T^(0)(sigma,lambda) T^(-1)(mu,nu)], the
// discrete Fourier transform of K. p1 = (mu, nu), p2 = (sigma, lambda).
double smoothing_weight(const SpaceContext& ctx, const LabelPair& p1, const LabelPair& p2);

// Lambda(dmu, dnu) = (1/N) sum exp{2 pi i (eta dmu + xi dnu) / N} / K(eta, xi).
Complex folding_lambda(const SpaceContext& ctx, long long dmu, long long dnu);

// Tables of smoothing_weight((d, e), (0, 0)) and folding_lambda(d, e) over the
// difference grid, indexed by d + ell and e + ell.
Eigen::MatrixXcd smoothing_profile(const SpaceContext& ctx);
Eigen::MatrixXcd folding_profile(const SpaceContext& ctx);

// out(mu, nu) = (1/N) sum_{sigma,lambda} profile(mu - sigma, nu - lambda) in(sigma, lambda).
Eigen::MatrixXcd cyclic_convolve(const Eigen::MatrixXcd& profile, const Eigen::MatrixXcd& values);

// One step down the hierarchy: s -> s - 1 (P -> W, W -> H).
PhaseGrid smooth(const SpaceContext& ctx, const PhaseGrid& grid);
// One step up, through Lambda: s -> s + 1 (H -> W, W -> P).
PhaseGrid unfold(const SpaceContext& ctx, const PhaseGrid& grid);

// Tr(A B) = (1/N) sum A^(s)(mu, nu) B^(-s)(mu, nu).
Complex trace_pair_rule(const SpaceContext& ctx, const Operator& a, const Operator& b,
                        OrderParameter s);

}  // namespace dphase

#endif  // DPHASE_KERNEL_HPP
