#include "dphase/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "dphase/coherent.hpp"
#include "dphase/errors.hpp"
#include "dphase/io.hpp"
#include "dphase/kernel.hpp"
#include "dphase/random.hpp"
#include "dphase/schwinger.hpp"
#include "dphase/theta.hpp"

namespace dphase {

namespace {

using theta::theta2;
using theta::theta3;
using theta::theta4;

constexpr double kThetaTol = 1e-16;

double rel_err(Complex lhs, Complex rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::string order_name(Complex s) {
  return io::format_double(s.real()) + (s.imag() < 0 ? "" : "+") + io::format_double(s.imag()) + "i";
}

class Recorder {
 public:
  Recorder(VerificationReport& report, const Tolerances& tol) : report_(report), tol_(tol) {}

  void add(const std::string& name, double residual, const std::string& key) {
    const double limit = tol_.get(key);
    report_.checks.push_back({name, residual, limit, std::isfinite(residual) && residual < limit});
  }

 private:
  VerificationReport& report_;
  const Tolerances& tol_;
};

void theta_suite(Recorder& rec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  constexpr int kDraws = 100;
  const Complex i(0.0, 1.0);

  double half = 0.0;
  double jacobi = 0.0;
  double landen = 0.0;
  double quasi = 0.0;
  double parity = 0.0;
  for (int k = 0; k < kDraws; ++k) {
    const Complex tau(draw(-0.5, 0.5), draw(0.05, 5.0));
    const Complex z(draw(-0.4, 0.4), draw(-0.3, 0.3) * tau.imag());

    const Complex lhs = theta3(z + tau / 2.0, tau, kThetaTol);
    const Complex rhs = std::exp(-i * kPi * tau / 4.0 - i * kPi * z) * theta2(z, tau, kThetaTol);
    half = std::max(half, rel_err(lhs, rhs));

    landen = std::max(landen, rel_err(theta3(z, tau, kThetaTol),
                                      0.5 * (theta3(z / 2.0, tau / 4.0, kThetaTol) +
                                             theta4(z / 2.0, tau / 4.0, kThetaTol))));

    for (int m = -2; m <= 2; ++m) {
      const Complex shift = static_cast<double>(m) * tau;
      const Complex q3 = std::exp(-i * kPi * tau * double(m * m) - 2.0 * i * kPi * double(m) * z);
      quasi = std::max(quasi, rel_err(theta3(z + shift, tau, kThetaTol), q3 * theta3(z, tau, kThetaTol)));
      const Complex q4 = q3 * std::exp(i * kPi * double(m));
      quasi = std::max(quasi, rel_err(theta4(z + shift, tau, kThetaTol), q4 * theta4(z, tau, kThetaTol)));
    }
    parity = std::max(parity, rel_err(theta3(-z, tau, kThetaTol), theta3(z, tau, kThetaTol)));

    const double varsigma = draw(-1.0, 1.0);
    const double t = draw(0.3, 3.0);
    const Complex left = theta3(Complex(varsigma) / (i * t), Complex(0.0, 1.0 / t), kThetaTol);
    const Complex right = std::sqrt(t) * std::exp(kPi * varsigma * varsigma / t) *
                          theta3(Complex(varsigma), Complex(0.0, t), kThetaTol);
    jacobi = std::max(jacobi, rel_err(left, right));
  }
  rec.add("theta.half_period", half, "theta_identity");
  rec.add("theta.jacobi_transform", jacobi, "theta_jacobi");
  rec.add("theta.landen_split", landen, "theta_identity");
  rec.add("theta.quasi_periodicity", quasi, "theta_identity");
  rec.add("theta.parity", parity, "theta_identity");
}

void schwinger_suite(Recorder& rec, const SpaceContext& ctx, std::mt19937_64& rng) {
  const int n = ctx.dimension();
  const int ell = ctx.ell();
  const Operator id = Operator::Identity(n, n);
  const Operator u = ctx.u_operator();
  const Operator v = ctx.v_operator();
  const Operator f = ctx.fourier();

  rec.add("schwinger.unitarity",
          std::max({max_abs(u.adjoint() * u - id), max_abs(v.adjoint() * v - id),
                    max_abs(f.adjoint() * f - id)}),
          "schwinger_unitarity");

  // Dense powers by repeated multiplication, independent of weyl_monomial.
  std::vector<Operator> u_pow(n, id);
  std::vector<Operator> v_pow(n, id);
  for (int k = 1; k < n; ++k) {
    u_pow[k] = u_pow[k - 1] * u;
    v_pow[k] = v_pow[k - 1] * v;
  }
  rec.add("schwinger.order", std::max(max_abs(u_pow[n - 1] * u - id), max_abs(v_pow[n - 1] * v - id)),
          "schwinger_order");

  double weyl = 0.0;
  for (int alpha = -ell; alpha <= ell; ++alpha) {
    for (int beta = -ell; beta <= ell; ++beta) {
      const Operator& ua = u_pow[(alpha + n) % n];
      const Operator& vb = v_pow[(beta + n) % n];
      weyl = std::max(weyl, max_abs(ua * vb - root_of_unity(-alpha * beta, n) * (vb * ua)));
      weyl = std::max(weyl, max_abs(weyl_monomial(ctx, alpha, beta) - ua * vb));
    }
  }
  rec.add("schwinger.weyl_relation", weyl, "schwinger_weyl");

  double fourier = 0.0;
  for (int g = -ell; g <= ell; ++g) {
    fourier = std::max(fourier, (f * ctx.u_basis(g) - ctx.v_basis(g)).cwiseAbs().maxCoeff());
  }
  rec.add("schwinger.fourier_maps_bases", fourier, "fourier_basis");

  std::vector<Operator> basis;
  basis.reserve(static_cast<std::size_t>(n) * n);
  for (int e = -ell; e <= ell; ++e) {
    for (int x = -ell; x <= ell; ++x) basis.push_back(schwinger_element(ctx, e, x));
  }
  double ortho = 0.0;
  for (std::size_t p = 0; p < basis.size(); ++p) {
    for (std::size_t q = 0; q < basis.size(); ++q) {
      const Complex inner = (basis[p].conjugate().array() * basis[q].array()).sum();
      ortho = std::max(ortho, std::abs(inner - (p == q ? 1.0 : 0.0)));
    }
  }
  rec.add("schwinger.orthonormality", ortho, "schwinger_orthonormality");

  double adjoint = 0.0;
  for (int e = -ell; e <= ell; ++e) {
    for (int x = -ell; x <= ell; ++x) {
      adjoint = std::max(adjoint, max_abs(schwinger_element(ctx, e, x).adjoint() -
                                          schwinger_element(ctx, -e, -x)));
    }
  }
  rec.add("schwinger.adjoint_parity", adjoint, "schwinger_orthonormality");

  double roundtrip = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const Operator o = random_hermitian(n, rng);
    roundtrip = std::max(roundtrip, max_abs(compose(ctx, decompose(ctx, o)) - o));
  }
  rec.add("schwinger.decompose_roundtrip", roundtrip, "schwinger_roundtrip");
}

void coherent_suite(Recorder& rec, const SpaceContext& ctx, std::mt19937_64& rng) {
  const int n = ctx.dimension();
  const int ell = ctx.ell();
  const Ket& vac = ctx.vacuum();

  rec.add("coherent.vacuum_norm", std::abs(vac.norm() - 1.0), "vacuum");
  rec.add("coherent.vacuum_fourier_invariance", (ctx.fourier() * vac - vac).norm(), "vacuum");
  double parity = 0.0;
  for (int g = 0; g <= ell; ++g) parity = std::max(parity, std::abs(vac(ctx.index(g)) - vac(ctx.index(-g))));
  rec.add("coherent.vacuum_parity", parity, "vacuum");
  const double direct = vacuum_amplitudes(n).squaredNorm();
  rec.add("coherent.normalization_closed_form",
          std::abs(direct - ctx.vacuum_normalization_squared()) / direct, "vacuum");

  double a_err = 0.0;
  double a_sym = 0.0;
  for (int m = -ell; m <= ell; ++m) {
    for (int v = -ell; v <= ell; ++v) {
      const Complex series = a_series(ctx, m, v);
      a_err = std::max(a_err, rel_err(a_closed(ctx, m, v), series));
      a_sym = std::max(a_sym, rel_err(series, a_series(ctx, v, m)));
    }
  }
  rec.add("coherent.a_closed_vs_series", a_err, "a_closed");
  rec.add("coherent.a_symmetry", a_sym, "a_closed");

  double k_brute = 0.0;
  double k_table = 0.0;
  double k_imag = 0.0;
  double k_parity = 0.0;
  for (int e = -ell; e <= ell; ++e) {
    for (int x = -ell; x <= ell; ++x) {
      const Complex closed = overlap_k(ctx, e, x);
      const Complex brute = vac.dot(coherent_state(ctx, e, x));
      k_brute = std::max(k_brute, std::abs(closed - brute));
      k_table = std::max(k_table, std::abs(closed - ctx.overlap()(e, x)));
      k_imag = std::max(k_imag, std::abs(closed.imag()));
      k_parity = std::max(k_parity, std::abs(ctx.overlap()(e, x) - ctx.overlap()(-e, -x)));
    }
  }
  rec.add("coherent.k_closed_vs_inner_product", k_brute, "overlap");
  rec.add("coherent.k_table_vs_closed", k_table, "overlap");
  rec.add("coherent.k_imaginary_residue", k_imag, "vacuum");
  rec.add("coherent.k_parity", k_parity, "vacuum");
  rec.add("coherent.k_positive", ctx.overlap().min_value() > 0.0 ? 0.0 : 1.0, "vacuum");

  std::vector<Ket> states;
  states.reserve(static_cast<std::size_t>(n) * n);
  for (int m = -ell; m <= ell; ++m) {
    for (int v = -ell; v <= ell; ++v) states.push_back(coherent_state(ctx, m, v));
  }
  std::uniform_int_distribution<int> label(-ell, ell);
  double ov = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int e = label(rng), x = label(rng), m = label(rng), v = label(rng);
    const Complex brute = states[(e + ell) * n + (x + ell)].dot(states[(m + ell) * n + (v + ell)]);
    ov = std::max(ov, std::abs(overlap_closed(ctx, e, x, m, v) - brute));
  }
  rec.add("coherent.overlap_closed_vs_inner_product", ov, "overlap");

  Operator resolution = Operator::Zero(n, n);
  double norm_err = 0.0;
  for (const Ket& s : states) {
    resolution += s * s.adjoint();
    norm_err = std::max(norm_err, std::abs(s.norm() - 1.0));
  }
  rec.add("coherent.state_norms", norm_err, "vacuum");
  rec.add("coherent.resolution_of_identity",
          max_abs(resolution / static_cast<double>(n) - Operator::Identity(n, n)),
          "resolution_identity");
}

// Residual of an operator identity, relative to the size of the reference
// side once it exceeds one.
double scaled(double residual, double reference) { return residual / std::max(1.0, reference); }

void kernel_order_suite(Recorder& rec, const SpaceContext& ctx, Complex sv, std::mt19937_64& rng,
                        VerificationReport& report) {
  const int n = ctx.dimension();
  const int ell = ctx.ell();
  const OrderParameter s(sv);
  const std::string tag = "kernel[s=" + order_name(sv) + "].";
  const KernelFamily fam(ctx, s);
  const KernelFamily fam_conj(ctx, s.conj());
  const KernelFamily fam_dual(ctx, -s);
  fam.materialize_all();
  fam_conj.materialize_all();
  fam_dual.materialize_all();

  double herm = 0.0;
  double trace = 0.0;
  double magnitude = 0.0;
  Operator sum = Operator::Zero(n, n);
  for (int m = -ell; m <= ell; ++m) {
    for (int v = -ell; v <= ell; ++v) {
      const Operator& t = fam(m, v);
      magnitude = std::max(magnitude, max_abs(t));
      herm = std::max(herm, max_abs(t.adjoint() - fam_conj(m, v)));
      trace = std::max(trace, std::abs(t.trace() - 1.0));
      sum += t;
    }
  }
  rec.add(tag + "property_i_adjoint", scaled(herm, magnitude), "kernel_identity");
  rec.add(tag + "property_ii_resolution",
          scaled(max_abs(sum / static_cast<double>(n) - Operator::Identity(n, n)), magnitude),
          "kernel_identity");
  rec.add(tag + "property_iii_unit_trace", trace, "kernel_identity");

  double dual = 0.0;
  double dual_magnitude = magnitude;
  for (int m = -ell; m <= ell; ++m) {
    for (int v = -ell; v <= ell; ++v) dual_magnitude = std::max(dual_magnitude, max_abs(fam_dual(m, v)));
  }
  for (int m = -ell; m <= ell; ++m) {
    for (int v = -ell; v <= ell; ++v) {
      for (int mp = -ell; mp <= ell; ++mp) {
        for (int vp = -ell; vp <= ell; ++vp) {
          const Complex tr = trace_of_product(fam(m, v), fam_dual(mp, vp));
          const double expected = (m == mp && v == vp) ? n : 0.0;
          dual = std::max(dual, std::abs(tr - expected));
        }
      }
    }
  }
  rec.add(tag + "property_iv_duality", scaled(dual, magnitude * dual_magnitude), "kernel_duality");

  double route = 0.0;
  double roundtrip = 0.0;
  double real_grid = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const Operator o = random_hermitian(n, rng);
    const PhaseGrid grid = map_operator(fam, o);
    for (int m = -ell; m <= ell; ++m) {
      for (int v = -ell; v <= ell; ++v) {
        route = std::max(route, std::abs(grid.at(m, v) - trace_of_product(fam(m, v), o)));
      }
    }
    if (s.is_real()) real_grid = std::max(real_grid, grid.values.imag().cwiseAbs().maxCoeff());
    const PhaseGrid dual_grid = map_operator(fam_dual, o);
    roundtrip = std::max(roundtrip, max_abs(reconstruct(fam, dual_grid) - o));
  }
  rec.add(tag + "map_vs_direct_trace", scaled(route, magnitude), "kernel_identity");
  rec.add(tag + "reconstruction_roundtrip", roundtrip, "roundtrip");
  if (s.is_real()) rec.add(tag + "hermitian_maps_real", scaled(real_grid, magnitude), "kernel_identity");

  const Eigen::MatrixXcd weight = overlap_power(ctx, sv);
  report.conditioning.push_back(weight.cwiseAbs().maxCoeff());
}

void kernel_relation_suite(Recorder& rec, const SpaceContext& ctx, std::mt19937_64& rng) {
  const int n = ctx.dimension();
  const int ell = ctx.ell();
  const KernelFamily husimi_k(ctx, OrderParameter(-1.0));
  const KernelFamily wigner_k(ctx, OrderParameter(0.0));
  const KernelFamily p_k(ctx, OrderParameter(1.0));
  husimi_k.materialize_all();
  wigner_k.materialize_all();
  p_k.materialize_all();

  double fund = 0.0;
  for (int m = -ell; m <= ell; ++m) {
    for (int v = -ell; v <= ell; ++v) {
      const Ket c = coherent_state(ctx, m, v);
      fund = std::max(fund, max_abs(husimi_k(m, v) - c * c.adjoint()));
    }
  }
  rec.add("kernel.fund_coherent_projector", fund, "kernel_fund");

  const Eigen::MatrixXcd smoothing = smoothing_profile(ctx);
  const Eigen::MatrixXcd folding = folding_profile(ctx);
  auto convolve_ops = [&](const Eigen::MatrixXcd& profile, const KernelFamily& fam, int m, int v) {
    Operator acc = Operator::Zero(n, n);
    for (int sg = -ell; sg <= ell; ++sg) {
      for (int lm = -ell; lm <= ell; ++lm) {
        acc += profile(fold_label(m - sg, n) + ell, fold_label(v - lm, n) + ell) * fam(sg, lm);
      }
    }
    return Operator(acc / static_cast<double>(n));
  };
  double p_magnitude = 0.0;
  for (int m = -ell; m <= ell; ++m) {
    for (int v = -ell; v <= ell; ++v) p_magnitude = std::max(p_magnitude, max_abs(p_k(m, v)));
  }
  double hier1 = 0.0, hier2 = 0.0, inv1 = 0.0, inv2 = 0.0, fold3 = 0.0;
  for (int m = -ell; m <= ell; ++m) {
    for (int v = -ell; v <= ell; ++v) {
      hier1 = std::max(hier1, max_abs(husimi_k(m, v) - convolve_ops(smoothing, wigner_k, m, v)));
      hier2 = std::max(hier2, max_abs(wigner_k(m, v) - convolve_ops(smoothing, p_k, m, v)));
      inv1 = std::max(inv1, max_abs(wigner_k(m, v) - convolve_ops(folding, husimi_k, m, v)));
      inv2 = std::max(inv2, max_abs(p_k(m, v) - convolve_ops(folding, wigner_k, m, v)));
      Operator acc = Operator::Zero(n, n);
      for (int sg = -ell; sg <= ell; ++sg) {
        for (int lm = -ell; lm <= ell; ++lm) {
          acc += std::norm(overlap_closed(ctx, m, v, sg, lm)) * p_k(sg, lm);
        }
      }
      fold3 = std::max(fold3, max_abs(husimi_k(m, v) - acc / static_cast<double>(n)));
    }
  }
  rec.add("kernel.hierarchy_husimi_from_wigner", hier1, "hierarchy");
  rec.add("kernel.hierarchy_wigner_from_p", scaled(hier2, p_magnitude), "hierarchy");
  rec.add("kernel.anti_hierarchy_wigner_from_husimi", inv1, "anti_hierarchy");
  rec.add("kernel.anti_hierarchy_p_from_wigner", scaled(inv2, p_magnitude), "anti_hierarchy");
  rec.add("kernel.fold3_coherent_smoothing", scaled(fold3, p_magnitude), "fold3");

  double weight_route = 0.0;
  for (int m = -ell; m <= ell; ++m) {
    for (int v = -ell; v <= ell; ++v) {
      for (int sg = -ell; sg <= ell; ++sg) {
        for (int lm = -ell; lm <= ell; ++lm) {
          const Complex direct = trace_of_product(wigner_k(sg, lm), husimi_k(m, v));
          weight_route = std::max(weight_route, std::abs(direct - smoothing(fold_label(m - sg, n) + ell,
                                                                           fold_label(v - lm, n) + ell)));
        }
      }
    }
  }
  rec.add("kernel.smoothing_weight_vs_trace", weight_route, "hierarchy");

  double positivity = 0.0;
  double husimi_sum = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Operator rho = random_density(n, rng);
    const PhaseGrid h = map_operator(husimi_k, rho);
    positivity = std::max(positivity, std::max(0.0, -h.values.real().minCoeff()));
    husimi_sum = std::max(husimi_sum, std::abs(h.values.sum() / static_cast<double>(n) - 1.0));
  }
  rec.add("kernel.husimi_nonnegative", positivity, "husimi_positivity");
  rec.add("kernel.husimi_normalized", husimi_sum, "kernel_identity");
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerificationReport::to_json() const {
  nlohmann::json doc;
  doc["N"] = dimension;
  doc["passed"] = passed();
  doc["orders"] = nlohmann::json::array();
  for (std::size_t k = 0; k < orders.size(); ++k) {
    doc["orders"].push_back({{"s", {orders[k].real(), orders[k].imag()}},
                             {"max_abs_k_power", k < conditioning.size() ? conditioning[k] : 0.0}});
  }
  doc["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    doc["checks"].push_back(
        {{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"passed", c.passed}});
  }
  return doc.dump(2) + "\n";
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "verify N=" << dimension << "\n";
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << "  residual=" << io::format_double(c.residual)
        << "  tol=" << io::format_double(c.tolerance) << "\n";
  }
  for (std::size_t k = 0; k < orders.size() && k < conditioning.size(); ++k) {
    out << "conditioning s=" << order_name(orders[k]) << "  max|K^(-s)|=" << io::format_double(conditioning[k])
        << "\n";
  }
  out << (passed() ? "all checks passed" : "some checks FAILED") << "\n";
  return out.str();
}

VerificationReport run_verification(int n, const std::vector<Complex>& orders,
                                    const Tolerances& tolerances, unsigned seed) {
  if (n < 1 || n % 2 == 0 || n > kMaxVerifyDimension) {
    throw DomainError("verify needs odd N in [1, " + std::to_string(kMaxVerifyDimension) + "], got " +
                      std::to_string(n));
  }
  for (const Complex& s : orders) OrderParameter{s};

  VerificationReport report;
  report.dimension = n;
  report.orders = orders;
  Recorder rec(report, tolerances);
  std::mt19937_64 rng(seed);
  const SpaceContext ctx = make_space(n);

  theta_suite(rec, rng);
  schwinger_suite(rec, ctx, rng);
  coherent_suite(rec, ctx, rng);
  for (const Complex& s : orders) kernel_order_suite(rec, ctx, s, rng, report);
  kernel_relation_suite(rec, ctx, rng);
  return report;
}

}  // namespace dphase
