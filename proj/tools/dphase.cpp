// dphase: command-line front end for discrete phase-space mappings.
//
// Exit codes: 0 success, 1 failed check or numerical failure, 2 usage or
// parse error, 3 semantic validation error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "dphase/coherent.hpp"
#include "dphase/config.hpp"
#include "dphase/continuum.hpp"
#include "dphase/errors.hpp"
#include "dphase/io.hpp"
#include "dphase/kernel.hpp"
#include "dphase/random.hpp"
#include "dphase/space.hpp"
#include "dphase/verify.hpp"

namespace {

using namespace dphase;

enum Exit : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kInvalid = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::optional<std::string>& out, const std::string& text) {
  if (out) {
    io::write_text(*out, text);
  } else {
    std::cout << text;
  }
}

void require_odd(int n) {
  if (n < 1 || n % 2 == 0) throw UsageError("--n must be a positive odd integer, got " + std::to_string(n));
}

std::pair<long long, long long> parse_labels(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--labels expects \"mu,nu\"");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    const long long mu = std::stoll(a, &used_a);
    const long long nu = std::stoll(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument("trailing");
    return {mu, nu};
  } catch (const std::logic_error&) {
    throw UsageError("--labels expects two integers \"mu,nu\", got \"" + text + "\"");
  }
}

// "re,im", a single real number, or one of wigner/husimi/p.
struct OrderArg {
  Complex value;
  bool alias = false;
};

OrderArg parse_order(const std::string& text) {
  if (text == "wigner") return {Complex(0.0, 0.0), true};
  if (text == "husimi") return {Complex(-1.0, 0.0), true};
  if (text == "p") return {Complex(1.0, 0.0), true};
  try {
    const auto comma = text.find(',');
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing");
      return {Complex(re, 0.0), false};
    }
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    std::size_t used_b = 0;
    const double re = std::stod(a, &used);
    const double im = std::stod(b, &used_b);
    if (used != a.size() || used_b != b.size()) throw std::invalid_argument("trailing");
    return {Complex(re, im), false};
  } catch (const std::logic_error&) {
    throw UsageError("--s expects \"re,im\", a real number, or wigner|husimi|p; got \"" + text + "\"");
  }
}

OrderParameter to_order(Complex s) {
  try {
    return OrderParameter(s);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

// gen ------------------------------------------------------------------------

struct GenOptions {
  std::string kind;
  int n = 0;
  std::optional<std::string> labels;
  std::optional<unsigned long long> seed;
  bool projector = false;
  std::optional<std::string> out;
};

int run_gen(const GenOptions& opt) {
  require_odd(opt.n);
  const SpaceContext ctx = make_space(opt.n);
  auto need_labels = [&] {
    if (!opt.labels) throw UsageError("gen " + opt.kind + " requires --labels \"mu,nu\"");
    return parse_labels(*opt.labels);
  };

  std::optional<Ket> ket;
  std::optional<Operator> op;
  std::string name = opt.kind;
  if (opt.kind == "basis-u") {
    const auto [mu, nu] = need_labels();
    (void)nu;
    ket = ctx.u_basis(mu);
    name = "u_" + std::to_string(fold_label(mu, opt.n));
  } else if (opt.kind == "basis-v") {
    const auto [mu, nu] = need_labels();
    (void)nu;
    ket = ctx.v_basis(mu);
    name = "v_" + std::to_string(fold_label(mu, opt.n));
  } else if (opt.kind == "coherent") {
    const auto [mu, nu] = need_labels();
    ket = coherent_state(ctx, mu, nu);
    name = "coherent(" + std::to_string(fold_label(mu, opt.n)) + "," + std::to_string(fold_label(nu, opt.n)) + ")";
  } else if (opt.kind == "vacuum") {
    ket = ctx.vacuum();
  } else if (opt.kind == "random-density") {
    if (!opt.seed) throw UsageError("gen random-density requires --seed");
    std::mt19937_64 rng(*opt.seed);
    op = random_density(opt.n, rng);
    name = "random-density(seed=" + std::to_string(*opt.seed) + ")";
  } else if (opt.kind == "maxmixed") {
    op = Operator::Identity(opt.n, opt.n) / static_cast<double>(opt.n);
  } else {
    throw UsageError("unknown kind \"" + opt.kind +
                     "\" (basis-u, basis-v, coherent, vacuum, random-density, maxmixed)");
  }

  if (ket && opt.projector) {
    op = *ket * ket->adjoint();
    ket.reset();
  }
  if (ket) {
    emit(opt.out, io::write_ket_json({*ket, name}));
  } else {
    emit(opt.out, io::write_operator_json({*op, name, true}));
  }
  return kOk;
}

// map ------------------------------------------------------------------------

struct MapOptions {
  std::string input;
  std::string s = "wigner";
  std::optional<std::string> out;
};

Operator load_operator(const std::string& path) {
  const auto parsed = io::parse_state_json(io::read_text(path));
  if (const auto* k = std::get_if<io::KetFile>(&parsed)) return k->ket * k->ket.adjoint();
  return std::get<io::OperatorFile>(parsed).op;
}

int run_map(const MapOptions& opt) {
  const OrderArg order = parse_order(opt.s);
  const OrderParameter s = to_order(order.value);
  const Operator op = load_operator(opt.input);
  const int n = static_cast<int>(op.rows());
  const SpaceContext ctx = make_space(n);
  if (order.alias) {
    const double asym = (op - op.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-10) {
      throw ValidationError("distribution aliases need a Hermitian operator (max |O - O^dagger| = " +
                            io::format_double(asym) + ")");
    }
  }
  const PhaseGrid grid = map_operator(ctx, op, s);
  emit(opt.out, io::write_grid_csv(io::to_grid_file(grid)));
  return kOk;
}

// reconstruct ------------------------------------------------------------------

struct ReconstructOptions {
  std::string input;
  std::optional<std::string> s;
  std::optional<int> n;
  std::optional<std::string> out;
};

int run_reconstruct(const ReconstructOptions& opt) {
  const io::GridFile file = io::parse_grid_csv(io::read_text(opt.input));
  if (opt.n && *opt.n != file.n) {
    throw ValidationError("grid has N=" + std::to_string(file.n) + " but --n " + std::to_string(*opt.n) +
                          " was requested");
  }
  const OrderParameter s = to_order(opt.s ? parse_order(*opt.s).value : -file.s);
  const SpaceContext ctx = make_space(file.n);

  PhaseGrid grid;
  grid.dimension = file.n;
  grid.s = to_order(file.s);
  grid.label = file.dist;
  grid.values = file.values;

  const Operator op = reconstruct(ctx, grid, s);
  const PhaseGrid again = map_operator(ctx, op, -s);
  const double err = (again.values - grid.values).cwiseAbs().maxCoeff();
  std::cerr << "round-trip max error: " << io::format_double(err) << "\n";
  if (s.value() != -file.s) {
    std::cerr << "note: reconstruction order is not dual to the grid order; the operator differs from the source\n";
  }
  emit(opt.out, io::write_operator_json({op, "reconstructed", std::nullopt}));
  return kOk;
}

// verify -----------------------------------------------------------------------

struct VerifyOptions {
  int n = 0;
  std::vector<std::string> s;
  std::optional<std::string> config;
  unsigned seed = 2024;
  bool json = false;
  std::optional<std::string> out;
};

int run_verify(const VerifyOptions& opt) {
  require_odd(opt.n);
  if (opt.n > kMaxVerifyDimension) {
    throw UsageError("verify runs O(N^4) suites; --n must be at most " + std::to_string(kMaxVerifyDimension));
  }
  std::vector<Complex> orders;
  for (const auto& text : opt.s) orders.push_back(to_order(parse_order(text).value).value());
  if (orders.empty()) orders = {Complex(-1.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0)};
  const Tolerances tol = Tolerances::load(opt.config);
  const VerificationReport report = run_verification(opt.n, orders, tol, opt.seed);
  emit(opt.out, opt.json ? report.to_json() : report.to_text());
  return report.passed() ? kOk : kCheckFailed;
}

// converge ---------------------------------------------------------------------

struct ConvergeOptions {
  std::vector<int> ns;
  double window = 2.0;
  std::optional<std::string> out;
};

int run_converge(const ConvergeOptions& opt) {
  for (int n : opt.ns) require_odd(n);
  for (std::size_t k = 1; k < opt.ns.size(); ++k) {
    if (opt.ns[k] <= opt.ns[k - 1]) throw UsageError("--n values must be strictly ascending");
  }
  const ConvergenceReport report = convergence_sweep(opt.ns, opt.window);
  std::string csv = "N,epsilon,max_error\n";
  for (const auto& row : report.rows) {
    csv += std::to_string(row.n) + "," + io::format_double(row.epsilon) + "," + io::format_double(row.max_error) +
           "\n";
  }
  emit(opt.out, csv);
  if (!report.non_increasing) std::cerr << "warning: error does not decrease monotonically along N\n";
  return kOk;
}

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    std::cerr << "dphase: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "dphase: parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "dphase: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "dphase: validation error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "dphase: " << e.what() << "\n";
    return kCheckFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete s-ordered phase-space mappings on odd-dimensional state spaces"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a ket or operator file");
  gen_cmd->add_option("kind", gen.kind, "basis-u | basis-v | coherent | vacuum | random-density | maxmixed")
      ->required();
  gen_cmd->add_option("--n", gen.n, "Odd dimension N")->required();
  gen_cmd->add_option("--labels", gen.labels, "Labels \"mu,nu\" (basis kinds use mu)");
  gen_cmd->add_option("--seed", gen.seed, "Seed for random-density");
  gen_cmd->add_flag("--projector", gen.projector, "Write |psi><psi| instead of the ket");
  gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");

  MapOptions map;
  auto* map_cmd = app.add_subcommand("map", "Map an operator or ket file to a phase-space grid");
  map_cmd->add_option("input", map.input, "Operator or ket JSON file")->required();
  map_cmd->add_option("--s", map.s, "Order parameter \"re,im\" or wigner|husimi|p")->capture_default_str();
  map_cmd->add_option("--out", map.out, "Output CSV path (default stdout)");

  ReconstructOptions rec;
  auto* rec_cmd = app.add_subcommand("reconstruct", "Rebuild an operator from a grid file");
  rec_cmd->add_option("input", rec.input, "Grid CSV file")->required();
  rec_cmd->add_option("--s", rec.s, "Kernel order (default: minus the grid order)");
  rec_cmd->add_option("--n", rec.n, "Expected dimension");
  rec_cmd->add_option("--out", rec.out, "Output JSON path (default stdout)");

  VerifyOptions ver;
  auto* ver_cmd = app.add_subcommand("verify", "Run the identity suites at dimension N");
  ver_cmd->add_option("--n", ver.n, "Odd dimension N <= 21")->required();
  ver_cmd->add_option("--s", ver.s, "Order parameter, repeatable (default -1, 0, 1)");
  ver_cmd->add_option("--config", ver.config, "Tolerance override JSON");
  ver_cmd->add_option("--seed", ver.seed, "Seed for random draws")->capture_default_str();
  ver_cmd->add_flag("--json", ver.json, "Emit a JSON report");
  ver_cmd->add_option("--out", ver.out, "Output path (default stdout)");

  ConvergeOptions conv;
  auto* conv_cmd = app.add_subcommand("converge", "Overlap convergence towards the Gaussian limit");
  conv_cmd->add_option("--n", conv.ns, "Odd dimensions, ascending")->required()->delimiter(',');
  conv_cmd->add_option("--window", conv.window, "Half-width of the scaled window")->capture_default_str();
  conv_cmd->add_option("--out", conv.out, "Output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*gen_cmd) return guarded([&] { return run_gen(gen); });
  if (*map_cmd) return guarded([&] { return run_map(map); });
  if (*rec_cmd) return guarded([&] { return run_reconstruct(rec); });
  if (*ver_cmd) return guarded([&] { return run_verify(ver); });
  return guarded([&] { return run_converge(conv); });
}
