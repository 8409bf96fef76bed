#ifndef DPHASE_IO_HPP
#define DPHASE_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "dphase/kernel.hpp"
#include "dphase/types.hpp"

namespace dphase::io {

// JSON operator file:
//   {"dim": N, "entries": [[re, im], ...], "name": "...", "hermitian": true}
// entries are row-major over the u-basis labels -ell..ell.
struct OperatorFile {
  Operator op;
  std::string name;
  std::optional<bool> hermitian;
};

// JSON ket file: {"dim": N, "ket": [[re, im], ...], "name": "..."}
struct KetFile {
  Ket ket;
  std::string name;
};

// CSV grid file:
//   # N=<N> s=<re>,<im> dist=<label>
//   mu,nu,re,im
//   <N^2 rows, mu-major then nu>
struct GridFile {
  int n = 0;
  Complex s;
  std::string dist;
  Eigen::MatrixXcd values;  // (mu + ell, nu + ell)
};

std::string write_operator_json(const OperatorFile& file);
std::string write_ket_json(const KetFile& file);

// Parses either file kind. Throws ParseError on malformed input, wrong entry
// count or even N.
std::variant<OperatorFile, KetFile> parse_state_json(const std::string& text);
OperatorFile parse_operator_json(const std::string& text);

std::string write_grid_csv(const GridFile& grid);
GridFile parse_grid_csv(const std::string& text);

GridFile to_grid_file(const PhaseGrid& grid);

// Shortest round-trip decimal form of x.
std::string format_double(double x);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace dphase::io

#endif  // DPHASE_IO_HPP
