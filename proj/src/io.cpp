#include "dphase/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "dphase/errors.hpp"

namespace dphase::io {

using nlohmann::json;

namespace {

json complex_array(const Complex* data, Eigen::Index count) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < count; ++i) arr.push_back({data[i].real(), data[i].imag()});
  return arr;
}

int checked_dimension(const json& doc) {
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw ParseError("missing integer field \"dim\"");
  }
  const long long n = doc["dim"].get<long long>();
  if (n < 1 || n % 2 == 0 || n > 100000) {
    throw ParseError("\"dim\" must be odd and positive, got " + std::to_string(n));
  }
  return static_cast<int>(n);
}

Complex parse_complex(const json& pair) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
    throw ParseError("complex entries must be [re, im] number pairs");
  }
  return {pair[0].get<double>(), pair[1].get<double>()};
}

std::vector<Complex> parse_entries(const json& doc, const char* field, std::size_t expected) {
  if (!doc.contains(field) || !doc[field].is_array()) {
    throw ParseError(std::string("missing array field \"") + field + "\"");
  }
  const json& arr = doc[field];
  if (arr.size() != expected) {
    throw ParseError(std::string("\"") + field + "\" has " + std::to_string(arr.size()) +
                     " entries, expected " + std::to_string(expected));
  }
  std::vector<Complex> out;
  out.reserve(expected);
  for (const auto& item : arr) out.push_back(parse_complex(item));
  return out;
}

json parse_document(const std::string& text) {
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw ParseError("top-level JSON value must be an object");
    return doc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

OperatorFile operator_from(const json& doc) {
  const int n = checked_dimension(doc);
  const auto entries = parse_entries(doc, "entries", static_cast<std::size_t>(n) * n);
  OperatorFile file;
  file.op.resize(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) file.op(r, c) = entries[static_cast<std::size_t>(r) * n + c];
  }
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("\"name\" must be a string");
    file.name = doc["name"].get<std::string>();
  }
  if (doc.contains("hermitian")) {
    if (!doc["hermitian"].is_boolean()) throw ParseError("\"hermitian\" must be a boolean");
    file.hermitian = doc["hermitian"].get<bool>();
  }
  return file;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view s, const char* what) {
  s = trim(s);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(std::string("cannot parse ") + what + " from \"" + std::string(s) + "\"");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string write_operator_json(const OperatorFile& file) {
  const int n = static_cast<int>(file.op.rows());
  // Row-major copy so entries run along rows.
  const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = file.op;
  json doc;
  doc["dim"] = n;
  doc["entries"] = complex_array(rows.data(), rows.size());
  if (!file.name.empty()) doc["name"] = file.name;
  if (file.hermitian) doc["hermitian"] = *file.hermitian;
  return doc.dump() + "\n";
}

std::string write_ket_json(const KetFile& file) {
  json doc;
  doc["dim"] = static_cast<int>(file.ket.size());
  doc["ket"] = complex_array(file.ket.data(), file.ket.size());
  if (!file.name.empty()) doc["name"] = file.name;
  return doc.dump() + "\n";
}

std::variant<OperatorFile, KetFile> parse_state_json(const std::string& text) {
  const json doc = parse_document(text);
  if (doc.contains("ket")) {
    const int n = checked_dimension(doc);
    const auto entries = parse_entries(doc, "ket", static_cast<std::size_t>(n));
    KetFile file;
    file.ket = Eigen::Map<const Ket>(entries.data(), n);
    if (doc.contains("name") && doc["name"].is_string()) file.name = doc["name"].get<std::string>();
    return file;
  }
  return operator_from(doc);
}

OperatorFile parse_operator_json(const std::string& text) { return operator_from(parse_document(text)); }

GridFile to_grid_file(const PhaseGrid& grid) {
  return GridFile{grid.dimension, grid.s.value(), grid.label, grid.values};
}

std::string write_grid_csv(const GridFile& grid) {
  const int n = grid.n;
  const int ell = (n - 1) / 2;
  std::string out = "# N=" + std::to_string(n) + " s=" + format_double(grid.s.real()) + "," +
                    format_double(grid.s.imag()) + " dist=" + grid.dist + "\n";
  out += "mu,nu,re,im\n";
  for (int m = 0; m < n; ++m) {
    for (int v = 0; v < n; ++v) {
      const Complex z = grid.values(m, v);
      out += std::to_string(m - ell) + "," + std::to_string(v - ell) + "," +
             format_double(z.real()) + "," + format_double(z.imag()) + "\n";
    }
  }
  return out;
}

GridFile parse_grid_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  GridFile grid;
  bool have_header = false;
  std::vector<bool> seen;
  std::size_t rows = 0;
  int ell = 0;
  while (std::getline(in, line)) {
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (!have_header) {
      if (view.front() != '#') throw ParseError("grid file must start with a '# N=... s=... dist=...' line");
      bool got_n = false;
      bool got_s = false;
      for (auto token : split(view.substr(1), ' ')) {
        token = trim(token);
        if (token.starts_with("N=")) {
          grid.n = parse_number<int>(token.substr(2), "N");
          got_n = true;
        } else if (token.starts_with("s=")) {
          const auto parts = split(token.substr(2), ',');
          if (parts.size() != 2) throw ParseError("s must be written as <re>,<im>");
          grid.s = {parse_number<double>(parts[0], "Re s"), parse_number<double>(parts[1], "Im s")};
          got_s = true;
        } else if (token.starts_with("dist=")) {
          grid.dist = std::string(token.substr(5));
        }
      }
      if (!got_n || !got_s) throw ParseError("grid header needs N= and s= fields");
      if (grid.n < 1 || grid.n % 2 == 0) throw ParseError("grid N must be odd and positive");
      ell = (grid.n - 1) / 2;
      grid.values = Eigen::MatrixXcd::Zero(grid.n, grid.n);
      seen.assign(static_cast<std::size_t>(grid.n) * grid.n, false);
      have_header = true;
      continue;
    }
    if (view.front() == '#' || view.starts_with("mu")) continue;
    const auto fields = split(view, ',');
    if (fields.size() != 4) throw ParseError("grid rows need 4 fields: mu,nu,re,im");
    const int mu = parse_number<int>(fields[0], "mu");
    const int nu = parse_number<int>(fields[1], "nu");
    if (mu < -ell || mu > ell || nu < -ell || nu > ell) {
      throw ParseError("grid label (" + std::to_string(mu) + ", " + std::to_string(nu) +
                       ") outside [-ell, ell]");
    }
    const std::size_t slot = static_cast<std::size_t>(mu + ell) * grid.n + (nu + ell);
    if (seen[slot]) throw ParseError("duplicate grid point (" + std::to_string(mu) + ", " + std::to_string(nu) + ")");
    seen[slot] = true;
    grid.values(mu + ell, nu + ell) = {parse_number<double>(fields[2], "re"),
                                       parse_number<double>(fields[3], "im")};
    ++rows;
  }
  if (!have_header) throw ParseError("empty grid file");
  if (rows != static_cast<std::size_t>(grid.n) * grid.n) {
    throw ParseError("grid has " + std::to_string(rows) + " rows, expected " +
                     std::to_string(grid.n * grid.n));
  }
  return grid;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

}  // namespace dphase::io
