#include "dphase/config.hpp"

#include <cstdlib>

#include <json.hpp>

#include "dphase/errors.hpp"
#include "dphase/io.hpp"

namespace dphase {

Tolerances::Tolerances()
    : values_{
          {"theta_identity", 1e-11},
          {"theta_jacobi", 1e-10},
          {"schwinger_unitarity", 1e-13},
          {"schwinger_order", 1e-12},
          {"schwinger_weyl", 1e-12},
          {"schwinger_orthonormality", 1e-12},
          {"schwinger_roundtrip", 1e-12},
          {"fourier_basis", 1e-13},
          {"vacuum", 1e-11},
          {"a_closed", 1e-10},
          {"overlap", 1e-10},
          {"resolution_identity", 1e-11},
          {"kernel_fund", 1e-10},
          {"kernel_identity", 1e-11},
          {"kernel_duality", 1e-10},
          {"roundtrip", 1e-9},
          {"hierarchy", 1e-10},
          {"anti_hierarchy", 1e-9},
          {"fold3", 1e-9},
          {"husimi_positivity", 1e-12},
      } {}

double Tolerances::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw DomainError("unknown tolerance key: " + key);
  return it->second;
}

void Tolerances::set(const std::string& key, double value) {
  if (!values_.contains(key)) throw DomainError("unknown tolerance key: " + key);
  if (!(value > 0.0)) throw DomainError("tolerance for " + key + " must be positive");
  values_[key] = value;
}

Tolerances Tolerances::from_json(const std::string& text) {
  Tolerances tol;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid config JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config must be a JSON object");
  if (!doc.contains("tolerances")) return tol;
  const auto& section = doc["tolerances"];
  if (!section.is_object()) throw ParseError("\"tolerances\" must be an object");
  for (const auto& [key, value] : section.items()) {
    if (!value.is_number()) throw ParseError("tolerance " + key + " must be a number");
    try {
      tol.set(key, value.get<double>());
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  }
  return tol;
}

Tolerances Tolerances::load(const std::optional<std::string>& path) {
  if (path) return from_json(io::read_text(*path));
  if (const char* env = std::getenv("DPHASE_CONFIG"); env != nullptr && *env != '\0') {
    return from_json(io::read_text(env));
  }
  return Tolerances{};
}

}  // namespace dphase
