#ifndef DPHASE_CONFIG_HPP
#define DPHASE_CONFIG_HPP

#include <map>
#include <optional>
#include <string>

namespace dphase {

// Verification tolerances, keyed by check family. Defaults are the module
// tolerances; a JSON file {"tolerances": {"<key>": <value>, ...}} overrides
// individual keys.
class Tolerances {
 public:
  Tolerances();

  double get(const std::string& key) const;
  void set(const std::string& key, double value);
  const std::map<std::string, double>& all() const { return values_; }

  // Throws ParseError on malformed JSON or an unknown key.
  static Tolerances from_json(const std::string& text);
  // Explicit path wins over the DPHASE_CONFIG environment variable; with
  // neither, the defaults are returned.
  static Tolerances load(const std::optional<std::string>& path);

 private:
  std::map<std::string, double> values_;
};

}  // namespace dphase

#endif  // DPHASE_CONFIG_HPP
