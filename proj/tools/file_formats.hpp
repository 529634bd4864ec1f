#ifndef QSL_TOOLS_FILE_FORMATS_HPP
#define QSL_TOOLS_FILE_FORMATS_HPP

// StateFile / DensityFile parsing. Field errors name the offending location
// (e.g. "levels[3].amplitude.re"); syntax errors carry the byte offset
// reported by the JSON parser.

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qslcli {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParsedState {
  double hbar = 1.0;
  std::optional<double> ground_energy;
  std::vector<double> energies;
  std::vector<double> amp_re;
  std::vector<double> amp_im;
};

struct ParsedDensity {
  double hbar = 1.0;
  std::optional<double> ground_energy;
  std::vector<double> energies;
  std::vector<double> entries_re;
  std::vector<double> entries_im;
};

inline nlohmann::json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline double require_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number())
    throw ParseError(where + ": expected a number, got " + std::string(j.type_name()));
  return j.get<double>();
}

inline double optional_number(const nlohmann::json& doc, const char* key,
                              double fallback) {
  if (!doc.contains(key)) return fallback;
  return require_number(doc.at(key), key);
}

inline std::pair<double, double> require_complex(const nlohmann::json& j,
                                                 const std::string& where) {
  if (!j.is_object())
    throw ParseError(where + ": expected an object with re/im");
  if (!j.contains("re")) throw ParseError(where + ".re: missing");
  if (!j.contains("im")) throw ParseError(where + ".im: missing");
  return {require_number(j.at("re"), where + ".re"),
          require_number(j.at("im"), where + ".im")};
}

inline ParsedState parse_state_file(const std::string& path) {
  const nlohmann::json doc = load_document(path);
  if (!doc.is_object()) throw ParseError(path + ": top level must be an object");

  ParsedState out;
  out.hbar = optional_number(doc, "hbar", 1.0);
  if (doc.contains("ground_energy"))
    out.ground_energy = require_number(doc.at("ground_energy"), "ground_energy");

  if (!doc.contains("levels")) throw ParseError("levels: missing");
  const nlohmann::json& levels = doc.at("levels");
  if (!levels.is_array() || levels.empty())
    throw ParseError("levels: expected a non-empty array");

  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::string where = "levels[" + std::to_string(i) + "]";
    const nlohmann::json& level = levels.at(i);
    if (!level.is_object()) throw ParseError(where + ": expected an object");
    if (!level.contains("energy")) throw ParseError(where + ".energy: missing");
    out.energies.push_back(require_number(level.at("energy"), where + ".energy"));
    if (!level.contains("amplitude")) throw ParseError(where + ".amplitude: missing");
    const auto [re, im] = require_complex(level.at("amplitude"), where + ".amplitude");
    out.amp_re.push_back(re);
    out.amp_im.push_back(im);
  }
  return out;
}

inline ParsedDensity parse_density_file(const std::string& path) {
  const nlohmann::json doc = load_document(path);
  if (!doc.is_object()) throw ParseError(path + ": top level must be an object");

  ParsedDensity out;
  out.hbar = optional_number(doc, "hbar", 1.0);
  if (doc.contains("ground_energy"))
    out.ground_energy = require_number(doc.at("ground_energy"), "ground_energy");

  if (!doc.contains("energies")) throw ParseError("energies: missing");
  const nlohmann::json& energies = doc.at("energies");
  if (!energies.is_array() || energies.empty())
    throw ParseError("energies: expected a non-empty array");
  for (std::size_t i = 0; i < energies.size(); ++i)
    out.energies.push_back(
        require_number(energies.at(i), "energies[" + std::to_string(i) + "]"));

  if (!doc.contains("matrix")) throw ParseError("matrix: missing");
  const nlohmann::json& matrix = doc.at("matrix");
  const std::size_t dim = out.energies.size();
  if (!matrix.is_array() || matrix.size() != dim * dim)
    throw ParseError("matrix: expected a row-major array of " +
                     std::to_string(dim * dim) + " entries");
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    const auto [re, im] =
        require_complex(matrix.at(i), "matrix[" + std::to_string(i) + "]");
    out.entries_re.push_back(re);
    out.entries_im.push_back(im);
  }
  return out;
}

}  // namespace qslcli

#endif
