#pragma once

// Fan files and divisor vectors.
//
// Fan file (JSON): {"name": "...", "dim": 2, "rays": [[1,0],[0,1],[-1,-1]],
// "max_cones": [[0,1],[1,2],[0,2]]}.  Ray indices are 0-based.
// Divisors: comma-separated coefficients aligned to the rays, each an
// integer or a fraction a/b, e.g. "0,0,2,1" or "1/2,0,-1".

#include <json.hpp>
#include <sstream>

#include "ftest/toric/fan.hpp"

namespace ftest::toric {

inline nlohmann::json fan_to_json(const Fan& X) {
  nlohmann::json j;
  if (!X.name().empty()) j["name"] = X.name();
  j["dim"] = X.dim();
  j["rays"] = X.rays();
  j["max_cones"] = X.max_cones();
  return j;
}

inline std::string print_fan(const Fan& X) { return fan_to_json(X).dump(); }

inline Fan parse_fan(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("fan file: ") + e.what(), e.byte);
  }
  try {
    if (!j.is_object()) throw ParseError("fan file must be a JSON object", 0);
    for (const char* key : {"dim", "rays", "max_cones"})
      if (!j.contains(key)) throw ParseError(std::string("fan file lacks '") + key + "'", 0);
    const auto dim = j.at("dim").get<std::size_t>();
    auto rays = j.at("rays").get<std::vector<Vec>>();
    auto cones = j.at("max_cones").get<std::vector<std::vector<std::size_t>>>();
    std::string name = j.contains("name") ? j.at("name").get<std::string>() : std::string();
    return build_fan(dim, std::move(rays), std::move(cones), std::move(name));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("fan file: ") + e.what(), 0);
  }
}

// "builtin:<name>" or a JSON fan description.
inline Fan resolve_fan(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) return builtin_fan(spec.substr(prefix.size()));
  return parse_fan(spec);
}

inline std::string print_divisor(const Divisor& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + to_string(d[i]);
  return s;
}

inline Divisor parse_divisor(const std::string& text) {
  Divisor d;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) d.push_back(parse_rational(item));
  if (d.empty()) throw ParseError("empty divisor", 0);
  return d;
}

inline nlohmann::json divisor_to_json(const Divisor& d) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : d) j.push_back(to_string(c));
  return j;
}

}  // namespace ftest::toric
