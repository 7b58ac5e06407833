#include "staticgeo/json_io.hpp"

#include <cmath>
#include <fstream>

namespace staticgeo {

using nlohmann::json;

namespace {

std::vector<double> numeric_array(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    throw ConfigError(std::string("missing numeric array '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& v : doc.at(key)) {
    if (!v.is_number()) throw ConfigError(std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

// Non-finite doubles have no JSON literal; emit null.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

WarpedStaticMetric metric_from_json(const json& doc, std::string label) {
  if (!doc.is_object() || !doc.contains("n") || !doc.at("n").is_number_integer()) {
    throw ConfigError("metric table: integer field 'n' required");
  }
  const Dim n(doc.at("n").get<int>());
  auto r = numeric_array(doc, "r");
  auto a = numeric_array(doc, "a");
  auto b = numeric_array(doc, "b");
  auto V = numeric_array(doc, "V");
  if (a.size() != r.size() || b.size() != r.size() || V.size() != r.size()) {
    throw ConfigError("metric table: arrays r, a, b, V must have equal length");
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(a[i] > 0.0 && b[i] > 0.0 && V[i] > 0.0)) {
      throw ConfigError("metric table: a, b, V must be positive");
    }
  }
  WarpedStaticMetric g;
  g.dim = n;
  g.r_min = r.front();
  g.r_max = r.back();
  g.a = RadialFn::tabulated(r, std::move(a));
  g.b = RadialFn::tabulated(r, std::move(b));
  g.V = RadialFn::tabulated(std::move(r), std::move(V));
  g.label = std::move(label);
  return g;
}

WarpedStaticMetric load_metric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open metric file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("metric file '" + path + "': " + e.what());
  }
  try {
    return metric_from_json(doc, "file:" + path);
  } catch (const ParameterError& e) {
    throw ConfigError("metric file '" + path + "': " + e.what());
  }
}

Profile profile_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("type") || !doc.at("type").is_string()) {
    throw ConfigError("surface profile: string field 'type' required");
  }
  const std::string type = doc.at("type").get<std::string>();
  try {
    if (type == "legendre") {
      if (!doc.contains("r0") || !doc.at("r0").is_number()) {
        throw ConfigError("legendre profile: numeric 'r0' required");
      }
      std::map<int, double> coeffs;
      if (doc.contains("coeffs")) {
        if (!doc.at("coeffs").is_object()) throw ConfigError("legendre profile: 'coeffs' must be an object");
        for (const auto& [key, val] : doc.at("coeffs").items()) {
          std::size_t used = 0;
          int l = -1;
          try {
            l = std::stoi(key, &used);
          } catch (const std::exception&) {
            used = 0;
          }
          if (used != key.size() || !val.is_number()) {
            throw ConfigError("legendre profile: coefficient keys must be integers, values numbers");
          }
          coeffs[l] = val.get<double>();
        }
      }
      return legendre_profile(doc.at("r0").get<double>(), coeffs);
    }
    if (type == "table") {
      return table_profile(numeric_array(doc, "theta"), numeric_array(doc, "rho"));
    }
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("surface profile: ") + e.what());
  }
  throw ConfigError("surface profile: unknown type '" + type + "'");
}

Profile load_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profile file '" + path + "'");
  try {
    return profile_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw ConfigError("profile file '" + path + "': " + e.what());
  }
}

json to_json(const InequalityReport& rep) {
  json details = json::object();
  for (const auto& [k, v] : rep.details) details[k] = number(v);
  return {{"name", rep.name},        {"lhs", number(rep.lhs)}, {"rhs", number(rep.rhs)},
          {"slack", number(rep.slack)}, {"satisfied", rep.satisfied}, {"tol", rep.tol},
          {"details", details}};
}

json to_json(const SphereReport& s) {
  json j = {{"r", s.r},   {"area", s.area},     {"r0", s.r0}, {"H", s.H},
            {"V0", s.V0}, {"dV_dnu", s.dV_dnu}, {"m0", s.m0}};
  if (s.hawking) j["hawking"] = *s.hawking;
  if (s.q) j["q"] = *s.q;
  return j;
}

json to_json(const SurfaceReport& s) {
  return {{"area", s.area},
          {"int_H", s.int_H},
          {"int_H2", s.int_H2},
          {"int_VH", s.int_VH},
          {"m_hawking", s.m_hawking},
          {"q_value", s.q_value},
          {"min_H", s.min_H},
          {"min_H_flipped", s.min_H_flipped},
          {"resolution_change", s.resolution_change}};
}

}  // namespace staticgeo
