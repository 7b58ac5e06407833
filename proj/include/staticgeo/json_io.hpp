#pragma once

#include <string>

#include <json.hpp>

#include "staticgeo/manifold.hpp"
#include "staticgeo/quantities.hpp"
#include "staticgeo/report.hpp"
#include "staticgeo/surfaces.hpp"

namespace staticgeo {

// {"n": int, "r": [...], "a": [...], "b": [...], "V": [...]}, r strictly increasing.
WarpedStaticMetric metric_from_json(const nlohmann::json& doc, std::string label);
WarpedStaticMetric load_metric_file(const std::string& path);

// {"type": "legendre", "r0": real, "coeffs": {"l": eps_l}} or
// {"type": "table", "theta": [...], "rho": [...]}.
Profile profile_from_json(const nlohmann::json& doc);
Profile load_profile_file(const std::string& path);

nlohmann::json to_json(const InequalityReport& rep);
nlohmann::json to_json(const SphereReport& s);
nlohmann::json to_json(const SurfaceReport& s);

}  // namespace staticgeo
