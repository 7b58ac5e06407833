#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace staticgeo::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kViolated = 1, kBadConfig = 2 };

struct SuiteConfig {
  std::string metric = "schwarzschild";
  std::vector<int> n;
  std::vector<double> m;
  std::vector<double> radii;      // empty: default ladder per metric
  int ladder_count = 20;
  int random_radii = 0;           // extra log-uniform radii drawn from seed
  std::uint64_t seed = 0;
  std::vector<std::string> checks;
  double tol = 0.0;               // 0: per-check defaults
  std::string out;                // empty: stdout
  std::string plot_data;          // CSV path, optional

  nlohmann::json to_json() const;
};

// Throws ConfigError on anything malformed.
SuiteConfig suite_from_json(const nlohmann::json& doc);
void validate(const SuiteConfig& cfg);

std::vector<std::string> known_checks();

// 64-bit FNV-1a of the canonical JSON dump.
std::uint64_t fnv1a64(const std::string& bytes);

// Full command line, argv[0] excluded. Records go to `out` unless --out is set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace staticgeo::cli
