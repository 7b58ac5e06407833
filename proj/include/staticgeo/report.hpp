#pragma once

#include <map>
#include <string>

namespace staticgeo {

inline constexpr double kResidualTol = 1e-8;
inline constexpr double kEqualityTol = 1e-10;
inline constexpr double kMassTol = 1e-9;

// Oriented verdict: slack >= 0 means the inequality holds; identity checks
// use slack = -|lhs - rhs|. satisfied <=> slack >= -tol.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool satisfied = false;
  double tol = kEqualityTol;
  std::map<std::string, double> details;
};

InequalityReport make_inequality(std::string name, double lhs, double rhs, double tol);
InequalityReport make_identity(std::string name, double lhs, double rhs, double tol);
InequalityReport make_report(std::string name, double lhs, double rhs, double slack,
                             double tol);

}  // namespace staticgeo
