#include "staticgeo/report.hpp"

#include <cmath>
#include <utility>

namespace staticgeo {

InequalityReport make_report(std::string name, double lhs, double rhs, double slack,
                             double tol) {
  InequalityReport rep;
  rep.name = std::move(name);
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.slack = slack;
  rep.tol = tol;
  rep.satisfied = slack >= -tol;  // NaN slack fails
  return rep;
}

InequalityReport make_inequality(std::string name, double lhs, double rhs, double tol) {
  return make_report(std::move(name), lhs, rhs, lhs - rhs, tol);
}

InequalityReport make_identity(std::string name, double lhs, double rhs, double tol) {
  return make_report(std::move(name), lhs, rhs, -std::abs(lhs - rhs), tol);
}

}  // namespace staticgeo
