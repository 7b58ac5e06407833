#pragma once

#include <optional>

#include "staticgeo/manifold.hpp"
#include "staticgeo/report.hpp"

namespace staticgeo {

// Geometry of the coordinate sphere {r} in a warped static metric.
struct SphereReport {
  double r = 0.0;
  double area = 0.0;
  double r0 = 0.0;
  double H = 0.0;
  double V0 = 0.0;
  double dV_dnu = 0.0;
  double m0 = 0.0;
  std::optional<double> hawking;  // n = 3 only
  std::optional<double> q;        // n = 3 only
};

SphereReport sphere_geometry(const WarpedStaticMetric& g, double r);

// Mass of the Schwarzschild sphere sharing (r0, H0).
double m0_of(Dim n, double r0, double H0);

InequalityReport minkowski_check(const WarpedStaticMetric& g, double r, double m,
                                 double tol = kEqualityTol);
InequalityReport levelset_minkowski_check(const WarpedStaticMetric& g, double r,
                                          double tol = kEqualityTol);
InequalityReport willmore_check(const WarpedStaticMetric& g, double r,
                                double tol = kEqualityTol);

// Scale-invariant total scalar curvature of the round sphere r0^2 sigma_std.
double yamabe_energy(Dim n, double r0);

double codazzi_beta(const WarpedStaticMetric& g, double r);

// adm_mass(g, r) against (n-1) V0 m0 / (H0 r0).
InequalityReport bartnik_mass_identity_check(const WarpedStaticMetric& g, double r,
                                             double tol = kEqualityTol);

}  // namespace staticgeo
