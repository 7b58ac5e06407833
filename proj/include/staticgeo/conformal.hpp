#pragma once

#include "staticgeo/manifold.hpp"
#include "staticgeo/report.hpp"

namespace staticgeo {

// g_- = V^{4/(n-2)} g with potential 1/V, on the same radial coordinate.
struct ConformalPair {
  WarpedStaticMetric base;
  WarpedStaticMetric flipped;
};

// Radii at which positivity of V is probed before flipping.
std::vector<double> probe_radii(const WarpedStaticMetric& g, int count = 50);

ConformalPair conformal_flip(const WarpedStaticMetric& g);

InequalityReport mass_flip_check(const ConformalPair& pair, double r_eval,
                                 double tol = kMassTol);

double mean_curvature_flip(const WarpedStaticMetric& g, double r);

InequalityReport vh_identity_check(const ConformalPair& pair, double r,
                                   double tol = kEqualityTol);

InequalityReport conformal_minkowski_check(const WarpedStaticMetric& g, double r,
                                           double tol = kEqualityTol);

// Residuals of Ric_0 = ((n-1)/(n-2)) dU (x) dU and Delta_0 U = 0 for
// g_0 = V^{2/(n-2)} g, U = ln V.
struct ConformalResidual {
  double radial = 0.0;
  double spherical = 0.0;
  double harmonic = 0.0;

  double max_abs() const;
};

ConformalResidual conformal_ricci_residual(const WarpedStaticMetric& g, double r);

// Heuristic only: smallest H over sampled coordinate spheres in [r, R_max],
// for g and for g_-. Positive slack means the foliation is mean-convex.
InequalityReport outer_minimizing_proxy(const WarpedStaticMetric& g, double r, double R_max,
                                        int samples = 400, double tol = 0.0);

}  // namespace staticgeo
