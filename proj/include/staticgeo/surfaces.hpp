#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "staticgeo/manifold.hpp"
#include "staticgeo/report.hpp"

namespace staticgeo {

// theta -> (rho, rho', rho'') on [0, pi].
struct Profile {
  std::function<Jet(const Jet&)> eval;
  std::string description;

  Jet operator()(double theta) const { return eval(Jet::variable(theta)); }
};

Profile constant_profile(double r0);

// rho = r0 (1 + sum_l eps_l P_l(cos theta)).
Profile legendre_profile(double r0, const std::map<int, double>& coeffs);

// Periodic cubic spline through the even reflection of (theta, rho) onto
// [-pi, pi]; theta must run strictly increasing from 0 to pi.
Profile table_profile(const std::vector<double>& theta, const std::vector<double>& rho);

// Round sphere of radius R centred a distance d along the axis, in the flat chart.
Profile off_center_sphere_profile(double d, double R);

inline constexpr int kDefaultSurfaceNodes = 128;

struct AxiSurface {
  WarpedStaticMetric metric;
  Profile rho;
  int nodes = kDefaultSurfaceNodes;
};

// Validates n = 3, rho > r_min and rho'(0) = rho'(pi) = 0.
AxiSurface make_surface(WarpedStaticMetric metric, Profile rho, int nodes = kDefaultSurfaceNodes);

struct InducedGeometry {
  double sigma_tt = 0.0;
  double sigma_pp = 0.0;
  double area_element = 0.0;  // density against dtheta dphi
  double H = 0.0;
  double dV_dnu = 0.0;
  double V = 0.0;
};

InducedGeometry induced_geometry(const AxiSurface& s, double theta);

// Gauss-Legendre nodes in x = cos(theta) on [-1, 1].
std::vector<std::pair<double, double>> gauss_legendre_rule(int nodes);

// int f dsigma over the surface, f given pointwise from the induced geometry.
double surface_integral(const AxiSurface& s,
                        const std::function<double(const InducedGeometry&)>& f,
                        int nodes);

struct SurfaceReport {
  double area = 0.0;
  double int_H = 0.0;
  double int_H2 = 0.0;
  double int_VH = 0.0;
  double m_hawking = 0.0;
  double q_value = 0.0;
  double min_H = 0.0;
  double min_H_flipped = 0.0;
  double resolution_change = 0.0;  // max change of the integrals under node doubling
};

inline constexpr double kResolutionTol = 1e-6;

// Throws ResolutionError if doubling the nodes moves any integral by more than 1e-6.
SurfaceReport surface_report(const AxiSurface& s);

InequalityReport hawking_vs_q(const AxiSurface& s, double tol = kEqualityTol);

// First: int V^2 <= |S|^{1/2} (int V^4)^{1/2} <= (1/2)(|S|/w)^{1/2} int VH.
// Second: (|S|/w)^{-1/2} int VH <= (|S|/w)^{-1/2} (int V^2)^{1/2} (int H^2)^{1/2}
//         <= (1/2) int H^2.
std::pair<InequalityReport, InequalityReport> holder_chain_check(const AxiSurface& s,
                                                                 double tol = kEqualityTol);

}  // namespace staticgeo
