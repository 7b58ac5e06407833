#include "staticgeo/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "staticgeo/quantities.hpp"

namespace staticgeo {

std::vector<double> probe_radii(const WarpedStaticMetric& g, int count) {
  if (std::isfinite(g.r_max)) {
    std::vector<double> radii;
    for (int k = 1; k <= count; ++k) {
      radii.push_back(g.r_min + (g.r_max - g.r_min) * k / count);
    }
    return radii;
  }
  auto radii = default_radius_ladder(g.r_min, count);
  for (double far : {10.0, 100.0, 1000.0}) {
    if (far > g.r_min) radii.push_back(far);
  }
  return radii;
}

ConformalPair conformal_flip(const WarpedStaticMetric& g) {
  for (double r : probe_radii(g)) {
    const double v = g.V.value(r);
    if (!(v > 0.0)) {
      std::ostringstream msg;
      msg << "conformal_flip: V=" << v << " <= 0 at r=" << r << " in '" << g.label << "'";
      throw DomainError(msg.str());
    }
  }
  const double n = g.dim.real();
  const double pa = 4.0 / (n - 2.0);
  const double pb = 2.0 / (n - 2.0);
  const RadialFn a = g.a;
  const RadialFn b = g.b;
  const RadialFn V = g.V;

  WarpedStaticMetric f = g;
  f.a = RadialFn([a, V, pa](double r) { return pow(V(r), pa) * a(r); }, a.lo(), a.hi());
  f.b = RadialFn([b, V, pb](double r) { return pow(V(r), pb) * b(r); }, b.lo(), b.hi());
  f.V = RadialFn([V](double r) { return reciprocal(V(r)); }, V.lo(), V.hi());
  f.label = "flip(" + g.label + ")";
  return {g, std::move(f)};
}

InequalityReport mass_flip_check(const ConformalPair& pair, double r_eval, double tol) {
  const double lhs = adm_mass(pair.flipped, r_eval);
  const double rhs = -adm_mass(pair.base, r_eval);
  auto rep = make_identity("mass_flip", lhs, rhs, tol);
  rep.details = {{"r_eval", r_eval}};
  return rep;
}

double mean_curvature_flip(const WarpedStaticMetric& g, double r) {
  const SphereReport s = sphere_geometry(g, r);
  const double n = g.dim.real();
  return std::pow(s.V0, -n / (n - 2.0)) *
         (2.0 * ((n - 1.0) / (n - 2.0)) * s.dV_dnu + s.H * s.V0);
}

InequalityReport vh_identity_check(const ConformalPair& pair, double r, double tol) {
  const SphereReport s = sphere_geometry(pair.base, r);
  const SphereReport f = sphere_geometry(pair.flipped, r);
  const double n = pair.base.dim.real();
  const double norm = 1.0 / ((n - 1.0) * unit_sphere_area(pair.base.dim));
  const double m_minus = adm_mass(pair.flipped, r);
  const double lhs = norm * f.V0 * f.H * f.area;
  const double rhs = -2.0 * m_minus + norm * s.V0 * s.H * s.area;
  auto rep = make_identity("vh_identity", lhs, rhs, tol);
  rep.details = {{"r", r}, {"m_minus", m_minus}, {"H_minus", f.H}};
  return rep;
}

InequalityReport conformal_minkowski_check(const WarpedStaticMetric& g, double r, double tol) {
  const SphereReport s = sphere_geometry(g, r);
  const double n = g.dim.real();
  const double w = unit_sphere_area(g.dim);
  const double lhs = s.V0 * s.H * s.area / ((n - 1.0) * w);
  const double int_Vp = std::pow(s.V0, 2.0 * (n - 1.0) / (n - 2.0)) * s.area;
  const double rhs = std::pow(int_Vp / w, (n - 2.0) / (n - 1.0));
  auto rep = make_inequality("conformal_minkowski", lhs, rhs, tol);
  rep.details = {{"r", r}};
  return rep;
}

double ConformalResidual::max_abs() const {
  return std::max({std::abs(radial), std::abs(spherical), std::abs(harmonic)});
}

ConformalResidual conformal_ricci_residual(const WarpedStaticMetric& g, double r) {
  g.require_in_domain(r, "conformal_ricci_residual");
  const double n = g.dim.real();
  const Jet V = g.V(r);
  const Jet a0 = pow(V, 2.0 / (n - 2.0)) * g.a(r);
  const Jet b0 = pow(V, 1.0 / (n - 2.0)) * g.b(r);
  const WarpedFrame w = warped_frame(a0, b0, log(V));
  ConformalResidual res;
  res.radial = w.ricci_radial(g.dim) - ((n - 1.0) / (n - 2.0)) * w.f_s * w.f_s;
  res.spherical = w.ricci_tangential(g.dim);
  res.harmonic = w.laplacian_f(g.dim);
  return res;
}

InequalityReport outer_minimizing_proxy(const WarpedStaticMetric& g, double r, double R_max,
                                        int samples, double tol) {
  if (!(r < R_max)) throw ParameterError("outer_minimizing_proxy requires r < R_max");
  if (samples < 2) throw ParameterError("outer_minimizing_proxy needs at least 2 samples");
  g.require_in_domain(r, "outer_minimizing_proxy");
  g.require_in_domain(R_max, "outer_minimizing_proxy");
  const ConformalPair pair = conformal_flip(g);
  double min_H = std::numeric_limits<double>::infinity();
  double min_H_flipped = min_H;
  double arg_min = r;
  for (int k = 0; k < samples; ++k) {
    const double s = static_cast<double>(k) / (samples - 1);
    const double rk = k == samples - 1 ? R_max : r * std::pow(R_max / r, s);
    const double h = sphere_geometry(g, rk).H;
    if (h < min_H) {
      min_H = h;
      arg_min = rk;
    }
    min_H_flipped = std::min(min_H_flipped, sphere_geometry(pair.flipped, rk).H);
  }
  const double slack = std::min(min_H, min_H_flipped);
  auto rep = make_report("outer_minimizing_proxy", slack, 0.0, slack, tol);
  rep.details = {{"min_H", min_H},
                 {"min_H_flipped", min_H_flipped},
                 {"argmin_r", arg_min},
                 {"r", r},
                 {"R_max", R_max}};
  return rep;
}

}  // namespace staticgeo
