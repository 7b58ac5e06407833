#include "staticgeo/quantities.hpp"

#include <cmath>
#include <numbers>

namespace staticgeo {

double m0_of(Dim n, double r0, double H0) {
  const double k = n.real() - 1.0;
  return 0.5 * std::pow(r0, n.real() - 2.0) * (1.0 - r0 * r0 * H0 * H0 / (k * k));
}

SphereReport sphere_geometry(const WarpedStaticMetric& g, double r) {
  g.require_in_domain(r, "sphere_geometry");
  const double n = g.dim.real();
  const double a = g.a.value(r);
  const Jet b = g.b(r);
  const Jet V = g.V(r);
  const double sqrt_a = std::sqrt(a);

  SphereReport s;
  s.r = r;
  s.area = unit_sphere_area(g.dim) * std::pow(b.f, n - 1.0);
  s.r0 = b.f;
  s.H = (n - 1.0) * b.d1 / (b.f * sqrt_a);
  s.V0 = V.f;
  s.dV_dnu = V.d1 / sqrt_a;
  s.m0 = m0_of(g.dim, s.r0, s.H);
  if (g.dim.value() == 3) {
    const double pi = std::numbers::pi;
    const double int_H2 = s.H * s.H * s.area;
    const double int_VH = s.V0 * s.H * s.area;
    s.hawking = 0.5 * s.r0 * (1.0 - int_H2 / (16.0 * pi));
    s.q = 0.5 * s.r0 * (1.0 - int_VH / (8.0 * pi * s.r0));
  }
  return s;
}

InequalityReport minkowski_check(const WarpedStaticMetric& g, double r, double m, double tol) {
  const SphereReport s = sphere_geometry(g, r);
  const double n = g.dim.real();
  const double w = unit_sphere_area(g.dim);
  const double lhs = s.V0 * s.H * s.area / ((n - 1.0) * w) + 2.0 * m;
  const double rhs = std::pow(s.area / w, (n - 2.0) / (n - 1.0));
  auto rep = make_inequality("minkowski", lhs, rhs, tol);
  rep.details = {{"r", r}, {"m", m}};
  return rep;
}

InequalityReport levelset_minkowski_check(const WarpedStaticMetric& g, double r, double tol) {
  const SphereReport s = sphere_geometry(g, r);
  const double n = g.dim.real();
  const double w = unit_sphere_area(g.dim);
  const double lhs =
      std::pow(s.area / w, (2.0 - n) / (n - 1.0)) * s.H * s.area / ((n - 1.0) * w);
  auto rep = make_inequality("levelset_minkowski", lhs, s.V0, tol);
  rep.details = {{"r", r}};
  return rep;
}

InequalityReport willmore_check(const WarpedStaticMetric& g, double r, double tol) {
  const SphereReport s = sphere_geometry(g, r);
  const double n = g.dim.real();
  const double w = unit_sphere_area(g.dim);
  const double int_Hk = std::pow(s.H, n - 1.0) * s.area;
  const double lhs = std::pow(int_Hk, 1.0 / (n - 1.0)) / ((n - 1.0) * std::pow(w, 1.0 / (n - 1.0)));
  auto rep = make_inequality("willmore", lhs, s.V0, tol);
  rep.details = {{"r", r}};
  return rep;
}

double yamabe_energy(Dim n, double r0) {
  if (!(r0 > 0.0)) throw ParameterError("yamabe_energy requires r0 > 0");
  const double k = n.real() - 1.0;
  const double w = unit_sphere_area(n);
  const double area = w * std::pow(r0, k);
  const double R_sigma = k * (n.real() - 2.0) / (r0 * r0);
  return std::pow(area / w, (3.0 - n.real()) / k) * R_sigma * area;
}

double codazzi_beta(const WarpedStaticMetric& g, double r) {
  const SphereReport s = sphere_geometry(g, r);
  const double n = g.dim.real();
  return s.dV_dnu + ((n - 2.0) / (n - 1.0)) * s.V0 * s.H;
}

InequalityReport bartnik_mass_identity_check(const WarpedStaticMetric& g, double r,
                                             double tol) {
  const SphereReport s = sphere_geometry(g, r);
  const double n = g.dim.real();
  const double lhs = adm_mass(g, r);
  const double rhs = (n - 1.0) * s.V0 * s.m0 / (s.H * s.r0);
  auto rep = make_identity("bartnik_mass_identity", lhs, rhs, tol);
  rep.details = {{"r", r}, {"V0", s.V0}, {"H0", s.H}, {"dV_dnu", s.dV_dnu}, {"m0", s.m0}};
  return rep;
}

}  // namespace staticgeo
