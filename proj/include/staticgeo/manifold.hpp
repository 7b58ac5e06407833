#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "staticgeo/errors.hpp"
#include "staticgeo/jet.hpp"

namespace staticgeo {

// Ambient dimension n of the static manifold, restricted to 3 <= n <= 7.
class Dim {
 public:
  explicit Dim(int n);

  constexpr int value() const noexcept { return n_; }
  constexpr double real() const noexcept { return static_cast<double>(n_); }

  friend constexpr bool operator==(Dim, Dim) = default;

 private:
  int n_;
};

// Area w_{n-1} of the unit (n-1)-sphere.
double unit_sphere_area(Dim n);

// A function of the radial coordinate together with its first two
// derivatives, defined on (lo, hi]. Values are immutable after construction.
class RadialFn {
 public:
  using Eval = std::function<Jet(double)>;

  RadialFn() = default;
  RadialFn(Eval eval, double lo,
           double hi = std::numeric_limits<double>::infinity());

  // Closed form written against Jet; derivatives follow by forward mode.
  static RadialFn from_expression(std::function<Jet(const Jet&)> expr, double lo,
                                  double hi = std::numeric_limits<double>::infinity());

  // Natural cubic spline through strictly increasing knots.
  static RadialFn tabulated(std::vector<double> r, std::vector<double> f);

  static RadialFn constant(double c, double lo = 0.0);

  Jet operator()(double r) const;
  double value(double r) const { return (*this)(r).f; }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  bool valid() const noexcept { return static_cast<bool>(eval_); }

 private:
  Eval eval_;
  double lo_ = 0.0;
  double hi_ = std::numeric_limits<double>::infinity();
};

// g = a(r) dr^2 + b(r)^2 sigma_std with static potential V(r).
struct WarpedStaticMetric {
  Dim dim{3};
  RadialFn a;
  RadialFn b;
  RadialFn V;
  double r_min = 0.0;
  double r_max = std::numeric_limits<double>::infinity();
  std::string label;

  // Throws DomainError unless r_min < r <= r_max.
  void require_in_domain(double r, std::string_view op) const;
};

struct SchwarzschildParams {
  Dim dim{3};
  double m = 0.0;
};

// Horizon radius (max{0, 2m})^{1/(n-2)}.
double schwarzschild_horizon(const SchwarzschildParams& p);

WarpedStaticMetric schwarzschild(const SchwarzschildParams& p);

// Isotropic chart, coordinate s > (m/2)^{1/(n-2)}; requires m > 0.
WarpedStaticMetric schwarzschild_isotropic(const SchwarzschildParams& p);

WarpedStaticMetric flat(Dim n);

// Same geometry with the potential replaced (used to build non-static data).
WarpedStaticMetric with_potential(const WarpedStaticMetric& g, RadialFn V,
                                  std::string label);

struct CatalogEntry {
  std::string label;
  std::string parameters;
  std::string description;
};

std::vector<CatalogEntry> catalog();

// Resolves "schwarzschild", "schwarzschild-isotropic", "flat" or "file:<path>".
// n and m are ignored for file metrics.
WarpedStaticMetric catalog_metric(std::string_view label, Dim n, double m);

// Proper-distance reduction of a warped product ds^2 + phi(s)^2 sigma_std.
// Derivatives are with respect to arc length s, where ds = sqrt(a) dr.
struct WarpedFrame {
  double phi = 0.0;
  double phi_s = 0.0;
  double phi_ss = 0.0;
  double f = 0.0;
  double f_s = 0.0;
  double f_ss = 0.0;

  // Ric(d_s, d_s) and Ric on a unit vector tangent to the spheres.
  double ricci_radial(Dim n) const;
  double ricci_tangential(Dim n) const;
  double scalar_curvature(Dim n) const;
  double laplacian_f(Dim n) const;
};

WarpedFrame warped_frame(const Jet& a, const Jet& b, const Jet& f);

struct StaticResidual {
  double harmonic = 0.0;  // Delta V
  double radial = 0.0;    // (Hess V - V Ric)(d_s, d_s)
  double spherical = 0.0; // (Hess V - V Ric)(e, e), e unit tangent

  double max_abs() const;
};

StaticResidual static_residual(const WarpedStaticMetric& g, double r);

// Flux integral (1/((n-2) w)) * int dV/dnu over the coordinate sphere at r.
double adm_mass(const WarpedStaticMetric& g, double r_eval);

// Richardson extrapolation to r -> infinity assuming f = L + c1 x + c2 x^2 + ...
// with x = r^{2-n}. The ladder must lie in the metric domain.
double limit_at_infinity(const std::function<double(double)>& f, Dim n,
                         std::span<const double> ladder);

std::span<const double> default_infinity_ladder();

double adm_mass_at_infinity(const WarpedStaticMetric& g);

// Log-spaced radii on [1.05 base, 4.2 base], base = max(1, r_min).
std::vector<double> default_radius_ladder(double r_min, int count = 20);

}  // namespace staticgeo
