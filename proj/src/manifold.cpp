#include "staticgeo/manifold.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "staticgeo/json_io.hpp"

namespace staticgeo {

Dim::Dim(int n) : n_(n) {
  if (n < 3 || n > 7) {
    throw DimensionError("dimension n=" + std::to_string(n) + " outside 3 <= n <= 7");
  }
}

double unit_sphere_area(Dim n) {
  const double half = 0.5 * n.real();
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

RadialFn::RadialFn(Eval eval, double lo, double hi)
    : eval_(std::move(eval)), lo_(lo), hi_(hi) {}

RadialFn RadialFn::from_expression(std::function<Jet(const Jet&)> expr, double lo,
                                   double hi) {
  return RadialFn([expr = std::move(expr)](double r) { return expr(Jet::variable(r)); },
                  lo, hi);
}

namespace {

struct SplineHandle {
  gsl_spline* spline = nullptr;
  double x_lo = 0.0;
  double x_hi = 0.0;

  SplineHandle(const std::vector<double>& x, const std::vector<double>& y) {
    spline = gsl_spline_alloc(gsl_interp_cspline, x.size());
    gsl_spline_init(spline, x.data(), y.data(), x.size());
    x_lo = x.front();
    x_hi = x.back();
  }
  SplineHandle(const SplineHandle&) = delete;
  SplineHandle& operator=(const SplineHandle&) = delete;
  ~SplineHandle() { gsl_spline_free(spline); }

  // A null accelerator keeps evaluation free of shared mutable state.
  Jet eval(double x) const {
    return {gsl_spline_eval(spline, x, nullptr), gsl_spline_eval_deriv(spline, x, nullptr),
            gsl_spline_eval_deriv2(spline, x, nullptr)};
  }
};

}  // namespace

RadialFn RadialFn::tabulated(std::vector<double> r, std::vector<double> f) {
  if (r.size() != f.size()) {
    throw ParameterError("tabulated radial function: r and f differ in length");
  }
  if (r.size() < 3) {
    throw ParameterError("tabulated radial function needs at least 3 knots");
  }
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(r[i] > r[i - 1])) {
      throw ParameterError("tabulated radial function: r must be strictly increasing");
    }
  }
  auto handle = std::make_shared<const SplineHandle>(r, f);
  const double lo = r.front();
  const double hi = r.back();
  return RadialFn([handle](double x) { return handle->eval(x); }, lo, hi);
}

RadialFn RadialFn::constant(double c, double lo) {
  return RadialFn([c](double) { return Jet{c, 0.0, 0.0}; }, lo);
}

Jet RadialFn::operator()(double r) const {
  // Tables are closed at their first knot; closed forms are open at lo.
  if (!(r >= lo_) || r > hi_) {
    std::ostringstream msg;
    msg << "radial function evaluated at r=" << r << " outside [" << lo_ << ", " << hi_ << "]";
    throw DomainError(msg.str());
  }
  return eval_(r);
}

void WarpedStaticMetric::require_in_domain(double r, std::string_view op) const {
  if (!(r > r_min) || r > r_max) {
    std::ostringstream msg;
    msg << op << ": r=" << r << " outside the domain (" << r_min << ", " << r_max
        << "] of metric '" << label << "'";
    throw DomainError(msg.str());
  }
}

double schwarzschild_horizon(const SchwarzschildParams& p) {
  return std::pow(std::max(0.0, 2.0 * p.m), 1.0 / (p.dim.real() - 2.0));
}

WarpedStaticMetric schwarzschild(const SchwarzschildParams& p) {
  const double n = p.dim.real();
  const double m = p.m;
  const double r_m = schwarzschild_horizon(p);
  auto lapse_sq = [n, m](const Jet& r) { return 1.0 - 2.0 * m * pow(r, 2.0 - n); };

  WarpedStaticMetric g;
  g.dim = p.dim;
  g.r_min = r_m;
  g.a = RadialFn::from_expression([lapse_sq](const Jet& r) { return reciprocal(lapse_sq(r)); },
                                  r_m);
  g.b = RadialFn::from_expression([](const Jet& r) { return r; }, r_m);
  g.V = RadialFn::from_expression([lapse_sq](const Jet& r) { return sqrt(lapse_sq(r)); }, r_m);
  std::ostringstream label;
  label << "schwarzschild(n=" << p.dim.value() << ",m=" << m << ")";
  g.label = label.str();
  return g;
}

WarpedStaticMetric schwarzschild_isotropic(const SchwarzschildParams& p) {
  if (!(p.m > 0.0)) {
    throw ParameterError("isotropic Schwarzschild chart requires m > 0");
  }
  const double n = p.dim.real();
  const double half_m = 0.5 * p.m;
  const double s_min = std::pow(half_m, 1.0 / (n - 2.0));
  auto psi = [n, half_m](const Jet& s) { return 1.0 + half_m * pow(s, 2.0 - n); };

  WarpedStaticMetric g;
  g.dim = p.dim;
  g.r_min = s_min;
  g.a = RadialFn::from_expression(
      [psi, n](const Jet& s) { return pow(psi(s), 4.0 / (n - 2.0)); }, s_min);
  g.b = RadialFn::from_expression(
      [psi, n](const Jet& s) { return s * pow(psi(s), 2.0 / (n - 2.0)); }, s_min);
  g.V = RadialFn::from_expression(
      [psi](const Jet& s) {
        const Jet q = psi(s);
        return (2.0 - q) / q;
      },
      s_min);
  std::ostringstream label;
  label << "schwarzschild-isotropic(n=" << p.dim.value() << ",m=" << p.m << ")";
  g.label = label.str();
  return g;
}

WarpedStaticMetric flat(Dim n) {
  WarpedStaticMetric g;
  g.dim = n;
  g.r_min = 0.0;
  g.a = RadialFn::constant(1.0);
  g.b = RadialFn::from_expression([](const Jet& r) { return r; }, 0.0);
  g.V = RadialFn::constant(1.0);
  g.label = "flat(n=" + std::to_string(n.value()) + ")";
  return g;
}

WarpedStaticMetric with_potential(const WarpedStaticMetric& g, RadialFn V, std::string label) {
  WarpedStaticMetric out = g;
  out.V = std::move(V);
  out.label = std::move(label);
  return out;
}

std::vector<CatalogEntry> catalog() {
  return {
      {"schwarzschild", "n in [3,7], m real",
       "a = 1/(1 - 2m r^{2-n}), b = r, V = sqrt(1 - 2m r^{2-n}), r > (max{0,2m})^{1/(n-2)}"},
      {"schwarzschild-isotropic", "n in [3,7], m > 0",
       "a = psi^{4/(n-2)}, b = s psi^{2/(n-2)}, V = (2 - psi)/psi, psi = 1 + (m/2) s^{2-n}"},
      {"flat", "n in [3,7]", "Euclidean space, a = 1, b = r, V = 1"},
      {"file:<path>", "JSON {n, r[], a[], b[], V[]}",
       "tabulated warped metric, natural cubic splines, r strictly increasing"},
  };
}

WarpedStaticMetric catalog_metric(std::string_view label, Dim n, double m) {
  if (label == "schwarzschild") return schwarzschild({n, m});
  if (label == "schwarzschild-isotropic") return schwarzschild_isotropic({n, m});
  if (label == "flat") return flat(n);
  if (label.starts_with("file:")) return load_metric_file(std::string(label.substr(5)));
  throw ConfigError("unknown metric '" + std::string(label) + "'");
}

WarpedFrame warped_frame(const Jet& a, const Jet& b, const Jet& f) {
  const double alpha = std::sqrt(a.f);
  const double log_alpha_r = 0.5 * a.d1 / a.f;
  WarpedFrame w;
  w.phi = b.f;
  w.phi_s = b.d1 / alpha;
  w.phi_ss = (b.d2 - b.d1 * log_alpha_r) / a.f;
  w.f = f.f;
  w.f_s = f.d1 / alpha;
  w.f_ss = (f.d2 - f.d1 * log_alpha_r) / a.f;
  return w;
}

double WarpedFrame::ricci_radial(Dim n) const { return -(n.real() - 1.0) * phi_ss / phi; }

double WarpedFrame::ricci_tangential(Dim n) const {
  return -phi_ss / phi + (n.real() - 2.0) * (1.0 - phi_s * phi_s) / (phi * phi);
}

double WarpedFrame::scalar_curvature(Dim n) const {
  return ricci_radial(n) + (n.real() - 1.0) * ricci_tangential(n);
}

double WarpedFrame::laplacian_f(Dim n) const {
  return f_ss + (n.real() - 1.0) * (phi_s / phi) * f_s;
}

double StaticResidual::max_abs() const {
  return std::max({std::abs(harmonic), std::abs(radial), std::abs(spherical)});
}

StaticResidual static_residual(const WarpedStaticMetric& g, double r) {
  g.require_in_domain(r, "static_residual");
  const WarpedFrame w = warped_frame(g.a(r), g.b(r), g.V(r));
  StaticResidual res;
  res.harmonic = w.laplacian_f(g.dim);
  res.radial = w.f_ss - w.f * w.ricci_radial(g.dim);
  res.spherical = w.f_s * w.phi_s / w.phi - w.f * w.ricci_tangential(g.dim);
  return res;
}

double adm_mass(const WarpedStaticMetric& g, double r_eval) {
  g.require_in_domain(r_eval, "adm_mass");
  const double n = g.dim.real();
  const Jet V = g.V(r_eval);
  const double b = g.b.value(r_eval);
  const double a = g.a.value(r_eval);
  return V.d1 * std::pow(b, n - 1.0) / (std::sqrt(a) * (n - 2.0));
}

double limit_at_infinity(const std::function<double(double)>& f, Dim n,
                         std::span<const double> ladder) {
  if (ladder.empty()) throw ParameterError("limit_at_infinity: empty ladder");
  std::vector<double> x;
  std::vector<double> p;
  x.reserve(ladder.size());
  p.reserve(ladder.size());
  for (double r : ladder) {
    x.push_back(std::pow(r, 2.0 - n.real()));
    p.push_back(f(r));
  }
  // Neville's scheme evaluated at x = 0.
  const std::size_t k = x.size();
  for (std::size_t level = 1; level < k; ++level) {
    for (std::size_t i = 0; i + level < k; ++i) {
      const double xi = x[i];
      const double xj = x[i + level];
      p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
    }
  }
  return p[0];
}

std::span<const double> default_infinity_ladder() {
  static constexpr double kLadder[] = {1e2, 1e3, 1e4};
  return kLadder;
}

double adm_mass_at_infinity(const WarpedStaticMetric& g) {
  return limit_at_infinity([&g](double r) { return adm_mass(g, r); }, g.dim,
                           default_infinity_ladder());
}

std::vector<double> default_radius_ladder(double r_min, int count) {
  if (count < 1) throw ParameterError("radius ladder needs at least one radius");
  const double base = std::max(1.0, r_min);
  const double lo = 1.05 * base;
  const double hi = 4.2 * base;
  std::vector<double> radii;
  radii.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double s = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
    radii.push_back(lo * std::pow(hi / lo, s));
  }
  return radii;
}

}  // namespace staticgeo
