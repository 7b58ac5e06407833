#include "staticgeo/surfaces.hpp"

#include <gsl/gsl_integration.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

namespace staticgeo {

namespace {

constexpr double kPi = std::numbers::pi;

struct PeriodicSpline {
  gsl_spline* spline = nullptr;

  PeriodicSpline(const std::vector<double>& x, const std::vector<double>& y) {
    spline = gsl_spline_alloc(gsl_interp_cspline_periodic, x.size());
    gsl_spline_init(spline, x.data(), y.data(), x.size());
  }
  PeriodicSpline(const PeriodicSpline&) = delete;
  PeriodicSpline& operator=(const PeriodicSpline&) = delete;
  ~PeriodicSpline() { gsl_spline_free(spline); }
};

}  // namespace

Profile constant_profile(double r0) {
  std::ostringstream d;
  d << "constant(" << r0 << ")";
  return {[r0](const Jet&) { return Jet{r0}; }, d.str()};
}

Profile legendre_profile(double r0, const std::map<int, double>& coeffs) {
  for (const auto& [l, eps] : coeffs) {
    if (l < 0) throw ParameterError("legendre profile: negative degree");
  }
  std::ostringstream d;
  d << "legendre(r0=" << r0;
  for (const auto& [l, eps] : coeffs) d << ",eps" << l << "=" << eps;
  d << ")";
  const int l_top = coeffs.empty() ? 0 : coeffs.rbegin()->first;
  return {[r0, coeffs, l_top](const Jet& theta) {
            const Jet x = cos(theta);
            Jet prev = 1.0;
            Jet cur = x;
            Jet sum = 1.0;
            auto it = coeffs.find(0);
            if (it != coeffs.end()) sum += it->second * prev;
            it = coeffs.find(1);
            if (it != coeffs.end()) sum += it->second * cur;
            for (int l = 1; l < l_top; ++l) {
              const Jet next = ((2.0 * l + 1.0) * x * cur - static_cast<double>(l) * prev) /
                               static_cast<double>(l + 1);
              prev = cur;
              cur = next;
              it = coeffs.find(l + 1);
              if (it != coeffs.end()) sum += it->second * cur;
            }
            return r0 * sum;
          },
          d.str()};
}

Profile table_profile(const std::vector<double>& theta, const std::vector<double>& rho) {
  if (theta.size() != rho.size()) throw ParameterError("table profile: theta and rho differ in length");
  if (theta.size() < 4) throw ParameterError("table profile needs at least 4 points");
  if (std::abs(theta.front()) > 1e-12 || std::abs(theta.back() - kPi) > 1e-12) {
    throw ParameterError("table profile: theta must run from 0 to pi");
  }
  for (std::size_t i = 1; i < theta.size(); ++i) {
    if (!(theta[i] > theta[i - 1])) throw ParameterError("table profile: theta must increase strictly");
  }
  const std::size_t m = theta.size() - 1;
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t j = m; j >= 1; --j) {
    x.push_back(-theta[j]);
    y.push_back(rho[j]);
  }
  for (std::size_t j = 0; j <= m; ++j) {
    x.push_back(theta[j]);
    y.push_back(rho[j]);
  }
  x.front() = -kPi;
  x.back() = kPi;
  auto spline = std::make_shared<const PeriodicSpline>(x, y);
  return {[spline](const Jet& t) {
            const double th = std::clamp(t.f, -kPi, kPi);
            const Jet g{gsl_spline_eval(spline->spline, th, nullptr),
                        gsl_spline_eval_deriv(spline->spline, th, nullptr),
                        gsl_spline_eval_deriv2(spline->spline, th, nullptr)};
            return chain(t, g.f, g.d1, g.d2);
          },
          "table(" + std::to_string(theta.size()) + " points)"};
}

Profile off_center_sphere_profile(double d, double R) {
  if (!(R > 0.0) || !(std::abs(d) < R)) {
    throw ParameterError("off-center sphere requires |d| < R");
  }
  std::ostringstream desc;
  desc << "off-center-sphere(d=" << d << ",R=" << R << ")";
  return {[d, R](const Jet& theta) {
            const Jet s = sin(theta);
            return d * cos(theta) + sqrt(R * R - d * d * s * s);
          },
          desc.str()};
}

AxiSurface make_surface(WarpedStaticMetric metric, Profile rho, int nodes) {
  if (metric.dim.value() != 3) {
    throw DimensionError("axisymmetric surfaces are implemented for n = 3 only");
  }
  if (nodes < 8) throw ParameterError("surface quadrature needs at least 8 nodes");
  if (!rho.eval) throw ParameterError("surface profile is empty");
  AxiSurface s{std::move(metric), std::move(rho), nodes};
  // Probe the profile on a fine grid including both poles.
  const int probes = 4 * nodes;
  for (int i = 0; i <= probes; ++i) {
    const double th = kPi * i / probes;
    const double r = s.rho(th).f;
    if (!(r > s.metric.r_min) || r > s.metric.r_max) {
      std::ostringstream msg;
      msg << "surface profile rho=" << r << " at theta=" << th << " outside the metric domain";
      throw DomainError(msg.str());
    }
  }
  for (double pole : {0.0, kPi}) {
    const Jet r = s.rho(pole);
    if (std::abs(r.d1) > 1e-8 * std::max(1.0, std::abs(r.f))) {
      throw ParameterError("surface profile is not regular at the poles (rho' != 0)");
    }
  }
  return s;
}

InducedGeometry induced_geometry(const AxiSurface& s, double theta) {
  if (!(theta > 0.0 && theta < kPi)) throw DomainError("induced_geometry requires theta in (0, pi)");
  const Jet rho = s.rho(theta);
  const double r = rho.f;
  const double p = rho.d1;
  const double q = rho.d2;
  const Jet A = s.metric.a(r);
  const Jet B = s.metric.b(r);
  const Jet V = s.metric.V(r);
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double B2 = B.f * B.f;

  const double W = std::sqrt(1.0 + A.f * p * p / B2);
  const double W_r = (A.d1 * p * p / B2 - 2.0 * A.f * p * p * B.d1 / (B2 * B.f)) / (2.0 * W);
  const double W_t = A.f * p * q / (B2 * W);
  // Divergence of the unit normal in coordinates (r, theta).
  const double P_r = 2.0 * B.f * B.d1 / W - B2 * W_r / (W * W);
  const double T_t = -A.f * (ct * p / W + st * q / W - st * p * W_t / (W * W));
  const double sqrt_A = std::sqrt(A.f);

  InducedGeometry g;
  g.sigma_tt = A.f * p * p + B2;
  g.sigma_pp = B2 * st * st;
  g.area_element = std::sqrt(g.sigma_tt) * B.f * st;
  g.H = (st * P_r + T_t) / (sqrt_A * B2 * st);
  g.dV_dnu = V.d1 / (sqrt_A * W);
  g.V = V.f;
  return g;
}

std::vector<std::pair<double, double>> gauss_legendre_rule(int nodes) {
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(nodes);
  if (table == nullptr) throw ParameterError("cannot build Gauss-Legendre rule");
  std::vector<std::pair<double, double>> rule(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    gsl_integration_glfixed_point(-1.0, 1.0, i, &rule[i].first, &rule[i].second, table);
  }
  gsl_integration_glfixed_table_free(table);
  return rule;
}

namespace {

struct NodeSample {
  double weight;  // 2 pi w_i sqrt(sigma_tt) B, so that sum weight f = int f dsigma
  InducedGeometry geo;
};

std::vector<NodeSample> sample_nodes(const AxiSurface& s, int nodes) {
  std::vector<NodeSample> out;
  out.reserve(static_cast<std::size_t>(nodes));
  for (const auto& [x, w] : gauss_legendre_rule(nodes)) {
    const double theta = std::acos(x);
    const InducedGeometry g = induced_geometry(s, theta);
    const double B = s.metric.b.value(s.rho(theta).f);
    out.push_back({2.0 * kPi * w * std::sqrt(g.sigma_tt) * B, g});
  }
  return out;
}

struct Integrals {
  double area = 0.0;
  double int_H = 0.0;
  double int_H2 = 0.0;
  double int_VH = 0.0;
  double int_V2 = 0.0;
  double int_V4 = 0.0;
  double min_H = std::numeric_limits<double>::infinity();
  double min_H_flipped = std::numeric_limits<double>::infinity();
};

Integrals integrate(const AxiSurface& s, int nodes) {
  Integrals I;
  for (const auto& [w, g] : sample_nodes(s, nodes)) {
    I.area += w;
    I.int_H += w * g.H;
    I.int_H2 += w * g.H * g.H;
    I.int_VH += w * g.V * g.H;
    I.int_V2 += w * g.V * g.V;
    I.int_V4 += w * g.V * g.V * g.V * g.V;
    I.min_H = std::min(I.min_H, g.H);
    // n = 3 mean curvature of the surface in g_-.
    const double H_flip = std::pow(g.V, -3.0) * (4.0 * g.dV_dnu + g.H * g.V);
    I.min_H_flipped = std::min(I.min_H_flipped, H_flip);
  }
  return I;
}

double max_change(const Integrals& a, const Integrals& b) {
  double worst = 0.0;
  for (auto [x, y] : {std::pair{a.area, b.area}, {a.int_H, b.int_H}, {a.int_H2, b.int_H2},
                      {a.int_VH, b.int_VH}, {a.int_V2, b.int_V2}, {a.int_V4, b.int_V4}}) {
    worst = std::max(worst, std::abs(x - y) / std::max(1.0, std::abs(y)));
  }
  return worst;
}

Integrals resolved_integrals(const AxiSurface& s, double* change) {
  const Integrals base = integrate(s, s.nodes);
  const Integrals fine = integrate(s, 2 * s.nodes);
  const double c = max_change(base, fine);
  if (!(c <= kResolutionTol)) {
    std::ostringstream msg;
    msg << "surface quadrature unresolved: integrals change by " << c << " from " << s.nodes
        << " to " << 2 * s.nodes << " nodes";
    throw ResolutionError(msg.str());
  }
  if (change != nullptr) *change = c;
  return base;
}

}  // namespace

double surface_integral(const AxiSurface& s,
                        const std::function<double(const InducedGeometry&)>& f, int nodes) {
  double sum = 0.0;
  for (const auto& [w, g] : sample_nodes(s, nodes)) sum += w * f(g);
  return sum;
}

SurfaceReport surface_report(const AxiSurface& s) {
  SurfaceReport rep;
  const Integrals I = resolved_integrals(s, &rep.resolution_change);
  rep.area = I.area;
  rep.int_H = I.int_H;
  rep.int_H2 = I.int_H2;
  rep.int_VH = I.int_VH;
  const double r0 = std::sqrt(I.area / (4.0 * kPi));
  rep.m_hawking = 0.5 * r0 * (1.0 - I.int_H2 / (16.0 * kPi));
  rep.q_value = 0.5 * r0 * (1.0 - I.int_VH / (8.0 * kPi * r0));
  rep.min_H = I.min_H;
  rep.min_H_flipped = I.min_H_flipped;
  return rep;
}

InequalityReport hawking_vs_q(const AxiSurface& s, double tol) {
  const SurfaceReport r = surface_report(s);
  auto rep = make_inequality("hawking_vs_q", r.q_value, r.m_hawking, tol);
  rep.details = {{"min_H", r.min_H}, {"min_H_flipped", r.min_H_flipped}, {"area", r.area}};
  return rep;
}

std::pair<InequalityReport, InequalityReport> holder_chain_check(const AxiSurface& s,
                                                                 double tol) {
  const Integrals I = resolved_integrals(s, nullptr);
  const double scale = std::sqrt(I.area / (4.0 * kPi));  // (|S|/w)^{1/2}

  const double a0 = I.int_V2;
  const double a1 = std::sqrt(I.area) * std::sqrt(I.int_V4);
  const double a2 = 0.5 * scale * I.int_VH;
  auto first = make_report("cauchy_schwarz_chain", a0, a2, std::min(a1 - a0, a2 - a1), tol);
  first.details = {{"step1_slack", a1 - a0}, {"step2_slack", a2 - a1}, {"middle", a1}};

  const double b0 = I.int_VH / scale;
  const double b1 = std::sqrt(I.int_V2) * std::sqrt(I.int_H2) / scale;
  const double b2 = 0.5 * I.int_H2;
  auto second = make_report("holder_chain", b0, b2, std::min(b1 - b0, b2 - b1), tol);
  second.details = {{"step1_slack", b1 - b0}, {"step2_slack", b2 - b1}, {"middle", b1}};
  return {first, second};
}

}  // namespace staticgeo
