#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "staticgeo/json_io.hpp"
#include "staticgeo/manifold.hpp"
#include "test_support.hpp"

using namespace staticgeo;
using staticgeo::testing::central_difference;
using staticgeo::testing::perturbed_potential;

namespace {

std::vector<WarpedStaticMetric> catalog_family() {
  std::vector<WarpedStaticMetric> out;
  for (int n = 3; n <= 7; ++n) {
    for (double m : {-0.5, 0.0, 1.0, 2.0}) out.push_back(schwarzschild({Dim(n), m}));
    for (double m : {0.5, 1.0, 2.0}) out.push_back(schwarzschild_isotropic({Dim(n), m}));
    out.push_back(flat(Dim(n)));
  }
  return out;
}

}  // namespace

TEST_CASE("dimension range is 3..7") {
  CHECK_THROWS_AS(Dim(2), DimensionError);
  CHECK_THROWS_AS(Dim(8), DimensionError);
  CHECK(Dim(3).value() == 3);
  CHECK(Dim(7).value() == 7);
}

TEST_CASE("unit sphere areas") {
  const double pi = std::numbers::pi;
  CHECK(unit_sphere_area(Dim(3)) == doctest::Approx(12.566370614).epsilon(1e-10));
  CHECK(unit_sphere_area(Dim(4)) == doctest::Approx(2.0 * pi * pi).epsilon(1e-13));
  CHECK(unit_sphere_area(Dim(4)) == doctest::Approx(19.739208802).epsilon(1e-10));
  CHECK(unit_sphere_area(Dim(7)) == doctest::Approx(16.0 * pi * pi * pi / 15.0).epsilon(1e-13));
  CHECK(unit_sphere_area(Dim(7)) == doctest::Approx(33.073361793).epsilon(1e-10));
}

TEST_CASE("schwarzschild closed form") {
  const auto g = schwarzschild({Dim(3), 1.0});
  CHECK(g.V.value(4.0) == doctest::Approx(0.7071067812).epsilon(1e-10));
  CHECK(g.a.value(4.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(g.b.value(4.0) == 4.0);
  CHECK(g.r_min == doctest::Approx(2.0).epsilon(1e-15));

  const auto e = schwarzschild({Dim(3), 0.0});
  CHECK(e.V.value(5.0) == 1.0);
  CHECK(e.a.value(5.0) == 1.0);
  CHECK(e.b.value(5.0) == 5.0);

  CHECK(schwarzschild({Dim(3), -0.5}).r_min == 0.0);
  CHECK(schwarzschild({Dim(5), 2.0}).r_min == doctest::Approx(std::cbrt(4.0)).epsilon(1e-14));
}

TEST_CASE("isotropic chart") {
  const auto g = schwarzschild_isotropic({Dim(3), 1.0});
  CHECK(g.V.value(2.0) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(g.b.value(2.0) == doctest::Approx(3.125).epsilon(1e-14));
  // Same V at the matched area radius in the area chart.
  CHECK(schwarzschild({Dim(3), 1.0}).V.value(3.125) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(std::abs(g.V.value(1e7) - 1.0) < 1e-6);
  CHECK(g.r_min == doctest::Approx(0.5));
  CHECK_THROWS_AS(schwarzschild_isotropic({Dim(3), 0.0}), ParameterError);
  CHECK_THROWS_AS(schwarzschild_isotropic({Dim(4), -1.0}), ParameterError);
}

TEST_CASE("schwarzschild charts agree at matched area radius") {
  for (int n = 3; n <= 7; ++n) {
    const auto iso = schwarzschild_isotropic({Dim(n), 1.0});
    const auto area = schwarzschild({Dim(n), 1.0});
    for (double scale : {1.1, 1.5, 2.0, 5.0, 20.0}) {
      const double s = scale * iso.r_min;
      const double r = iso.b.value(s);
      CAPTURE(n);
      CAPTURE(s);
      CHECK(std::abs(iso.V.value(s) - area.V.value(r)) <= 1e-10);
    }
  }
}

TEST_CASE("static residual examples") {
  const auto s31 = static_residual(schwarzschild({Dim(3), 1.0}), 4.0);
  CHECK(s31.max_abs() <= 1e-10);
  const auto s52 = static_residual(schwarzschild({Dim(5), 2.0}), 3.0);
  CHECK(s52.max_abs() <= 1e-10);

  const auto pert = perturbed_potential(schwarzschild({Dim(3), 1.0}), 0.01);
  CHECK(static_residual(pert, 3.0).max_abs() > 1e-5);

  CHECK_THROWS_AS(static_residual(schwarzschild({Dim(3), 1.0}), 2.0), DomainError);
  CHECK_THROWS_AS(static_residual(schwarzschild({Dim(3), 1.0}), 1.0), DomainError);
}

TEST_CASE("static residuals vanish across the catalog") {
  for (const auto& g : catalog_family()) {
    for (double r : default_radius_ladder(g.r_min)) {
      CAPTURE(g.label);
      CAPTURE(r);
      CHECK(static_residual(g, r).max_abs() <= 1e-8);
    }
  }
}

TEST_CASE("adm mass examples") {
  CHECK(adm_mass(schwarzschild({Dim(3), 1.0}), 4.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(adm_mass(schwarzschild({Dim(3), 0.0}), 7.0) == 0.0);
  const auto g = schwarzschild({Dim(4), 2.0});
  CHECK(std::abs(adm_mass(g, 3.0) - 2.0) <= 1e-10);
  CHECK(std::abs(adm_mass(g, 30.0) - 2.0) <= 1e-10);
  CHECK_THROWS_AS(adm_mass(g, 1.0), DomainError);
}

TEST_CASE("adm mass flux is constant in r") {
  for (const auto& g : catalog_family()) {
    const auto ladder = default_radius_ladder(g.r_min);
    const double ref = adm_mass(g, ladder.front());
    for (double r : ladder) {
      CAPTURE(g.label);
      CAPTURE(r);
      CHECK(std::abs(adm_mass(g, r) - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("extrapolation to infinity") {
  const auto f = [](double r) { return 2.0 + 3.0 / r + 5.0 / (r * r); };
  CHECK(limit_at_infinity(f, Dim(3), default_infinity_ladder()) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(adm_mass_at_infinity(schwarzschild({Dim(3), 1.0})) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(adm_mass_at_infinity(schwarzschild_isotropic({Dim(5), 2.0})) ==
        doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("radial function derivatives match finite differences") {
  std::mt19937_64 rng(20261017);
  for (const auto& g : catalog_family()) {
    const double base = std::max(1.0, g.r_min);
    std::uniform_real_distribution<double> logr(std::log(1.2 * base), std::log(50.0 * base));
    for (int k = 0; k < 100; ++k) {
      const double r = std::exp(logr(rng));
      const double h = 1e-6 * std::max(1.0, r);
      for (const RadialFn* f : {&g.a, &g.b, &g.V}) {
        const Jet j = (*f)(r);
        const double d1 = central_difference([f](double x) { return f->value(x); }, r, h);
        const double d2 = central_difference([f](double x) { return (*f)(x).d1; }, r, h);
        CAPTURE(g.label);
        CAPTURE(r);
        CHECK(std::abs(d1 - j.d1) <= 1e-6 * std::max(1.0, std::abs(j.d1)));
        CHECK(std::abs(d2 - j.d2) <= 1e-6 * std::max(1.0, std::abs(j.d2)));
      }
    }
  }
}

TEST_CASE("metric invariants: positivity and decay of V") {
  for (const auto& g : catalog_family()) {
    for (double r : default_radius_ladder(g.r_min)) {
      CHECK(g.a.value(r) > 0.0);
      CHECK(g.b.value(r) > 0.0);
      CHECK(g.b(r).d1 > 0.0);
      CHECK(g.V.value(r) > 0.0);
    }
    const double n = g.dim.real();
    double first = -1.0;
    for (double r : {10.0, 100.0, 1000.0}) {
      const double c = std::abs(g.V.value(r) - 1.0) * std::pow(g.b.value(r), n - 2.0);
      if (first < 0.0) first = c;
      CAPTURE(g.label);
      CHECK(c <= 2.0 * first + 1e-9);
    }
  }
}

TEST_CASE("tabulated metrics load from JSON") {
  const auto exact = schwarzschild({Dim(3), 1.0});
  nlohmann::json doc;
  doc["n"] = 3;
  std::vector<double> r, a, b, V;
  for (int i = 0; i <= 2000; ++i) {
    const double x = 3.0 + 47.0 * i / 2000.0;
    r.push_back(x);
    a.push_back(exact.a.value(x));
    b.push_back(exact.b.value(x));
    V.push_back(exact.V.value(x));
  }
  doc["r"] = r;
  doc["a"] = a;
  doc["b"] = b;
  doc["V"] = V;

  const std::string path = "test_manifold_table.json";
  {
    std::ofstream out(path);
    out << doc.dump();
  }
  const auto g = catalog_metric("file:" + path, Dim(3), 0.0);
  std::remove(path.c_str());
  CHECK(g.dim.value() == 3);
  CHECK(g.r_min == 3.0);
  CHECK(g.r_max == 50.0);
  CHECK(std::abs(g.V.value(10.0) - exact.V.value(10.0)) < 1e-9);
  CHECK(std::abs(adm_mass(g, 10.0) - 1.0) < 1e-4);
  CHECK(static_residual(g, 10.0).max_abs() < 1e-4);
  CHECK_THROWS_AS(g.V.value(60.0), DomainError);

  auto bad = doc;
  bad["r"][5] = bad["r"][4];
  CHECK_THROWS_AS(metric_from_json(bad, "bad"), ParameterError);
  bad = doc;
  bad.erase("V");
  CHECK_THROWS_AS(metric_from_json(bad, "bad"), ConfigError);
  CHECK_THROWS_AS(load_metric_file("/nonexistent/metric.json"), ConfigError);
}

TEST_CASE("catalog") {
  bool s = false, iso = false, fl = false;
  for (const auto& e : catalog()) {
    s |= e.label == "schwarzschild";
    iso |= e.label == "schwarzschild-isotropic";
    fl |= e.label == "flat";
  }
  CHECK(s);
  CHECK(iso);
  CHECK(fl);
  CHECK_THROWS_AS(catalog_metric("kerr", Dim(3), 1.0), ConfigError);
  CHECK(catalog_metric("flat", Dim(4), 0.0).V.value(3.0) == 1.0);
}
