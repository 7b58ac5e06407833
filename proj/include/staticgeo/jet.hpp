#pragma once

#include <cmath>

namespace staticgeo {

// Second-order forward-mode jet: value and first two derivatives with
// respect to a single scalar variable. Closed-form radial functions are
// written once against Jet and get exact f' and f'' for free.
struct Jet {
  double f = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  constexpr Jet() = default;
  constexpr Jet(double value) : f(value) {}  // NOLINT: constants promote implicitly
  constexpr Jet(double value, double first, double second)
      : f(value), d1(first), d2(second) {}

  static constexpr Jet variable(double x) { return {x, 1.0, 0.0}; }
};

// Chain rule for g(x) given g, g', g'' evaluated at x.f.
constexpr Jet chain(const Jet& x, double g, double g1, double g2) {
  return {g, g1 * x.d1, g2 * x.d1 * x.d1 + g1 * x.d2};
}

constexpr Jet operator-(const Jet& x) { return {-x.f, -x.d1, -x.d2}; }

constexpr Jet operator+(const Jet& a, const Jet& b) {
  return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2};
}

constexpr Jet operator-(const Jet& a, const Jet& b) {
  return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2};
}

constexpr Jet operator*(const Jet& a, const Jet& b) {
  return {a.f * b.f, a.d1 * b.f + a.f * b.d1,
          a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2};
}

constexpr Jet reciprocal(const Jet& x) {
  const double inv = 1.0 / x.f;
  return chain(x, inv, -inv * inv, 2.0 * inv * inv * inv);
}

constexpr Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

inline Jet& operator+=(Jet& a, const Jet& b) { return a = a + b; }
inline Jet& operator-=(Jet& a, const Jet& b) { return a = a - b; }
inline Jet& operator*=(Jet& a, const Jet& b) { return a = a * b; }

inline Jet pow(const Jet& x, double p) {
  const double g = std::pow(x.f, p);
  if (p == 0.0) return {1.0, 0.0, 0.0};
  const double g1 = p * std::pow(x.f, p - 1.0);
  const double g2 = p * (p - 1.0) * std::pow(x.f, p - 2.0);
  return chain(x, g, g1, g2);
}

inline Jet sqrt(const Jet& x) {
  const double s = std::sqrt(x.f);
  return chain(x, s, 0.5 / s, -0.25 / (s * x.f));
}

inline Jet exp(const Jet& x) {
  const double e = std::exp(x.f);
  return chain(x, e, e, e);
}

inline Jet log(const Jet& x) {
  return chain(x, std::log(x.f), 1.0 / x.f, -1.0 / (x.f * x.f));
}

inline Jet sin(const Jet& x) {
  const double s = std::sin(x.f);
  return chain(x, s, std::cos(x.f), -s);
}

inline Jet cos(const Jet& x) {
  const double c = std::cos(x.f);
  return chain(x, c, -std::sin(x.f), -c);
}

}  // namespace staticgeo
