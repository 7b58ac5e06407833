#include "staticgeo/stability.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "staticgeo/quantities.hpp"

namespace staticgeo {

namespace {

void require_radius(double r0) {
  if (!(r0 > 0.0)) throw ParameterError("area radius r0 must be positive");
}

// int_0^theta sin^k.
double sin_power_integral(int k, double theta) {
  if (k == 0) return theta;
  if (k == 1) return 1.0 - std::cos(theta);
  const double s = std::sin(theta);
  return -std::pow(s, k - 1) * std::cos(theta) / k +
         (static_cast<double>(k - 1) / k) * sin_power_integral(k - 2, theta);
}

}  // namespace

double stability_potential(Dim n, double r0, double H0, double Rg) {
  require_radius(r0);
  const double k = n.real() - 1.0;
  return n.real() * H0 * H0 / (2.0 * k) - k * (n.real() - 2.0) / (2.0 * r0 * r0) + 0.5 * Rg;
}

double lambda1_round(Dim n, double r0, double H0, double Rg) {
  return (n.real() - 1.0) / (r0 * r0) - stability_potential(n, r0, H0, Rg);
}

double schwarzschild_stability_threshold(Dim n, double r0, double H0) {
  require_radius(r0);
  return n.real() * (n.real() - 1.0) * m0_of(n, r0, H0) / std::pow(r0, n.real());
}

double threshold_r0_pow_n_minus_1(Dim n, double r0, double H0) {
  require_radius(r0);
  return n.real() * (n.real() - 1.0) * m0_of(n, r0, H0) / std::pow(r0, n.real() - 1.0);
}

std::vector<double> laplace_spectrum_axisymmetric(Dim n, double r0, int l_max, int N,
                                                  SpectrumOptions opts) {
  require_radius(r0);
  if (l_max < 1) throw ParameterError("l_max must be at least 1");
  if (N < 8 * l_max) throw ParameterError("laplace_spectrum_axisymmetric requires N >= 8 l_max");

  const int k = n.value() - 2;
  const double pi = std::numbers::pi;
  const double h = pi / N;
  const int nodes = N + 1;

  Eigen::VectorXd mass(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double lo = std::max(0.0, (i - 0.5) * h);
    const double hi = std::min(pi, (i + 0.5) * h);
    mass[i] = sin_power_integral(k, hi) - sin_power_integral(k, lo);
  }
  Eigen::VectorXd edge(N);
  for (int i = 0; i < N; ++i) edge[i] = std::pow(std::sin((i + 0.5) * h), k) / h;

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(nodes);
  Eigen::VectorXd sub(N);
  for (int i = 0; i < N; ++i) {
    diag[i] += edge[i];
    diag[i + 1] += edge[i];
    sub[i] = -edge[i] / std::sqrt(mass[i] * mass[i + 1]);
  }
  for (int i = 0; i < nodes; ++i) diag[i] /= mass[i];

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("tridiagonal eigensolve failed");
  const Eigen::VectorXd& mu_all = solver.eigenvalues();

  // K annihilates constants, so M^{1/2} 1 is an exact null vector of the
  // symmetric form; dropping the smallest eigenvalue deflates it.
  const double null_level = std::abs(mu_all[0]);
  if (null_level > 1e-8 * mu_all[nodes - 1] || mu_all[1] <= 1e3 * null_level) {
    throw Error("constant mode not isolated in the discrete spectrum");
  }

  std::vector<double> out;
  const double inv_r2 = 1.0 / (r0 * r0);
  for (Eigen::Index j = 1; j < mu_all.size() && std::ssize(out) < l_max; ++j) {
    double mu = mu_all[j];
    if (opts.compact_correction) mu /= 1.0 - mu * h * h / 12.0;
    out.push_back(mu * inv_r2);
  }
  return out;
}

StabilitySpectrum stability_spectrum(Dim n, double r0, double H0, double Rg, int l_max, int N) {
  StabilitySpectrum s{n, r0, H0, stability_potential(n, r0, H0, Rg), {}};
  s.eigenvalues = laplace_spectrum_axisymmetric(n, r0, l_max, N);
  for (double& ev : s.eigenvalues) ev -= s.c;
  return s;
}

InequalityReport eigenvalue_bound_check(Dim n, double r0, double H0, double Rg, double tol) {
  const double threshold = schwarzschild_stability_threshold(n, r0, H0);
  const double lhs = threshold - 0.5 * Rg;
  const double rhs = lambda1_round(n, r0, H0, Rg);
  auto rep = make_inequality("eigenvalue_bound", lhs, rhs, tol);
  rep.details = {{"threshold", threshold},
                 {"threshold_r0_pow_n_minus_1", threshold_r0_pow_n_minus_1(n, r0, H0)},
                 {"m0", m0_of(n, r0, H0)},
                 {"Rg", Rg}};
  return rep;
}

double extension_operator_min_eigenvalue(Dim n, double r0, double H0, int N) {
  const double shift =
      (n.real() - 1.0) / (r0 * r0) - schwarzschild_stability_threshold(n, r0, H0);
  return laplace_spectrum_axisymmetric(n, r0, 1, N).front() - shift;
}

InequalityReport extension_kernel_check(Dim n, double r0, double H0, int N) {
  const double m0 = m0_of(n, r0, H0);
  // m0 at the roundoff level of its natural scale r0^{n-2} counts as zero.
  if (!(m0 > 1e-9 * std::pow(r0, n.real() - 2.0))) {
    throw HypothesisError("extension_kernel_check requires m0 > 0 (got m0=" +
                          std::to_string(m0) + ")");
  }
  const double ev = extension_operator_min_eigenvalue(n, r0, H0, N);
  auto rep = make_report("extension_kernel", ev, 0.0, ev, 0.0);
  rep.details = {{"m0", m0},
                 {"threshold", schwarzschild_stability_threshold(n, r0, H0)},
                 {"threshold_r0_pow_n_minus_1", threshold_r0_pow_n_minus_1(n, r0, H0)},
                 {"N", static_cast<double>(N)}};
  return rep;
}

}  // namespace staticgeo
