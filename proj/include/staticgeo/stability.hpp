#pragma once

#include <vector>

#include "staticgeo/manifold.hpp"
#include "staticgeo/report.hpp"

namespace staticgeo {

// Spectrum of S = -Delta - c on zero-mean axisymmetric functions of a round
// umbilic CMC sphere of area radius r0.
struct StabilitySpectrum {
  Dim n{3};
  double r0 = 0.0;
  double H0 = 0.0;
  double c = 0.0;
  std::vector<double> eigenvalues;
};

// |h|^2 + Ric(nu, nu) for an umbilic round sphere in ambient scalar curvature Rg.
double stability_potential(Dim n, double r0, double H0, double Rg);

double lambda1_round(Dim n, double r0, double H0, double Rg);

// n(n-1) m0 / r0^n.
double schwarzschild_stability_threshold(Dim n, double r0, double H0);

// Same numerator over r0^{n-1}; reported alongside, never used for verdicts.
double threshold_r0_pow_n_minus_1(Dim n, double r0, double H0);

struct SpectrumOptions {
  // Fourth-order correction of the lumped-mass eigenvalues; off gives the
  // raw second-order scheme.
  bool compact_correction = true;
};

// First l_max nonzero eigenvalues of -(u'' + (n-2) cot(theta) u') / r0^2.
// Requires N >= 8 l_max.
std::vector<double> laplace_spectrum_axisymmetric(Dim n, double r0, int l_max, int N,
                                                  SpectrumOptions opts = {});

StabilitySpectrum stability_spectrum(Dim n, double r0, double H0, double Rg, int l_max,
                                     int N = 512);

InequalityReport eigenvalue_bound_check(Dim n, double r0, double H0, double Rg,
                                        double tol = 1e-12);

// Smallest eigenvalue of -Delta - ((n-1)/r0^2 - n(n-1) m0 / r0^n) on zero-mean
// axisymmetric functions. No hypothesis on m0.
double extension_operator_min_eigenvalue(Dim n, double r0, double H0, int N = 512);

// Requires m0 > 1e-9 r0^{n-2} (HypothesisError otherwise); slack is the smallest eigenvalue.
InequalityReport extension_kernel_check(Dim n, double r0, double H0, int N = 512);

}  // namespace staticgeo
