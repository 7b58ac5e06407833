#pragma once

#include <optional>
#include <vector>

#include "staticgeo/manifold.hpp"
#include "staticgeo/report.hpp"

namespace staticgeo {

struct FlowConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double t_max = 10.0;
  int N = 128;
  double dt_init = 1e-3;
  // States are recorded at multiples of output_dt (and at t_max); 0 records every step.
  double output_dt = 0.1;

  // Throws ParameterError on tolerances outside [1e-13, 1e-3], N < 32, etc.
  void validate() const;
};

inline constexpr double kSingularLow = 1e-8;
inline constexpr double kSingularHigh = 1e8;

struct RadialFlowState {
  double t = 0.0;
  double r = 0.0;
  double u = 0.0;
};

struct AxiFlowState {
  double t = 0.0;
  std::vector<double> theta;
  std::vector<double> u;
  Dim n{3};
  double r0 = 0.0;
};

using RadialTrajectory = std::vector<RadialFlowState>;
using AxiTrajectory = std::vector<AxiFlowState>;

RadialTrajectory imcf_ode_solve(Dim n, double r0, double H0, const FlowConfig& cfg = {});

RadialFlowState imcf_ode_closed_form(Dim n, double r0, double H0, double t);

// Nodes theta_i = i pi / N, i = 0..N, poles included.
std::vector<double> pde_grid(int N);

struct PdeOptions {
  double R_bar = 0.0;              // ambient scalar curvature
  std::vector<double> R_sigma;     // nodal scalar curvature of sigma_0; empty = round
};

// u0 holds N + 1 nodal values on pde_grid(cfg.N).
AxiTrajectory imcf_pde_solve(Dim n, double r0, const std::vector<double>& u0,
                             const FlowConfig& cfg = {}, const PdeOptions& opts = {});

// Relative deviation of |Sigma_t| / |Sigma_0| from e^t; slack = -max deviation.
InequalityReport area_growth_check(const RadialTrajectory& traj, Dim n, double r0,
                                   double tol = 1e-12);
InequalityReport area_growth_check(const AxiTrajectory& traj, double tol = 1e-12);

// H e^{t/(n-1)} along a radial trajectory state.
double rescaled_mean_curvature(const RadialFlowState& s, Dim n);

struct FlowMetric {
  std::vector<double> r;
  std::vector<double> a;
  std::vector<double> a_reference;
  double m0 = 0.0;
  // Tabulated a(r), b(r) = r; V is left unset. Needs at least 3 states.
  std::optional<WarpedStaticMetric> metric;
  InequalityReport report;  // slack = -max relative deviation of a
};

// a(r) = ((n-1) u / r)^2 against the Schwarzschild value for m0 of the initial sphere.
FlowMetric flow_to_metric(const RadialTrajectory& traj, Dim n, double r0, double tol = 1e-7);

}  // namespace staticgeo
