#include "staticgeo/imcf_flow.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "staticgeo/quantities.hpp"

namespace staticgeo {

namespace ode = boost::numeric::odeint;

void FlowConfig::validate() const {
  auto in_range = [](double tol) { return tol >= 1e-13 && tol <= 1e-3; };
  if (!in_range(rel_tol) || !in_range(abs_tol)) {
    throw ParameterError("flow tolerances must lie in [1e-13, 1e-3]");
  }
  if (N < 32) throw ParameterError("flow grid needs N >= 32");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ParameterError("t_max must be positive");
  if (!(dt_init > 0.0)) throw ParameterError("dt_init must be positive");
  if (!(output_dt >= 0.0)) throw ParameterError("output_dt must be non-negative");
}

namespace {

bool near(double a, double b) {
  return std::abs(a - b) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(b));
}

// Adaptive dopri5 loop with an optional step cap that lands exactly on output times.
template <class State, class System, class Cap, class Check, class Record>
void drive(System sys, State& x, const FlowConfig& cfg, Cap cap, Check check, Record record) {
  auto stepper = ode::make_controlled(cfg.abs_tol, cfg.rel_tol, ode::runge_kutta_dopri5<State>());
  double t = 0.0;
  double dt = cfg.dt_init;
  check(x, t);
  record(x, t);
  long out_k = 1;
  while (t < cfg.t_max) {
    const double target =
        cfg.output_dt > 0.0 ? std::min(out_k * cfg.output_dt, cfg.t_max) : cfg.t_max;
    double step = std::min(dt, cap(x, t));
    bool landing = false;
    if (t + step >= target || near(t + step, target)) {
      step = target - t;
      landing = true;
    }
    double trial = step;
    if (stepper.try_step(sys, x, t, trial) == ode::fail) {
      if (t + trial == t) {
        std::ostringstream msg;
        msg << "flow step size underflow at t=" << t << " (finite-time blow-up)";
        throw SingularFlowError(msg.str(), t);
      }
      dt = trial;
      continue;
    }
    if (landing || near(t, target)) t = target;
    check(x, t);
    const bool at_target = t == target;
    if (cfg.output_dt == 0.0 || at_target) record(x, t);
    if (at_target) ++out_k;
    dt = landing ? std::max(dt, trial) : trial;
  }
}

void check_speed(double u, double t) {
  if (!(u >= kSingularLow && u <= kSingularHigh)) {
    std::ostringstream msg;
    msg << "flow speed u=" << u << " left [" << kSingularLow << ", " << kSingularHigh
        << "] at t=" << t;
    throw SingularFlowError(msg.str(), t);
  }
}

}  // namespace

RadialFlowState imcf_ode_closed_form(Dim n, double r0, double H0, double t) {
  if (!(r0 > 0.0)) throw ParameterError("imcf_ode_closed_form requires r0 > 0");
  const double k = n.real() - 1.0;
  const double m0 = m0_of(n, r0, H0);
  const double r = r0 * std::exp(t / k);
  const double lapse_sq = 1.0 - 2.0 * m0 * std::pow(r, 2.0 - n.real());
  if (!(lapse_sq > 0.0)) {
    std::ostringstream msg;
    msg << "imcf_ode_closed_form: r=" << r << " inside the horizon of m0=" << m0;
    throw DomainError(msg.str());
  }
  return {t, r, r / (k * std::sqrt(lapse_sq))};
}

RadialTrajectory imcf_ode_solve(Dim n, double r0, double H0, const FlowConfig& cfg) {
  cfg.validate();
  if (!(r0 > 0.0)) throw ParameterError("imcf_ode_solve requires r0 > 0");
  if (!(H0 > 0.0)) throw ParameterError("imcf_ode_solve requires H0 > 0");
  const double k = n.real() - 1.0;
  const double linear = n.real() / (2.0 * k);
  const double cubic = k * (n.real() - 2.0) / (2.0 * r0 * r0);

  using State = std::array<double, 1>;
  auto sys = [=](const State& x, State& dxdt, double t) {
    const double u = x[0];
    dxdt[0] = linear * u - cubic * std::exp(-2.0 * t / k) * u * u * u;
  };
  RadialTrajectory traj;
  State x{1.0 / H0};
  drive(
      sys, x, cfg, [](const State&, double) { return std::numeric_limits<double>::infinity(); },
      [](const State& s, double t) { check_speed(s[0], t); },
      [&](const State& s, double t) { traj.push_back({t, r0 * std::exp(t / k), s[0]}); });
  return traj;
}

std::vector<double> pde_grid(int N) {
  if (N < 2) throw ParameterError("pde_grid needs N >= 2");
  std::vector<double> theta(static_cast<std::size_t>(N) + 1);
  const double h = std::numbers::pi / N;
  for (int i = 0; i <= N; ++i) theta[i] = i * h;
  theta[N] = std::numbers::pi;
  return theta;
}

AxiTrajectory imcf_pde_solve(Dim n, double r0, const std::vector<double>& u0,
                             const FlowConfig& cfg, const PdeOptions& opts) {
  cfg.validate();
  if (!(r0 > 0.0)) throw ParameterError("imcf_pde_solve requires r0 > 0");
  const int N = cfg.N;
  const std::size_t nodes = static_cast<std::size_t>(N) + 1;
  if (u0.size() != nodes) {
    throw ParameterError("imcf_pde_solve: u0 must hold N + 1 = " + std::to_string(nodes) +
                         " nodal values");
  }
  for (double v : u0) {
    if (!(v > 0.0)) throw ParameterError("imcf_pde_solve requires u0 > 0");
  }
  std::vector<double> R_sigma = opts.R_sigma;
  if (R_sigma.empty()) {
    R_sigma.assign(nodes, (n.real() - 1.0) * (n.real() - 2.0) / (r0 * r0));
  } else if (R_sigma.size() != nodes) {
    throw ParameterError("imcf_pde_solve: R_sigma must hold N + 1 nodal values");
  }

  const double k = n.real() - 1.0;
  const double h = std::numbers::pi / N;
  const double inv_h2 = 1.0 / (h * h);
  const double inv_2h = 0.5 / h;
  const double inv_r2 = 1.0 / (r0 * r0);
  const double linear = n.real() / (2.0 * k);
  const double half_R_bar = 0.5 * opts.R_bar;

  // Mirrored so that data even about the equator stays even bit for bit.
  std::vector<double> cot(nodes, 0.0);
  for (int i = 1; 2 * i < N; ++i) {
    const double c = (n.real() - 2.0) / std::tan(i * h);
    cot[i] = c;
    cot[N - i] = -c;
  }

  using State = std::vector<double>;
  auto sys = [&](const State& u, State& du, double t) {
    const double e = std::exp(-2.0 * t / k);
    auto reaction = [&](std::size_t i) {
      const double ui = u[i];
      return linear * ui + (half_R_bar - 0.5 * R_sigma[i] * e) * ui * ui * ui;
    };
    const double pole0 = 2.0 * k * (u[1] - u[0]) * inv_h2 * inv_r2;
    du[0] = e * u[0] * u[0] * pole0 + reaction(0);
    for (int i = 1; i < N; ++i) {
      const double second = ((u[i + 1] + u[i - 1]) - 2.0 * u[i]) * inv_h2;
      const double first = (u[i + 1] - u[i - 1]) * inv_2h;
      const double lap = (second + cot[i] * first) * inv_r2;
      du[i] = e * u[i] * u[i] * lap + reaction(i);
    }
    const double poleN = 2.0 * k * (u[N - 1] - u[N]) * inv_h2 * inv_r2;
    du[N] = e * u[N] * u[N] * poleN + reaction(N);
  };
  auto cap = [&](const State& u, double t) {
    const double umax = *std::max_element(u.begin(), u.end());
    const double limit = 0.2 * h * h * r0 * r0 * std::exp(2.0 * t / k) / (umax * umax);
    if (limit < 1e-12) {
      std::ostringstream msg;
      msg << "parabolic step bound " << limit << " below 1e-12 at t=" << t;
      throw StiffnessError(msg.str(), t);
    }
    return limit;
  };
  auto check = [](const State& u, double t) {
    for (double v : u) check_speed(v, t);
  };

  const std::vector<double> theta = pde_grid(N);
  AxiTrajectory traj;
  State x = u0;
  drive(sys, x, cfg, cap, check,
        [&](const State& u, double t) { traj.push_back({t, theta, u, n, r0}); });
  return traj;
}

InequalityReport area_growth_check(const RadialTrajectory& traj, Dim n, double r0, double tol) {
  if (traj.empty()) throw ParameterError("area_growth_check: empty trajectory");
  const double k = n.real() - 1.0;
  const double w = unit_sphere_area(n);
  const double area0 = w * std::pow(r0, k);
  double worst = 0.0;
  double worst_t = 0.0;
  for (const auto& s : traj) {
    const double ratio = w * std::pow(s.r, k) / area0;
    const double dev = std::abs(ratio * std::exp(-s.t) - 1.0);
    if (dev > worst) {
      worst = dev;
      worst_t = s.t;
    }
  }
  const auto& last = traj.back();
  auto rep = make_report("area_growth", std::pow(last.r / r0, k), std::exp(last.t), -worst, tol);
  rep.details = {{"t_worst", worst_t}, {"t_final", last.t}};
  return rep;
}

InequalityReport area_growth_check(const AxiTrajectory& traj, double tol) {
  if (traj.empty()) throw ParameterError("area_growth_check: empty trajectory");
  const Dim n = traj.front().n;
  const double r0 = traj.front().r0;
  const double k = n.real() - 1.0;
  RadialTrajectory radial;
  radial.reserve(traj.size());
  for (const auto& s : traj) radial.push_back({s.t, r0 * std::exp(s.t / k), 0.0});
  return area_growth_check(radial, n, r0, tol);
}

double rescaled_mean_curvature(const RadialFlowState& s, Dim n) {
  return std::exp(s.t / (n.real() - 1.0)) / s.u;
}

FlowMetric flow_to_metric(const RadialTrajectory& traj, Dim n, double r0, double tol) {
  if (traj.empty()) throw ParameterError("flow_to_metric: empty trajectory");
  const double k = n.real() - 1.0;
  FlowMetric out;
  out.m0 = m0_of(n, r0, 1.0 / traj.front().u);
  double worst = 0.0;
  double worst_r = traj.front().r;
  for (const auto& s : traj) {
    const double a = std::pow(k * s.u / s.r, 2.0);
    const double ref = 1.0 / (1.0 - 2.0 * out.m0 * std::pow(s.r, 2.0 - n.real()));
    out.r.push_back(s.r);
    out.a.push_back(a);
    out.a_reference.push_back(ref);
    const double dev = std::abs(a / ref - 1.0);
    if (dev > worst) {
      worst = dev;
      worst_r = s.r;
    }
  }
  if (out.r.size() >= 3) {
    WarpedStaticMetric g;
    g.dim = n;
    g.r_min = out.r.front();
    g.r_max = out.r.back();
    g.a = RadialFn::tabulated(out.r, out.a);
    g.b = RadialFn::tabulated(out.r, out.r);
    g.label = "imcf-reconstruction";
    out.metric = std::move(g);
  }
  out.report = make_report("flow_to_metric", worst, 0.0, -worst, tol);
  out.report.details = {{"m0", out.m0}, {"r_worst", worst_r}};
  return out;
}

}  // namespace staticgeo
