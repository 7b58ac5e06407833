#include "staticgeo/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "staticgeo/conformal.hpp"
#include "staticgeo/imcf_flow.hpp"
#include "staticgeo/json_io.hpp"
#include "staticgeo/quantities.hpp"
#include "staticgeo/stability.hpp"
#include "staticgeo/surfaces.hpp"

namespace staticgeo::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kChecks = {
    "static_residual",    "adm_mass_constancy",  "minkowski",
    "levelset_minkowski", "willmore",            "bartnik_mass_identity",
    "conformal_minkowski", "conformal_ricci_residual", "mass_flip",
    "vh_identity",        "flip_involution",     "eigenvalue_bound",
    "extension_kernel",   "hawking_vs_q",        "holder_chain",
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

std::string hex64(std::uint64_t x) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << x;
  return s.str();
}

json header(const std::string& command, const json& config) {
  return {{"type", "header"},
          {"command", command},
          {"timestamp", utc_timestamp()},
          {"version", kVersion},
          {"config_digest", hex64(fnv1a64(config.dump()))},
          {"config", config}};
}

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// Writes to --out when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  void line(const json& j) { *os_ << j.dump() << '\n'; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

int thread_count() {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("STATICGEO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) threads = static_cast<int>(std::min(v, 256L));
  }
  return threads;
}

// Runs body(i) for i in [0, count) on a small pool; results are index-addressed by the caller.
template <class Body>
void parallel_for(std::size_t count, Body body) {
  const int threads = static_cast<int>(std::min<std::size_t>(thread_count(), std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------- check suite

struct MetricCase {
  int n = 3;
  std::optional<double> m;
  WarpedStaticMetric g;
  std::optional<ConformalPair> pair;
  std::string pair_error;
  double reference_mass = 0.0;
  std::vector<double> radii;
};

std::vector<double> case_radii(const SuiteConfig& cfg, const WarpedStaticMetric& g) {
  std::vector<double> radii = cfg.radii;
  if (radii.empty()) {
    if (std::isfinite(g.r_max)) {
      for (int k = 1; k <= cfg.ladder_count; ++k) {
        radii.push_back(g.r_min + (g.r_max - g.r_min) * k / cfg.ladder_count);
      }
    } else {
      radii = default_radius_ladder(g.r_min, cfg.ladder_count);
    }
  }
  if (cfg.random_radii > 0) {
    const auto [lo_it, hi_it] = std::minmax_element(radii.begin(), radii.end());
    const double lo = std::log(std::max(*lo_it, 1e-300));
    const double hi = std::log(*hi_it);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < cfg.random_radii; ++k) radii.push_back(std::exp(lo + (hi - lo) * unit(rng)));
  }
  return radii;
}

std::vector<MetricCase> build_cases(const SuiteConfig& cfg) {
  std::vector<MetricCase> cases;
  auto finish = [&](MetricCase c) {
    try {
      c.pair = conformal_flip(c.g);
    } catch (const Error& e) {
      c.pair_error = e.what();
    }
    c.reference_mass = std::isfinite(c.g.r_max) ? adm_mass(c.g, c.g.r_max) : adm_mass_at_infinity(c.g);
    c.radii = case_radii(cfg, c.g);
    cases.push_back(std::move(c));
  };
  try {
    if (cfg.metric.starts_with("file:")) {
      MetricCase c;
      c.g = catalog_metric(cfg.metric, Dim(3), 0.0);
      c.n = c.g.dim.value();
      finish(std::move(c));
      return cases;
    }
    for (int n : cfg.n) {
      for (double m : cfg.m) {
        MetricCase c;
        c.n = n;
        c.m = m;
        c.g = catalog_metric(cfg.metric, Dim(n), m);
        finish(std::move(c));
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return cases;
}

struct Outcome {
  std::vector<InequalityReport> reports;
  std::string status;  // "ok", "not_applicable", "error"
  std::string message;
};

Outcome evaluate(const MetricCase& c, double r, const std::string& check, double tol_override) {
  auto tol = [&](double def) { return tol_override > 0.0 ? tol_override : def; };
  const WarpedStaticMetric& g = c.g;
  const Dim n = g.dim;
  Outcome out{{}, "ok", {}};
  auto need_pair = [&]() -> const ConformalPair& {
    if (!c.pair) throw DomainError(c.pair_error);
    return *c.pair;
  };
  try {
    if (check == "static_residual") {
      const auto s = static_residual(g, r);
      auto rep = make_report(check, s.max_abs(), 0.0, -s.max_abs(), tol(kResidualTol));
      rep.details = {{"harmonic", s.harmonic}, {"radial", s.radial}, {"spherical", s.spherical}};
      out.reports.push_back(rep);
    } else if (check == "adm_mass_constancy") {
      const double m = adm_mass(g, r);
      const double dev = std::abs(m - c.reference_mass) / std::max(1.0, std::abs(c.reference_mass));
      out.reports.push_back(make_report(check, m, c.reference_mass, -dev, tol(kMassTol)));
    } else if (check == "minkowski") {
      out.reports.push_back(minkowski_check(g, r, c.reference_mass, tol(kEqualityTol)));
    } else if (check == "levelset_minkowski") {
      out.reports.push_back(levelset_minkowski_check(g, r, tol(kEqualityTol)));
    } else if (check == "willmore") {
      out.reports.push_back(willmore_check(g, r, tol(kEqualityTol)));
    } else if (check == "bartnik_mass_identity") {
      out.reports.push_back(bartnik_mass_identity_check(g, r, tol(kEqualityTol)));
    } else if (check == "conformal_minkowski") {
      out.reports.push_back(conformal_minkowski_check(g, r, tol(kEqualityTol)));
    } else if (check == "conformal_ricci_residual") {
      const auto s = conformal_ricci_residual(g, r);
      auto rep = make_report(check, s.max_abs(), 0.0, -s.max_abs(), tol(kResidualTol));
      rep.details = {{"radial", s.radial}, {"spherical", s.spherical}, {"harmonic", s.harmonic}};
      out.reports.push_back(rep);
    } else if (check == "mass_flip") {
      out.reports.push_back(mass_flip_check(need_pair(), r, tol(kMassTol)));
    } else if (check == "vh_identity") {
      out.reports.push_back(vh_identity_check(need_pair(), r, tol(kEqualityTol)));
    } else if (check == "flip_involution") {
      const ConformalPair twice = conformal_flip(need_pair().flipped);
      g.require_in_domain(r, check);
      double worst = 0.0;
      for (auto [x, y] : {std::pair{&twice.flipped.a, &g.a}, {&twice.flipped.b, &g.b},
                          {&twice.flipped.V, &g.V}}) {
        worst = std::max(worst, std::abs(x->value(r) - y->value(r)));
      }
      out.reports.push_back(make_report(check, worst, 0.0, -worst, tol(1e-12)));
    } else if (check == "eigenvalue_bound") {
      const SphereReport s = sphere_geometry(g, r);
      const double Rg = warped_frame(g.a(r), g.b(r), g.V(r)).scalar_curvature(n);
      out.reports.push_back(eigenvalue_bound_check(n, s.r0, s.H, Rg, tol(1e-12)));
    } else if (check == "extension_kernel") {
      const SphereReport s = sphere_geometry(g, r);
      auto rep = extension_kernel_check(n, s.r0, s.H, 512);
      if (tol_override > 0.0) rep = make_report(rep.name, rep.lhs, rep.rhs, rep.slack, tol_override);
      out.reports.push_back(rep);
    } else if (check == "hawking_vs_q" || check == "holder_chain") {
      if (n.value() != 3) {
        out.status = "not_applicable";
        out.message = "surface checks are defined for n = 3 only";
        return out;
      }
      const AxiSurface s = make_surface(g, constant_profile(r));
      if (check == "hawking_vs_q") {
        out.reports.push_back(hawking_vs_q(s, tol(kEqualityTol)));
      } else {
        auto [a, b] = holder_chain_check(s, tol(kEqualityTol));
        out.reports.push_back(a);
        out.reports.push_back(b);
      }
    } else {
      throw ConfigError("unknown check '" + check + "'");
    }
    for (auto& rep : out.reports) rep.details["r"] = r;
  } catch (const HypothesisError& e) {
    out.reports.clear();
    out.status = "not_applicable";
    out.message = e.what();
  } catch (const Error& e) {
    out.reports.clear();
    out.status = "error";
    out.message = e.what();
  }
  return out;
}

std::vector<std::string> expand_checks(const std::vector<std::string>& checks) {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (c == "all") {
      out.insert(out.end(), kChecks.begin(), kChecks.end());
    } else {
      out.push_back(c);
    }
  }
  return out;
}

int cmd_check(const SuiteConfig& cfg, std::ostream& os) {
  const std::vector<MetricCase> cases = build_cases(cfg);
  const std::vector<std::string> checks = expand_checks(cfg.checks);

  struct Task {
    std::size_t case_index;
    double r;
    const std::string* check;
  };
  std::vector<Task> tasks;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    for (double r : cases[ci].radii) {
      for (const auto& check : checks) tasks.push_back({ci, r, &check});
    }
  }
  std::vector<Outcome> outcomes(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    outcomes[i] = evaluate(cases[tasks[i].case_index], tasks[i].r, *tasks[i].check, cfg.tol);
  });

  Sink sink(cfg.out, os);
  std::ofstream csv;
  if (!cfg.plot_data.empty()) {
    csv.open(cfg.plot_data);
    if (!csv) throw ConfigError("cannot open plot-data file '" + cfg.plot_data + "'");
    csv << "index,check,metric,n,m,r,lhs,rhs,slack,satisfied\n";
    csv << std::setprecision(17);
  }
  sink.line(header("check", cfg.to_json()));
  std::size_t index = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t not_applicable = 0;
  std::size_t errors = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const MetricCase& c = cases[tasks[i].case_index];
    json base = {{"type", "check"},
                 {"metric", c.g.label},
                 {"n", c.n},
                 {"m", c.m ? json(*c.m) : json(nullptr)},
                 {"r", tasks[i].r},
                 {"check", *tasks[i].check}};
    const Outcome& o = outcomes[i];
    if (o.status != "ok") {
      json rec = base;
      rec["index"] = index++;
      rec["status"] = o.status;
      rec["message"] = o.message;
      sink.line(rec);
      (o.status == "error" ? errors : not_applicable)++;
      continue;
    }
    for (const auto& rep : o.reports) {
      json rec = base;
      rec["index"] = index;
      rec["status"] = rep.satisfied ? "pass" : "fail";
      rec["report"] = to_json(rep);
      sink.line(rec);
      (rep.satisfied ? passed : failed)++;
      if (csv.is_open()) {
        csv << index << ',' << rep.name << ',' << c.g.label << ',' << c.n << ','
            << (c.m ? std::to_string(*c.m) : std::string()) << ',' << tasks[i].r << ',' << rep.lhs
            << ',' << rep.rhs << ',' << rep.slack << ',' << (rep.satisfied ? 1 : 0) << '\n';
      }
      ++index;
    }
  }
  const int code = (failed + errors) > 0 ? kViolated : kOk;
  sink.line({{"type", "summary"},
             {"records", index},
             {"passed", passed},
             {"failed", failed},
             {"not_applicable", not_applicable},
             {"errors", errors},
             {"exit_code", code}});
  return code;
}

// ---------------------------------------------------------------------- flow

struct FlowArgs {
  int n = 3;
  double r0 = 4.0;
  double H0 = 0.0;
  double R_bar = 0.0;
  std::vector<std::string> perturb;
  FlowConfig cfg;
  std::string out;
  std::string plot_data;
};

std::map<int, double> parse_coeffs(const std::vector<std::string>& items) {
  std::map<int, double> coeffs;
  for (const auto& item : items) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("perturbation '" + item + "' is not l:eps");
    try {
      std::size_t used_l = 0;
      std::size_t used_e = 0;
      const std::string ls = item.substr(0, colon);
      const std::string es = item.substr(colon + 1);
      const int l = std::stoi(ls, &used_l);
      const double e = std::stod(es, &used_e);
      if (used_l != ls.size() || used_e != es.size() || l < 0) throw std::invalid_argument(item);
      coeffs[l] = e;
    } catch (const std::exception&) {
      throw ConfigError("perturbation '" + item + "' is not l:eps");
    }
  }
  return coeffs;
}

json flow_config_json(const FlowArgs& a, const std::string& kind) {
  return {{"kind", kind},          {"n", a.n},
          {"r0", a.r0},            {"H0", a.H0},
          {"R_bar", a.R_bar},      {"perturb", a.perturb},
          {"rel_tol", a.cfg.rel_tol}, {"abs_tol", a.cfg.abs_tol},
          {"t_max", a.cfg.t_max},  {"N", a.cfg.N},
          {"dt_init", a.cfg.dt_init}, {"output_dt", a.cfg.output_dt}};
}

json flow_error(const char* kind, const std::string& what, double t) {
  return {{"type", "error"}, {"kind", kind}, {"t", t}, {"message", what}};
}

int cmd_flow_ode(const FlowArgs& a, std::ostream& os, std::ostream& err) {
  const Dim n(a.n);
  a.cfg.validate();
  if (!(a.r0 > 0.0) || !(a.H0 > 0.0)) throw ConfigError("flow ode requires r0 > 0 and H0 > 0");
  Sink sink(a.out, os);
  sink.line(header("flow ode", flow_config_json(a, "ode")));
  RadialTrajectory traj;
  try {
    traj = imcf_ode_solve(n, a.r0, a.H0, a.cfg);
  } catch (const SingularFlowError& e) {
    err << "singular flow: " << e.what() << '\n';
    sink.line(flow_error("singular_flow", e.what(), e.time()));
    sink.line({{"type", "summary"}, {"status", "singular"}, {"t_singular", e.time()}, {"exit_code", kViolated}});
    return kViolated;
  }
  const double w = unit_sphere_area(n);
  std::ofstream csv;
  if (!a.plot_data.empty()) {
    csv.open(a.plot_data);
    if (!csv) throw ConfigError("cannot open plot-data file '" + a.plot_data + "'");
    csv << "t,r,u,area\n" << std::setprecision(17);
  }
  double oracle = 0.0;
  for (const auto& s : traj) {
    const double area = w * std::pow(s.r, n.real() - 1.0);
    sink.line({{"type", "state"}, {"t", s.t}, {"r", s.r}, {"u", s.u}, {"area", area}});
    if (csv.is_open()) csv << s.t << ',' << s.r << ',' << s.u << ',' << area << '\n';
    try {
      const double ref = imcf_ode_closed_form(n, a.r0, a.H0, s.t).u;
      oracle = std::max(oracle, std::abs(s.u - ref) / ref);
    } catch (const DomainError&) {
      oracle = std::numeric_limits<double>::infinity();
    }
  }
  const auto area = area_growth_check(traj, n, a.r0);
  const auto metric = flow_to_metric(traj, n, a.r0);
  sink.line({{"type", "summary"},
             {"status", "ok"},
             {"states", traj.size()},
             {"m0", m0_of(n, a.r0, a.H0)},
             {"oracle_max_rel_err", num(oracle)},
             {"rescaled_H_final", rescaled_mean_curvature(traj.back(), n)},
             {"area_growth", to_json(area)},
             {"flow_to_metric", to_json(metric.report)},
             {"exit_code", kOk}});
  return kOk;
}

double legendre_value(const std::map<int, double>& coeffs, double x) {
  double sum = 1.0;
  double prev = 1.0;
  double cur = x;
  const int top = coeffs.empty() ? 0 : coeffs.rbegin()->first;
  if (auto it = coeffs.find(0); it != coeffs.end()) sum += it->second;
  if (auto it = coeffs.find(1); it != coeffs.end()) sum += it->second * x;
  for (int l = 1; l < top; ++l) {
    const double next = ((2.0 * l + 1.0) * x * cur - l * prev) / (l + 1);
    prev = cur;
    cur = next;
    if (auto it = coeffs.find(l + 1); it != coeffs.end()) sum += it->second * cur;
  }
  return sum;
}

int cmd_flow_pde(const FlowArgs& a, std::ostream& os, std::ostream& err) {
  const Dim n(a.n);
  a.cfg.validate();
  if (!(a.r0 > 0.0) || !(a.H0 > 0.0)) throw ConfigError("flow pde requires r0 > 0 and H0 > 0");
  const auto coeffs = parse_coeffs(a.perturb);
  const auto theta = pde_grid(a.cfg.N);
  std::vector<double> u0;
  for (double th : theta) u0.push_back(legendre_value(coeffs, std::cos(th)) / a.H0);
  for (double v : u0) {
    if (!(v > 0.0)) throw ConfigError("perturbed initial data is not positive");
  }
  Sink sink(a.out, os);
  sink.line(header("flow pde", flow_config_json(a, "pde")));
  AxiTrajectory traj;
  try {
    traj = imcf_pde_solve(n, a.r0, u0, a.cfg, {a.R_bar, {}});
  } catch (const SingularFlowError& e) {
    err << "singular flow: " << e.what() << '\n';
    sink.line(flow_error("singular_flow", e.what(), e.time()));
    sink.line({{"type", "summary"}, {"status", "singular"}, {"t_singular", e.time()}, {"exit_code", kViolated}});
    return kViolated;
  } catch (const StiffnessError& e) {
    err << "stiff flow: " << e.what() << '\n';
    sink.line(flow_error("stiffness", e.what(), e.time()));
    sink.line({{"type", "summary"}, {"status", "stiff"}, {"t_stiff", e.time()}, {"exit_code", kViolated}});
    return kViolated;
  }
  std::optional<RadialTrajectory> ode;
  if (a.R_bar == 0.0) {
    try {
      ode = imcf_ode_solve(n, a.r0, a.H0, a.cfg);
    } catch (const Error&) {
      ode.reset();
    }
  }
  std::ofstream csv;
  if (!a.plot_data.empty()) {
    csv.open(a.plot_data);
    if (!csv) throw ConfigError("cannot open plot-data file '" + a.plot_data + "'");
    csv << "t,theta,u\n" << std::setprecision(17);
  }
  const double k = n.real() - 1.0;
  const double w = unit_sphere_area(n);
  double ode_dev = 0.0;
  double parity = 0.0;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    const auto& s = traj[j];
    const double r = a.r0 * std::exp(s.t / k);
    sink.line({{"type", "state"}, {"t", s.t}, {"r", r}, {"u", s.u}, {"area", w * std::pow(r, k)}});
    const std::size_t N = s.u.size() - 1;
    for (std::size_t i = 0; i <= N; ++i) {
      if (csv.is_open()) csv << s.t << ',' << s.theta[i] << ',' << s.u[i] << '\n';
      parity = std::max(parity, std::abs(s.u[i] - s.u[N - i]));
      if (ode && j < ode->size() && (*ode)[j].t == s.t) {
        ode_dev = std::max(ode_dev, std::abs(s.u[i] - (*ode)[j].u) / (*ode)[j].u);
      }
    }
  }
  json summary = {{"type", "summary"},
                  {"status", "ok"},
                  {"states", traj.size()},
                  {"m0", m0_of(n, a.r0, a.H0)},
                  {"max_parity_deviation", parity},
                  {"area_growth", to_json(area_growth_check(traj))},
                  {"exit_code", kOk}};
  summary["ode_max_rel_dev"] = ode ? num(ode_dev) : json(nullptr);
  sink.line(summary);
  return kOk;
}

// ------------------------------------------------------------------- surface

struct SurfaceArgs {
  std::string metric = "schwarzschild";
  double m = 1.0;
  std::string profile;
  double r0 = 4.0;
  std::vector<std::string> perturb;
  int nodes = kDefaultSurfaceNodes;
  double tol = 0.0;
  std::string out;
};

int cmd_surface(const SurfaceArgs& a, std::ostream& os) {
  AxiSurface s;
  Profile profile = a.profile.empty() ? legendre_profile(a.r0, parse_coeffs(a.perturb))
                                      : load_profile_file(a.profile);
  try {
    s = make_surface(catalog_metric(a.metric, Dim(3), a.m), std::move(profile), a.nodes);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  const double tol = a.tol > 0.0 ? a.tol : kEqualityTol;
  json config = {{"metric", a.metric}, {"m", a.m},   {"profile", s.rho.description},
                 {"nodes", a.nodes},   {"tol", tol}};
  Sink sink(a.out, os);
  sink.line(header("surface", config));
  std::vector<InequalityReport> reports;
  try {
    sink.line({{"type", "surface"}, {"report", to_json(surface_report(s))}});
    reports.push_back(hawking_vs_q(s, tol));
    auto [c1, c2] = holder_chain_check(s, tol);
    reports.push_back(c1);
    reports.push_back(c2);
  } catch (const ResolutionError& e) {
    sink.line({{"type", "error"}, {"kind", "resolution"}, {"message", e.what()}});
    sink.line({{"type", "summary"}, {"status", "unresolved"}, {"exit_code", kViolated}});
    return kViolated;
  }
  std::size_t failed = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    sink.line({{"type", "check"}, {"index", i}, {"status", reports[i].satisfied ? "pass" : "fail"},
               {"report", to_json(reports[i])}});
    if (!reports[i].satisfied) ++failed;
  }
  const int code = failed > 0 ? kViolated : kOk;
  sink.line({{"type", "summary"}, {"records", reports.size()}, {"failed", failed}, {"exit_code", code}});
  return code;
}

}  // namespace

// ------------------------------------------------------------------- config

std::vector<std::string> known_checks() { return kChecks; }

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

json SuiteConfig::to_json() const {
  return {{"metric", metric},     {"n", n},
          {"m", m},               {"r", radii},
          {"ladder_count", ladder_count}, {"random_radii", random_radii},
          {"seed", seed},         {"checks", checks},
          {"tol", tol},           {"out", out},
          {"plot_data", plot_data}};
}

SuiteConfig suite_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("suite config must be a JSON object");
  static const std::vector<std::string> allowed = {"metric", "n", "m", "r", "ladder_count", "random_radii",
                                                   "seed", "checks", "tol", "out", "plot_data"};
  for (const auto& [key, _] : doc.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("suite config: unknown field '" + key + "'");
    }
  }
  SuiteConfig cfg;
  try {
    if (doc.contains("metric")) cfg.metric = doc.at("metric").get<std::string>();
    if (doc.contains("n")) cfg.n = doc.at("n").get<std::vector<int>>();
    if (doc.contains("m")) cfg.m = doc.at("m").get<std::vector<double>>();
    if (doc.contains("r")) cfg.radii = doc.at("r").get<std::vector<double>>();
    if (doc.contains("ladder_count")) cfg.ladder_count = doc.at("ladder_count").get<int>();
    if (doc.contains("random_radii")) cfg.random_radii = doc.at("random_radii").get<int>();
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    if (!doc.contains("checks")) throw ConfigError("suite config: 'checks' is required");
    cfg.checks = doc.at("checks").get<std::vector<std::string>>();
    if (doc.contains("tol")) cfg.tol = doc.at("tol").get<double>();
    if (doc.contains("out")) cfg.out = doc.at("out").get<std::string>();
    if (doc.contains("plot_data")) cfg.plot_data = doc.at("plot_data").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("suite config: ") + e.what());
  }
  return cfg;
}

void validate(const SuiteConfig& cfg) {
  if (cfg.metric.empty()) throw ConfigError("metric selector is empty");
  if (!cfg.metric.starts_with("file:")) {
    if (cfg.n.empty()) throw ConfigError("n list is empty");
    if (cfg.m.empty()) throw ConfigError("m list is empty");
    for (int n : cfg.n) {
      if (n < 3 || n > 7) throw ConfigError("n=" + std::to_string(n) + " outside 3..7");
    }
    for (double m : cfg.m) {
      if (!std::isfinite(m)) throw ConfigError("m values must be finite");
    }
  }
  if (cfg.checks.empty()) throw ConfigError("checks list is empty");
  for (const auto& c : cfg.checks) {
    if (c != "all" && std::find(kChecks.begin(), kChecks.end(), c) == kChecks.end()) {
      throw ConfigError("unknown check '" + c + "'");
    }
  }
  for (double r : cfg.radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("radii must be positive and finite");
  }
  if (cfg.ladder_count < 1) throw ConfigError("ladder_count must be at least 1");
  if (cfg.random_radii < 0) throw ConfigError("random_radii must be non-negative");
  if (cfg.tol < 0.0 || !std::isfinite(cfg.tol)) throw ConfigError("tolerance must be positive");
}

// ---------------------------------------------------------------------- main

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"numerical checks on asymptotically flat static manifolds", "staticgeo"};
  app.require_subcommand(1);

  auto* catalog_cmd = app.add_subcommand("catalog", "List the available metrics");

  SuiteConfig suite;
  std::string config_path;
  auto* check_cmd = app.add_subcommand("check", "Run a check suite over a parameter grid");
  check_cmd->add_option("--config", config_path, "JSON suite configuration");
  check_cmd->add_option("--metric", suite.metric, "Metric label or file:<path>");
  check_cmd->add_option("--n", suite.n, "Dimensions")->delimiter(',');
  check_cmd->add_option("--m", suite.m, "Mass parameters")->delimiter(',');
  check_cmd->add_option("--r", suite.radii, "Radii (default: log ladder)")->delimiter(',');
  check_cmd->add_option("--ladder-count", suite.ladder_count, "Radii in the default ladder");
  check_cmd->add_option("--random-radii", suite.random_radii, "Extra seeded random radii");
  check_cmd->add_option("--seed", suite.seed, "Seed for random radii");
  check_cmd->add_option("--checks", suite.checks, "Checks to run, or 'all'")->delimiter(',');
  check_cmd->add_option("--tol", suite.tol, "Override every check tolerance");
  check_cmd->add_option("--out", suite.out, "JSON-lines output path");
  check_cmd->add_option("--plot-data", suite.plot_data, "CSV output path");

  auto* flow_cmd = app.add_subcommand("flow", "Run an inverse mean curvature flow");
  flow_cmd->require_subcommand(1);
  FlowArgs flow;
  flow.H0 = 0.0;
  auto add_flow_options = [&flow](CLI::App* cmd) {
    cmd->add_option("--n", flow.n, "Dimension");
    cmd->add_option("--r0", flow.r0, "Initial area radius");
    cmd->add_option("--H0", flow.H0, "Initial mean curvature")->required();
    cmd->add_option("--t-max", flow.cfg.t_max, "Final flow time");
    cmd->add_option("--rel-tol", flow.cfg.rel_tol, "Relative integrator tolerance");
    cmd->add_option("--abs-tol", flow.cfg.abs_tol, "Absolute integrator tolerance");
    cmd->add_option("--dt-init", flow.cfg.dt_init, "Initial step");
    cmd->add_option("--output-dt", flow.cfg.output_dt, "Recording interval (0: every step)");
    cmd->add_option("--out", flow.out, "JSON-lines output path");
    cmd->add_option("--plot-data", flow.plot_data, "CSV output path");
  };
  auto* ode_cmd = flow_cmd->add_subcommand("ode", "Rotationally symmetric reduction");
  add_flow_options(ode_cmd);
  auto* pde_cmd = flow_cmd->add_subcommand("pde", "Axisymmetric method-of-lines solve");
  add_flow_options(pde_cmd);
  pde_cmd->add_option("--nodes", flow.cfg.N, "Grid intervals N (N + 1 nodes)");
  pde_cmd->add_option("--perturb", flow.perturb, "Legendre perturbation l:eps of 1/H0")->delimiter(',');
  pde_cmd->add_option("--R-bar", flow.R_bar, "Ambient scalar curvature");

  SurfaceArgs surf;
  auto* surface_cmd = app.add_subcommand("surface", "Evaluate an axisymmetric surface (n = 3)");
  surface_cmd->add_option("--metric", surf.metric, "Metric label");
  surface_cmd->add_option("--m", surf.m, "Mass parameter");
  surface_cmd->add_option("--profile", surf.profile, "JSON profile file");
  surface_cmd->add_option("--r0", surf.r0, "Base radius when no profile file is given");
  surface_cmd->add_option("--perturb", surf.perturb, "Legendre perturbation l:eps")->delimiter(',');
  surface_cmd->add_option("--nodes", surf.nodes, "Gauss-Legendre nodes");
  surface_cmd->add_option("--tol", surf.tol, "Override tolerance");
  surface_cmd->add_option("--out", surf.out, "JSON-lines output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  }

  try {
    if (catalog_cmd->parsed()) {
      for (const auto& entry : catalog()) {
        out << json{{"type", "metric"}, {"label", entry.label}, {"parameters", entry.parameters},
                    {"description", entry.description}}
                   .dump()
            << '\n';
      }
      return kOk;
    }
    if (check_cmd->parsed()) {
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot open config '" + config_path + "'");
        json doc;
        try {
          doc = json::parse(in);
        } catch (const json::exception& e) {
          throw ConfigError(std::string("config parse error: ") + e.what());
        }
        SuiteConfig from_file = suite_from_json(doc);
        // Command-line flags override the file where given.
        if (check_cmd->count("--metric")) from_file.metric = suite.metric;
        if (check_cmd->count("--n")) from_file.n = suite.n;
        if (check_cmd->count("--m")) from_file.m = suite.m;
        if (check_cmd->count("--r")) from_file.radii = suite.radii;
        if (check_cmd->count("--checks")) from_file.checks = suite.checks;
        if (check_cmd->count("--tol")) from_file.tol = suite.tol;
        if (check_cmd->count("--out")) from_file.out = suite.out;
        if (check_cmd->count("--plot-data")) from_file.plot_data = suite.plot_data;
        if (check_cmd->count("--seed")) from_file.seed = suite.seed;
        suite = from_file;
      } else {
        if (suite.n.empty()) suite.n = {3};
        if (suite.m.empty()) suite.m = {1.0};
        if (suite.checks.empty()) throw ConfigError("no checks requested (use --checks)");
      }
      if (check_cmd->count("--tol") && !(suite.tol > 0.0)) throw ConfigError("--tol must be positive");
      validate(suite);
      return cmd_check(suite, out);
    }
    if (flow_cmd->parsed()) {
      if (ode_cmd->parsed()) return cmd_flow_ode(flow, out, err);
      return cmd_flow_pde(flow, out, err);
    }
    if (surface_cmd->parsed()) return cmd_surface(surf, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const ParameterError& e) {
    err << "config error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const DimensionError& e) {
    err << "config error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kViolated;
  }
  return kBadConfig;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace staticgeo::cli
