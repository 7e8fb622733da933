#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <list>
#include <map>
#include <sstream>

#include "symspec/hardy.hpp"
#include "symspec/inequality.hpp"
#include "symspec/kernels.hpp"
#include "symspec/spherical.hpp"
#include "symspec/transform.hpp"
#include "symspec/wave.hpp"

namespace symspec::cli {

namespace {

using PT = ParamType;

std::vector<ParamSpec> with_common(std::vector<ParamSpec> p, bool grid) {
  p.insert(p.begin(), {"factors", PT::IntList, json::array({3}), false, "hyperbolic factor dimensions, e.g. 3 or 3,3"});
  if (grid) {
    p.push_back({"grid_n", PT::Int, nullptr, false, "radial nodes"});
    p.push_back({"grid_m", PT::Int, nullptr, false, "spectral nodes"});
    p.push_back({"grid_r_max", PT::Real, nullptr, false, "radial extent"});
    p.push_back({"grid_lam_max", PT::Real, nullptr, false, "spectral extent"});
  }
  return p;
}

std::vector<CommandSpec> build_commands() {
  std::vector<CommandSpec> c;
  c.push_back({"space", "info", "rank, dimension, rho and Weyl group order", with_common({}, false)});
  c.push_back({"spherical", "eval", "phi_lambda and phi_0 along the rho direction",
               with_common({{"lam", PT::RealList, json::array({0.0}), false, "spectral parameter (per factor or shared)"},
                            {"r_max", PT::Real, 10.0, false, "largest radius"},
                            {"points", PT::Int, 41, false, "table rows"}},
                           false)});
  c.push_back({"transform", "roundtrip", "round trip, Plancherel and heat-kernel checks",
               with_common({{"width", PT::Real, 1.0, false, "base Gaussian width of the suite"}}, true)});
  c.push_back({"kernel", "table", "Bessel-Green-Riesz kernel along the rho direction",
               with_common({{"sigma", PT::Real, nullptr, true, "order sigma > 0"},
                            {"xi", PT::Real, 0.0, false, "xi; 0 selects 8|rho|"},
                            {"r_min", PT::Real, 1e-3, false, "smallest radius"},
                            {"r_max", PT::Real, 15.0, false, "largest radius"},
                            {"points", PT::Int, 60, false, "log-spaced rows"}},
                           false)});
  c.push_back({"kernel", "asym", "small- and large-distance regime fits",
               with_common({{"sigma", PT::Real, 1.0, false, "order sigma > 0"},
                            {"xi", PT::Real, 0.0, false, "xi; 0 selects 8|rho|"},
                            {"points", PT::Int, 40, false, "samples per fit window"}},
                           false)});
  c.push_back({"hardy", "check", "D-conditions and random-f test of the integral Hardy inequality",
               with_common({{"p", PT::Real, 2.0, false, "p in (1, inf)"},
                            {"q", PT::Real, 2.0, false, "q >= p"},
                            {"u_pow", PT::Real, -1.0, false, "u = |x|^u_pow e^{u_exp |x|}"},
                            {"u_exp", PT::Real, nullptr, false, "default -(2|rho|(1+q/p')+1)"},
                            {"v_pow", PT::Real, 1.0, false, "v = |x|^v_pow e^{v_exp |x|}"},
                            {"v_exp", PT::Real, 0.0, false, ""},
                            {"s", PT::Real, 0.0, false, "s in (0, 1/p'); 0 selects 1/(2p')"},
                            {"adjoint", PT::Bool, false, false, "adjoint operator"},
                            {"trials", PT::Int, 100, false, "random test functions"},
                            {"r_count", PT::Int, 200, false, "R grid size"},
                            {"r_min", PT::Real, 1e-3, false, "smallest R"},
                            {"r_max", PT::Real, 30.0, false, "largest R"}},
                           false)});
  c.push_back({"ineq", "run", "admissibility and empirical best ratio",
               with_common({{"kind", PT::Str, nullptr, true,
                             "steinweiss|hls|hardysobolev|hardy|uncertainty|sobolev|gn|ckn"},
                            {"params", PT::Str, nullptr, true, "e.g. sigma=1,p=2,q=6,alpha=0,beta=0"},
                            {"family", PT::Str, "dilated", false, "dilated|shifted|bumps"},
                            {"budget", PT::Int, 200, false, "ratio evaluations"},
                            {"count", PT::Int, 10, false, "initial members"},
                            {"width_lo", PT::Real, 0.05, false, ""},
                            {"width_hi", PT::Real, 5.0, false, ""},
                            {"center_lo", PT::Real, 0.0, false, ""},
                            {"center_hi", PT::Real, 5.0, false, ""}},
                           true)});
  c.push_back({"wave", "linear", "damped Klein-Gordon flow of Gaussian data",
               with_common({{"b", PT::Real, 2.0, false, "damping b > 0"},
                            {"m", PT::Real, 2.0, false, "mass m > 0"},
                            {"T", PT::Real, 20.0, false, "final time"},
                            {"dt_record", PT::Real, 0.1, false, "output spacing"},
                            {"width", PT::Real, 1.0, false, "data width"},
                            {"amp0", PT::Real, 1.0, false, "u0 amplitude"},
                            {"amp1", PT::Real, 0.5, false, "u1 amplitude"}},
                           true)});
  c.push_back({"wave", "semilinear", "small-data semilinear solve with contraction diagnostics",
               with_common({{"b", PT::Real, 2.0, false, "damping b > 0"},
                            {"m", PT::Real, 2.0, false, "mass m > 0"},
                            {"p", PT::Real, 2.0, false, "nonlinearity power"},
                            {"mu", PT::Real, 1.0, false, "nonlinearity coefficient"},
                            {"eps", PT::Real, 1e-2, false, "||u0||_{H^1} + ||u1||_2"},
                            {"T", PT::Real, 20.0, false, "final time"},
                            {"dt", PT::Real, 0.01, false, "time step"},
                            {"record_every", PT::Real, 0.1, false, "output spacing"},
                            {"width", PT::Real, 1.0, false, "data width"}},
                           true)});
  for (auto& cmd : c) {
    cmd.params.push_back({"seed", PT::Int, 7, false, "master seed"});
    cmd.params.push_back({"out", PT::Str, "", false, "output path (stdout if empty)"});
    cmd.params.push_back({"format", PT::Str, "", false, "json|csv (default from --out extension)"});
  }
  return c;
}

std::string flag_name(const std::string& key) {
  std::string s = key;
  for (char& ch : s)
    if (ch == '_') ch = '-';
  return "--" + s;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

long long to_int(const std::string& key, const std::string& s) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("type mismatch for " + key + ": expected integer, got '" + s + "'");
}

double to_real(const std::string& key, const std::string& s) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("type mismatch for " + key + ": expected number, got '" + s + "'");
}

json coerce_text(const ParamSpec& p, const std::string& text) {
  const std::string s = trim(text);
  switch (p.type) {
    case PT::Int: return to_int(p.key, s);
    case PT::Real: return to_real(p.key, s);
    case PT::Str: return s;
    case PT::Bool:
      if (s == "true" || s == "1" || s == "yes") return true;
      if (s == "false" || s == "0" || s == "no") return false;
      throw UsageError("type mismatch for " + p.key + ": expected true/false");
    case PT::IntList: {
      json a = json::array();
      for (const auto& t : split(s, ',')) a.push_back(to_int(p.key, t));
      return a;
    }
    case PT::RealList: {
      json a = json::array();
      for (const auto& t : split(s, ',')) a.push_back(to_real(p.key, t));
      return a;
    }
  }
  return nullptr;
}

json coerce_json(const ParamSpec& p, const json& v) {
  if (v.is_string()) return coerce_text(p, v.get<std::string>());
  auto bad = [&]() { return UsageError("type mismatch for " + p.key + " in config"); };
  switch (p.type) {
    case PT::Int:
      if (!v.is_number_integer()) throw bad();
      return v;
    case PT::Real:
      if (!v.is_number()) throw bad();
      return v.get<double>();
    case PT::Str: throw bad();
    case PT::Bool:
      if (!v.is_boolean()) throw bad();
      return v;
    case PT::IntList:
    case PT::RealList: {
      json a = json::array();
      const json items = v.is_array() ? v : json::array({v});
      for (const auto& x : items) {
        if (p.type == PT::IntList && !x.is_number_integer()) throw bad();
        if (!x.is_number()) throw bad();
        a.push_back(p.type == PT::IntList ? json(x.get<long long>()) : json(x.get<double>()));
      }
      return a;
    }
  }
  return nullptr;
}

const ParamSpec& find_param(const CommandSpec& cmd, const std::string& key) {
  for (const auto& p : cmd.params)
    if (p.key == key) return p;
  throw UsageError("unknown key for '" + cmd.id() + "': " + key);
}

void apply_config_file(const CommandSpec& cmd, const std::string& path, json& params) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = trim(buf.str());
  if (!text.empty() && text.front() == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw UsageError(std::string("config file is not valid JSON: ") + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object()) throw UsageError("config: nested values are not supported (" + it.key() + ")");
      params[it.key()] = coerce_json(find_param(cmd, it.key()), it.value());
    }
    return;
  }
  for (const auto& raw : split(text, '\n')) {
    if (raw.empty() || raw[0] == '#') continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw UsageError("config line without '=': " + raw);
    const std::string key = trim(raw.substr(0, eq));
    params[key] = coerce_text(find_param(cmd, key), raw.substr(eq + 1));
  }
}

json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json vec(const VectorXd& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(num(v[i]));
  return a;
}

SpaceModel space_of(const json& params) {
  std::vector<int> f;
  for (const auto& x : params.at("factors")) f.push_back(x.get<int>());
  if (f.empty()) throw InadmissibleError("factors must not be empty");
  for (int n : f)
    if (n < 2) throw InadmissibleError("factor dimensions must be >= 2");
  return f.size() == 1 ? make_hyperbolic(f[0]) : make_product(f);
}

GridConfig grid_of(const json& params, GridConfig g) {
  if (!params.at("grid_n").is_null()) g.n_radial = params.at("grid_n").get<long long>();
  if (!params.at("grid_m").is_null()) g.n_spectral = params.at("grid_m").get<long long>();
  if (!params.at("grid_r_max").is_null()) g.r_max = params.at("grid_r_max").get<double>();
  if (!params.at("grid_lam_max").is_null()) g.lam_max = params.at("grid_lam_max").get<double>();
  if (g.n_radial < 16 || g.n_spectral < 16 || !(g.r_max > 0) || !(g.lam_max > 0))
    throw InadmissibleError("grid: need N, M >= 16 and positive extents");
  return g;
}

json grid_json(const GridConfig& g) {
  return {{"n_radial", g.n_radial}, {"n_spectral", g.n_spectral}, {"r_max", g.r_max}, {"lam_max", g.lam_max}};
}

GridConfig default_transform_grid(const SpaceModel& s) {
  return s.rank() == 1 ? GridConfig{} : GridConfig{512, 12.0, 512, 24.0};
}

double rel_sup(const MatrixXd& a, const MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff(); }

void set_table(json& rep, std::vector<std::string> cols, json rows) {
  rep["table"] = {{"columns", cols}, {"rows", std::move(rows)}};
}

ChamberPoint along_rho(const SpaceModel& s, double r) { return s.rho() / s.rho_norm() * r; }

// ---- commands ----

void cmd_space_info(const json& P, json& rep) {
  const SpaceModel s = space_of(P);
  json roots = json::array();
  for (const auto& r : s.roots()) roots.push_back({{"direction", r.direction}, {"multiplicity", r.multiplicity}});
  rep["result"] = {{"n", s.dim()},          {"rank", s.rank()},        {"nu", s.pseudo_dim()},
                   {"rho_norm", s.rho_norm()}, {"weyl_order", s.weyl_order()}, {"rho", vec(s.rho())},
                   {"roots", roots}};
}

void cmd_spherical_eval(const json& P, json& rep) {
  const SpaceModel s = space_of(P);
  const auto lams = P.at("lam").get<std::vector<double>>();
  VectorXd lam(s.rank());
  if (lams.size() == 1)
    lam.setConstant(lams[0]);
  else if (static_cast<int>(lams.size()) == s.rank())
    lam = Eigen::Map<const VectorXd>(lams.data(), lams.size());
  else
    throw InadmissibleError("lam: give one value or one per factor");
  if ((lam.array() < 0).any()) throw InadmissibleError("lam must be >= 0");
  const int points = P.at("points").get<int>();
  const double r_max = P.at("r_max").get<double>();
  if (points < 2 || !(r_max > 0)) throw InadmissibleError("need points >= 2 and r_max > 0");
  json rows = json::array();
  std::vector<double> radii;
  for (int k = 0; k < points; ++k) {
    const double r = r_max * k / (points - 1);
    radii.push_back(r);
    const ChamberPoint H = along_rho(s, r);
    const double phi0 = ground_spherical(s, H);
    rows.push_back({num(r), num(spherical_function(s, lam, H)), num(phi0), num(phi0 / ground_model(s, H))});
  }
  set_table(rep, {"r", "phi", "phi0", "phi0_over_model"}, rows);
  const BoundCheck bc = check_spherical_bound(s, lams, radii);
  rep["result"] = {{"lam", vec(lam)},
                   {"bound_samples", bc.samples},
                   {"bound_violations", bc.violations},
                   {"bound_worst_excess", num(bc.worst_excess)}};
}

void cmd_transform_roundtrip(const json& P, json& rep) {
  const SpaceModel s = space_of(P);
  const GridConfig g = grid_of(P, default_transform_grid(s));
  rep["grid"] = grid_json(g);
  const double w = P.at("width").get<double>();
  if (!(w > 0)) throw InadmissibleError("width must be positive");
  const SphericalTransform T(s, g);
  std::vector<std::pair<std::string, std::function<double(double)>>> suite;
  for (double k : {0.5, 0.75, 1.0, 1.5, 2.0}) {
    const double wk = w * k;
    suite.push_back({"gauss_w" + json(wk).dump(), [wk](double r) { return std::exp(-(r / wk) * (r / wk)); }});
  }
  for (double c : {1.0, 2.0, 3.0}) {
    const double wk = 0.7 * w;
    suite.push_back({"shifted_c" + json(c).dump(), [c, wk](double r) {
                       const double a = (r - c) / wk, b = (r + c) / wk;
                       return std::exp(-a * a) + std::exp(-b * b);
                     }});
  }
  suite.push_back({"r2_gauss", [w](double r) { return r * r * std::exp(-(r / w) * (r / w)); }});
  suite.push_back({"sech2_gauss", [w](double r) { return std::exp(-(r / w) * (r / w)) / std::pow(std::cosh(r), 2); }});
  json rows = json::array();
  double worst_rt = 0, worst_pl = 0;
  Warnings warn;
  for (const auto& [name, f] : suite) {
    const RadialFunction u = T.sample_radial(f);
    const SpectralFunction uh = T.forward(u);
    const RadialFunction back = T.inverse(uh);
    append_warnings(warn, back.warnings);
    const double rt = rel_sup(back.values, u.values);
    const double l2 = lp_norm(u, 2.0);
    const double pl = std::abs(spectral_l2_norm(uh) - l2) / l2;
    worst_rt = std::max(worst_rt, rt);
    worst_pl = std::max(worst_pl, pl);
    rows.push_back({name, num(rt), num(pl)});
  }
  set_table(rep, {"function", "roundtrip_rel_err", "plancherel_rel_err"}, rows);
  json res = {{"kappa", vec(T.calibration().kappa)},
              {"calibration_residual", num(T.calibration().residual)},
              {"worst_roundtrip", num(worst_rt)},
              {"worst_plancherel", num(worst_pl)}};
  if (pointwise_kernels_supported(s) && s.rank() == 1) {
    const double t = 1.0;
    const int n = s.dim();
    const RadialFunction h = T.sample_radial([&](double r) { return shifted_heat_kernel(n, t, r); });
    const SpectralFunction e = T.sample_spectral_sq([&](double l2) { return std::exp(-t * l2); });
    res["heat_forward_rel_err"] = num(rel_sup(T.forward(h).values, e.values));
    res["heat_inverse_rel_err"] = num(rel_sup(T.inverse(e).values, h.values));
  }
  rep["result"] = res;
  rep["warnings"] = warn;
}

void cmd_kernel_table(const json& P, json& rep) {
  const SpaceModel s = space_of(P);
  const KernelSpec spec = make_kernel_spec(s, P.at("sigma").get<double>(), P.at("xi").get<double>());
  const double lo = P.at("r_min").get<double>(), hi = P.at("r_max").get<double>();
  const int points = P.at("points").get<int>();
  if (!(lo > 0 && hi > lo) || points < 2) throw InadmissibleError("need 0 < r_min < r_max and points >= 2");
  json rows = json::array();
  for (int k = 0; k < points; ++k) {
    const double r = lo * std::pow(hi / lo, static_cast<double>(k) / (points - 1));
    rows.push_back({num(r), num(bgr_kernel_at(spec, along_rho(s, r)))});
  }
  set_table(rep, {"r", "G"}, rows);
  rep["result"] = {{"sigma", spec.sigma}, {"xi", spec.xi}};
}

void cmd_kernel_asym(const json& P, json& rep) {
  const SpaceModel s = space_of(P);
  const KernelSpec spec = make_kernel_spec(s, P.at("sigma").get<double>(), P.at("xi").get<double>());
  const int points = P.at("points").get<int>();
  if (points < 8) throw InadmissibleError("points must be >= 8");
  const KernelAsymptotics a = kernel_asymptotics(spec, 1e-3, 1e-1, 5, 15, points);
  rep["result"] = {{"sigma", spec.sigma},
                   {"xi", spec.xi},
                   {"regime", to_string(a.regime)},
                   {"small_r_exponent_fit", num(a.small_r_exponent_fit)},
                   {"small_r_exponent_predicted", num(a.small_r_exponent_predicted)},
                   {"log_coefficient", num(a.log_coefficient)},
                   {"small_r_fit_rms", num(a.small_r_fit_rms)},
                   {"large_r_decay_fit", num(a.large_r_decay_fit)},
                   {"large_r_decay_predicted", num(a.large_r_decay_predicted)},
                   {"large_r_power_fit", num(a.large_r_power_fit)},
                   {"large_r_power_predicted", num(a.large_r_power_predicted)},
                   {"windows", {a.small_lo, a.small_hi, a.large_lo, a.large_hi}}};
}

void cmd_hardy_check(const json& P, json& rep, std::uint64_t seed) {
  const SpaceModel s = space_of(P);
  const double p = P.at("p").get<double>(), q = P.at("q").get<double>();
  if (!(p > 1.0)) throw InadmissibleError("hardy: p must be in (1, inf)");
  const double pp = p / (p - 1.0);
  const double u_exp =
      P.at("u_exp").is_null() ? -(2.0 * s.rho_norm() * (1.0 + q / pp) + 1.0) : P.at("u_exp").get<double>();
  const WeightSpec u = WeightSpec::power(P.at("u_pow").get<double>(), u_exp);
  const WeightSpec v = WeightSpec::power(P.at("v_pow").get<double>(), P.at("v_exp").get<double>());
  HardyGrid g;
  g.r_count = P.at("r_count").get<int>();
  g.r_min = P.at("r_min").get<double>();
  g.r_max = P.at("r_max").get<double>();
  const int trials = P.at("trials").get<int>();
  const bool adjoint = P.at("adjoint").get<bool>();
  const HardyTestReport r =
      test_integral_hardy(s, u, v, p, q, gaussian_bump_sampler(seed), trials, adjoint, P.at("s").get<double>(), g);
  const HardyReport& c = r.conditions;
  json rel = json::array();
  for (const auto& x : c.relations) rel.push_back({{"name", x.name}, {"lhs", num(x.lhs)}, {"rhs", num(x.rhs)}, {"ok", x.ok}});
  json D = json::array(), app = json::array();
  for (int i = 0; i < 5; ++i) {
    D.push_back(num(c.D[i]));
    app.push_back(c.applicable[i]);
  }
  rep["result"] = {{"adjoint", adjoint},
                   {"p", p},
                   {"q", q},
                   {"s", c.s},
                   {"u_exp", u_exp},
                   {"D", D},
                   {"applicable", app},
                   {"relations", rel},
                   {"relations_ok", c.relations_ok()},
                   {"bracket_constant", num(c.bracket_constant)},
                   {"bracket_extrapolated", c.bracket_extrapolated},
                   {"bound", num(r.bound)},
                   {"trials", r.trials},
                   {"skipped", r.skipped},
                   {"violations", r.violations},
                   {"max_ratio", num(r.max_ratio)},
                   {"argmax_trial", r.argmax_trial}};
  json rows = json::array();
  for (size_t k = 0; k < r.ratios.size(); ++k) rows.push_back({k, num(r.ratios[k])});
  set_table(rep, {"trial", "ratio"}, rows);
}

IneqSpec ineq_spec_of(const json& P) {
  IneqSpec spec{ineq_kind_from_string(P.at("kind").get<std::string>()), {}, space_of(P)};
  static const std::vector<std::string> allowed = {"sigma", "p", "q", "alpha", "beta", "tau", "mu", "a", "b", "c", "xi"};
  for (const auto& item : split(P.at("params").get<std::string>(), ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("params: expected name=value, got '" + item + "'");
    const std::string k = trim(item.substr(0, eq));
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) throw UsageError("params: unknown name " + k);
    spec.params[k] = to_real(k, trim(item.substr(eq + 1)));
  }
  return spec;
}

json verdict_json(const Verdict& v) {
  json rel = json::array();
  for (const auto& r : v.relations) rel.push_back({{"name", r.name}, {"ok", r.ok}, {"residual", num(r.residual)}});
  return {{"admissible", v.admissible}, {"relations", rel}, {"failed", v.failed()}};
}

void cmd_ineq_run(const json& P, json& rep, std::uint64_t seed) {
  const IneqSpec spec = ineq_spec_of(P);
  const Verdict v = admissible_check(spec);
  rep["result"] = {{"admissibility", verdict_json(v)}};
  if (!v.admissible) {
    rep["error"] = {{"type", "inadmissible"}, {"message", "inadmissible parameters"}, {"reasons", v.failed()}};
    return;
  }
  TestFamily fam;
  fam.kind = family_kind_from_string(P.at("family").get<std::string>());
  fam.count = P.at("count").get<int>();
  fam.width_lo = P.at("width_lo").get<double>();
  fam.width_hi = P.at("width_hi").get<double>();
  fam.center_lo = P.at("center_lo").get<double>();
  fam.center_hi = P.at("center_hi").get<double>();
  fam.seed = seed;
  std::optional<GridConfig> grid;
  const bool override = !P.at("grid_n").is_null() || !P.at("grid_m").is_null() || !P.at("grid_r_max").is_null() ||
                        !P.at("grid_lam_max").is_null();
  if (override) {
    grid = grid_of(P, ineq_grid(spec.space, fam.width_lo, fam.width_hi));
    rep["grid"] = grid_json(*grid);
  } else {
    rep["grid"] = "per test function (tiered)";
  }
  const RatioReport r = empirical_best_ratio(spec, fam, P.at("budget").get<int>(), grid);
  json rows = json::array();
  for (size_t k = 0; k < r.members.size(); ++k) {
    const auto& m = r.members[k];
    rows.push_back({k, m.member, vec(m.x).dump(), num(m.lhs), num(m.rhs), num(m.ratio)});
  }
  set_table(rep, {"eval", "member", "x", "lhs", "rhs", "ratio"}, rows);
  const auto& best = r.members[r.argmax];
  json res = rep["result"];
  res["kind"] = to_string(spec.kind);
  res["params"] = spec.params;
  res["family"] = to_string(fam.kind);
  res["max_ratio"] = num(r.max_ratio);
  res["argmax"] = {{"eval", r.argmax}, {"member", best.member}, {"x", vec(best.x)}};
  res["evaluations"] = r.members.size();
  res["initial_count"] = r.initial_count;
  res["restarts"] = r.restarts;
  rep["result"] = res;
  rep["warnings"] = r.warnings;
}

json wave_rows(const Trajectory& tr) {
  json rows = json::array();
  for (size_t k = 0; k < tr.times.size(); ++k) {
    const WaveNorms& n = tr.norms[k];
    rows.push_back({num(tr.times[k]), num(n.l2), num(n.h1), num(n.l2_ut), num(n.zweighted)});
  }
  return rows;
}

void cmd_wave_linear(const json& P, json& rep) {
  const SpaceModel s = space_of(P);
  const GridConfig g = grid_of(P, default_wave_grid());
  rep["grid"] = grid_json(g);
  const WaveParams wp{P.at("b").get<double>(), P.at("m").get<double>(), 1.0, 0.0};
  const double Tend = P.at("T").get<double>(), rec = P.at("dt_record").get<double>(), w = P.at("width").get<double>();
  if (!(Tend > 0 && rec > 0 && w > 0)) throw InadmissibleError("need T, dt_record, width > 0");
  const SphericalTransform T(s, g);
  const double a0 = P.at("amp0").get<double>(), a1 = P.at("amp1").get<double>();
  const RadialFunction u0 = T.sample_radial([&](double r) { return a0 * std::exp(-(r / w) * (r / w)); });
  const RadialFunction u1 = T.sample_radial([&](double r) { return a1 * std::exp(-(r / w) * (r / w)); });
  std::vector<double> times;
  const auto steps = static_cast<long>(std::llround(Tend / rec));
  for (long k = 0; k <= steps; ++k) times.push_back(k * rec);
  const Trajectory tr = solve_linear(T, wp, u0, u1, times, false);
  set_table(rep, {"t", "l2", "h1", "l2_ut", "zweighted"}, wave_rows(tr));
  json res = {{"delta", tr.delta}, {"delta_star", decay_exponent_star(wp)}, {"z_norm", num(z_norm(tr, tr.delta))}};
  if (Tend >= 10.0) {
    const double hi = std::min(20.0, Tend);
    res["h1_sq_decay_rate"] = num(h1_decay_rate(tr, 5.0, hi));
    res["decay_window"] = {5.0, hi};
  }
  rep["result"] = res;
  rep["warnings"] = tr.warnings;
}

void cmd_wave_semilinear(const json& P, json& rep) {
  const SpaceModel s = space_of(P);
  const GridConfig g = grid_of(P, default_wave_grid());
  rep["grid"] = grid_json(g);
  const WaveParams wp{P.at("b").get<double>(), P.at("m").get<double>(), P.at("p").get<double>(), P.at("mu").get<double>()};
  const double w = P.at("width").get<double>(), eps = P.at("eps").get<double>();
  if (!(w > 0 && eps > 0)) throw InadmissibleError("need width, eps > 0");
  const SphericalTransform T(s, g);
  RadialFunction u0 = T.sample_radial([&](double r) { return std::exp(-(r / w) * (r / w)); });
  RadialFunction u1 = T.sample_radial([&](double r) { return 0.5 * std::exp(-(r / w) * (r / w)); });
  const Trajectory t0 = solve_linear(T, wp, u0, u1, {0.0}, false);
  const double scale = eps / (t0.norms[0].h1 + t0.norms[0].l2_ut);
  u0.values *= scale;
  u1.values *= scale;
  SemilinearOptions opt;
  opt.T = P.at("T").get<double>();
  opt.dt = P.at("dt").get<double>();
  opt.record_every = P.at("record_every").get<double>();
  opt.keep_snapshots = false;
  const Trajectory tr = solve_semilinear(T, wp, u0, u1, opt);
  set_table(rep, {"t", "l2", "h1", "l2_ut", "zweighted"}, wave_rows(tr));
  double cmax = 0;
  int imax = 0;
  for (double c : tr.contraction) cmax = std::max(cmax, c);
  for (int i : tr.iterations) imax = std::max(imax, i);
  rep["result"] = {{"delta", tr.delta},
                   {"z_norm", num(z_norm(tr, tr.delta))},
                   {"max_contraction", num(cmax)},
                   {"max_iterations", imax},
                   {"steps", tr.iterations.size()},
                   {"data_norm", eps}};
  rep["warnings"] = tr.warnings;
}

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> c = build_commands();
  return c;
}

const CommandSpec& command_spec(const std::string& id) {
  for (const auto& c : commands())
    if (c.id() == id) return c;
  throw UsageError("unknown command: " + id);
}

RunConfig parse(const std::vector<std::string>& args) {
  CLI::App app{"symspec: analysis on real hyperbolic spaces and their products"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  struct Leaf {
    const CommandSpec* spec;
    CLI::App* app;
    std::map<std::string, std::string> text;
    std::map<std::string, bool> flags;
    std::string config;
    bool json_flag = false, csv_flag = false;
  };
  std::list<Leaf> leaves;
  std::map<std::string, CLI::App*> groups;
  for (const auto& cmd : commands()) {
    if (!groups.count(cmd.group)) {
      groups[cmd.group] = app.add_subcommand(cmd.group);
      groups[cmd.group]->require_subcommand(1);
    }
    leaves.push_back({&cmd, groups[cmd.group]->add_subcommand(cmd.name, cmd.help), {}, {}, {}});
    Leaf& leaf = leaves.back();
    for (const auto& p : cmd.params) {
      if (p.type == PT::Bool)
        leaf.app->add_flag(flag_name(p.key), leaf.flags[p.key], p.help);
      else
        leaf.app->add_option(flag_name(p.key), leaf.text[p.key], p.help);
    }
    leaf.app->add_option("--config", leaf.config, "key=value or JSON file");
    leaf.app->add_flag("--json", leaf.json_flag, "JSON output");
    leaf.app->add_flag("--csv", leaf.csv_flag, "CSV output");
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw UsageError(app.help());
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    throw UsageError(msg.empty() ? "invalid command line" : msg);
  }
  for (auto& leaf : leaves) {
    if (!leaf.app->parsed()) continue;
    const CommandSpec& cmd = *leaf.spec;
    json params = json::object();
    for (const auto& p : cmd.params) params[p.key] = p.fallback;
    if (!leaf.config.empty()) apply_config_file(cmd, leaf.config, params);
    for (const auto& p : cmd.params) {
      auto* opt = leaf.app->get_option(flag_name(p.key));
      if (opt->count() == 0) continue;
      params[p.key] = p.type == PT::Bool ? json(leaf.flags[p.key]) : coerce_text(p, leaf.text[p.key]);
    }
    for (const auto& p : cmd.params)
      if (p.required && params[p.key].is_null()) throw UsageError("missing required " + flag_name(p.key));
    RunConfig rc;
    rc.command = cmd.id();
    rc.seed = static_cast<std::uint64_t>(params["seed"].get<long long>());
    rc.out = params["out"].get<std::string>();
    std::string fmt = params["format"].get<std::string>();
    if (leaf.json_flag) fmt = "json";
    if (leaf.csv_flag) fmt = "csv";
    if (fmt.empty()) fmt = rc.out.size() >= 4 && rc.out.substr(rc.out.size() - 4) == ".csv" ? "csv" : "json";
    if (fmt != "json" && fmt != "csv") throw UsageError("format must be json or csv");
    rc.format = fmt;
    params["format"] = fmt;
    rc.params = params;
    return rc;
  }
  throw UsageError("no command given");
}

RunConfig parse(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse(args);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_csv(const json& report) {
  json head = report;
  head.erase("table");
  std::string out = "# " + head.dump() + "\n";
  auto cell = [](const json& v) { return csv_field(v.is_string() ? v.get<std::string>() : v.dump()); };
  if (report.contains("table")) {
    const json& t = report["table"];
    std::string line;
    for (const auto& c : t["columns"]) line += (line.empty() ? "" : ",") + cell(c);
    out += line + "\n";
    for (const auto& row : t["rows"]) {
      line.clear();
      bool first = true;
      for (const auto& v : row) {
        line += (first ? "" : ",") + cell(v);
        first = false;
      }
      out += line + "\n";
    }
  } else if (report.contains("result")) {
    out += "key,value\n";
    for (auto it = report["result"].begin(); it != report["result"].end(); ++it)
      out += csv_field(it.key()) + "," + cell(it.value()) + "\n";
  }
  return out;
}

json canonical(const json& report) {
  json c = report;
  c.erase("timestamp");
  return c;
}

RunResult run(const RunConfig& config) {
  RunResult res;
  json& rep = res.report;
  rep["command"] = config.command;
  rep["config"] = config.params;
  rep["seed"] = config.seed;
  rep["version"] = kVersion;
  rep["timestamp"] = timestamp();
  rep["grid"] = nullptr;
  rep["warnings"] = json::array();
  const json& P = config.params;
  try {
    const std::string& c = config.command;
    if (c == "space info")
      cmd_space_info(P, rep);
    else if (c == "spherical eval")
      cmd_spherical_eval(P, rep);
    else if (c == "transform roundtrip")
      cmd_transform_roundtrip(P, rep);
    else if (c == "kernel table")
      cmd_kernel_table(P, rep);
    else if (c == "kernel asym")
      cmd_kernel_asym(P, rep);
    else if (c == "hardy check")
      cmd_hardy_check(P, rep, config.seed);
    else if (c == "ineq run")
      cmd_ineq_run(P, rep, config.seed);
    else if (c == "wave linear")
      cmd_wave_linear(P, rep);
    else if (c == "wave semilinear")
      cmd_wave_semilinear(P, rep);
    else
      throw UsageError("unknown command: " + c);
    if (rep.contains("error")) res.exit_code = 2;
  } catch (const InadmissibleError& e) {
    rep["error"] = {{"type", "inadmissible"}, {"message", e.what()}, {"reasons", {e.what()}}};
    res.exit_code = 2;
  } catch (const UnsupportedError& e) {
    rep["error"] = {{"type", "unsupported"}, {"message", e.what()}, {"reasons", {e.what()}}};
    res.exit_code = 2;
  } catch (const UsageError& e) {
    rep["error"] = {{"type", "usage"}, {"message", e.what()}, {"reasons", {e.what()}}};
    res.exit_code = 2;
  } catch (const NumericalError& e) {
    rep["error"] = {{"type", "numerical"}, {"message", e.what()}, {"reasons", {e.what()}}};
    res.exit_code = 1;
  }
  rep["status"] = res.exit_code == 0 ? "ok" : "error";
  res.text = config.format == "csv" ? render_csv(rep) : rep.dump(2) + "\n";
  if (!config.out.empty()) {
    std::ofstream out(config.out, std::ios::binary);
    if (!out) {
      rep["error"] = {{"type", "io"}, {"message", "cannot write " + config.out}};
      res.exit_code = 1;
    } else {
      out << res.text;
    }
  }
  return res;
}

int main(int argc, const char* const* argv) {
  RunConfig cfg;
  try {
    cfg = parse(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  const RunResult r = run(cfg);
  if (cfg.out.empty()) std::cout << r.text;
  if (r.exit_code != 0 && r.report.contains("error")) std::cerr << "error: " << r.report["error"]["message"].get<std::string>() << "\n";
  return r.exit_code;
}

}  // namespace symspec::cli
