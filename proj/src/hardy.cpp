#include "symspec/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace symspec {

WeightSpec WeightSpec::power(double gamma, double kappa, double scale) {
  if (!std::isfinite(gamma) || !std::isfinite(kappa) || !(scale >= 0.0))
    throw InadmissibleError("weight: gamma, kappa finite and scale >= 0 required");
  WeightSpec w;
  w.gamma = gamma;
  w.kappa = kappa;
  w.scale = scale;
  return w;
}

WeightSpec WeightSpec::tabulated(const VectorXd& r, const VectorXd& w) {
  if (r.size() < 2 || r.size() != w.size()) throw InadmissibleError("weight table: need >= 2 matching samples");
  for (Index i = 0; i < r.size(); ++i) {
    if (!(w[i] > 0.0)) throw InadmissibleError("weight table: values must be positive");
    if (i > 0 && !(r[i] > r[i - 1])) throw InadmissibleError("weight table: radii must increase");
  }
  WeightSpec s;
  s.kind = Kind::Tabulated;
  s.table_r = r;
  s.table_w = w;
  return s;
}

double WeightSpec::operator()(double r) const {
  if (kind == Kind::Power) {
    if (scale == 0.0) return 0.0;
    return scale * std::pow(r, gamma) * std::exp(kappa * r);
  }
  if (r <= table_r[0]) return table_w[0];
  const Index last = table_r.size() - 1;
  if (r >= table_r[last]) return table_w[last];
  const Index k = std::upper_bound(table_r.data(), table_r.data() + table_r.size(), r) - table_r.data() - 1;
  const double t = (r - table_r[k]) / (table_r[k + 1] - table_r[k]);
  return std::exp((1.0 - t) * std::log(table_w[k]) + t * std::log(table_w[k + 1]));
}

bool WeightSpec::positive() const {
  if (kind == Kind::Power) return scale > 0.0;
  return (table_w.array() > 0.0).all();
}

namespace {

constexpr double kFirstBreak = 1e-12;

std::vector<double> hardy_breaks(const HardyGrid& g, VectorXd& R, std::vector<double>& marks) {
  if (!(g.r_min > kFirstBreak && g.r_max > g.r_min && g.r_count >= 2 && g.tail_factor >= 1.0 && g.max_panel > 0.0))
    throw InadmissibleError("hardy grid: need 1e-12 < r_min < r_max, r_count >= 2, tail_factor >= 1");
  std::vector<double> b{0.0};
  for (double x = kFirstBreak; x < g.r_min * 0.999; x *= 10.0) b.push_back(x);
  R.resize(g.r_count);
  for (int k = 0; k < g.r_count; ++k) {
    R[k] = g.r_min * std::pow(g.r_max / g.r_min, static_cast<double>(k) / (g.r_count - 1));
    marks.push_back(R[k]);
  }
  std::vector<double> pts(marks);
  const double tail = g.tail_factor * g.r_max;
  for (double x = g.max_panel; x < tail; x += g.max_panel) pts.push_back(x);
  pts.push_back(tail);
  std::sort(pts.begin(), pts.end());
  for (double x : pts) {
    if (x < g.r_min * 0.999) continue;
    if (x - b.back() > 1e-9 * x) b.push_back(x);
  }
  if (b.back() < tail) b.push_back(tail);
  return b;
}

}  // namespace

HardyTable::HardyTable(const SpaceModel& space, const WeightSpec& u, const WeightSpec& v, double p, bool adjoint,
                       const HardyGrid& grid)
    : adjoint_(adjoint), p_(p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InadmissibleError("hardy: p must be in (1, inf)");
  if (!v.positive()) throw InadmissibleError("hardy: v must be positive");
  std::vector<double> marks;
  const std::vector<double> breaks = hardy_breaks(grid, R_, marks);
  axis_ = panel_axis(breaks);
  for (double m : marks) {
    auto it = std::lower_bound(breaks.begin(), breaks.end(), m * (1.0 - 1e-9));
    R_break_.push_back(static_cast<Index>(it - breaks.begin()));
  }
  const double pp = p / (p - 1.0);
  const Index N = axis_.size();
  S_.resize(N);
  gu_.resize(N);
  gv_.resize(N);
  for (Index k = 0; k < N; ++k) {
    const double r = axis_.nodes[k];
    const double S = sphere_measure(space, r);
    S_[k] = S;
    gu_[k] = u(r) * S;
    gv_[k] = std::pow(v(r), 1.0 - pp) * S;
  }
  if (adjoint) {
    U_nodes_ = over_nodes(gu_, true);
    V_nodes_ = over_nodes(gv_, false);
    U_R_ = over_R(gu_, true);
    V_R_ = over_R(gv_, false);
    if (!std::isfinite(U_R_[0])) throw InadmissibleError("hardy adjoint precondition failed: u not locally integrable");
    if (!std::isfinite(V_R_[0]))
      throw InadmissibleError("hardy adjoint precondition failed: v^{1-p'} not integrable away from the origin");
  } else {
    U_nodes_ = over_nodes(gu_, false);
    V_nodes_ = over_nodes(gv_, true);
    U_R_ = over_R(gu_, false);
    V_R_ = over_R(gv_, true);
    if (!std::isfinite(U_R_[0])) throw InadmissibleError("hardy precondition failed: u in L^1(Y \\ {a})");
    if (!std::isfinite(V_R_[V_R_.size() - 1]))
      throw InadmissibleError("hardy precondition failed: v^{1-p'} in L^1_loc(Y)");
  }
  u_total_finite_ = std::isfinite(total(gu_));
  v_total_finite_ = std::isfinite(total(gv_));
}

VectorXd HardyTable::cumulative(const VectorXd& g, bool inner, bool at_nodes) const {
  const int q = axis_.order;
  const Index P = axis_.panels();
  const Index n = axis_.size();
  // First panel [0, a]: local power law g ~ c r^e from its upper nodes.
  const double a = axis_.breaks[1];
  double e = 0.0, I0 = 0.0;
  bool power_law = false;
  if (g[q - 1] != 0.0 && g[q / 2] != 0.0) {
    e = std::log(std::abs(g[q - 1] / g[q / 2])) / std::log(axis_.nodes[q - 1] / axis_.nodes[q / 2]);
    power_law = true;
    I0 = e > -1.0 ? g[q - 1] * std::pow(a / axis_.nodes[q - 1], e) * a / (e + 1.0) : INFINITY;
  } else {
    I0 = axis_.weights.head(q).dot(g.head(q));
  }
  // Beyond the last break: local exponential rate.
  double tail = 0.0;
  if (g[n - 1] != 0.0) {
    const Index m = n - 1 - q / 2;
    const double k = -std::log(std::abs(g[n - 1] / g[m])) / (axis_.nodes[n - 1] - axis_.nodes[m]);
    tail = k > 1e-6 ? g[n - 1] * std::exp(-k * (axis_.extent() - axis_.nodes[n - 1])) / k : INFINITY;
  }
  VectorXd I(P);
  I[0] = I0;
  for (Index p = 1; p < P; ++p) I[p] = axis_.weights.segment(p * q, q).dot(g.segment(p * q, q));
  VectorXd head(P + 1), rest(P + 1);
  head[0] = 0.0;
  for (Index p = 0; p < P; ++p) head[p + 1] = head[p] + I[p];
  rest[P] = tail;
  for (Index p = P - 1; p >= 0; --p) rest[p] = rest[p + 1] + I[p];
  if (!at_nodes) {
    VectorXd out(R_break_.size());
    for (size_t k = 0; k < R_break_.size(); ++k) out[k] = inner ? head[R_break_[k]] : rest[R_break_[k]];
    return out;
  }
  VectorXd masked = g;
  masked.head(q).setZero();
  VectorXd out = inner ? cumulative_head(axis_, masked) : cumulative_tail(axis_, masked);
  if (inner)
    out.array() += I0;
  else
    out.array() += tail;
  for (int j = 0; j < q; ++j) {
    const double x = axis_.nodes[j];
    double h;
    if (!power_law)
      h = I0 * x / a;
    else
      h = e > -1.0 ? x * g[j] / (e + 1.0) : INFINITY;
    out[j] = inner ? h : rest[1] + (I0 - h);
  }
  return out;
}

VectorXd HardyTable::over_R(const VectorXd& g_nodes, bool inner) const { return cumulative(g_nodes, inner, false); }

VectorXd HardyTable::over_nodes(const VectorXd& g_nodes, bool inner) const { return cumulative(g_nodes, inner, true); }

double HardyTable::total(const VectorXd& g_nodes) const {
  return cumulative(g_nodes, true, false)[0] + cumulative(g_nodes, false, false)[0];
}

std::pair<double, double> compute_UV(const SpaceModel& space, const WeightSpec& u, const WeightSpec& v, double p,
                                     double R, bool adjoint, const HardyGrid& grid) {
  if (!(R > 0.0)) throw InadmissibleError("compute_UV: R must be positive");
  HardyGrid g = grid;
  g.r_count = 2;
  g.r_min = R;
  g.r_max = std::max(grid.r_max, 2.0 * R);
  HardyTable t(space, u, v, p, adjoint, g);
  const Index k = 0;
  return {t.U_R()[k], t.V_R()[k]};
}

bool HardyReport::relations_ok() const {
  for (const auto& r : relations)
    if (!r.ok) return false;
  return true;
}

namespace {

// Grid max with the divergence marker: +inf when the max sits at the last R
// and still grows by more than 1% over the last e-fold of R.
double sup_over(const VectorXd& R, const VectorXd& vals) {
  Index arg = 0;
  double best = -INFINITY;
  for (Index k = 0; k < vals.size(); ++k) {
    if (std::isnan(vals[k])) throw NumericalError("hardy: NaN in D-functional");
    if (vals[k] > best) {
      best = vals[k];
      arg = k;
    }
  }
  if (!std::isfinite(best)) return best;
  const Index last = vals.size() - 1;
  if (arg == last && last > 0) {
    Index j = last;
    while (j > 0 && R[j] > R[last] / std::exp(1.0)) --j;
    if (vals[j] > 0.0 && vals[last] > 1.01 * vals[j]) return INFINITY;
  }
  return best;
}

VectorXd powv(const VectorXd& x, double e) { return x.array().pow(e).matrix(); }

void add_relation(HardyReport& rep, std::string name, double lhs, double rhs) {
  bool ok;
  if (std::isinf(lhs) && std::isinf(rhs))
    ok = true;
  else
    ok = lhs <= rhs * (1.0 + 1e-3);
  rep.relations.push_back({std::move(name), lhs, rhs, ok});
}

}  // namespace

HardyReport d_conditions(const SpaceModel& space, const WeightSpec& u, const WeightSpec& v, double p, double q,
                         double s, bool adjoint, const HardyGrid& grid) {
  if (!(p > 1.0 && std::isfinite(p))) throw InadmissibleError("hardy: p must be in (1, inf)");
  if (!(q >= p && std::isfinite(q))) throw InadmissibleError("hardy: need p <= q < inf");
  const double pp = p / (p - 1.0);
  if (s == 0.0) s = default_hardy_s(p);
  if (!(s > 0.0 && s < 1.0 / pp)) throw InadmissibleError("hardy: s must lie in (0, 1/p')");
  HardyReport rep;
  rep.adjoint = adjoint;
  rep.p = p;
  rep.q = q;
  rep.s = s;
  rep.bracket_extrapolated = adjoint;
  rep.bracket_constant = std::pow(pp, 1.0 / pp) * std::pow(p, 1.0 / q);
  rep.r_count = grid.r_count;
  rep.r_min = grid.r_min;
  rep.r_max = grid.r_max;
  if (u.is_zero()) {
    rep.D.fill(0.0);
    rep.applicable.fill(true);
    return rep;
  }
  HardyTable t(space, u, v, p, adjoint, grid);
  const VectorXd& U = t.U_R();
  const VectorXd& V = t.V_R();
  const VectorXd& Un = t.U_nodes();
  const VectorXd& Vn = t.V_nodes();
  // Direct: D2, D5 integrate over the exterior, D3, D4 over the ball.
  // Adjoint: reversed.
  const bool d2_inner = adjoint, d3_inner = !adjoint, d4_inner = !adjoint, d5_inner = adjoint;

  VectorXd d1 = (powv(U, 1.0 / q).array() * powv(V, 1.0 / pp).array()).matrix();
  VectorXd g2 = (t.gu().array() * powv(Vn, q * (1.0 / pp - s)).array()).matrix();
  VectorXd d2 = (powv(t.over_R(g2, d2_inner), 1.0 / q).array() * powv(V, s).array()).matrix();
  VectorXd g3 = (t.gu().array() * powv(Vn, q * (1.0 / pp + s)).array()).matrix();
  VectorXd d3 = (powv(t.over_R(g3, d3_inner), 1.0 / q).array() * powv(V, -s).array()).matrix();
  VectorXd g4 = (t.gv().array() * powv(Un, pp * (1.0 / q - s)).array()).matrix();
  VectorXd d4 = (powv(t.over_R(g4, d4_inner), 1.0 / pp).array() * powv(U, s).array()).matrix();
  VectorXd g5 = (t.gv().array() * powv(Un, pp * (1.0 / q + s)).array()).matrix();
  VectorXd d5 = (powv(t.over_R(g5, d5_inner), 1.0 / pp).array() * powv(U, -s).array()).matrix();

  const VectorXd& R = t.R();
  rep.D = {sup_over(R, d1), sup_over(R, d2), sup_over(R, d3), sup_over(R, d4), sup_over(R, d5)};
  const bool both = t.u_integrable() && t.w_integrable();
  rep.applicable = {true, true, both, true, both};

  const double D1 = rep.D[0];
  add_relation(rep, "D1 <= max(1,p's)^(1/q) D2", D1, std::pow(std::max(1.0, pp * s), 1.0 / q) * rep.D[1]);
  add_relation(rep, "D2 <= max(1,1/(p's))^(1/q) D1", rep.D[1], std::pow(std::max(1.0, 1.0 / (pp * s)), 1.0 / q) * D1);
  if (both) {
    add_relation(rep, "(sp'/(1+sp'))^(1/q) D3 <= D1", std::pow(s * pp / (1.0 + s * pp), 1.0 / q) * rep.D[2], D1);
    add_relation(rep, "D1 <= (1+sp')^(1/q) D3", D1, std::pow(1.0 + s * pp, 1.0 / q) * rep.D[2]);
  }
  add_relation(rep, "D1 <= max(1,qs)^(1/p') D4", D1, std::pow(std::max(1.0, q * s), 1.0 / pp) * rep.D[3]);
  add_relation(rep, "D4 <= max(1,1/(qs))^(1/p') D1", rep.D[3], std::pow(std::max(1.0, 1.0 / (q * s)), 1.0 / pp) * D1);
  if (both) {
    add_relation(rep, "(sq/(1+sq))^(1/p') D5 <= D1", std::pow(s * q / (1.0 + s * q), 1.0 / pp) * rep.D[4], D1);
    add_relation(rep, "D1 <= (1+sq)^(1/p') D5", D1, std::pow(1.0 + s * q, 1.0 / pp) * rep.D[4]);
  }
  return rep;
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t counter) {
  std::uint64_t z = master + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RadialSampler gaussian_bump_sampler(std::uint64_t seed) {
  return [seed](std::uint64_t trial) {
    std::mt19937_64 gen(split_seed(seed, trial));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int count = std::uniform_int_distribution<int>(1, 5)(gen);
    std::vector<std::array<double, 3>> bumps;
    for (int k = 0; k < count; ++k) {
      const double amp = 0.1 + 0.9 * unit(gen);
      const double width = 0.05 * std::pow(100.0, unit(gen));
      const double center = 10.0 * unit(gen);
      bumps.push_back({amp, width, center});
    }
    return std::function<double(double)>([bumps](double r) {
      double f = 0.0;
      for (const auto& b : bumps) {
        const double z = (r - b[2]) / b[1];
        f += b[0] * std::exp(-z * z);
      }
      return f;
    });
  };
}

std::pair<double, double> hardy_sides(const HardyTable& table, const WeightSpec& u, const WeightSpec& v, double q,
                                      const std::function<double(double)>& f) {
  (void)u;
  const Axis& ax = table.axis();
  const double p = table.p();
  const Index n = ax.size();
  VectorXd fs(n), rhs(n);
  for (Index k = 0; k < n; ++k) {
    const double fk = std::abs(f(ax.nodes[k]));
    fs[k] = fk * table.S()[k];
    rhs[k] = std::pow(fk, p) * v(ax.nodes[k]) * table.S()[k];
  }
  VectorXd F = table.over_nodes(fs, !table.adjoint());
  VectorXd lhs = (powv(F, q).array() * table.gu().array()).matrix();
  return {std::pow(table.total(lhs), 1.0 / q), std::pow(table.total(rhs), 1.0 / p)};
}

HardyTestReport test_integral_hardy(const SpaceModel& space, const WeightSpec& u, const WeightSpec& v, double p,
                                    double q, const RadialSampler& sampler, int trials, bool adjoint, double s,
                                    const HardyGrid& grid) {
  if (trials < 1) throw InadmissibleError("hardy test: trials must be >= 1");
  HardyTestReport rep;
  rep.conditions = d_conditions(space, u, v, p, q, s, adjoint, grid);
  const double D1 = rep.conditions.D[0];
  if (!std::isfinite(D1)) throw InadmissibleError("hardy test precondition failed: D1 is not finite");
  rep.bound = D1 * rep.conditions.bracket_constant;
  rep.trials = trials;
  if (u.is_zero()) {
    rep.ratios.assign(trials, 0.0);
    return rep;
  }
  HardyTable table(space, u, v, p, adjoint, grid);
  for (int t = 0; t < trials; ++t) {
    const auto f = sampler(static_cast<std::uint64_t>(t));
    const auto [lhs, rhs] = hardy_sides(table, u, v, q, f);
    if (!(rhs > 0.0) || !std::isfinite(rhs) || !std::isfinite(lhs)) {
      ++rep.skipped;
      rep.ratios.push_back(NAN);
      continue;
    }
    const double ratio = lhs / rhs;
    rep.ratios.push_back(ratio);
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.argmax_trial = t;
    }
    if (lhs > rep.bound * rhs * (1.0 + 1e-12)) ++rep.violations;
  }
  return rep;
}

}  // namespace symspec
