#include "symspec/quadrature.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace symspec {

namespace {

Rule build_gauss_legendre(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

// Legendre values P_0..P_{m} at x.
VectorXd legendre_values(int m, double x) {
  VectorXd p(m + 1);
  p[0] = 1.0;
  if (m >= 1) p[1] = x;
  for (int k = 2; k <= m; ++k) p[k] = ((2.0 * k - 1.0) * x * p[k - 1] - (k - 1.0) * p[k - 2]) / k;
  return p;
}

struct PanelOps {
  MatrixXd head;  // head(j, k): int_{-1}^{x_j} l_k
  MatrixXd tail;  // tail(j, k): int_{x_j}^{1} l_k
};

PanelOps build_panel_ops(int n) {
  const Rule& g = gauss_legendre(n);
  // Legendre coefficients c_m = (2m+1)/2 sum_k w_k P_m(x_k) f_k.
  MatrixXd to_coef(n, n);
  for (int k = 0; k < n; ++k) {
    VectorXd p = legendre_values(n - 1, g.nodes[k]);
    for (int m = 0; m < n; ++m) to_coef(m, k) = 0.5 * (2.0 * m + 1.0) * g.weights[k] * p[m];
  }
  MatrixXd int_head(n, n), int_tail(n, n);
  for (int j = 0; j < n; ++j) {
    const double x = g.nodes[j];
    VectorXd p = legendre_values(n, x);
    for (int m = 0; m < n; ++m) {
      double h;
      if (m == 0) {
        h = x + 1.0;
      } else {
        h = (p[m + 1] - p[m - 1]) / (2.0 * m + 1.0);
      }
      int_head(j, m) = h;
      int_tail(j, m) = (m == 0 ? 2.0 : 0.0) - h;
    }
  }
  return {int_head * to_coef, int_tail * to_coef};
}

const PanelOps& panel_ops(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<PanelOps>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<PanelOps>(build_panel_ops(n));
  return *slot;
}

}  // namespace

const Rule& gauss_legendre(int order) {
  if (order < 1) throw InadmissibleError("gauss_legendre: order must be >= 1");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Rule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<Rule>(build_gauss_legendre(order));
  return *slot;
}

Axis panel_axis(const std::vector<double>& breaks, int order) {
  if (breaks.size() < 2) throw InadmissibleError("panel_axis: need at least two breakpoints");
  for (size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i] > breaks[i - 1])) throw InadmissibleError("panel_axis: breakpoints must increase");
  const Rule& g = gauss_legendre(order);
  Axis a;
  a.breaks = breaks;
  a.order = order;
  const Index panels = static_cast<Index>(breaks.size()) - 1;
  a.nodes.resize(panels * order);
  a.weights.resize(panels * order);
  for (Index p = 0; p < panels; ++p) {
    const double lo = breaks[p], hi = breaks[p + 1];
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    for (int k = 0; k < order; ++k) {
      a.nodes[p * order + k] = c + h * g.nodes[k];
      a.weights[p * order + k] = h * g.weights[k];
    }
  }
  return a;
}

Axis graded_axis(Index n, double extent, int order) {
  if (n % order != 0 || n < 4 * order)
    throw InadmissibleError("graded_axis: node count must be a multiple of the panel order and >= 4 panels");
  const double top = 0.05;
  if (!(extent > 4.0 * top)) throw InadmissibleError("graded_axis: extent too small");
  const Index panels = n / order;
  const Index geometric = std::clamp<Index>(panels / 8, 3, 16);
  const Index uniform = panels - geometric - 1;
  // Grading ratio ~2.6 with 16 panels, never coarser than 1/0.3 per panel.
  const double lowest = std::max(1e-8, top * std::pow(0.3, static_cast<double>(geometric)));
  std::vector<double> breaks;
  breaks.push_back(0.0);
  for (Index k = 0; k < geometric; ++k)
    breaks.push_back(lowest * std::pow(top / lowest, static_cast<double>(k) / geometric));
  const double step = (extent - top) / uniform;
  for (Index k = 0; k <= uniform; ++k) breaks.push_back(k == uniform ? extent : top + k * step);
  return panel_axis(breaks, order);
}

Axis uniform_axis(Index n, double extent, int order) {
  if (n % order != 0 || n < order)
    throw InadmissibleError("uniform_axis: node count must be a positive multiple of the panel order");
  if (!(extent > 0.0)) throw InadmissibleError("uniform_axis: extent must be positive");
  const Index panels = n / order;
  std::vector<double> breaks(panels + 1);
  for (Index k = 0; k <= panels; ++k) breaks[k] = extent * static_cast<double>(k) / panels;
  breaks.back() = extent;
  return panel_axis(breaks, order);
}

VectorXd cumulative_head(const Axis& axis, const VectorXd& values) {
  const PanelOps& ops = panel_ops(axis.order);
  const int q = axis.order;
  VectorXd out(axis.size());
  double acc = 0.0;
  for (Index p = 0; p < axis.panels(); ++p) {
    const double h = 0.5 * (axis.breaks[p + 1] - axis.breaks[p]);
    VectorXd local = h * (ops.head * values.segment(p * q, q));
    out.segment(p * q, q) = local.array() + acc;
    acc += axis.weights.segment(p * q, q).dot(values.segment(p * q, q));
  }
  return out;
}

VectorXd cumulative_tail(const Axis& axis, const VectorXd& values) {
  const PanelOps& ops = panel_ops(axis.order);
  const int q = axis.order;
  VectorXd out(axis.size());
  double acc = 0.0;
  for (Index p = axis.panels() - 1; p >= 0; --p) {
    const double h = 0.5 * (axis.breaks[p + 1] - axis.breaks[p]);
    VectorXd local = h * (ops.tail * values.segment(p * q, q));
    out.segment(p * q, q) = local.array() + acc;
    acc += axis.weights.segment(p * q, q).dot(values.segment(p * q, q));
  }
  return out;
}

double interpolate(const Axis& axis, const VectorXd& values, double x) {
  x = std::clamp(x, axis.breaks.front(), axis.breaks.back());
  auto it = std::upper_bound(axis.breaks.begin(), axis.breaks.end(), x);
  Index p = std::clamp<Index>(static_cast<Index>(it - axis.breaks.begin()) - 1, 0, axis.panels() - 1);
  const int q = axis.order;
  const double lo = axis.breaks[p], hi = axis.breaks[p + 1];
  const double t = (2.0 * x - lo - hi) / (hi - lo);
  const Rule& g = gauss_legendre(q);
  // Barycentric form on Legendre nodes; weights from node products.
  double num = 0.0, den = 0.0;
  for (int k = 0; k < q; ++k) {
    const double d = t - g.nodes[k];
    if (d == 0.0) return values[p * q + k];
    double bw = 1.0;
    for (int j = 0; j < q; ++j)
      if (j != k) bw /= (g.nodes[k] - g.nodes[j]);
    num += bw / d * values[p * q + k];
    den += bw / d;
  }
  return num / den;
}

}  // namespace symspec
