#pragma once

#include <cmath>
#include <vector>

#include "symspec/core.hpp"

namespace symspec {

// Gauss-Legendre rule on [-1, 1].
struct Rule {
  VectorXd nodes;
  VectorXd weights;
};

const Rule& gauss_legendre(int order);

// Composite Gauss-Legendre nodes on a union of panels.
struct Axis {
  VectorXd nodes;
  VectorXd weights;
  std::vector<double> breaks;
  int order = 16;

  Index size() const { return nodes.size(); }
  Index panels() const { return static_cast<Index>(breaks.size()) - 1; }
  double extent() const { return breaks.back(); }
};

Axis panel_axis(const std::vector<double>& breaks, int order = 16);

// n nodes on [0, extent]: geometric panels toward 0 below 0.05, uniform above.
Axis graded_axis(Index n, double extent, int order = 16);

// n nodes on [0, extent] in equal panels.
Axis uniform_axis(Index n, double extent, int order = 16);

// Running integrals on an axis: head(i) = int_{start}^{x_i}, tail(i) = int_{x_i}^{end}.
VectorXd cumulative_head(const Axis& axis, const VectorXd& values);
VectorXd cumulative_tail(const Axis& axis, const VectorXd& values);

// Lagrange interpolation of panel data at x (x clamped into the axis range).
double interpolate(const Axis& axis, const VectorXd& values, double x);

template <class F>
double integrate_gl(F&& f, double a, double b, int panels = 1, int order = 16) {
  const Rule& g = gauss_legendre(order);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    for (int k = 0; k < order; ++k) sum += g.weights[k] * f(c + 0.5 * h * g.nodes[k]);
  }
  return 0.5 * h * sum;
}

// Trapezoid on the real line with step halving. f must decay fast at both ends
// of [lo, hi] (double-exponential substitutions give that).
template <class F>
double integrate_trapezoid_line(F&& f, double lo, double hi, double rel_tol = 1e-13,
                                int max_level = 9) {
  double h = 0.25;
  auto term = [&](double y) {
    const double v = f(y);
    return std::isfinite(v) ? v : 0.0;
  };
  double sum = 0.0;
  const int n0 = static_cast<int>(std::ceil((hi - lo) / h));
  h = (hi - lo) / n0;
  for (int k = 0; k <= n0; ++k) sum += term(lo + k * h);
  double prev = sum * h;
  int n = n0;
  for (int level = 1; level <= max_level; ++level) {
    double mid = 0.0;
    for (int k = 0; k < n; ++k) mid += term(lo + (k + 0.5) * h);
    sum += mid;
    h *= 0.5;
    n *= 2;
    const double cur = sum * h;
    if (level >= 3 && std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
    if (level >= 3 && cur == 0.0 && prev == 0.0) return 0.0;
    prev = cur;
  }
  return prev;
}

// int_0^inf f(x) dx by the exp-sinh substitution x = exp(pi/2 sinh y).
template <class F>
double integrate_half_line(F&& f, double rel_tol = 1e-13) {
  auto g = [&](double y) {
    const double s = 0.5 * kPi * std::sinh(y);
    const double x = std::exp(s);
    return f(x) * x * 0.5 * kPi * std::cosh(y);
  };
  return integrate_trapezoid_line(g, -4.6, 4.6, rel_tol);
}

}  // namespace symspec
