#include "symspec/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace symspec {

namespace {

struct Budgeted {
  const std::function<double(const VectorXd&)>& f;
  const VectorXd& lo;
  const VectorXd& hi;
  int budget;
  DirectSearchResult& out;

  bool exhausted() const { return out.evaluations >= budget; }

  double operator()(VectorXd& x) {
    x = x.cwiseMax(lo).cwiseMin(hi);
    double v = f(x);
    if (!std::isfinite(v)) v = -INFINITY;
    ++out.evaluations;
    if (v > out.best_value) {
      out.best_value = v;
      out.best_x = x;
    }
    out.history.push_back(out.best_value);
    return v;
  }
};

}  // namespace

DirectSearchResult nelder_mead_max(const std::function<double(const VectorXd&)>& f, const VectorXd& x0,
                                   const VectorXd& lo, const VectorXd& hi, int budget, int max_restarts,
                                   double rel_tol) {
  DirectSearchResult out;
  out.best_x = x0;
  const Index d = x0.size();
  Budgeted eval{f, lo, hi, budget, out};
  VectorXd start = x0;
  for (int round = 0; round <= max_restarts && !eval.exhausted(); ++round) {
    if (round > 0) ++out.restarts;
    std::vector<VectorXd> pts(d + 1, start);
    std::vector<double> val(d + 1, -INFINITY);
    for (Index i = 0; i < d; ++i) {
      const double step = 0.1 * (hi[i] - lo[i]);
      pts[i + 1][i] = (start[i] + step <= hi[i]) ? start[i] + step : start[i] - step;
    }
    for (Index i = 0; i <= d && !eval.exhausted(); ++i) val[i] = eval(pts[i]);
    std::vector<int> idx(d + 1);
    while (!eval.exhausted()) {
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return val[a] > val[b]; });
      const double top = val[idx[0]], bottom = val[idx[d]];
      if (std::isfinite(bottom) && top - bottom <= rel_tol * std::abs(top)) break;
      VectorXd centroid = VectorXd::Zero(d);
      for (Index i = 0; i < d; ++i) centroid += pts[idx[i]];
      centroid /= static_cast<double>(d);
      const int w = idx[d];
      VectorXd xr = centroid + (centroid - pts[w]);
      const double fr = eval(xr);
      if (fr > top && !eval.exhausted()) {
        VectorXd xe = centroid + 2.0 * (centroid - pts[w]);
        const double fe = eval(xe);
        if (fe > fr) {
          pts[w] = xe;
          val[w] = fe;
        } else {
          pts[w] = xr;
          val[w] = fr;
        }
      } else if (fr > val[idx[d - 1]]) {
        pts[w] = xr;
        val[w] = fr;
      } else if (!eval.exhausted()) {
        VectorXd xc = centroid + 0.5 * (pts[w] - centroid);
        const double fc = eval(xc);
        if (fc > val[w]) {
          pts[w] = xc;
          val[w] = fc;
        } else {
          for (Index i = 1; i <= d && !eval.exhausted(); ++i) {
            const int k = idx[i];
            pts[k] = pts[idx[0]] + 0.5 * (pts[k] - pts[idx[0]]);
            val[k] = eval(pts[k]);
          }
        }
      }
    }
    start = out.best_x;
  }
  return out;
}

}  // namespace symspec
