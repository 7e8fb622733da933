#include "symspec/grid.hpp"

#include <cstdio>

#include "symspec/spherical.hpp"

namespace symspec {

namespace {

void require_low_rank(const SpaceModel& space) {
  if (space.rank() > 2) throw UnsupportedError("grids support rank <= 2");
}

MatrixXd outer_field(const std::vector<VectorXd>& f) {
  if (f.size() == 1) return f[0];
  return f[0] * f[1].transpose();
}

}  // namespace

RadialGrid::RadialGrid(SpaceModel space, Index n, double r_max)
    : space_(std::move(space)), axis_(graded_axis(n, r_max)) {
  require_low_rank(space_);
  for (int n_i : space_.factors()) {
    VectorXd w(axis_.size());
    const double omega = sphere_area(n_i - 1);
    for (Index k = 0; k < w.size(); ++k) w[k] = axis_.weights[k] * omega * std::pow(std::sinh(axis_.nodes[k]), n_i - 1);
    factor_weights_.push_back(w);
  }
}

MatrixXd RadialGrid::quad_weights() const { return outer_field(factor_weights_); }

MatrixXd RadialGrid::radius() const {
  const VectorXd& r = axis_.nodes;
  if (space_.rank() == 1) return r;
  MatrixXd out(r.size(), r.size());
  for (Index j = 0; j < r.size(); ++j)
    for (Index i = 0; i < r.size(); ++i) out(i, j) = std::hypot(r[i], r[j]);
  return out;
}

SpectralGrid::SpectralGrid(SpaceModel space, Index m, double lam_max, const VectorXd& kappa)
    : space_(std::move(space)), axis_(uniform_axis(m, lam_max)), kappa_(kappa) {
  require_low_rank(space_);
  if (kappa_.size() != space_.rank()) throw InadmissibleError("spectral grid: one kappa per factor required");
  for (int i = 0; i < space_.rank(); ++i) {
    VectorXd w(axis_.size());
    for (Index k = 0; k < w.size(); ++k)
      w[k] = axis_.weights[k] * kappa_[i] * plancherel_raw(space_.factors()[i], axis_.nodes[k]);
    factor_weights_.push_back(w);
  }
}

MatrixXd SpectralGrid::plancherel_weights() const { return outer_field(factor_weights_); }

MatrixXd SpectralGrid::lam_sq() const {
  const VectorXd l2 = axis_.nodes.array().square();
  if (space_.rank() == 1) return l2;
  return l2.replicate(1, l2.size()) + l2.transpose().replicate(l2.size(), 1);
}

RadialFunction sample(std::shared_ptr<const RadialGrid> grid, const std::function<double(const ChamberPoint&)>& f) {
  const VectorXd& r = grid->nodes();
  const Index n = r.size();
  RadialFunction out{grid, MatrixXd(), {}};
  if (grid->space().rank() == 1) {
    out.values.resize(n, 1);
    ChamberPoint H(1);
    for (Index i = 0; i < n; ++i) {
      H[0] = r[i];
      out.values(i, 0) = f(H);
    }
  } else {
    out.values.resize(n, n);
    ChamberPoint H(2);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) {
        H << r[i], r[j];
        out.values(i, j) = f(H);
      }
  }
  return out;
}

RadialFunction sample_radial(std::shared_ptr<const RadialGrid> grid, const std::function<double(double)>& f) {
  RadialFunction out{grid, grid->radius(), {}};
  out.values = out.values.unaryExpr(f);
  return out;
}

SpectralFunction sample_spectral(std::shared_ptr<const SpectralGrid> grid,
                                 const std::function<double(const VectorXd&)>& g) {
  const VectorXd& l = grid->nodes();
  const Index m = l.size();
  SpectralFunction out{grid, MatrixXd(), {}};
  if (grid->space().rank() == 1) {
    out.values.resize(m, 1);
    VectorXd v(1);
    for (Index i = 0; i < m; ++i) {
      v[0] = l[i];
      out.values(i, 0) = g(v);
    }
  } else {
    out.values.resize(m, m);
    VectorXd v(2);
    for (Index j = 0; j < m; ++j)
      for (Index i = 0; i < m; ++i) {
        v << l[i], l[j];
        out.values(i, j) = g(v);
      }
  }
  return out;
}

SpectralFunction sample_spectral_sq(std::shared_ptr<const SpectralGrid> grid, const std::function<double(double)>& g) {
  SpectralFunction out{grid, grid->lam_sq(), {}};
  out.values = out.values.unaryExpr(g);
  return out;
}

double lp_norm(const RadialFunction& f, double p) {
  return weighted_lp_norm(f, p, MatrixXd::Ones(f.values.rows(), f.values.cols()));
}

double weighted_lp_norm(const RadialFunction& f, double p, const MatrixXd& weight) {
  if (!(p > 0.0)) throw InadmissibleError("lp norm: p must be positive");
  const MatrixXd W = f.grid->quad_weights();
  const Eigen::ArrayXXd a = (weight.array() * f.values.array()).abs();
  // Scale by the max to keep |.|^p in range.
  const double top = a.maxCoeff();
  if (top == 0.0) return 0.0;
  return top * std::pow(((a / top).pow(p) * W.array()).sum(), 1.0 / p);
}

double spectral_l2_norm(const SpectralFunction& g) {
  return std::sqrt((g.values.array().square() * g.grid->plancherel_weights().array()).sum());
}

Warnings truncation_check(const MatrixXd& values, const char* what, double tol) {
  const double top = values.cwiseAbs().maxCoeff();
  double edge = values.row(values.rows() - 1).cwiseAbs().maxCoeff();
  if (values.cols() > 1) edge = std::max(edge, values.col(values.cols() - 1).cwiseAbs().maxCoeff());
  if (top > 0.0 && edge > tol * top) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s truncation unsafe: edge/max = %.3e", what, edge / top);
    return {buf};
  }
  return {};
}

}  // namespace symspec
