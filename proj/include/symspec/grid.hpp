#pragma once

#include <functional>
#include <memory>

#include "symspec/quadrature.hpp"
#include "symspec/space_model.hpp"

namespace symspec {

struct GridConfig {
  Index n_radial = 4096;
  double r_max = 30.0;
  Index n_spectral = 4096;
  double lam_max = 64.0;

  bool operator==(const GridConfig&) const = default;
};

// Radial quadrature on the closed chamber; rank <= 2, one axis shared by all factors.
class RadialGrid {
 public:
  RadialGrid(SpaceModel space, Index n, double r_max);

  const SpaceModel& space() const { return space_; }
  const Axis& axis() const { return axis_; }
  const VectorXd& nodes() const { return axis_.nodes; }
  Index size() const { return axis_.size(); }
  double r_max() const { return axis_.extent(); }

  // dr weight times omega_{n_i-1} sinh^{n_i-1}(r) for factor i.
  const VectorXd& factor_weights(int i) const { return factor_weights_[i]; }
  // Full quadrature weight field (N x 1 for rank 1, N x N for rank 2).
  MatrixXd quad_weights() const;
  // |H| on the grid.
  MatrixXd radius() const;

 private:
  SpaceModel space_;
  Axis axis_;
  std::vector<VectorXd> factor_weights_;
};

class SpectralGrid {
 public:
  SpectralGrid(SpaceModel space, Index m, double lam_max, const VectorXd& kappa);

  const SpaceModel& space() const { return space_; }
  const Axis& axis() const { return axis_; }
  const VectorXd& nodes() const { return axis_.nodes; }
  Index size() const { return axis_.size(); }
  double lam_max() const { return axis_.extent(); }
  const VectorXd& kappa() const { return kappa_; }

  // dlam weight times kappa_i |c_i(lam)|^{-2}.
  const VectorXd& factor_weights(int i) const { return factor_weights_[i]; }
  MatrixXd plancherel_weights() const;
  // |lambda|^2 on the grid.
  MatrixXd lam_sq() const;

 private:
  SpaceModel space_;
  Axis axis_;
  VectorXd kappa_;
  std::vector<VectorXd> factor_weights_;
};

struct RadialFunction {
  std::shared_ptr<const RadialGrid> grid;
  MatrixXd values;
  Warnings warnings;
};

struct SpectralFunction {
  std::shared_ptr<const SpectralGrid> grid;
  MatrixXd values;
  Warnings warnings;
};

// Samples f(H) on the grid.
RadialFunction sample(std::shared_ptr<const RadialGrid> grid, const std::function<double(const ChamberPoint&)>& f);
// Samples a function of the Riemannian distance |H|.
RadialFunction sample_radial(std::shared_ptr<const RadialGrid> grid, const std::function<double(double)>& f);
// Samples g(lambda) on the spectral grid.
SpectralFunction sample_spectral(std::shared_ptr<const SpectralGrid> grid,
                                 const std::function<double(const VectorXd&)>& g);
// Samples a function of |lambda|^2.
SpectralFunction sample_spectral_sq(std::shared_ptr<const SpectralGrid> grid, const std::function<double(double)>& g);

// (int |w f|^p dx)^{1/p}; w defaults to 1.
double lp_norm(const RadialFunction& f, double p);
double weighted_lp_norm(const RadialFunction& f, double p, const MatrixXd& weight);
// (int |g|^2 dmu_Plancherel)^{1/2}.
double spectral_l2_norm(const SpectralFunction& g);

// Warning text if the edge values exceed tol * max |values|.
Warnings truncation_check(const MatrixXd& values, const char* what, double tol = 1e-8);

}  // namespace symspec
