#pragma once

#include <vector>

#include "symspec/core.hpp"

namespace symspec {

// Closed positive Weyl chamber point: radial coordinate per factor.
using ChamberPoint = VectorXd;

struct Root {
  int direction;     // factor index
  int multiplicity;  // n_i - 1
};

// Real hyperbolic space H^n or a product of them, curvature -1 per factor.
class SpaceModel {
 public:
  explicit SpaceModel(std::vector<int> factors);

  const std::vector<int>& factors() const { return factors_; }
  int rank() const { return static_cast<int>(factors_.size()); }
  int dim() const { return dim_; }
  const std::vector<Root>& roots() const { return roots_; }
  const VectorXd& rho() const { return rho_; }
  double rho_norm() const { return rho_.norm(); }
  int num_indivisible() const { return rank(); }
  int pseudo_dim() const { return rank() + 2 * num_indivisible(); }
  long weyl_order() const { return 1L << rank(); }

  bool operator==(const SpaceModel& other) const { return factors_ == other.factors_; }

 private:
  std::vector<int> factors_;
  std::vector<Root> roots_;
  VectorXd rho_;
  int dim_ = 0;
};

SpaceModel make_hyperbolic(int n);
SpaceModel make_product(const std::vector<int>& dims);

// Throws InadmissibleError unless H has rank() nonnegative entries.
void check_chamber(const SpaceModel& space, const ChamberPoint& H);

// Surface area of the unit sphere S^{k}.
double sphere_area(int k);

// prod_i omega_{n_i - 1}.
double angular_constant(const SpaceModel& space);

// J(H) = prod sinh^{n_i - 1}(H_i).
double polar_density(const SpaceModel& space, const ChamberPoint& H);

// J(H) / [prod (<a,H>/(1+<a,H>))^{m_a} e^{2<rho,H>}]; bounded above and below.
double polar_density_ratio(const SpaceModel& space, const ChamberPoint& H);

struct Distances {
  double riemannian;
  double polyhedral;
};
Distances distances(const SpaceModel& space, const ChamberPoint& H);

// Riemannian measure of the geodesic sphere of radius r (angular factor included).
double sphere_measure(const SpaceModel& space, double r);

double ball_volume(const SpaceModel& space, double R);

}  // namespace symspec
