#pragma once

#include <cmath>
#include <vector>

#include "symspec/space_model.hpp"

namespace symspec {

// phi_lambda on H^3: sin(lam r) / (lam sinh r).
template <typename Scalar>
Scalar phi_h3(const Scalar& lam, const Scalar& r) {
  using std::abs;
  using std::sin;
  using std::sinh;
  if (r == Scalar(0)) return Scalar(1);
  const Scalar x = lam * r;
  const Scalar sinc = abs(x) < Scalar(1e-6) ? Scalar(1) - x * x / Scalar(6) : sin(x) / x;
  return sinc * (r / sinh(r));
}

// |Gamma(i lam + rho) / Gamma(i lam)|^2 for H^n; calibration applied elsewhere.
template <typename Scalar>
Scalar plancherel_raw(int n, const Scalar& lam) {
  using std::tanh;
  const Scalar l2 = lam * lam;
  Scalar d(1);
  if (n % 2 == 1) {
    for (int j = 0; j < (n - 1) / 2; ++j) d *= l2 + Scalar(j * j);
  } else {
    d = lam * tanh(Scalar(kPi) * lam);
    for (int j = 0; j < (n - 2) / 2; ++j) d *= l2 + Scalar((j + 0.5) * (j + 0.5));
  }
  return d;
}

// Rank-one phi_lambda on H^n. n = 3 closed form; otherwise the Abel integral
// phi = c_n sinh^{2-n} r int_{-r}^{r} (cosh r - cosh s)^{(n-3)/2} e^{i lam s} ds.
double phi_rank_one(int n, double lam, double r);

double spherical_function(const SpaceModel& space, const VectorXd& lam, const ChamberPoint& H);

double ground_spherical(const SpaceModel& space, const ChamberPoint& H);

// prod (1 + <a,H>) e^{-<rho,H>} over reduced positive roots.
double ground_model(const SpaceModel& space, const ChamberPoint& H);

struct GroundEstimate {
  double min_ratio = 0;
  double max_ratio = 0;
  double spread() const { return max_ratio / min_ratio; }
  int samples = 0;
};

// Ratio phi_0 / ground_model along rays through the chamber, |H| in [r_lo, r_hi].
GroundEstimate check_ground_estimate(const SpaceModel& space, double r_lo, double r_hi, int samples = 200);

struct BoundCheck {
  int samples = 0;
  int violations = 0;
  double worst_excess = 0;  // max of |phi_lam| / phi_0 - 1 and phi_0 - 1
};

// |phi_lam| <= phi_0 <= 1 at every (lam, r) sample; lam repeated in every factor.
BoundCheck check_spherical_bound(const SpaceModel& space, const std::vector<double>& lams,
                                 const std::vector<double>& radii, double slack = 1e-12);

// Unit directions in the closed chamber used for rank >= 2 sampling.
std::vector<VectorXd> chamber_directions(const SpaceModel& space);

}  // namespace symspec
