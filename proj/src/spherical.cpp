#include "symspec/spherical.hpp"

#include <algorithm>

#include "symspec/quadrature.hpp"

namespace symspec {

namespace {

double log_sinh(double x) {
  if (x > 20.0) return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

}  // namespace

double phi_rank_one(int n, double lam, double r) {
  if (n < 2) throw InadmissibleError("phi_rank_one: n < 2");
  if (!(r >= 0.0)) throw InadmissibleError("phi_rank_one: negative radius");
  lam = std::abs(lam);
  if (r == 0.0) return 1.0;
  if (n == 3) return phi_h3(lam, r);
  const double e = 0.5 * (n - 3);
  const double log_cn = e * std::log(2.0) + std::lgamma(0.5 * n) - std::lgamma(0.5) - std::lgamma(0.5 * (n - 1));
  const double log_sh = log_sinh(r);
  // s = r (1 - u^2): (cosh r - cosh s) = 2 sinh((r+s)/2) sinh(r u^2 / 2), ds = 2 r u du.
  auto integrand = [&](double u) {
    const double s = r * (1.0 - u * u);
    const double a = std::log(2.0) + log_sinh(0.5 * (r + s)) + log_sinh(0.5 * r * u * u);
    return std::cos(lam * s) * std::exp(log_cn + e * a - (n - 2) * log_sh) * 2.0 * r * u;
  };
  const int panels = 2 + static_cast<int>(std::ceil(0.2 * lam * r + 0.25 * r));
  return 2.0 * integrate_gl(integrand, 0.0, 1.0, panels);
}

double spherical_function(const SpaceModel& space, const VectorXd& lam, const ChamberPoint& H) {
  check_chamber(space, H);
  if (lam.size() != space.rank()) throw InadmissibleError("spherical_function: lambda has wrong length");
  double v = 1.0;
  for (int i = 0; i < space.rank(); ++i) v *= phi_rank_one(space.factors()[i], lam[i], H[i]);
  return v;
}

double ground_spherical(const SpaceModel& space, const ChamberPoint& H) {
  return spherical_function(space, VectorXd::Zero(space.rank()), H);
}

double ground_model(const SpaceModel& space, const ChamberPoint& H) {
  check_chamber(space, H);
  double v = std::exp(-space.rho().dot(H));
  for (const Root& a : space.roots()) v *= 1.0 + H[a.direction];
  return v;
}

std::vector<VectorXd> chamber_directions(const SpaceModel& space) {
  const int l = space.rank();
  std::vector<VectorXd> dirs;
  if (l == 1) {
    dirs.push_back(VectorXd::Ones(1));
    return dirs;
  }
  dirs.push_back(space.rho() / space.rho_norm());
  for (int i = 0; i < l; ++i) {
    VectorXd e = VectorXd::Zero(l);
    e[i] = 1.0;
    dirs.push_back(e);
    VectorXd m = VectorXd::Constant(l, 0.25);
    m[i] = 1.0;
    dirs.push_back(m.normalized());
  }
  return dirs;
}

GroundEstimate check_ground_estimate(const SpaceModel& space, double r_lo, double r_hi, int samples) {
  if (!(r_hi >= r_lo) || samples < 1 || !(r_lo >= 0.0)) throw InadmissibleError("check_ground_estimate: empty range");
  GroundEstimate g;
  g.min_ratio = INFINITY;
  g.max_ratio = 0.0;
  for (const VectorXd& d : chamber_directions(space)) {
    for (int k = 0; k < samples; ++k) {
      const double t = samples == 1 ? 0.0 : static_cast<double>(k) / (samples - 1);
      const double r = r_lo > 0.0 ? r_lo * std::pow(r_hi / r_lo, t) : r_hi * t;
      const ChamberPoint H = r * d;
      const double ratio = ground_spherical(space, H) / ground_model(space, H);
      g.min_ratio = std::min(g.min_ratio, ratio);
      g.max_ratio = std::max(g.max_ratio, ratio);
      ++g.samples;
    }
  }
  return g;
}

BoundCheck check_spherical_bound(const SpaceModel& space, const std::vector<double>& lams,
                                 const std::vector<double>& radii, double slack) {
  BoundCheck b;
  for (const VectorXd& d : chamber_directions(space)) {
    for (double r : radii) {
      const ChamberPoint H = r * d;
      const double p0 = ground_spherical(space, H);
      b.worst_excess = std::max(b.worst_excess, p0 - 1.0);
      if (!(p0 > 0.0) || p0 > 1.0 + slack) ++b.violations;
      for (double lam : lams) {
        const double v = spherical_function(space, VectorXd::Constant(space.rank(), lam), H);
        ++b.samples;
        b.worst_excess = std::max(b.worst_excess, std::abs(v) / p0 - 1.0);
        if (std::abs(v) > p0 * (1.0 + slack)) ++b.violations;
      }
    }
  }
  return b;
}

}  // namespace symspec
