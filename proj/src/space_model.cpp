#include "symspec/space_model.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "symspec/quadrature.hpp"

namespace symspec {

SpaceModel::SpaceModel(std::vector<int> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InadmissibleError("space: factor list is empty");
  rho_.resize(rank());
  for (int i = 0; i < rank(); ++i) {
    const int n = factors_[i];
    if (n < 2) throw InadmissibleError("space: factor dimension " + std::to_string(n) + " < 2");
    roots_.push_back({i, n - 1});
    rho_[i] = 0.5 * (n - 1);
    dim_ += n;
  }
}

SpaceModel make_hyperbolic(int n) { return SpaceModel({n}); }

SpaceModel make_product(const std::vector<int>& dims) { return SpaceModel(dims); }

void check_chamber(const SpaceModel& space, const ChamberPoint& H) {
  if (H.size() != space.rank())
    throw InadmissibleError("chamber point has " + std::to_string(H.size()) + " components, rank is " +
                            std::to_string(space.rank()));
  for (Index i = 0; i < H.size(); ++i)
    if (!(H[i] >= 0.0)) throw InadmissibleError("chamber point component " + std::to_string(i) + " is negative");
}

double sphere_area(int k) { return 2.0 * std::pow(kPi, 0.5 * (k + 1)) / std::tgamma(0.5 * (k + 1)); }

double angular_constant(const SpaceModel& space) {
  double c = 1.0;
  for (int n : space.factors()) c *= sphere_area(n - 1);
  return c;
}

double polar_density(const SpaceModel& space, const ChamberPoint& H) {
  check_chamber(space, H);
  double j = 1.0;
  for (const Root& a : space.roots()) j *= std::pow(std::sinh(H[a.direction]), a.multiplicity);
  return j;
}

double polar_density_ratio(const SpaceModel& space, const ChamberPoint& H) {
  check_chamber(space, H);
  double log_ratio = 0.0;
  for (const Root& a : space.roots()) {
    const double t = H[a.direction];
    if (t == 0.0) continue;
    // sinh t / (t/(1+t) e^t)
    const double f = (1.0 - std::exp(-2.0 * t)) * 0.5 * (1.0 + t) / t;
    log_ratio += a.multiplicity * std::log(f);
  }
  return std::exp(log_ratio);
}

Distances distances(const SpaceModel& space, const ChamberPoint& H) {
  check_chamber(space, H);
  return {H.norm(), space.rho().dot(H) / space.rho_norm()};
}

namespace {

// Integral of J over the positive part of the unit sphere in R^l, scaled to radius r.
double orthant_sphere_integral(const SpaceModel& space, double r) {
  const int l = space.rank();
  const Rule& g = gauss_legendre(16);
  const int panels = l == 2 ? 8 : 3;
  VectorXd theta(panels * 16), w(panels * 16);
  const double h = 0.5 * kPi / panels;
  for (int p = 0; p < panels; ++p)
    for (int k = 0; k < 16; ++k) {
      theta[p * 16 + k] = (p + 0.5) * h + 0.5 * h * g.nodes[k];
      w[p * 16 + k] = 0.5 * h * g.weights[k];
    }
  ChamberPoint H(l);
  // Hyperspherical coordinates restricted to the positive orthant.
  std::function<double(int, double)> rec = [&](int depth, double radius) -> double {
    if (depth == l - 1) {
      H[depth] = radius;
      return polar_density(space, H);
    }
    double sum = 0.0;
    for (Index k = 0; k < theta.size(); ++k) {
      const double c = std::cos(theta[k]), s = std::sin(theta[k]);
      H[depth] = radius * c;
      sum += w[k] * std::pow(s, l - 2 - depth) * rec(depth + 1, radius * s);
    }
    return sum;
  };
  return std::pow(r, l - 1) * rec(0, r);
}

}  // namespace

double sphere_measure(const SpaceModel& space, double r) {
  if (!(r >= 0.0)) throw InadmissibleError("sphere_measure: negative radius");
  if (space.rank() == 1) return sphere_area(space.dim() - 1) * std::pow(std::sinh(r), space.dim() - 1);
  if (r == 0.0) return 0.0;
  // Polar coordinates in each factor: dx = prod omega_i sinh^{m_i}(r_i) dr_i on the orthant.
  return angular_constant(space) * orthant_sphere_integral(space, r);
}

double ball_volume(const SpaceModel& space, double R) {
  if (!(R >= 0.0)) throw InadmissibleError("ball_volume: negative radius");
  if (R == 0.0) return 0.0;
  const int panels = 4 + static_cast<int>(std::ceil(4.0 * R));
  return integrate_gl([&](double r) { return sphere_measure(space, r); }, 0.0, R, panels);
}

}  // namespace symspec
