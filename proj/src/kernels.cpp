#include "symspec/kernels.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "symspec/fit.hpp"
#include "symspec/quadrature.hpp"
#include "symspec/spherical.hpp"

namespace symspec {

namespace {

double log_sinh(double x) {
  if (x > 20.0) return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

// log(r / sinh r)
double log_ground_h3(double r) { return r == 0.0 ? 0.0 : std::log(r) - log_sinh(r); }

// (s cosh s - sinh s) / sinh^2 s
double abel_h4_term(double s) {
  if (s < 0.05) {
    const double s2 = s * s;
    const double num = s * s2 * (1.0 / 3.0 + s2 * (1.0 / 30.0 + s2 * (1.0 / 840.0 + s2 / 45360.0)));
    const double sh = std::sinh(s);
    return num / (sh * sh);
  }
  if (s > 20.0) return 2.0 * (s - 1.0) * std::exp(-s);
  const double sh = std::sinh(s);
  return (s * std::cosh(s) - sh) / (sh * sh);
}

// s^2 / sinh s
double s2_over_sinh(double s) {
  if (s > 20.0) return s * s * 2.0 * std::exp(-s) / (1.0 - std::exp(-2.0 * s));
  if (s == 0.0) return 0.0;
  return s * s / std::sinh(s);
}

// Abel inversion for even n. With s = r + w^2:
// h^2 = sqrt2/pi (4 pi t)^{-1/2} (2t)^{-1} e^{-r^2/4t} int s e^{-(2 r w^2 + w^4)/4t} w / v dw,
// h^4 = (1/2pi) sqrt2/pi (4 pi t)^{-1/2} (2t)^{-1} e^{-r^2/4t} int [A(s) + s^2/(2t sinh s)] e^{...} w / v dw,
// v = sqrt(cosh s - cosh r) = sqrt(2 sinh((s+r)/2) sinh(w^2/2)).
double log_heat_even(int n, double t, double r) {
  auto w_over_v = [r](double w) {
    const double s = r + w * w;
    return w / std::sqrt(2.0 * std::sinh(0.5 * (s + r)) * std::sinh(0.5 * w * w));
  };
  double integral;
  if (n == 2) {
    integral = integrate_half_line(
        [&](double w) {
          const double w2 = w * w;
          const double s = r + w2;
          return s * std::exp(-(2.0 * r * w2 + w2 * w2) / (4.0 * t)) * w_over_v(w);
        },
        1e-12);
  } else {
    integral = integrate_half_line(
        [&](double w) {
          const double w2 = w * w;
          const double s = r + w2;
          const double bracket = abel_h4_term(s) + s2_over_sinh(s) / (2.0 * t);
          return bracket * std::exp(-(2.0 * r * w2 + w2 * w2) / (4.0 * t)) * w_over_v(w);
        },
        1e-12);
  }
  double log_pre = std::log(std::sqrt(2.0) / kPi) - 0.5 * std::log(4.0 * kPi * t) - std::log(2.0 * t);
  if (n == 4) log_pre -= std::log(2.0 * kPi);
  return log_pre - r * r / (4.0 * t) + std::log(integral);
}

}  // namespace

double default_xi(const SpaceModel& space) { return 8.0 * space.rho_norm(); }

KernelSpec make_kernel_spec(const SpaceModel& space, double sigma, double xi) {
  if (!std::isfinite(sigma)) throw InadmissibleError("kernel: sigma must be finite");
  if (xi <= 0.0) xi = default_xi(space);
  if (!std::isfinite(xi)) throw InadmissibleError("kernel: xi must be finite");
  return {space, xi, sigma};
}

double log_shifted_heat_kernel(int n, double t, double r) {
  if (!(t > 0.0)) throw InadmissibleError("heat kernel: t must be positive");
  if (!(r >= 0.0)) throw InadmissibleError("heat kernel: r must be nonnegative");
  switch (n) {
    case 3:
      return -1.5 * std::log(4.0 * kPi * t) + log_ground_h3(r) - r * r / (4.0 * t);
    case 2:
    case 4:
      return log_heat_even(n, t, r);
    default:
      throw UnsupportedError("pointwise heat kernels are implemented for H^2, H^3, H^4 factors only");
  }
}

double shifted_heat_kernel(int n, double t, double r) { return std::exp(log_shifted_heat_kernel(n, t, r)); }

double shifted_heat_kernel(const SpaceModel& space, double t, const ChamberPoint& H) {
  check_chamber(space, H);
  double lh = 0.0;
  for (int i = 0; i < space.rank(); ++i) lh += log_shifted_heat_kernel(space.factors()[i], t, H[i]);
  return std::exp(lh);
}

bool pointwise_kernels_supported(const SpaceModel& space) {
  for (int n : space.factors())
    if (n < 2 || n > 4) return false;
  return true;
}

double bgr_kernel_at(const KernelSpec& spec, const ChamberPoint& H) {
  check_chamber(spec.space, H);
  if (!(spec.sigma > 0.0)) throw InadmissibleError("bgr kernel: sigma must be > 0 for a potential");
  if (!pointwise_kernels_supported(spec.space))
    throw UnsupportedError("pointwise kernels are implemented for H^2, H^3, H^4 factors only");
  if (H.norm() == 0.0 && spec.sigma <= spec.space.dim()) return INFINITY;
  const double half = 0.5 * spec.sigma;
  const double xi2 = spec.xi * spec.xi;
  const double lg = std::lgamma(half);
  // t = exp(pi/2 sinh y); t^{sigma/2 - 1} dt = t^{sigma/2} (pi/2) cosh y dy.
  auto integrand = [&](double y) {
    const double log_t = 0.5 * kPi * std::sinh(y);
    const double t = std::exp(log_t);
    const double head = half * log_t - xi2 * t + std::log(0.5 * kPi * std::cosh(y)) - lg;
    if (head < -745.0 || t == 0.0 || !std::isfinite(t)) return 0.0;
    double lh = 0.0;
    for (int i = 0; i < spec.space.rank(); ++i) lh += log_shifted_heat_kernel(spec.space.factors()[i], t, H[i]);
    return std::exp(head + lh);
  };
  return integrate_trapezoid_line(integrand, -4.6, 4.6, 1e-11, 8);
}

RadialFunction bgr_kernel(const KernelSpec& spec, std::shared_ptr<const RadialGrid> grid) {
  if (!(grid->space() == spec.space)) throw InadmissibleError("bgr kernel: grid space differs from spec space");
  using Key = std::tuple<std::vector<int>, double, double, Index, double>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const MatrixXd>> cache;
  const Key key{spec.space.factors(), spec.xi, spec.sigma, grid->size(), grid->r_max()};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return {grid, *it->second, {}};
  }
  const VectorXd& r = grid->nodes();
  MatrixXd values;
  if (spec.space.rank() == 1) {
    values.resize(r.size(), 1);
    for (Index i = 0; i < r.size(); ++i) values(i, 0) = bgr_kernel_at(spec, ChamberPoint::Constant(1, r[i]));
  } else {
    const bool symmetric = spec.space.factors()[0] == spec.space.factors()[1];
    values.resize(r.size(), r.size());
    for (Index j = 0; j < r.size(); ++j)
      for (Index i = 0; i < r.size(); ++i) {
        if (symmetric && i < j) {
          values(i, j) = values(j, i);
          continue;
        }
        ChamberPoint H(2);
        H << r[i], r[j];
        values(i, j) = bgr_kernel_at(spec, H);
      }
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, std::make_shared<const MatrixXd>(values));
  return {grid, values, {}};
}

std::string to_string(SmallRRegime r) {
  switch (r) {
    case SmallRRegime::Power:
      return "power";
    case SmallRRegime::Log:
      return "log";
    case SmallRRegime::Constant:
      return "constant";
  }
  return "unknown";
}

KernelAsymptotics kernel_asymptotics(const KernelSpec& spec, double small_lo, double small_hi, double large_lo,
                                     double large_hi, int points) {
  if (!(small_lo > 0.0 && small_hi > small_lo && large_hi > large_lo && large_lo > small_hi) || points < 8)
    throw InadmissibleError("kernel_asymptotics: fit windows must be ordered and positive");
  const SpaceModel& space = spec.space;
  const VectorXd dir = space.rho() / space.rho_norm();
  const int n = space.dim();
  const int l = space.rank();
  KernelAsymptotics out;
  out.small_lo = small_lo;
  out.small_hi = small_hi;
  out.large_lo = large_lo;
  out.large_hi = large_hi;

  VectorXd xs(points), gs(points);
  for (int k = 0; k < points; ++k) {
    xs[k] = small_lo * std::pow(small_hi / small_lo, static_cast<double>(k) / (points - 1));
    gs[k] = bgr_kernel_at(spec, xs[k] * dir);
  }
  const double gap = spec.sigma - n;
  if (std::abs(gap) < 1e-12) {
    out.regime = SmallRRegime::Log;
    const LogFit lf = fit_log_with_regular_part(xs, gs);
    out.log_coefficient = lf.coefficient;
    out.small_r_fit_rms = lf.rms_relative;
    out.small_r_exponent_predicted = 0.0;
    out.small_r_exponent_fit = linear_slope(xs.array().log().matrix(), gs.array().log().matrix());
  } else if (gap < 0.0) {
    out.regime = SmallRRegime::Power;
    out.small_r_exponent_predicted = gap;
    const PowerFit pf = fit_power_with_regular_part(xs, gs, gap - 1.0, std::min(gap + 1.0, -0.02));
    out.small_r_exponent_fit = pf.exponent;
    out.small_r_fit_rms = pf.rms_relative;
  } else {
    out.regime = SmallRRegime::Constant;
    out.small_r_exponent_predicted = 0.0;
    out.small_r_exponent_fit = linear_slope(xs.array().log().matrix(), gs.array().log().matrix());
  }

  VectorXd xl(points), gl(points), gq(points);
  for (int k = 0; k < points; ++k) {
    xl[k] = large_lo + (large_hi - large_lo) * k / (points - 1);
    const ChamberPoint H = xl[k] * dir;
    gl[k] = bgr_kernel_at(spec, H);
    gq[k] = gl[k] / ground_spherical(space, H);
  }
  const DecayFit total = fit_exponential_decay(xl, gl);
  const DecayFit reduced = fit_exponential_decay(xl, gq);
  out.large_r_decay_fit = total.rate;
  out.large_r_decay_predicted = spec.xi + space.rho_norm();
  out.large_r_power_fit = reduced.power;
  out.large_r_power_predicted = 0.5 * (spec.sigma - l - 1) - space.num_indivisible();
  return out;
}

RadialFunction radial_convolve(const SphericalTransform& T, const RadialFunction& f, const RadialFunction& g) {
  SpectralFunction a = T.forward(f);
  const SpectralFunction b = T.forward(g);
  a.values.array() *= b.values.array();
  append_warnings(a.warnings, b.warnings);
  return T.inverse(a);
}

RadialFunction apply_fractional(const SphericalTransform& T, double xi, double sigma_signed, const RadialFunction& f) {
  if (sigma_signed == 0.0) return f;
  const double xi2 = xi * xi;
  return T.apply_multiplier(f, [&](double l2) { return std::pow(l2 + xi2, 0.5 * sigma_signed); });
}

double sobolev_norm(const SphericalTransform& T, const SobolevParams& params, const RadialFunction& f) {
  if (!(params.p > 1.0) || !std::isfinite(params.p)) throw InadmissibleError("sobolev norm: p must be in (1, inf)");
  const double r2 = T.space().rho_norm() * T.space().rho_norm();
  const RadialFunction d = T.apply_multiplier(f, [&](double l2) { return std::pow(l2 + r2, 0.5 * params.sigma); });
  return lp_norm(d, params.p) + lp_norm(f, params.p);
}

double sobolev_norm_plancherel(const SphericalTransform& T, double sigma, const RadialFunction& f) {
  const SpectralFunction g = T.forward(f);
  const double r2 = T.space().rho_norm() * T.space().rho_norm();
  const MatrixXd P = T.spectral_grid()->plancherel_weights();
  const Eigen::ArrayXXd sym = (T.spectral_grid()->lam_sq().array() + r2).pow(sigma);
  const double top = std::sqrt((P.array() * sym * g.values.array().square()).sum());
  return top + spectral_l2_norm(g);
}

double shifted_sobolev_norm(const SphericalTransform& T, double xi, const SobolevParams& params,
                            const RadialFunction& f) {
  if (!(params.p > 1.0) || !std::isfinite(params.p)) throw InadmissibleError("sobolev norm: p must be in (1, inf)");
  return lp_norm(apply_fractional(T, xi, params.sigma, f), params.p);
}

}  // namespace symspec
