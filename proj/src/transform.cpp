#include "symspec/transform.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "symspec/spherical.hpp"

namespace symspec {

namespace {

using CacheKey = std::tuple<int, Index, double, Index, double>;

std::mutex& cache_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<CacheKey, std::shared_ptr<const MatrixXd>>& phi_cache() {
  static std::map<CacheKey, std::shared_ptr<const MatrixXd>> cache;
  return cache;
}

std::map<CacheKey, double>& kappa_cache() {
  static std::map<CacheKey, double> cache;
  return cache;
}

CacheKey key_of(int n, const GridConfig& c) { return {n, c.n_radial, c.r_max, c.n_spectral, c.lam_max}; }

std::shared_ptr<const MatrixXd> cached_phi(int n, const GridConfig& c, const VectorXd& lams, const VectorXd& radii) {
  const CacheKey key = key_of(n, c);
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = phi_cache().find(key);
    if (it != phi_cache().end()) return it->second;
  }
  auto built = std::make_shared<const MatrixXd>(phi_matrix(n, lams, radii));
  std::lock_guard<std::mutex> lock(cache_mutex());
  return phi_cache().emplace(key, built).first->second;
}

// Rank-one kappa for factor dimension n, via the e^{-r^2} round trip.
std::pair<double, double> factor_kappa(int n, const GridConfig& c) {
  const SpaceModel space = make_hyperbolic(n);
  const RadialGrid rg(space, c.n_radial, c.r_max);
  const SpectralGrid sg(space, c.n_spectral, c.lam_max, VectorXd::Ones(1));
  auto phi = cached_phi(n, c, sg.nodes(), rg.nodes());
  const VectorXd f = rg.nodes().array().square().unaryExpr([](double x) { return std::exp(-x); });
  const VectorXd fhat = *phi * rg.factor_weights(0).cwiseProduct(f);
  const VectorXd g = phi->transpose() * sg.factor_weights(0).cwiseProduct(fhat);
  const VectorXd W = rg.factor_weights(0);
  const double kappa = W.dot(f.cwiseProduct(g)) / W.dot(g.cwiseProduct(g));
  const double residual = (kappa * g - f).cwiseAbs().maxCoeff() / f.cwiseAbs().maxCoeff();
  return {kappa, residual};
}

}  // namespace

MatrixXd phi_matrix(int n, const VectorXd& lams, const VectorXd& radii) {
  const Index M = lams.size(), N = radii.size();
  MatrixXd phi(M, N);
  if (n == 3) {
    for (Index j = 0; j < N; ++j) {
      const double r = radii[j];
      const double ground = r == 0.0 ? 1.0 : r / std::sinh(r);
      for (Index i = 0; i < M; ++i) {
        const double x = lams[i] * r;
        phi(i, j) = (std::abs(x) < 1e-6 ? 1.0 - x * x / 6.0 : std::sin(x) / x) * ground;
      }
    }
    return phi;
  }
  // Same Abel integral as phi_rank_one, with the s-quadrature shared across lambda.
  const double lam_top = lams.cwiseAbs().maxCoeff();
  for (Index j = 0; j < N; ++j) {
    const double r = radii[j];
    const int panels = 2 + static_cast<int>(std::ceil(0.2 * lam_top * r + 0.25 * r));
    const Rule& g = gauss_legendre(16);
    VectorXd s(panels * 16), w(panels * 16);
    const double e = 0.5 * (n - 3);
    const double log_cn =
        e * std::log(2.0) + std::lgamma(0.5 * n) - std::lgamma(0.5) - std::lgamma(0.5 * (n - 1));
    auto log_sinh = [](double x) {
      return x > 20.0 ? x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x)) : std::log(std::sinh(x));
    };
    const double log_sh = log_sinh(r);
    const double h = 1.0 / panels;
    for (int p = 0; p < panels; ++p)
      for (int k = 0; k < 16; ++k) {
        const double u = (p + 0.5) * h + 0.5 * h * g.nodes[k];
        const double sk = r * (1.0 - u * u);
        const double a = std::log(2.0) + log_sinh(0.5 * (r + sk)) + log_sinh(0.5 * r * u * u);
        s[p * 16 + k] = sk;
        w[p * 16 + k] = 2.0 * 0.5 * h * g.weights[k] * std::exp(log_cn + e * a - (n - 2) * log_sh) * 2.0 * r * u;
      }
    phi.col(j) = ((lams * s.transpose()).array().cos().matrix() * w);
  }
  return phi;
}

Calibration calibrate_plancherel(const SpaceModel& space, const GridConfig& config) {
  Calibration cal;
  cal.kappa.resize(space.rank());
  for (int i = 0; i < space.rank(); ++i) {
    const int n = space.factors()[i];
    const CacheKey key = key_of(n, config);
    double kappa;
    double residual = 0.0;
    bool hit = false;
    {
      std::lock_guard<std::mutex> lock(cache_mutex());
      auto it = kappa_cache().find(key);
      if (it != kappa_cache().end()) {
        kappa = it->second;
        hit = true;
      }
    }
    if (!hit) {
      std::tie(kappa, residual) = factor_kappa(n, config);
      if (!(residual <= 1e-4) || !(kappa > 0.0))
        throw NumericalError("calibration residual " + std::to_string(residual) + " exceeds 1e-4 for H^" +
                             std::to_string(n));
      std::lock_guard<std::mutex> lock(cache_mutex());
      kappa_cache()[key] = kappa;
    }
    cal.kappa[i] = kappa;
    cal.kappa_product *= kappa;
    cal.residual = std::max(cal.residual, residual);
  }
  return cal;
}

void clear_transform_cache() {
  std::lock_guard<std::mutex> lock(cache_mutex());
  phi_cache().clear();
  kappa_cache().clear();
}

SphericalTransform::SphericalTransform(const SpaceModel& space, const GridConfig& config) : config_(config) {
  if (space.rank() > 2) throw UnsupportedError("spherical transforms support rank <= 2");
  calibration_ = calibrate_plancherel(space, config);
  radial_ = std::make_shared<const RadialGrid>(space, config.n_radial, config.r_max);
  spectral_ = std::make_shared<const SpectralGrid>(space, config.n_spectral, config.lam_max, calibration_.kappa);
  for (int n : space.factors()) phi_.push_back(cached_phi(n, config, spectral_->nodes(), radial_->nodes()));
}

SpectralFunction SphericalTransform::forward(const RadialFunction& f) const {
  if (f.grid.get() != radial_.get() && !(f.grid->space() == space() && f.grid->size() == radial_->size() &&
                                         f.grid->r_max() == radial_->r_max()))
    throw InadmissibleError("forward transform: function lives on a different grid");
  SpectralFunction out{spectral_, MatrixXd(), f.warnings};
  append_warnings(out.warnings, truncation_check(f.values, "radial"));
  const VectorXd& w0 = radial_->factor_weights(0);
  if (space().rank() == 1) {
    out.values = *phi_[0] * w0.cwiseProduct(f.values.col(0));
  } else {
    const VectorXd& w1 = radial_->factor_weights(1);
    const MatrixXd weighted = w0.asDiagonal() * f.values * w1.asDiagonal();
    out.values = (*phi_[0] * weighted) * phi_[1]->transpose();
  }
  return out;
}

RadialFunction SphericalTransform::inverse(const SpectralFunction& g) const {
  if (g.grid.get() != spectral_.get() && !(g.grid->space() == space() && g.grid->size() == spectral_->size() &&
                                           g.grid->lam_max() == spectral_->lam_max()))
    throw InadmissibleError("inverse transform: function lives on a different grid");
  RadialFunction out{radial_, MatrixXd(), g.warnings};
  append_warnings(out.warnings, truncation_check(g.values, "spectral"));
  const VectorXd& p0 = spectral_->factor_weights(0);
  if (space().rank() == 1) {
    out.values = phi_[0]->transpose() * p0.cwiseProduct(g.values.col(0));
  } else {
    const VectorXd& p1 = spectral_->factor_weights(1);
    const MatrixXd weighted = p0.asDiagonal() * g.values * p1.asDiagonal();
    out.values = (phi_[0]->transpose() * weighted) * *phi_[1];
  }
  return out;
}

RadialFunction SphericalTransform::apply_multiplier(const RadialFunction& f,
                                                    const std::function<double(double)>& m) const {
  SpectralFunction g = forward(f);
  g.values.array() *= spectral_->lam_sq().unaryExpr(m).array();
  return inverse(g);
}

}  // namespace symspec
