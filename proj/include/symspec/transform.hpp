#pragma once

#include <memory>

#include "symspec/grid.hpp"

namespace symspec {

struct Calibration {
  VectorXd kappa;          // per factor
  double kappa_product = 1;
  double residual = 0;     // worst relative sup-norm round-trip error on the reference Gaussian
};

// Spherical transform pair on a radial/spectral grid. Kernel matrices are
// shared through a process-wide cache; the object itself is immutable.
class SphericalTransform {
 public:
  explicit SphericalTransform(const SpaceModel& space, const GridConfig& config = {});

  const SpaceModel& space() const { return radial_->space(); }
  const GridConfig& config() const { return config_; }
  std::shared_ptr<const RadialGrid> radial_grid() const { return radial_; }
  std::shared_ptr<const SpectralGrid> spectral_grid() const { return spectral_; }
  const Calibration& calibration() const { return calibration_; }

  // f^(lam) = int f(x) phi_lam(x) dx.
  SpectralFunction forward(const RadialFunction& f) const;
  // f(x) = int g(lam) phi_lam(x) kappa |c(lam)|^{-2} dlam.
  RadialFunction inverse(const SpectralFunction& g) const;

  // Multiplies f^ by m(|lambda|^2) and transforms back.
  RadialFunction apply_multiplier(const RadialFunction& f, const std::function<double(double)>& m) const;

  RadialFunction sample_radial(const std::function<double(double)>& f) const {
    return symspec::sample_radial(radial_, f);
  }
  SpectralFunction sample_spectral_sq(const std::function<double(double)>& g) const {
    return symspec::sample_spectral_sq(spectral_, g);
  }

 private:
  GridConfig config_;
  std::shared_ptr<const RadialGrid> radial_;
  std::shared_ptr<const SpectralGrid> spectral_;
  std::vector<std::shared_ptr<const MatrixXd>> phi_;  // per factor, M x N
  Calibration calibration_;
};

// Per-factor kappa from the round trip on e^{-r^2}; aborts if the residual exceeds 1e-4.
Calibration calibrate_plancherel(const SpaceModel& space, const GridConfig& config = {});

// kappa for H^3 in the sine-transform normalization: 1 / (2 pi^2).
inline double analytic_kappa_h3() { return 1.0 / (2.0 * kPi * kPi); }

// Matrix of phi_lam(r) for H^n on the given axes (M x N).
MatrixXd phi_matrix(int n, const VectorXd& lams, const VectorXd& radii);

void clear_transform_cache();

}  // namespace symspec
