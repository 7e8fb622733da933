#pragma once

#include <string>

#include "symspec/transform.hpp"

namespace symspec {

// Symbol of (-Delta - |rho|^2 + xi^2)^{-sigma/2}: (|lambda|^2 + xi^2)^{-sigma/2}.
struct KernelSpec {
  SpaceModel space;
  double xi;
  double sigma;
};

double default_xi(const SpaceModel& space);  // 8 |rho|

KernelSpec make_kernel_spec(const SpaceModel& space, double sigma, double xi = 0.0);  // xi <= 0: default

template <typename Scalar>
Scalar bgr_multiplier(const KernelSpec& spec, const Scalar& lam_sq) {
  using std::pow;
  return pow(lam_sq + Scalar(spec.xi * spec.xi), Scalar(-0.5 * spec.sigma));
}

// Kernel of e^{-t(-Delta - |rho|^2)} on H^n, n in {2, 3, 4}; spherical transform e^{-t lam^2}.
double shifted_heat_kernel(int n, double t, double r);
double log_shifted_heat_kernel(int n, double t, double r);
double shifted_heat_kernel(const SpaceModel& space, double t, const ChamberPoint& H);

bool pointwise_kernels_supported(const SpaceModel& space);

// G_{xi,sigma}(H), sigma > 0, from G = Gamma(sigma/2)^{-1} int t^{sigma/2-1} e^{-xi^2 t} h_t dt.
double bgr_kernel_at(const KernelSpec& spec, const ChamberPoint& H);

// Kernel table on a grid (cached per spec and grid).
RadialFunction bgr_kernel(const KernelSpec& spec, std::shared_ptr<const RadialGrid> grid);

enum class SmallRRegime { Power, Log, Constant };
std::string to_string(SmallRRegime r);

struct KernelAsymptotics {
  SmallRRegime regime = SmallRRegime::Power;
  double small_r_exponent_fit = 0;  // power regime: fitted exponent a in G ~ r^a
  double small_r_exponent_predicted = 0;
  double log_coefficient = 0;       // log regime: coefficient of log(1/r)
  double small_r_fit_rms = 0;
  double large_r_decay_fit = 0;     // total exponential rate along the rho ray
  double large_r_decay_predicted = 0;
  double large_r_power_fit = 0;     // power of G / phi_0 along the rho ray
  double large_r_power_predicted = 0;
  double small_lo = 1e-3, small_hi = 1e-1, large_lo = 5, large_hi = 15;
};

// Fits on [small_lo, small_hi] and [large_lo, large_hi] along the rho direction.
KernelAsymptotics kernel_asymptotics(const KernelSpec& spec, double small_lo = 1e-3, double small_hi = 1e-1,
                                     double large_lo = 5, double large_hi = 15, int points = 40);

// Inverse transform of f^ g^.
RadialFunction radial_convolve(const SphericalTransform& T, const RadialFunction& f, const RadialFunction& g);

// Multiplier (lam^2 + xi^2)^{sigma_signed / 2}.
RadialFunction apply_fractional(const SphericalTransform& T, double xi, double sigma_signed, const RadialFunction& f);

struct SobolevParams {
  double sigma;
  double p;
};

// ||(-Delta)^{sigma/2} f||_p + ||f||_p with symbol (lam^2 + |rho|^2)^{sigma/2}.
double sobolev_norm(const SphericalTransform& T, const SobolevParams& params, const RadialFunction& f);
// p = 2 value computed on the spectral side.
double sobolev_norm_plancherel(const SphericalTransform& T, double sigma, const RadialFunction& f);
// ||(xi^2 - |rho|^2 - Delta)^{sigma/2} f||_p.
double shifted_sobolev_norm(const SphericalTransform& T, double xi, const SobolevParams& params,
                            const RadialFunction& f);

}  // namespace symspec
