#pragma once

#include <vector>

#include "symspec/transform.hpp"

namespace symspec {

// u_tt - (Delta + |rho|^2) u + b u_t + m u = mu_nl |u|^{p_nl - 1} u.
struct WaveParams {
  double b = 2;
  double m = 2;
  double p_nl = 1;
  double mu_nl = 0;
};

double gamma_of(const WaveParams& params, double lam);

// u^(t) = A u0^ + B u1^, u_t^(t) = At u0^ + Bt u1^.
struct Multiplier {
  double A, B, At, Bt;
};

// Propagator of y'' + b y' + gamma_sq y = 0.
Multiplier propagator(double b, double gamma_sq, double t);
Multiplier linear_multiplier(const WaveParams& params, double lam, double t);

// delta* = b/2 if b^2 < 4m, else (b - sqrt(b^2 - 4m))/2.
double decay_exponent_star(const WaveParams& params);
// 0.95 delta*.
double decay_exponent(const WaveParams& params);

inline GridConfig default_wave_grid() { return {1024, 30.0, 1024, 16.0}; }

struct WaveNorms {
  double l2 = 0;     // ||u||_2
  double dhalf = 0;  // ||(-Delta)^{1/2} u||_2, symbol sqrt(lam^2 + |rho|^2)
  double h1 = 0;     // dhalf + l2
  double l2_ut = 0;  // ||u_t||_2
  double zweighted = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<RadialFunction> u, ut;  // empty when snapshots are not kept
  std::vector<WaveNorms> norms;
  double delta = 0;
  // Semilinear diagnostics, one entry per time step.
  std::vector<int> iterations;
  std::vector<double> contraction;
  Warnings warnings;
};

Trajectory solve_linear(const SphericalTransform& T, const WaveParams& params, const RadialFunction& u0,
                        const RadialFunction& u1, const std::vector<double>& times, bool keep_snapshots = true);

struct SemilinearOptions {
  double T = 20;
  double dt = 0.01;
  double record_every = 0.1;
  double tol = 1e-10;
  int max_iterations = 50;
  bool keep_snapshots = true;
};

Trajectory solve_semilinear(const SphericalTransform& T, const WaveParams& params, const RadialFunction& u0,
                            const RadialFunction& u1, const SemilinearOptions& options = {});

// sup over recorded t <= t_max of (1+t)^{-1/2} e^{delta t} (dhalf + l2 + l2_ut).
double z_norm(const Trajectory& traj, double delta, double t_max = INFINITY);

// -slope of ln ||u||_{H^{1,2}}^2 against t on [t_lo, t_hi].
double h1_decay_rate(const Trajectory& traj, double t_lo, double t_hi);

}  // namespace symspec
