#include "symspec/wave.hpp"

#include <algorithm>
#include <cmath>

#include "symspec/fit.hpp"
#include "symspec/quadrature.hpp"

namespace symspec {

namespace {

void check_params(const WaveParams& p) {
  if (!(p.b > 0.0 && p.m > 0.0)) throw InadmissibleError("wave: need b > 0 and m > 0");
}

// cosh(sqrt(s) t) and sinh(sqrt(s) t)/sqrt(s), times e^{-h t}.
void damped_cs(double h, double s, double t, double& eC, double& eS) {
  if (std::abs(s) * t * t <= 0.5) {
    const double x = s * t * t;
    double c = 1.0, sn = t, termc = 1.0, terms = t;
    for (int k = 1; k < 40; ++k) {
      termc *= x / ((2.0 * k - 1.0) * (2.0 * k));
      terms *= x / ((2.0 * k) * (2.0 * k + 1.0));
      c += termc;
      sn += terms;
      if (std::abs(termc) < 1e-18 * std::abs(c) && std::abs(terms) < 1e-18 * std::abs(sn)) break;
    }
    const double e = std::exp(-h * t);
    eC = e * c;
    eS = e * sn;
  } else if (s > 0.0) {
    const double q = std::sqrt(s);
    const double ep = std::exp((q - h) * t), em = std::exp(-(q + h) * t);
    eC = 0.5 * (ep + em);
    eS = 0.5 * (ep - em) / q;
  } else {
    const double q = std::sqrt(-s);
    const double e = std::exp(-h * t);
    eC = e * std::cos(q * t);
    eS = e * std::sin(q * t) / q;
  }
}

}  // namespace

double gamma_of(const WaveParams& params, double lam) {
  check_params(params);
  return std::sqrt(params.m + lam * lam);
}

Multiplier propagator(double b, double gamma_sq, double t) {
  if (t < 0.0) throw InadmissibleError("wave: t must be >= 0");
  const double h = 0.5 * b;
  const double s = h * h - gamma_sq;
  double eC, eS;
  damped_cs(h, s, t, eC, eS);
  return {eC + h * eS, eS, -gamma_sq * eS, eC - h * eS};
}

Multiplier linear_multiplier(const WaveParams& params, double lam, double t) {
  check_params(params);
  return propagator(params.b, params.m + lam * lam, t);
}

double decay_exponent_star(const WaveParams& params) {
  check_params(params);
  const double disc = params.b * params.b - 4.0 * params.m;
  return disc < 0.0 ? 0.5 * params.b : 0.5 * (params.b - std::sqrt(disc));
}

double decay_exponent(const WaveParams& params) { return 0.95 * decay_exponent_star(params); }

namespace {

struct SpectralNorms {
  MatrixXd P, L;  // Plancherel weights, |lambda|^2 + |rho|^2

  explicit SpectralNorms(const SphericalTransform& T) {
    P = T.spectral_grid()->plancherel_weights();
    const double r2 = T.space().rho_norm() * T.space().rho_norm();
    L = (T.spectral_grid()->lam_sq().array() + r2).matrix();
  }
  double l2(const MatrixXd& g) const { return std::sqrt((P.array() * g.array().square()).sum()); }
  double dhalf(const MatrixXd& g) const { return std::sqrt((P.array() * L.array() * g.array().square()).sum()); }

  WaveNorms at(double t, const MatrixXd& g, const MatrixXd& gt, double delta) const {
    WaveNorms n;
    n.l2 = l2(g);
    n.dhalf = dhalf(g);
    n.h1 = n.dhalf + n.l2;
    n.l2_ut = l2(gt);
    n.zweighted = std::exp(delta * t) / std::sqrt(1.0 + t) * (n.dhalf + n.l2 + n.l2_ut);
    return n;
  }
};

}  // namespace

Trajectory solve_linear(const SphericalTransform& T, const WaveParams& params, const RadialFunction& u0,
                        const RadialFunction& u1, const std::vector<double>& times, bool keep_snapshots) {
  check_params(params);
  Trajectory traj;
  traj.delta = decay_exponent(params);
  const SpectralFunction g0 = T.forward(u0), g1 = T.forward(u1);
  append_warnings(traj.warnings, g0.warnings);
  append_warnings(traj.warnings, g1.warnings);
  const SpectralNorms norms(T);
  const MatrixXd lam_sq = T.spectral_grid()->lam_sq();
  double last = 0.0;
  for (double t : times) {
    if (t < 0.0 || t < last) throw InadmissibleError("wave: times must be nonnegative and increasing");
    last = t;
    MatrixXd A(lam_sq.rows(), lam_sq.cols()), B = A, At = A, Bt = A;
    for (Index j = 0; j < lam_sq.cols(); ++j)
      for (Index i = 0; i < lam_sq.rows(); ++i) {
        const Multiplier mu = propagator(params.b, params.m + lam_sq(i, j), t);
        A(i, j) = mu.A;
        B(i, j) = mu.B;
        At(i, j) = mu.At;
        Bt(i, j) = mu.Bt;
      }
    const MatrixXd g = (A.array() * g0.values.array() + B.array() * g1.values.array()).matrix();
    const MatrixXd gt = (At.array() * g0.values.array() + Bt.array() * g1.values.array()).matrix();
    traj.times.push_back(t);
    traj.norms.push_back(norms.at(t, g, gt, traj.delta));
    if (keep_snapshots) {
      traj.u.push_back(T.inverse({T.spectral_grid(), g, {}}));
      traj.ut.push_back(T.inverse({T.spectral_grid(), gt, {}}));
    }
  }
  return traj;
}

Trajectory solve_semilinear(const SphericalTransform& T, const WaveParams& params, const RadialFunction& u0,
                            const RadialFunction& u1, const SemilinearOptions& opt) {
  check_params(params);
  const double n = T.space().dim();
  if (n < 3.0) throw InadmissibleError("semilinear wave: need n >= 3");
  if (!(params.p_nl >= 1.0 && params.p_nl <= n / (n - 2.0) + 1e-12))
    throw InadmissibleError("semilinear wave: need 1 <= p <= n/(n-2)");
  if (!(opt.dt > 0.0 && opt.T > 0.0 && opt.record_every > 0.0)) throw InadmissibleError("semilinear wave: need dt, T > 0");
  Trajectory traj;
  traj.delta = decay_exponent(params);
  if (std::abs(params.p_nl - n / (n - 2.0)) < 1e-12) traj.warnings.push_back("p = n/(n-2) endpoint: experimental");

  const double dt = opt.dt;
  const auto steps = static_cast<long>(std::llround(opt.T / dt));
  const long stride = std::max(1L, static_cast<long>(std::llround(opt.record_every / dt)));
  const auto sg = T.spectral_grid();
  const MatrixXd lam_sq = sg->lam_sq();
  const Index R = lam_sq.rows(), C = lam_sq.cols();

  // One-step propagator and Duhamel weights against linear interpolation of the forcing.
  MatrixXd A(R, C), B(R, C), At(R, C), Bt(R, C), W0(R, C), W1(R, C), W0t(R, C), W1t(R, C);
  const Rule& gl = gauss_legendre(12);
  for (Index j = 0; j < C; ++j)
    for (Index i = 0; i < R; ++i) {
      const double g2 = params.m + lam_sq(i, j);
      const Multiplier full = propagator(params.b, g2, dt);
      A(i, j) = full.A;
      B(i, j) = full.B;
      At(i, j) = full.At;
      Bt(i, j) = full.Bt;
      double w0 = 0, w1 = 0, w0t = 0, w1t = 0;
      for (int k = 0; k < 12; ++k) {
        const double tau = 0.5 * dt * (gl.nodes[k] + 1.0), w = 0.5 * dt * gl.weights[k];
        const Multiplier q = propagator(params.b, g2, dt - tau);
        const double lin = tau / dt;
        w0 += w * q.B * (1.0 - lin);
        w1 += w * q.B * lin;
        w0t += w * q.Bt * (1.0 - lin);
        w1t += w * q.Bt * lin;
      }
      W0(i, j) = w0;
      W1(i, j) = w1;
      W0t(i, j) = w0t;
      W1t(i, j) = w1t;
    }

  const double mu = params.mu_nl, pn = params.p_nl;
  auto forcing = [&](const RadialFunction& u) {
    RadialFunction f{u.grid, u.values.unaryExpr([&](double x) { return mu * std::pow(std::abs(x), pn - 1.0) * x; }), {}};
    SpectralFunction g = T.forward(f);
    append_warnings(traj.warnings, g.warnings);
    return g.values;
  };
  auto to_radial = [&](const MatrixXd& g) {
    RadialFunction u = T.inverse({sg, g, {}});
    append_warnings(traj.warnings, u.warnings);
    return u;
  };

  const SpectralNorms norms(T);
  SpectralFunction s0 = T.forward(u0), s1 = T.forward(u1);
  append_warnings(traj.warnings, s0.warnings);
  append_warnings(traj.warnings, s1.warnings);
  MatrixXd g = s0.values, gt = s1.values;
  RadialFunction u = to_radial(g);
  MatrixXd F = mu == 0.0 ? MatrixXd::Zero(R, C) : forcing(u);

  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.norms.push_back(norms.at(t, g, gt, traj.delta));
    if (opt.keep_snapshots) {
      traj.u.push_back(u);
      traj.ut.push_back(to_radial(gt));
    }
  };
  record(0.0);

  for (long k = 1; k <= steps; ++k) {
    const MatrixXd base = (A.array() * g.array() + B.array() * gt.array() + W0.array() * F.array()).matrix();
    const MatrixXd base_t = (At.array() * g.array() + Bt.array() * gt.array() + W0t.array() * F.array()).matrix();
    MatrixXd next = (base.array() + W1.array() * F.array()).matrix();
    MatrixXd Fn = F;
    double prev_inc = -1.0, factor = 0.0;
    int it = 0;
    for (;;) {
      ++it;
      u = to_radial(next);
      Fn = mu == 0.0 ? MatrixXd::Zero(R, C) : forcing(u);
      const MatrixXd upd = (base.array() + W1.array() * Fn.array()).matrix();
      const double inc = norms.l2(upd - next), size = norms.l2(upd);
      // Ratios of increments at round-off level carry no information.
      if (prev_inc > 1e-13 * size) factor = std::max(factor, inc / prev_inc);
      prev_inc = inc;
      next = upd;
      if (it >= 2 && inc <= opt.tol * std::max(size, 1e-300)) break;
      if (it >= opt.max_iterations) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "semilinear wave: fixed point did not contract at step %ld (t = %.4g), norm %.3e",
                      k, k * dt, size);
        throw NumericalError(buf);
      }
    }
    g = next;
    F = Fn;
    gt = (base_t.array() + W1t.array() * F.array()).matrix();
    traj.iterations.push_back(it);
    traj.contraction.push_back(factor);
    if (k % stride == 0 || k == steps) {
      if (opt.keep_snapshots) u = to_radial(g);
      record(k * dt);
    }
  }
  return traj;
}

double z_norm(const Trajectory& traj, double delta, double t_max) {
  double z = 0.0;
  for (size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    if (t > t_max) break;
    const WaveNorms& n = traj.norms[k];
    z = std::max(z, std::exp(delta * t) / std::sqrt(1.0 + t) * (n.dhalf + n.l2 + n.l2_ut));
  }
  return z;
}

double h1_decay_rate(const Trajectory& traj, double t_lo, double t_hi) {
  std::vector<double> x, y;
  for (size_t k = 0; k < traj.times.size(); ++k)
    if (traj.times[k] >= t_lo - 1e-12 && traj.times[k] <= t_hi + 1e-12 && traj.norms[k].h1 > 0.0) {
      x.push_back(traj.times[k]);
      y.push_back(2.0 * std::log(traj.norms[k].h1));
    }
  if (x.size() < 2) throw NumericalError("decay fit: fewer than two samples in the window");
  return -linear_slope(Eigen::Map<VectorXd>(x.data(), x.size()), Eigen::Map<VectorXd>(y.data(), y.size()));
}

}  // namespace symspec
