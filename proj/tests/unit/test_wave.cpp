#include <doctest.h>

#include <array>
#include <cmath>

#include "symspec/wave.hpp"

using namespace symspec;

namespace {

// RK4 for y'' + b y' + g y = 0 from (y0, v0) to time t.
std::array<double, 2> rk4(double b, double g, double y0, double v0, double t, int steps = 20000) {
  const double h = t / steps;
  double y = y0, v = v0;
  auto acc = [&](double yy, double vv) { return -b * vv - g * yy; };
  for (int k = 0; k < steps; ++k) {
    const double k1y = v, k1v = acc(y, v);
    const double k2y = v + 0.5 * h * k1v, k2v = acc(y + 0.5 * h * k1y, v + 0.5 * h * k1v);
    const double k3y = v + 0.5 * h * k2v, k3v = acc(y + 0.5 * h * k2y, v + 0.5 * h * k2v);
    const double k4y = v + h * k3v, k4v = acc(y + h * k3y, v + h * k3v);
    y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
    v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
  }
  return {y, v};
}

void check_against_rk4(double b, double g) {
  for (double t : {0.0, 0.3, 2.0, 5.0}) {
    const Multiplier m = propagator(b, g, t);
    const auto a = rk4(b, g, 1, 0, t), c = rk4(b, g, 0, 1, t);
    CAPTURE(b);
    CAPTURE(g);
    CAPTURE(t);
    CHECK(m.A == doctest::Approx(a[0]).epsilon(1e-9).scale(1e-3));
    CHECK(m.At == doctest::Approx(a[1]).epsilon(1e-9).scale(1e-3));
    CHECK(m.B == doctest::Approx(c[0]).epsilon(1e-9).scale(1e-3));
    CHECK(m.Bt == doctest::Approx(c[1]).epsilon(1e-9).scale(1e-3));
  }
}

}  // namespace

TEST_CASE("propagator against RK4") {
  check_against_rk4(2.0, 3.0);    // underdamped
  check_against_rk4(4.0, 1.0);    // overdamped
  check_against_rk4(2.0, 1.0);    // critical
  check_against_rk4(1.0, 50.0);   // fast oscillation
  check_against_rk4(0.5, 0.01);   // slow
}

TEST_CASE("propagator is continuous across critical damping") {
  for (double e : {1e-3, 1e-5, 1e-7})
    for (double t : {0.5, 3.0, 10.0}) {
      const Multiplier c = propagator(2.0, 1.0, t);
      for (double s : {-1.0, 1.0}) {
        const Multiplier m = propagator(2.0 + s * e, 1.0, t);
        CAPTURE(e);
        CAPTURE(t);
        const double tol = 10 * e * (1 + t * t);
        CHECK(std::abs(m.A - c.A) <= tol);
        CHECK(std::abs(m.B - c.B) <= tol);
        CHECK(std::abs(m.At - c.At) <= tol);
        CHECK(std::abs(m.Bt - c.Bt) <= tol);
      }
    }
}

TEST_CASE("multipliers solve the ODE") {
  const double h = 1e-4;
  for (double b : {1.0, 2.0, 3.0, 4.0})
    for (double g : {0.5, 2.25, 2.25 + 1e-6, 9.0})
      for (double t : {0.7, 4.0}) {
        const Multiplier m = propagator(b, g, t), p = propagator(b, g, t + h), q = propagator(b, g, t - h);
        const double scale = std::max({1.0, std::abs(m.A), std::abs(m.At)});
        CHECK(std::abs((p.A - q.A) / (2 * h) - m.At) / scale < 1e-6);
        CHECK(std::abs((p.At - q.At) / (2 * h) + b * m.At + g * m.A) / scale < 1e-6);
        CHECK(std::abs((p.B - q.B) / (2 * h) - m.Bt) / scale < 1e-6);
      }
  CHECK_THROWS_AS(propagator(2.0, 1.0, -1.0), InadmissibleError);
}

TEST_CASE("decay exponents") {
  CHECK(decay_exponent_star({2, 2}) == doctest::Approx(1.0));
  CHECK(decay_exponent_star({1, 4}) == doctest::Approx(0.5));
  CHECK(decay_exponent_star({4, 1}) == doctest::Approx(2 - std::sqrt(3.0)));
  CHECK(decay_exponent({2, 2}) == doctest::Approx(0.95));
  CHECK(gamma_of({2, 2}, 1.5) == doctest::Approx(std::sqrt(1.5 * 1.5 + 2)).epsilon(1e-12));
}

TEST_CASE("linear flow and semilinear solver with zero nonlinearity agree") {
  const SphericalTransform T(make_hyperbolic(3), {512, 25.0, 512, 12.0});
  const RadialFunction u0 = T.sample_radial([](double r) { return 1e-2 * std::exp(-r * r); });
  const RadialFunction u1 = T.sample_radial([](double r) { return 5e-3 * std::exp(-r * r); });
  const WaveParams lin{2, 2, 2, 0};
  SemilinearOptions opt;
  opt.T = 2;
  opt.dt = 0.05;
  opt.record_every = 0.5;
  const Trajectory s = solve_semilinear(T, lin, u0, u1, opt);
  const Trajectory l = solve_linear(T, lin, u0, u1, s.times);
  REQUIRE(s.u.size() == l.u.size());
  for (size_t k = 0; k < s.u.size(); ++k)
    CHECK((s.u[k].values - l.u[k].values).cwiseAbs().maxCoeff() < 1e-8 * u0.values.cwiseAbs().maxCoeff());
  CHECK(l.norms[0].h1 == doctest::Approx(l.norms[0].dhalf + l.norms[0].l2));
}

TEST_CASE("semilinear exponent range") {
  const SphericalTransform T(make_hyperbolic(3), {256, 20.0, 256, 12.0});
  const RadialFunction u = T.sample_radial([](double r) { return 1e-3 * std::exp(-r * r); });
  SemilinearOptions opt;
  opt.T = 0.1;
  opt.dt = 0.05;
  CHECK_THROWS_AS(solve_semilinear(T, {2, 2, 4, 1}, u, u, opt), InadmissibleError);
  CHECK_THROWS_AS(solve_semilinear(T, {2, 2, 0.5, 1}, u, u, opt), InadmissibleError);
  const Trajectory t = solve_semilinear(T, {2, 2, 3, 1}, u, u, opt);
  CHECK_FALSE(t.warnings.empty());
  for (double c : t.contraction) CHECK(c < 1);
}

TEST_CASE("linear energy decays") {
  const SphericalTransform T(make_hyperbolic(3), {512, 25.0, 512, 12.0});
  const RadialFunction u0 = T.sample_radial([](double r) { return std::exp(-r * r); });
  const WaveParams p{2, 2};
  std::vector<double> times;
  for (int k = 0; k <= 40; ++k) times.push_back(0.5 * k);
  const Trajectory tr = solve_linear(T, p, u0, u0, times, false);
  CHECK(h1_decay_rate(tr, 5, 20) >= 0.9 * 2 * decay_exponent(p));
  CHECK(std::isfinite(z_norm(tr, tr.delta)));
}
