#include <doctest.h>

#include <cmath>

#include "symspec/fit.hpp"
#include "symspec/kernels.hpp"

using namespace symspec;

namespace {

// Euclidean R^3 kernel of (-Delta + xi^2)^{-sigma/2}.
double bessel_potential_r3(double sigma, double xi, double r) {
  const double nu = 0.5 * (sigma - 3.0);
  return 2.0 * std::pow(r / (2 * xi), nu) * std::cyl_bessel_k(std::abs(nu), xi * r) /
         (std::pow(4 * kPi, 1.5) * std::tgamma(0.5 * sigma));
}

}  // namespace

TEST_CASE("H3 kernel is the Euclidean Bessel potential times r/sinh r") {
  const SpaceModel h3 = make_hyperbolic(3);
  for (double sigma : {0.5, 1.0, 2.0, 2.5, 3.0, 3.5})
    for (double xi : {2.0, 8.0})
      for (double r : {1e-3, 0.05, 0.5, 2.0, 6.0}) {
        const double g = bgr_kernel_at(make_kernel_spec(h3, sigma, xi), ChamberPoint::Constant(1, r));
        const double oracle = r / std::sinh(r) * bessel_potential_r3(sigma, xi, r);
        CAPTURE(sigma);
        CAPTURE(xi);
        CAPTURE(r);
        CHECK(g == doctest::Approx(oracle).epsilon(1e-8));
      }
}

TEST_CASE("resolvent closed form") {
  const KernelSpec k = make_kernel_spec(make_hyperbolic(3), 2.0, 8.0);
  for (double r = 0.01; r < 10; r *= 1.7)
    CHECK(bgr_kernel_at(k, ChamberPoint::Constant(1, r)) ==
          doctest::Approx(std::exp(-8 * r) / (4 * kPi * std::sinh(r))).epsilon(1e-10));
}

TEST_CASE("default xi and spec validation") {
  CHECK(default_xi(make_hyperbolic(3)) == doctest::Approx(8.0));
  CHECK(default_xi(make_product({3, 3})) == doctest::Approx(8 * std::sqrt(2.0)));
  CHECK(make_kernel_spec(make_hyperbolic(3), 1.0).xi == doctest::Approx(8.0));
  CHECK_THROWS_AS(bgr_kernel_at(make_kernel_spec(make_hyperbolic(3), 0.0), ChamberPoint::Constant(1, 1.0)),
                  InadmissibleError);
  CHECK_THROWS_AS(bgr_kernel_at(make_kernel_spec(make_hyperbolic(5), 1.0), ChamberPoint::Constant(1, 1.0)),
                  UnsupportedError);
}

TEST_CASE("product kernel is positive and decreasing along rho") {
  const SpaceModel s = make_product({3, 3});
  const KernelSpec k = make_kernel_spec(s, 2.5);
  double prev = INFINITY;
  for (double r = 0.01; r < 8; r *= 1.5) {
    const double g = bgr_kernel_at(k, s.rho() / s.rho_norm() * r);
    CHECK(g > 0);
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("convolution with the kernel table equals the multiplier") {
  const SphericalTransform T(make_hyperbolic(3), {2048, 20.0, 2048, 64.0});
  const double xi = 3.0;
  for (double sigma : {1.0, 2.0}) {
    const KernelSpec k = make_kernel_spec(T.space(), sigma, xi);
    const RadialFunction f = T.sample_radial([](double r) { return std::exp(-r * r); });
    const RadialFunction a = radial_convolve(T, bgr_kernel(k, T.radial_grid()), f);
    const RadialFunction b = apply_fractional(T, xi, -sigma, f);
    CAPTURE(sigma);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() / b.values.cwiseAbs().maxCoeff() < 1e-4);
  }
}

TEST_CASE("Sobolev norms agree on the two sides of Plancherel") {
  const SphericalTransform T(make_hyperbolic(3), {1024, 20.0, 1024, 32.0});
  const RadialFunction f = T.sample_radial([](double r) { return std::exp(-r * r); });
  CHECK(sobolev_norm(T, {1.0, 2.0}, f) == doctest::Approx(sobolev_norm_plancherel(T, 1.0, f)).epsilon(1e-9));
}

TEST_CASE("regime fits") {
  const SpaceModel h3 = make_hyperbolic(3);
  const KernelAsymptotics a = kernel_asymptotics(make_kernel_spec(h3, 1.0), 1e-3, 1e-1, 5, 15, 20);
  CHECK(a.regime == SmallRRegime::Power);
  CHECK(a.small_r_exponent_fit == doctest::Approx(-2.0).epsilon(0.025));
  CHECK(a.large_r_decay_fit == doctest::Approx(9.0).epsilon(0.02));
  const KernelAsymptotics b = kernel_asymptotics(make_kernel_spec(h3, 3.0), 1e-3, 1e-1, 5, 15, 20);
  CHECK(b.regime == SmallRRegime::Log);
  CHECK(b.log_coefficient > 0);
  const KernelAsymptotics c = kernel_asymptotics(make_kernel_spec(h3, 3.5), 1e-3, 1e-1, 5, 15, 20);
  CHECK(c.regime == SmallRRegime::Constant);
}

TEST_CASE("fit helpers on synthetic data") {
  VectorXd x = VectorXd::LinSpaced(30, -3, -1).unaryExpr([](double e) { return std::pow(10.0, e); });
  VectorXd y = x.unaryExpr([](double r) { return 2 * std::pow(r, -1.3) + 0.5 + 0.1 * r; });
  const PowerFit p = fit_power_with_regular_part(x, y, -3, 0);
  CHECK(p.exponent == doctest::Approx(-1.3).epsilon(1e-6));
  CHECK(p.coefficient == doctest::Approx(2.0).epsilon(1e-5));
  VectorXd z = VectorXd::LinSpaced(30, 5, 15);
  VectorXd w = z.unaryExpr([](double r) { return 3 * std::pow(r, -1.5) * std::exp(-4 * r + 0.2 / r); });
  const DecayFit d = fit_exponential_decay(z, w);
  CHECK(d.rate == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(d.power == doctest::Approx(-1.5).epsilon(1e-7));
  CHECK(linear_slope(z, 2 * z) == doctest::Approx(2.0));
  CHECK(golden_minimize([](double t) { return (t - 0.3) * (t - 0.3); }, -1, 1) == doctest::Approx(0.3).epsilon(1e-8));
}
