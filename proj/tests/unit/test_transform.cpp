#include <doctest.h>

#include <cmath>

#include "symspec/kernels.hpp"
#include "symspec/spherical.hpp"
#include "symspec/transform.hpp"

using namespace symspec;

namespace {

double rel_sup(const MatrixXd& a, const MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff(); }

double h3_heat(double t, double r) {
  const double ratio = r == 0 ? 1.0 : r / std::sinh(r);
  return std::pow(4 * kPi * t, -1.5) * ratio * std::exp(-r * r / (4 * t));
}

}  // namespace

TEST_CASE("quadrature axes") {
  const Axis a = graded_axis(512, 10.0);
  CHECK(a.size() == 512);
  CHECK(a.weights.sum() == doctest::Approx(10.0).epsilon(1e-13));
  CHECK(a.nodes.dot(a.weights) == doctest::Approx(50.0).epsilon(1e-13));
  const Axis u = uniform_axis(64, 2.0);
  VectorXd f = u.nodes.array().square();
  const VectorXd head = cumulative_head(u, f), tail = cumulative_tail(u, f);
  for (Index i = 0; i < u.size(); i += 7) {
    const double x = u.nodes[i];
    CHECK(head[i] == doctest::Approx(x * x * x / 3).epsilon(1e-12));
    CHECK(tail[i] == doctest::Approx((8 - x * x * x) / 3).epsilon(1e-12));
  }
  CHECK(interpolate(u, f, 1.234) == doctest::Approx(1.234 * 1.234).epsilon(1e-12));
  CHECK(integrate_half_line([](double x) { return std::exp(-x); }) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("H3 calibration matches the analytic constant") {
  const SphericalTransform T(make_hyperbolic(3));
  CHECK(T.calibration().kappa[0] == doctest::Approx(analytic_kappa_h3()).epsilon(1e-10));
  CHECK(T.calibration().residual < 1e-10);
}

TEST_CASE("H3 forward transform against direct quadrature") {
  const SphericalTransform T(make_hyperbolic(3), {1024, 20.0, 1024, 24.0});
  auto f = [](double r) { return std::exp(-r * r) * (1 + r); };
  const SpectralFunction g = T.forward(T.sample_radial(f));
  const VectorXd& lam = T.spectral_grid()->nodes();
  for (Index j = 0; j < lam.size(); j += 97) {
    const double l = lam[j];
    const double oracle = integrate_gl(
        [&](double r) { return 4 * kPi * f(r) * phi_h3(l, r) * std::sinh(r) * std::sinh(r); }, 0.0, 12.0, 200);
    CAPTURE(l);
    CHECK(g.values(j, 0) == doctest::Approx(oracle).epsilon(1e-10).scale(1e-6));
  }
}

TEST_CASE("H3 heat pair, round trip and Plancherel") {
  const SphericalTransform T(make_hyperbolic(3));
  const double t = 0.5;
  const RadialFunction h = T.sample_radial([&](double r) { return h3_heat(t, r); });
  const SpectralFunction e = T.sample_spectral_sq([&](double l2) { return std::exp(-t * l2); });
  CHECK(rel_sup(T.forward(h).values, e.values) < 1e-10);
  CHECK(rel_sup(T.inverse(e).values, h.values) < 1e-10);
  const RadialFunction u = T.sample_radial([](double r) { return std::exp(-(r - 1) * (r - 1)) + std::exp(-(r + 1) * (r + 1)); });
  const SpectralFunction uh = T.forward(u);
  CHECK(rel_sup(T.inverse(uh).values, u.values) < 1e-10);
  CHECK(spectral_l2_norm(uh) == doctest::Approx(lp_norm(u, 2.0)).epsilon(1e-10));
  CHECK(rel_sup(T.apply_multiplier(u, [](double) { return 1.0; }).values, u.values) < 1e-10);
}

TEST_CASE("even-dimensional heat kernels") {
  for (int n : {2, 4}) {
    const SphericalTransform T(make_hyperbolic(n), {512, 20.0, 512, 16.0});
    const RadialFunction h = T.sample_radial([&](double r) { return shifted_heat_kernel(n, 0.5, r); });
    const SpectralFunction e = T.sample_spectral_sq([](double l2) { return std::exp(-0.5 * l2); });
    CAPTURE(n);
    CHECK(rel_sup(T.forward(h).values, e.values) < 1e-6);
  }
}

TEST_CASE("product transform factors") {
  const GridConfig g{256, 12.0, 256, 24.0};
  const SphericalTransform T2(make_product({3, 3}), g), T1(make_hyperbolic(3), g);
  auto f = [](double r) { return std::exp(-r * r); };
  const RadialFunction u = sample(T2.radial_grid(), [&](const ChamberPoint& H) { return f(H[0]) * f(H[1]); });
  const VectorXd u1 = T1.forward(T1.sample_radial(f)).values.col(0);
  const MatrixXd expect = u1 * u1.transpose();
  const SpectralFunction uh = T2.forward(u);
  CHECK(rel_sup(uh.values, expect) < 1e-10);
  CHECK(rel_sup(T2.inverse(uh).values, u.values) < 1e-8);
  CHECK(spectral_l2_norm(uh) == doctest::Approx(lp_norm(u, 2.0)).epsilon(1e-8));
}

TEST_CASE("truncation is reported") {
  const SphericalTransform T(make_hyperbolic(3), {256, 5.0, 256, 16.0});
  const RadialFunction u = T.sample_radial([](double r) { return std::exp(-0.1 * r * r); });
  CHECK_FALSE(truncation_check(u.values, "f").empty());
  const RadialFunction v = T.sample_radial([](double r) { return std::exp(-4 * r * r); });
  CHECK(truncation_check(v.values, "f").empty());
}
