#include <doctest.h>

#include <cmath>

#include "symspec/space_model.hpp"

using namespace symspec;

TEST_CASE("hyperbolic space data") {
  for (int n = 2; n <= 7; ++n) {
    const SpaceModel s = make_hyperbolic(n);
    CHECK(s.rank() == 1);
    CHECK(s.dim() == n);
    CHECK(s.rho()[0] == doctest::Approx(0.5 * (n - 1)));
    CHECK(s.weyl_order() == 2);
    CHECK(s.pseudo_dim() == 3);
    REQUIRE(s.roots().size() == 1);
    CHECK(s.roots()[0].multiplicity == n - 1);
  }
}

TEST_CASE("product space data") {
  const SpaceModel s = make_product({3, 4});
  CHECK(s.rank() == 2);
  CHECK(s.dim() == 7);
  CHECK(s.rho()[0] == doctest::Approx(1.0));
  CHECK(s.rho()[1] == doctest::Approx(1.5));
  CHECK(s.rho_norm() == doctest::Approx(std::sqrt(3.25)));
  CHECK(s.weyl_order() == 4);
  CHECK(s.pseudo_dim() == 6);
  CHECK(make_product({3, 3}) == make_product({3, 3}));
  CHECK_FALSE(make_product({3, 3}) == make_hyperbolic(3));
}

TEST_CASE("chamber points are validated") {
  const SpaceModel s = make_product({3, 3});
  CHECK_THROWS_AS(check_chamber(s, ChamberPoint::Constant(1, 1.0)), InadmissibleError);
  ChamberPoint H(2);
  H << 1.0, -0.1;
  CHECK_THROWS_AS(check_chamber(s, H), InadmissibleError);
  H << 1.0, 0.0;
  CHECK_NOTHROW(check_chamber(s, H));
}

TEST_CASE("sphere areas and volumes") {
  CHECK(sphere_area(1) == doctest::Approx(2 * kPi));
  CHECK(sphere_area(2) == doctest::Approx(4 * kPi));
  CHECK(sphere_area(3) == doctest::Approx(2 * kPi * kPi));
  const SpaceModel h3 = make_hyperbolic(3);
  for (double r : {0.1, 1.0, 4.0}) {
    CHECK(sphere_measure(h3, r) == doctest::Approx(4 * kPi * std::sinh(r) * std::sinh(r)));
    CHECK(ball_volume(h3, r) == doctest::Approx(kPi * (std::sinh(2 * r) - 2 * r)).epsilon(1e-10));
  }
  const SpaceModel h2 = make_hyperbolic(2);
  CHECK(ball_volume(h2, 2.0) == doctest::Approx(2 * kPi * (std::cosh(2.0) - 1)).epsilon(1e-10));
}

TEST_CASE("polar density ratio stays bounded") {
  for (const SpaceModel& s : {make_hyperbolic(3), make_hyperbolic(4), make_product({3, 3})}) {
    double lo = INFINITY, hi = 0;
    for (double r = 1e-3; r < 30; r *= 1.2) {
      ChamberPoint H = ChamberPoint::Constant(s.rank(), r / std::sqrt(double(s.rank())));
      if (s.rank() == 2) H[1] *= 0.5;
      const double q = polar_density_ratio(s, H);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    CHECK(lo > 0);
    CHECK(hi / lo < 100);
  }
}

TEST_CASE("distances on the chamber") {
  const SpaceModel s = make_product({3, 5});
  ChamberPoint H(2);
  H << 0.3, 2.0;
  const Distances d = distances(s, H);
  CHECK(d.riemannian == doctest::Approx(H.norm()));
  CHECK(d.polyhedral == doctest::Approx(s.rho().dot(H) / s.rho_norm()));
  CHECK(d.polyhedral <= d.riemannian);
  const Distances e = distances(make_hyperbolic(3), ChamberPoint::Constant(1, 2.5));
  CHECK(e.riemannian == doctest::Approx(2.5));
  CHECK(e.polyhedral == doctest::Approx(2.5));
}
