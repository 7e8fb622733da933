#include <doctest.h>

#include <cmath>

#include "symspec/inequality.hpp"
#include "symspec/kernels.hpp"
#include "symspec/optimize.hpp"

using namespace symspec;

namespace {

const SpaceModel& h3() {
  static const SpaceModel s = make_hyperbolic(3);
  return s;
}

const SphericalTransform& small_T() {
  static const SphericalTransform T(h3(), {768, 20.0, 768, 40.0});
  return T;
}

RadialFunction bump(double w) {
  return small_T().sample_radial([w](double r) { return std::exp(-(r / w) * (r / w)); });
}

IneqSpec spec(IneqKind k, std::map<std::string, double> p) { return {k, std::move(p), h3()}; }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("radial norm against direct quadrature") {
  const RadialFunction u = bump(1.0);
  const double oracle = std::sqrt(
      integrate_gl([](double r) { return 4 * kPi * r * std::exp(-2 * r * r) * std::sinh(r) * std::sinh(r); }, 0, 12, 100));
  CHECK(radial_norm(u, 2.0, 0.5) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("sub-case collapses are exact") {
  const RadialFunction u = bump(0.8);
  const auto& T = small_T();
  const double hls = inequality_ratio(spec(IneqKind::HLS, {{"sigma", 1}, {"p", 2}, {"q", 6}}), T, u).ratio;
  const double sw =
      inequality_ratio(spec(IneqKind::SteinWeiss, {{"sigma", 1}, {"p", 2}, {"q", 6}, {"alpha", 0}, {"beta", 0}}), T, u).ratio;
  CHECK(rel(hls, sw) <= 1e-10);
  const double sob = inequality_ratio(spec(IneqKind::Sobolev, {{"sigma", 1}, {"p", 2}, {"q", 6}}), T, u).ratio;
  const double hs =
      inequality_ratio(spec(IneqKind::HardySobolev, {{"sigma", 1}, {"p", 2}, {"q", 6}, {"beta", 0}}), T, u).ratio;
  const double gn =
      inequality_ratio(spec(IneqKind::GN, {{"sigma", 1}, {"p", 2}, {"mu", 2}, {"tau", 6}, {"a", 1}}), T, u).ratio;
  const double ckn = inequality_ratio(
      spec(IneqKind::CKN, {{"sigma", 1}, {"p", 2}, {"q", 2}, {"tau", 6}, {"a", 1}, {"b", 0}, {"c", 0}}), T, u).ratio;
  CHECK(rel(hs, sob) <= 1e-10);
  CHECK(rel(gn, sob) <= 1e-10);
  CHECK(rel(ckn, sob) <= 1e-10);
}

TEST_CASE("ratios are invariant under scaling") {
  const std::vector<IneqSpec> specs = {
      spec(IneqKind::HLS, {{"sigma", 1}, {"p", 2}, {"q", 6}}),
      spec(IneqKind::SteinWeiss, {{"sigma", 1.5}, {"p", 2}, {"q", 3}, {"alpha", 0.5}, {"beta", 0.5}}),
      spec(IneqKind::HardySobolev, {{"sigma", 1}, {"p", 2}, {"q", 3}, {"beta", 0.5}}),
      spec(IneqKind::Hardy, {{"sigma", 1}, {"p", 2}}),
      spec(IneqKind::Uncertainty, {{"sigma", 1}, {"p", 2}}),
      spec(IneqKind::GN, {{"sigma", 1}, {"p", 2}, {"mu", 2}, {"tau", 3}, {"a", 0.5}}),
      spec(IneqKind::CKN, {{"sigma", 1}, {"p", 2}, {"q", 2}, {"tau", 4}, {"a", 0.75}, {"b", 0.125}, {"c", 0.5}}),
  };
  const RadialFunction u = bump(1.0);
  for (const auto& s : specs)
    for (double c : {1e-3, 7.0}) {
      RadialFunction v = u;
      v.values *= c;
      const RatioValue a = inequality_ratio(s, small_T(), u), b = inequality_ratio(s, small_T(), v);
      CAPTURE(to_string(s.kind));
      CHECK(std::isfinite(a.ratio));
      CHECK(a.ratio > 0);
      CHECK(rel(b.ratio, a.ratio) <= 1e-10);
    }
}

TEST_CASE("zero and inadmissible inputs are rejected") {
  RadialFunction z = bump(1.0);
  z.values.setZero();
  CHECK_THROWS_AS(inequality_ratio(spec(IneqKind::Sobolev, {{"sigma", 1}, {"p", 2}, {"q", 6}}), small_T(), z),
                  InadmissibleError);
  CHECK_THROWS_AS(inequality_ratio(spec(IneqKind::Sobolev, {{"sigma", 1}, {"p", 2}, {"q", 5}}), small_T(), bump(1)),
                  InadmissibleError);
}

TEST_CASE("h norm at p = 2 matches Plancherel") {
  const RadialFunction u = bump(0.7);
  CHECK(h_norm(small_T(), 1.0, 2.0, u) == doctest::Approx(sobolev_norm_plancherel(small_T(), 1.0, u)).epsilon(1e-9));
}

TEST_CASE("family members") {
  TestFamily fam;
  fam.kind = FamilyKind::ShiftedBump;
  const auto init = initial_members(fam);
  CHECK(static_cast<int>(init.size()) == fam.count);
  const auto [lo, hi] = family_box(fam);
  for (const auto& [m, x] : init) {
    CHECK((x.array() >= lo.array()).all());
    CHECK((x.array() <= hi.array()).all());
  }
  const TestFunction f = family_member(fam, 0, init[0].second);
  CHECK(f.f(0.3) == doctest::Approx(f.f(0.3)));
  CHECK(family_kind_from_string("bumps") == FamilyKind::GaussianBumps);
  TestFamily b;
  b.kind = FamilyKind::GaussianBumps;
  b.seed = 3;
  const auto i1 = initial_members(b), i2 = initial_members(b);
  for (size_t k = 0; k < i1.size(); ++k) {
    const TestFunction g1 = family_member(b, i1[k].first, i1[k].second);
    const TestFunction g2 = family_member(b, i2[k].first, i2[k].second);
    CHECK(g1.f(1.1) == g2.f(1.1));
  }
}

TEST_CASE("Nelder-Mead maximizes a concave function") {
  auto f = [](const VectorXd& x) { return -std::pow(x[0] - 0.3, 2) - 2 * std::pow(x[1] + 0.2, 2); };
  const VectorXd lo = VectorXd::Constant(2, -1), hi = VectorXd::Constant(2, 1);
  const DirectSearchResult r = nelder_mead_max(f, VectorXd::Zero(2), lo, hi, 200);
  CHECK(r.best_x[0] == doctest::Approx(0.3).epsilon(1e-3));
  CHECK(r.best_x[1] == doctest::Approx(-0.2).epsilon(1e-3));
  CHECK(r.evaluations <= 200);
  for (size_t k = 1; k < r.history.size(); ++k) CHECK(r.history[k] >= r.history[k - 1]);
}

TEST_CASE("Nelder-Mead respects the box and replays as a prefix") {
  auto f = [](const VectorXd& x) { return x[0]; };
  const VectorXd lo = VectorXd::Constant(1, -1), hi = VectorXd::Constant(1, 2);
  const DirectSearchResult a = nelder_mead_max(f, VectorXd::Zero(1), lo, hi, 40);
  CHECK(a.best_value == doctest::Approx(2.0));
  const DirectSearchResult b = nelder_mead_max(f, VectorXd::Zero(1), lo, hi, 80);
  for (size_t k = 0; k < a.history.size(); ++k) CHECK(a.history[k] == b.history[k]);
  CHECK(b.best_value >= a.best_value);
}

TEST_CASE("Nelder-Mead on a plateau") {
  auto f = [](const VectorXd&) { return 1.5; };
  const DirectSearchResult r =
      nelder_mead_max(f, VectorXd::Zero(2), VectorXd::Constant(2, -1), VectorXd::Constant(2, 1), 60);
  CHECK(r.best_value == 1.5);
  CHECK(r.evaluations <= 60);
}

TEST_CASE("empirical best ratio") {
  const IneqSpec s = spec(IneqKind::Sobolev, {{"sigma", 1}, {"p", 2}, {"q", 6}});
  TestFamily fam;
  fam.width_lo = 0.5;
  fam.width_hi = 2.0;
  fam.count = 4;
  const GridConfig g{768, 20.0, 768, 40.0};
  const RatioReport r = empirical_best_ratio(s, fam, 12, g);
  CHECK(r.verdict.admissible);
  CHECK(r.members.size() <= 12);
  CHECK(r.initial_count == 4);
  double mx = 0;
  for (const auto& m : r.members) mx = std::max(mx, m.ratio);
  CHECK(r.max_ratio == mx);
  CHECK(r.members[r.argmax].ratio == mx);
  for (size_t k = 1; k < r.history.size(); ++k) CHECK(r.history[k] >= r.history[k - 1]);
  CHECK_THROWS_AS(empirical_best_ratio(s, fam, 3, g), InadmissibleError);
}
