#include "symspec/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "symspec/hardy.hpp"
#include "symspec/kernels.hpp"
#include "symspec/optimize.hpp"

namespace symspec {

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::GaussianBumps: return "bumps";
    case FamilyKind::DilatedProfile: return "dilated";
    case FamilyKind::ShiftedBump: return "shifted";
  }
  return "?";
}

FamilyKind family_kind_from_string(const std::string& s) {
  for (FamilyKind k : {FamilyKind::GaussianBumps, FamilyKind::DilatedProfile, FamilyKind::ShiftedBump})
    if (to_string(k) == s) return k;
  throw InadmissibleError("unknown test family: " + s);
}

namespace {

double sym_bump(double r, double c, double w) {
  const double a = (r - c) / w, b = (r + c) / w;
  return std::exp(-a * a) + std::exp(-b * b);
}

struct Bump {
  double amp, width, center;
};

std::vector<Bump> bump_set(const TestFamily& fam, int member) {
  std::mt19937_64 gen(split_seed(fam.seed, static_cast<std::uint64_t>(member)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int count = std::uniform_int_distribution<int>(1, 5)(gen);
  std::vector<Bump> out;
  for (int k = 0; k < count; ++k) {
    Bump b;
    b.amp = 0.1 + 0.9 * unit(gen);
    b.width = fam.width_lo * std::pow(fam.width_hi / fam.width_lo, unit(gen));
    b.center = fam.center_lo + (fam.center_hi - fam.center_lo) * unit(gen);
    out.push_back(b);
  }
  return out;
}

void check_family(const TestFamily& fam) {
  if (!(fam.width_lo > 0.0 && fam.width_hi >= fam.width_lo)) throw InadmissibleError("family: need 0 < width_lo <= width_hi");
  if (!(fam.center_lo >= 0.0 && fam.center_hi >= fam.center_lo))
    throw InadmissibleError("family: need 0 <= center_lo <= center_hi");
  if (fam.count < 1) throw InadmissibleError("family: count must be >= 1");
}

}  // namespace

TestFunction family_member(const TestFamily& fam, int member, const VectorXd& x) {
  check_family(fam);
  TestFunction t;
  t.member = member;
  t.x = x;
  switch (fam.kind) {
    case FamilyKind::DilatedProfile: {
      const double w = std::exp(x[0]);
      t.f = [w](double r) { return std::exp(-(r / w) * (r / w)); };
      t.min_width = w;
      t.extent = 6.0 * w;
      break;
    }
    case FamilyKind::ShiftedBump: {
      const double w = std::exp(x[0]), c = x[1];
      t.f = [w, c](double r) { return sym_bump(r, c, w); };
      t.min_width = w;
      t.extent = c + 6.0 * w;
      break;
    }
    case FamilyKind::GaussianBumps: {
      const double s = std::exp(x[0]);
      std::vector<Bump> bumps = bump_set(fam, member);
      t.min_width = INFINITY;
      t.extent = 0.0;
      for (auto& b : bumps) {
        b.width *= s;
        b.center *= s;
        t.min_width = std::min(t.min_width, b.width);
        t.extent = std::max(t.extent, b.center + 6.0 * b.width);
      }
      t.f = [bumps](double r) {
        double v = 0.0;
        for (const auto& b : bumps) v += b.amp * sym_bump(r, b.center, b.width);
        return v;
      };
      break;
    }
  }
  return t;
}

std::pair<VectorXd, VectorXd> family_box(const TestFamily& fam) {
  check_family(fam);
  const double lw = std::log(fam.width_lo), hw = std::log(fam.width_hi);
  switch (fam.kind) {
    case FamilyKind::DilatedProfile: return {VectorXd::Constant(1, lw), VectorXd::Constant(1, hw)};
    case FamilyKind::ShiftedBump: {
      VectorXd lo(2), hi(2);
      lo << lw, fam.center_lo;
      hi << hw, fam.center_hi;
      return {lo, hi};
    }
    case FamilyKind::GaussianBumps:
      // Common dilation; each member keeps its own widths within a factor 2 of the range.
      return {VectorXd::Constant(1, std::log(0.5)), VectorXd::Constant(1, std::log(2.0))};
  }
  return {};
}

std::vector<std::pair<int, VectorXd>> initial_members(const TestFamily& fam) {
  const auto [lo, hi] = family_box(fam);
  std::vector<std::pair<int, VectorXd>> out;
  switch (fam.kind) {
    case FamilyKind::DilatedProfile:
      for (int k = 0; k < fam.count; ++k) {
        const double t = fam.count == 1 ? 0.5 : static_cast<double>(k) / (fam.count - 1);
        out.push_back({0, VectorXd::Constant(1, lo[0] + t * (hi[0] - lo[0]))});
      }
      break;
    case FamilyKind::ShiftedBump: {
      std::mt19937_64 gen(split_seed(fam.seed, 0x5EED));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (int k = 0; k < fam.count; ++k) {
        VectorXd x(2);
        x[0] = lo[0] + (hi[0] - lo[0]) * unit(gen);
        x[1] = lo[1] + (hi[1] - lo[1]) * unit(gen);
        out.push_back({0, x});
      }
      break;
    }
    case FamilyKind::GaussianBumps:
      for (int k = 0; k < fam.count; ++k) out.push_back({k, VectorXd::Zero(1)});
      break;
  }
  return out;
}

GridConfig ineq_grid(const SpaceModel& space, double min_width, double extent) {
  (void)extent;
  if (space.rank() == 2) return {512, 12.0, 512, 24.0};
  if (min_width < 0.3) return {4096, 8.0, 4096, 256.0};
  return {3072, 40.0, 3072, 48.0};
}

double radial_norm(const RadialFunction& u, double s, double e) {
  const MatrixXd w = u.grid->radius().array().pow(e).matrix();
  return weighted_lp_norm(u, s, w);
}

double h_norm(const SphericalTransform& T, double sigma, double p, const RadialFunction& u, Warnings* warnings) {
  const double r2 = T.space().rho_norm() * T.space().rho_norm();
  const RadialFunction d = T.apply_multiplier(u, [&](double l2) { return std::pow(l2 + r2, 0.5 * sigma); });
  if (warnings) append_warnings(*warnings, d.warnings);
  return radial_norm(d, p, 0.0) + radial_norm(u, p, 0.0);
}

namespace {

void require_nonzero(const RadialFunction& u) {
  if (u.values.cwiseAbs().maxCoeff() == 0.0) throw InadmissibleError("test function is identically zero");
}

RatioValue finish(double lhs, double rhs, Warnings w) {
  if (!(rhs > 0.0) || !std::isfinite(rhs) || !std::isfinite(lhs))
    throw NumericalError("ratio undefined: lhs " + std::to_string(lhs) + ", rhs " + std::to_string(rhs));
  return {lhs, rhs, lhs / rhs, std::move(w)};
}

}  // namespace

RatioValue steinweiss_ratio(const IneqSpec& spec, const SphericalTransform& T, const RadialFunction& u) {
  if (spec.kind != IneqKind::SteinWeiss && spec.kind != IneqKind::HLS)
    throw InadmissibleError("steinweiss_ratio: kind must be steinweiss or hls");
  require_admissible(spec);
  require_nonzero(u);
  Warnings w = u.warnings;
  const RadialFunction g = apply_fractional(T, spec.get("xi"), -spec.get("sigma"), u);
  append_warnings(w, g.warnings);
  const double lhs = radial_norm(g, spec.get("q"), -spec.get("beta"));
  const double rhs = radial_norm(u, spec.get("p"), spec.get("alpha"));
  return finish(lhs, rhs, w);
}

RatioValue hardy_sobolev_ratio(const IneqSpec& spec, const SphericalTransform& T, const RadialFunction& u) {
  const IneqKind k = spec.kind;
  if (k != IneqKind::HardySobolev && k != IneqKind::Hardy && k != IneqKind::Sobolev && k != IneqKind::Uncertainty)
    throw InadmissibleError("hardy_sobolev_ratio: kind must be hardysobolev, hardy, sobolev or uncertainty");
  require_admissible(spec);
  require_nonzero(u);
  Warnings w = u.warnings;
  const double sigma = spec.get("sigma"), p = spec.get("p");
  const double H = h_norm(T, sigma, p, u, &w);
  if (k == IneqKind::Uncertainty) {
    const double l2 = radial_norm(u, 2.0, 0.0);
    return finish(l2 * l2, H * radial_norm(u, spec.p_conj(), sigma), w);
  }
  return finish(radial_norm(u, spec.get("q"), -spec.get("beta")), H, w);
}

RatioValue gn_ratio(const IneqSpec& spec, const SphericalTransform& T, const RadialFunction& u) {
  if (spec.kind != IneqKind::GN) throw InadmissibleError("gn_ratio: kind must be gn");
  require_admissible(spec);
  require_nonzero(u);
  Warnings w = u.warnings;
  const double a = spec.get("a");
  const double H = h_norm(T, spec.get("sigma"), spec.get("p"), u, &w);
  const double rhs = std::pow(H, a) * std::pow(radial_norm(u, spec.get("mu"), 0.0), 1.0 - a);
  return finish(radial_norm(u, spec.get("tau"), 0.0), rhs, w);
}

RatioValue ckn_ratio(const IneqSpec& spec, const SphericalTransform& T, const RadialFunction& u) {
  if (spec.kind != IneqKind::CKN) throw InadmissibleError("ckn_ratio: kind must be ckn");
  require_admissible(spec);
  require_nonzero(u);
  Warnings w = u.warnings;
  const double a = spec.get("a");
  const double H = h_norm(T, spec.get("sigma"), spec.get("p"), u, &w);
  const double rhs = std::pow(H, a) * std::pow(radial_norm(u, spec.get("q"), spec.get("c")), 1.0 - a);
  return finish(radial_norm(u, spec.get("tau"), spec.get("b")), rhs, w);
}

RatioValue inequality_ratio(const IneqSpec& spec, const SphericalTransform& T, const RadialFunction& u) {
  switch (spec.kind) {
    case IneqKind::SteinWeiss:
    case IneqKind::HLS: return steinweiss_ratio(spec, T, u);
    case IneqKind::GN: return gn_ratio(spec, T, u);
    case IneqKind::CKN: return ckn_ratio(spec, T, u);
    default: return hardy_sobolev_ratio(spec, T, u);
  }
}

RatioValue evaluate_ratio(const IneqSpec& spec, const TestFunction& f, const std::optional<GridConfig>& grid) {
  const GridConfig cfg = grid ? *grid : ineq_grid(spec.space, f.min_width, f.extent);
  const SphericalTransform T(spec.space, cfg);
  RadialFunction u = T.sample_radial(f.f);
  append_warnings(u.warnings, truncation_check(u.values, "test function"));
  return inequality_ratio(spec, T, u);
}

RatioReport empirical_best_ratio(const IneqSpec& spec, const TestFamily& family, int budget,
                                 const std::optional<GridConfig>& grid) {
  if (budget < family.count) throw InadmissibleError("budget must be >= family count");
  RatioReport rep;
  rep.verdict = admissible_check(spec);
  require_admissible(spec);
  if (spec.kind == IneqKind::GN && spec.get("sigma") == 1.0 && spec.get("p") == 2.0 && spec.get("mu") == 2.0) {
    const double n = spec.space.dim(), tau = spec.get("tau");
    char buf[200];
    std::snprintf(buf, sizeof buf, "GN exponent from the general relation a = %.6g; displayed corollary value n(tau-2)/tau = %.6g",
                  n * (tau - 2.0) / (2.0 * tau), n * (tau - 2.0) / tau);
    rep.warnings.push_back(buf);
  }
  auto evaluate = [&](int member, const VectorXd& x) {
    const TestFunction f = family_member(family, member, x);
    const RatioValue v = evaluate_ratio(spec, f, grid);
    append_warnings(rep.warnings, v.warnings);
    rep.members.push_back({member, x, v.lhs, v.rhs, v.ratio});
    if (v.ratio > rep.max_ratio || rep.argmax < 0) {
      rep.max_ratio = v.ratio;
      rep.argmax = static_cast<int>(rep.members.size()) - 1;
    }
    rep.history.push_back(rep.max_ratio);
    return v.ratio;
  };
  const auto init = initial_members(family);
  for (const auto& [m, x] : init) evaluate(m, x);
  rep.initial_count = static_cast<int>(init.size());
  const int remaining = budget - rep.initial_count;
  if (remaining > 0) {
    const int member = rep.members[rep.argmax].member;
    const VectorXd x0 = rep.members[rep.argmax].x;
    const auto [lo, hi] = family_box(family);
    const DirectSearchResult r =
        nelder_mead_max([&](const VectorXd& x) { return evaluate(member, x); }, x0, lo, hi, remaining);
    rep.restarts = r.restarts;
  }
  return rep;
}

SweepReport dilation_sweep(const IneqSpec& spec, double w_lo, double w_hi, int points) {
  if (points < 2 || !(w_lo > 0.0 && w_hi > w_lo)) throw InadmissibleError("sweep: need points >= 2, 0 < w_lo < w_hi");
  TestFamily fam;
  fam.kind = FamilyKind::DilatedProfile;
  fam.width_lo = w_lo;
  fam.width_hi = w_hi;
  SweepReport rep;
  for (int k = 0; k < points; ++k) {
    const double w = w_lo * std::pow(w_hi / w_lo, static_cast<double>(k) / (points - 1));
    const RatioValue v = evaluate_ratio(spec, family_member(fam, 0, VectorXd::Constant(1, std::log(w))));
    append_warnings(rep.warnings, v.warnings);
    rep.widths.push_back(w);
    rep.ratios.push_back(v.ratio);
  }
  std::vector<double> s = rep.ratios;
  std::sort(s.begin(), s.end());
  rep.max_ratio = s.back();
  rep.median_ratio = points % 2 ? s[points / 2] : 0.5 * (s[points / 2 - 1] + s[points / 2]);
  return rep;
}

}  // namespace symspec
