#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "symspec/admissibility.hpp"
#include "symspec/transform.hpp"

namespace symspec {

enum class FamilyKind { GaussianBumps, DilatedProfile, ShiftedBump };

std::string to_string(FamilyKind k);
FamilyKind family_kind_from_string(const std::string& s);

// Radial test functions. Dilated: e^{-(r/w)^2}; shifted: e^{-(r-c)^2/w^2} + e^{-(r+c)^2/w^2};
// bumps: 1-5 seeded shifted bumps, widths in [width_lo, width_hi], centers in [center_lo, center_hi],
// optimized over a common dilation.
struct TestFamily {
  FamilyKind kind = FamilyKind::DilatedProfile;
  double width_lo = 0.05, width_hi = 5.0;
  double center_lo = 0.0, center_hi = 5.0;
  int count = 10;
  std::uint64_t seed = 1;
};

struct TestFunction {
  int member = 0;           // bump set index (bumps family)
  VectorXd x;               // continuous parameters (log width [, center] or log scale)
  std::function<double(double)> f;
  double min_width = 1;     // narrowest feature, selects the grid tier
  double extent = 1;        // radius beyond which f is negligible
};

TestFunction family_member(const TestFamily& family, int member, const VectorXd& x);
// Initial sample: (member, x) pairs, count of them.
std::vector<std::pair<int, VectorXd>> initial_members(const TestFamily& family);
std::pair<VectorXd, VectorXd> family_box(const TestFamily& family);

// Grid used for a test function: rank 1 narrow (R 8, Lambda 256, N=M=4096) when the
// narrowest feature is below 0.3, wide (R 40, Lambda 48, N=M=3072) otherwise; rank 2
// N=M=512, R 12, Lambda 24.
GridConfig ineq_grid(const SpaceModel& space, double min_width, double extent);

struct RatioValue {
  double lhs = 0, rhs = 0, ratio = 0;
  Warnings warnings;
};

// (int |x|^{e s} |u|^s dx)^{1/s}
double radial_norm(const RadialFunction& u, double s, double e);
// ||(-Delta)^{sigma/2} u||_p + ||u||_p, symbol (lam^2 + |rho|^2)^{sigma/2}.
double h_norm(const SphericalTransform& T, double sigma, double p, const RadialFunction& u, Warnings* warnings = nullptr);

RatioValue steinweiss_ratio(const IneqSpec& spec, const SphericalTransform& T, const RadialFunction& u);
// Hardy-Sobolev, Hardy, Sobolev and the (squared) uncertainty principle.
RatioValue hardy_sobolev_ratio(const IneqSpec& spec, const SphericalTransform& T, const RadialFunction& u);
RatioValue gn_ratio(const IneqSpec& spec, const SphericalTransform& T, const RadialFunction& u);
RatioValue ckn_ratio(const IneqSpec& spec, const SphericalTransform& T, const RadialFunction& u);
RatioValue inequality_ratio(const IneqSpec& spec, const SphericalTransform& T, const RadialFunction& u);

// Samples f on its tier grid (or the override) and evaluates the ratio.
RatioValue evaluate_ratio(const IneqSpec& spec, const TestFunction& f,
                          const std::optional<GridConfig>& grid = std::nullopt);

struct RatioMember {
  int member = 0;
  VectorXd x;
  double lhs = 0, rhs = 0, ratio = 0;
};

struct RatioReport {
  Verdict verdict;
  std::vector<RatioMember> members;  // every evaluation, in order
  double max_ratio = 0;
  int argmax = -1;
  int initial_count = 0;
  int restarts = 0;
  std::vector<double> history;  // best so far
  Warnings warnings;
};

RatioReport empirical_best_ratio(const IneqSpec& spec, const TestFamily& family, int budget,
                                 const std::optional<GridConfig>& grid = std::nullopt);

struct SweepReport {
  std::vector<double> widths;
  std::vector<double> ratios;
  double max_ratio = 0;
  double median_ratio = 0;
  double spread() const { return max_ratio / median_ratio; }
  Warnings warnings;
};

// Ratios of e^{-(r/w)^2} over log-spaced widths.
SweepReport dilation_sweep(const IneqSpec& spec, double w_lo, double w_hi, int points = 10);

}  // namespace symspec
