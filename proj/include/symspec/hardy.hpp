#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "symspec/quadrature.hpp"
#include "symspec/space_model.hpp"

namespace symspec {

// Radial weight scale * |x|^gamma * e^{kappa |x|}, or a tabulated profile
// (log-linear interpolation, end values held outside the table).
struct WeightSpec {
  enum class Kind { Power, Tabulated };
  Kind kind = Kind::Power;
  double gamma = 0;
  double kappa = 0;
  double scale = 1;
  VectorXd table_r;
  VectorXd table_w;

  static WeightSpec power(double gamma, double kappa = 0.0, double scale = 1.0);
  static WeightSpec tabulated(const VectorXd& r, const VectorXd& w);

  double operator()(double r) const;
  bool is_zero() const { return kind == Kind::Power && scale == 0.0; }
  bool positive() const;
};

struct HardyGrid {
  int r_count = 200;   // log-spaced R values for the sup
  double r_min = 1e-3;
  double r_max = 30.0;
  double tail_factor = 2.0;  // table extends to tail_factor * r_max
  double max_panel = 0.1;

  HardyGrid refined() const {
    HardyGrid g = *this;
    g.r_count *= 2;
    g.max_panel *= 0.5;
    return g;
  }
};

// Quadrature table for U, V and the D-functionals of one weight pair.
class HardyTable {
 public:
  HardyTable(const SpaceModel& space, const WeightSpec& u, const WeightSpec& v, double p, bool adjoint,
             const HardyGrid& grid = {});

  const Axis& axis() const { return axis_; }
  bool adjoint() const { return adjoint_; }
  double p() const { return p_; }
  const VectorXd& R() const { return R_; }
  // u S and v^{1-p'} S at the nodes (S = sphere measure).
  const VectorXd& gu() const { return gu_; }
  const VectorXd& gv() const { return gv_; }
  const VectorXd& S() const { return S_; }
  // U, V at nodes and at the R grid (direct: U outer, V inner; adjoint: reversed).
  const VectorXd& U_nodes() const { return U_nodes_; }
  const VectorXd& V_nodes() const { return V_nodes_; }
  const VectorXd& U_R() const { return U_R_; }
  const VectorXd& V_R() const { return V_R_; }
  bool u_integrable() const { return u_total_finite_; }
  bool w_integrable() const { return v_total_finite_; }

  // int over {|y| < R} (inner = true) or {|y| > R} of g, for every R in the grid.
  VectorXd over_R(const VectorXd& g_nodes, bool inner) const;
  // Same at every node.
  VectorXd over_nodes(const VectorXd& g_nodes, bool inner) const;
  // Whole-space integral.
  double total(const VectorXd& g_nodes) const;

 private:
  VectorXd cumulative(const VectorXd& g, bool inner, bool at_nodes) const;

  Axis axis_;
  bool adjoint_;
  double p_;
  VectorXd R_;
  std::vector<Index> R_break_;  // break index of each R
  VectorXd S_, gu_, gv_;
  VectorXd U_nodes_, V_nodes_, U_R_, V_R_;
  bool u_total_finite_ = true, v_total_finite_ = true;
};

// U(R), V(R) of Theorem 2.1 (or 2.2 when adjoint).
std::pair<double, double> compute_UV(const SpaceModel& space, const WeightSpec& u, const WeightSpec& v, double p,
                                     double R, bool adjoint = false, const HardyGrid& grid = {});

struct HardyRelation {
  std::string name;
  double lhs;
  double rhs;
  bool ok;
};

struct HardyReport {
  bool adjoint = false;
  double p = 0, q = 0, s = 0;
  std::array<double, 5> D{};          // +inf marks divergence
  std::array<bool, 5> applicable{};   // D3/D5 provisos
  std::vector<HardyRelation> relations;
  bool bracket_extrapolated = false;  // adjoint constant bracket is not printed in the source
  double bracket_constant = 0;        // (p')^{1/p'} p^{1/q}
  int r_count = 0;
  double r_min = 0, r_max = 0;
  bool relations_ok() const;
};

HardyReport d_conditions(const SpaceModel& space, const WeightSpec& u, const WeightSpec& v, double p, double q,
                         double s, bool adjoint, const HardyGrid& grid = {});

inline double default_hardy_s(double p) { return 0.5 * (p - 1.0) / p; }

using RadialSampler = std::function<std::function<double(double)>(std::uint64_t trial)>;

// Sums of 1-5 Gaussian bumps, widths log-uniform in [0.05, 5], centers in [0, 10].
RadialSampler gaussian_bump_sampler(std::uint64_t seed);

std::uint64_t split_seed(std::uint64_t master, std::uint64_t counter);

struct HardyTestReport {
  HardyReport conditions;
  int trials = 0;
  int skipped = 0;
  int violations = 0;
  double max_ratio = 0;      // max LHS / RHS
  int argmax_trial = -1;
  double bound = 0;          // D1 (p')^{1/p'} p^{1/q}
  std::vector<double> ratios;
};

// LHS and RHS of the (adjoint) integral Hardy inequality for f >= 0 on a table.
std::pair<double, double> hardy_sides(const HardyTable& table, const WeightSpec& u, const WeightSpec& v, double q,
                                      const std::function<double(double)>& f);

HardyTestReport test_integral_hardy(const SpaceModel& space, const WeightSpec& u, const WeightSpec& v, double p,
                                    double q, const RadialSampler& sampler, int trials, bool adjoint = false,
                                    double s = 0.0, const HardyGrid& grid = {});

}  // namespace symspec
