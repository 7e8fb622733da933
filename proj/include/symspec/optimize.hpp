#pragma once

#include <functional>

#include "symspec/core.hpp"

namespace symspec {

struct DirectSearchResult {
  VectorXd best_x;
  double best_value = -INFINITY;
  int evaluations = 0;
  int restarts = 0;
  std::vector<double> history;  // best value after each evaluation
};

// Nelder-Mead maximization inside the box [lo, hi] (points clamped). Restarts
// from the incumbent when the simplex spread drops below rel_tol, at most
// max_restarts times; stops after budget evaluations. Deterministic, and a
// larger budget replays the smaller run as a prefix.
DirectSearchResult nelder_mead_max(const std::function<double(const VectorXd&)>& f, const VectorXd& x0,
                                   const VectorXd& lo, const VectorXd& hi, int budget, int max_restarts = 3,
                                   double rel_tol = 1e-3);

}  // namespace symspec
