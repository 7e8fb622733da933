#pragma once

#include <functional>

#include "symspec/core.hpp"

namespace symspec {

// Minimizes f on [lo, hi] by golden-section search.
double golden_minimize(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-10);

// Least-squares coefficients for design matrix A against y (column-pivoted QR).
VectorXd least_squares(const MatrixXd& A, const VectorXd& y);

// Ordinary slope of y against x.
double linear_slope(const VectorXd& x, const VectorXd& y);

// y ~ C x^a + D + E x with a in [a_lo, a_hi]; residuals relative to y.
struct PowerFit {
  double exponent = 0;
  double coefficient = 0;
  double rms_relative = 0;
};
PowerFit fit_power_with_regular_part(const VectorXd& x, const VectorXd& y, double a_lo, double a_hi);

// y ~ C log(1/x) + D + E x.
struct LogFit {
  double coefficient = 0;
  double rms_relative = 0;
};
LogFit fit_log_with_regular_part(const VectorXd& x, const VectorXd& y);

// log y ~ b + a log x - k x + c / x.
struct DecayFit {
  double rate = 0;
  double power = 0;
  double rms = 0;
};
DecayFit fit_exponential_decay(const VectorXd& x, const VectorXd& y);

}  // namespace symspec
