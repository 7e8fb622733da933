#include "symspec/fit.hpp"

#include <cmath>

namespace symspec {

double golden_minimize(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

VectorXd least_squares(const MatrixXd& A, const VectorXd& y) { return A.colPivHouseholderQr().solve(y); }

double linear_slope(const VectorXd& x, const VectorXd& y) {
  MatrixXd A(x.size(), 2);
  A.col(0).setOnes();
  A.col(1) = x;
  return least_squares(A, y)[1];
}

namespace {

// Relative-residual linear fit of y on the given basis columns.
std::pair<VectorXd, double> relative_fit(MatrixXd A, const VectorXd& y) {
  const VectorXd inv = y.cwiseAbs().cwiseInverse();
  A = inv.asDiagonal() * A;
  const VectorXd rhs = y.cwiseProduct(inv);
  const VectorXd c = least_squares(A, rhs);
  const double rms = std::sqrt((A * c - rhs).squaredNorm() / static_cast<double>(y.size()));
  return {c, rms};
}

}  // namespace

PowerFit fit_power_with_regular_part(const VectorXd& x, const VectorXd& y, double a_lo, double a_hi) {
  auto design = [&](double a) {
    MatrixXd A(x.size(), 3);
    A.col(0) = x.array().pow(a).matrix();
    A.col(1).setOnes();
    A.col(2) = x;
    return A;
  };
  auto cost = [&](double a) { return relative_fit(design(a), y).second; };
  PowerFit out;
  out.exponent = golden_minimize(cost, a_lo, a_hi, 1e-9);
  auto [c, rms] = relative_fit(design(out.exponent), y);
  out.coefficient = c[0];
  out.rms_relative = rms;
  return out;
}

LogFit fit_log_with_regular_part(const VectorXd& x, const VectorXd& y) {
  MatrixXd A(x.size(), 3);
  A.col(0) = (-x.array().log()).matrix();
  A.col(1).setOnes();
  A.col(2) = x;
  auto [c, rms] = relative_fit(A, y);
  return {c[0], rms};
}

DecayFit fit_exponential_decay(const VectorXd& x, const VectorXd& y) {
  MatrixXd A(x.size(), 4);
  A.col(0).setOnes();
  A.col(1) = x.array().log().matrix();
  A.col(2) = -x;
  A.col(3) = x.cwiseInverse();
  const VectorXd ly = y.array().log().matrix();
  const VectorXd c = least_squares(A, ly);
  return {c[2], c[1], std::sqrt((A * c - ly).squaredNorm() / static_cast<double>(x.size()))};
}

}  // namespace symspec
