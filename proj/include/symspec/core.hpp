#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace symspec {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Invalid parameters or an object that does not exist.
class InadmissibleError : public std::invalid_argument {
 public:
  explicit InadmissibleError(const std::string& what) : std::invalid_argument(what) {}
};

// Quadrature, calibration or iteration did not meet its tolerance.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Requested feature outside what is implemented (e.g. rank > 2 transforms).
class UnsupportedError : public std::logic_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::logic_error(what) {}
};

using Warnings = std::vector<std::string>;

inline void append_warnings(Warnings& dst, const Warnings& src) {
  for (const auto& w : src) {
    bool seen = false;
    for (const auto& d : dst) seen = seen || d == w;
    if (!seen) dst.push_back(w);
  }
}

}  // namespace symspec
