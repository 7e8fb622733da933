#pragma once

#include <map>
#include <string>
#include <vector>

#include "symspec/space_model.hpp"

namespace symspec {

// A real that also carries an exact rational value while every input was
// within 1e-12 of a fraction with denominator <= 10^6.
class Exact {
 public:
  Exact() = default;
  Exact(double x);  // NOLINT(google-explicit-constructor)
  static Exact ratio(long long num, long long den);

  double value() const { return value_; }
  bool exact() const { return exact_; }

  friend Exact operator+(const Exact& a, const Exact& b);
  friend Exact operator-(const Exact& a, const Exact& b);
  friend Exact operator*(const Exact& a, const Exact& b);
  friend Exact operator/(const Exact& a, const Exact& b);
  friend Exact operator-(const Exact& a);

  // Three-way comparison: exact when both sides are, else |a - b| <= 1e-12 counts as equal.
  friend int compare(const Exact& a, const Exact& b);

 private:
  double value_ = 0;
  bool exact_ = true;
  __int128 num_ = 0, den_ = 1;
  void normalize();
};

struct RelationCheck {
  std::string name;
  bool ok;
  double residual;  // lhs - rhs
};

struct Verdict {
  bool admissible = true;
  std::vector<RelationCheck> relations;
  std::vector<std::string> failed() const;
};

enum class IneqKind { SteinWeiss, HLS, HardySobolev, Hardy, Uncertainty, Sobolev, GN, CKN };

std::string to_string(IneqKind k);
IneqKind ineq_kind_from_string(const std::string& s);

struct IneqSpec {
  IneqKind kind;
  std::map<std::string, double> params;  // sigma, p, q, alpha, beta, tau, mu, a, b, c, xi
  SpaceModel space;

  bool has(const std::string& k) const { return params.count(k) != 0; }
  // Throws InadmissibleError("missing parameter: k") when absent and no default applies.
  double get(const std::string& k) const;
  double p_conj() const { return get("p") / (get("p") - 1.0); }
};

std::vector<std::string> required_params(IneqKind kind);

// Relations per kind; all listed relations are evaluated (no short-circuit).
Verdict admissible_check(const IneqSpec& spec);

// Throws InadmissibleError listing the failed relations.
void require_admissible(const IneqSpec& spec);

}  // namespace symspec
