#include "symspec/admissibility.hpp"

#include <cmath>
#include <cstdlib>

#include "symspec/kernels.hpp"

namespace symspec {

namespace {

constexpr long long kMaxDen = 1000000;
constexpr double kTol = 1e-12;
constexpr __int128 kLimit = static_cast<__int128>(1) << 100;

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Best continued-fraction approximation with denominator <= kMaxDen.
bool rationalize(double x, long long& num, long long& den) {
  if (!std::isfinite(x) || std::abs(x) > 1e12) return false;
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(r);
    const long long a = static_cast<long long>(fl);
    const long long h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > kMaxDen) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= kTol * std::max(1.0, std::abs(x))) {
      num = h1;
      den = k1;
      return true;
    }
    const double frac = r - fl;
    if (frac < 1e-300) break;
    r = 1.0 / frac;
  }
  return false;
}

}  // namespace

Exact::Exact(double x) : value_(x) {
  long long n = 0, d = 1;
  exact_ = rationalize(x, n, d);
  num_ = n;
  den_ = d;
}

Exact Exact::ratio(long long num, long long den) {
  Exact e;
  e.num_ = num;
  e.den_ = den;
  e.value_ = static_cast<double>(num) / static_cast<double>(den);
  e.normalize();
  return e;
}

void Exact::normalize() {
  if (!exact_) return;
  if (den_ == 0) {
    exact_ = false;
    return;
  }
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  const __int128 g = gcd128(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ > kLimit || num_ < -kLimit || den_ > kLimit) exact_ = false;
}

Exact operator+(const Exact& a, const Exact& b) {
  Exact r;
  r.value_ = a.value_ + b.value_;
  r.exact_ = a.exact_ && b.exact_;
  if (r.exact_) {
    r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
    r.den_ = a.den_ * b.den_;
    r.normalize();
  }
  return r;
}

Exact operator-(const Exact& a) {
  Exact r = a;
  r.value_ = -a.value_;
  r.num_ = -a.num_;
  return r;
}

Exact operator-(const Exact& a, const Exact& b) { return a + (-b); }

Exact operator*(const Exact& a, const Exact& b) {
  Exact r;
  r.value_ = a.value_ * b.value_;
  r.exact_ = a.exact_ && b.exact_;
  if (r.exact_) {
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_ * b.den_;
    r.normalize();
  }
  return r;
}

Exact operator/(const Exact& a, const Exact& b) {
  Exact r;
  r.value_ = a.value_ / b.value_;
  r.exact_ = a.exact_ && b.exact_ && b.num_ != 0;
  if (r.exact_) {
    r.num_ = a.num_ * b.den_;
    r.den_ = a.den_ * b.num_;
    r.normalize();
  }
  return r;
}

int compare(const Exact& a, const Exact& b) {
  if (a.exact_ && b.exact_) {
    const __int128 l = a.num_ * b.den_, r = b.num_ * a.den_;
    return (l > r) - (l < r);
  }
  const double d = a.value_ - b.value_;
  if (std::abs(d) <= kTol * std::max(1.0, std::max(std::abs(a.value_), std::abs(b.value_)))) return 0;
  return d > 0 ? 1 : -1;
}

std::vector<std::string> Verdict::failed() const {
  std::vector<std::string> out;
  for (const auto& r : relations)
    if (!r.ok) out.push_back(r.name);
  return out;
}

std::string to_string(IneqKind k) {
  switch (k) {
    case IneqKind::SteinWeiss: return "steinweiss";
    case IneqKind::HLS: return "hls";
    case IneqKind::HardySobolev: return "hardysobolev";
    case IneqKind::Hardy: return "hardy";
    case IneqKind::Uncertainty: return "uncertainty";
    case IneqKind::Sobolev: return "sobolev";
    case IneqKind::GN: return "gn";
    case IneqKind::CKN: return "ckn";
  }
  return "?";
}

IneqKind ineq_kind_from_string(const std::string& s) {
  for (IneqKind k : {IneqKind::SteinWeiss, IneqKind::HLS, IneqKind::HardySobolev, IneqKind::Hardy,
                     IneqKind::Uncertainty, IneqKind::Sobolev, IneqKind::GN, IneqKind::CKN})
    if (to_string(k) == s) return k;
  throw InadmissibleError("unknown inequality kind: " + s);
}

double IneqSpec::get(const std::string& k) const {
  auto it = params.find(k);
  if (it != params.end()) return it->second;
  if (k == "xi") return default_xi(space);
  if (kind == IneqKind::HLS && (k == "alpha" || k == "beta")) return 0.0;
  if (kind == IneqKind::Sobolev && k == "beta") return 0.0;
  if (kind == IneqKind::Hardy && k == "q") return get("p");
  if (kind == IneqKind::Hardy && k == "beta") return get("sigma");
  throw InadmissibleError("missing parameter: " + k);
}

std::vector<std::string> required_params(IneqKind kind) {
  switch (kind) {
    case IneqKind::SteinWeiss: return {"sigma", "p", "q", "alpha", "beta"};
    case IneqKind::HLS: return {"sigma", "p", "q"};
    case IneqKind::HardySobolev: return {"sigma", "p", "q", "beta"};
    case IneqKind::Hardy: return {"sigma", "p"};
    case IneqKind::Uncertainty: return {"sigma", "p"};
    case IneqKind::Sobolev: return {"sigma", "p", "q"};
    case IneqKind::GN: return {"sigma", "p", "mu", "tau", "a"};
    case IneqKind::CKN: return {"sigma", "p", "q", "tau", "a", "b", "c"};
  }
  return {};
}

namespace {

struct Checker {
  Verdict v;
  void add(const std::string& name, bool ok, double residual) {
    v.relations.push_back({name, ok, residual});
    v.admissible = v.admissible && ok;
  }
  void lt(const std::string& name, const Exact& a, const Exact& b) { add(name, compare(a, b) < 0, a.value() - b.value()); }
  void le(const std::string& name, const Exact& a, const Exact& b) { add(name, compare(a, b) <= 0, a.value() - b.value()); }
  void eq(const std::string& name, const Exact& a, const Exact& b) { add(name, compare(a, b) == 0, a.value() - b.value()); }
};

}  // namespace

Verdict admissible_check(const IneqSpec& spec) {
  for (const auto& k : required_params(spec.kind)) (void)spec.get(k);
  Checker c;
  const Exact n(static_cast<double>(spec.space.dim()));
  const Exact zero(0.0), one(1.0);
  c.le("n >= 3", Exact(3.0), n);
  const Exact sigma(spec.get("sigma")), p(spec.get("p"));
  c.lt("sigma > 0", zero, sigma);
  c.lt("sigma < n", sigma, n);
  c.lt("p > 1", one, p);
  switch (spec.kind) {
    case IneqKind::SteinWeiss:
    case IneqKind::HLS: {
      const Exact q(spec.get("q")), alpha(spec.get("alpha")), beta(spec.get("beta"));
      const Exact pp = p / (p - one);
      c.lt("xi > 0", zero, Exact(spec.get("xi")));
      if (spec.kind == IneqKind::HLS) {
        c.lt("p < q", p, q);
        c.eq("sigma/n = 1/p - 1/q", sigma / n, one / p - one / q);
      } else {
        c.le("p <= q", p, q);
        c.lt("alpha < n/p'", alpha, n / pp);
        c.lt("beta < n/q", beta, n / q);
        c.le("alpha + beta >= 0", zero, alpha + beta);
        c.eq("(sigma - alpha - beta)/n = 1/p - 1/q", (sigma - alpha - beta) / n, one / p - one / q);
      }
      break;
    }
    case IneqKind::HardySobolev:
    case IneqKind::Hardy:
    case IneqKind::Sobolev: {
      const Exact q(spec.get("q")), beta(spec.get("beta"));
      c.le("p <= q", p, q);
      if (spec.kind == IneqKind::Sobolev) {
        c.eq("sigma/n = 1/p - 1/q", sigma / n, one / p - one / q);
        break;
      }
      if (spec.kind == IneqKind::Hardy) {
        c.eq("q = p", q, p);
        c.eq("beta = sigma", beta, sigma);
        c.lt("sigma < n/p", sigma, n / p);
      }
      c.le("beta >= 0", zero, beta);
      c.lt("beta < n/q", beta, n / q);
      c.eq("(sigma - beta)/n = 1/p - 1/q", (sigma - beta) / n, one / p - one / q);
      break;
    }
    case IneqKind::Uncertainty:
      c.lt("sigma < n/p", sigma, n / p);
      break;
    case IneqKind::GN: {
      const Exact tau(spec.get("tau")), mu(spec.get("mu")), a(spec.get("a"));
      c.lt("tau > 0", zero, tau);
      c.lt("sigma p < n", sigma * p, n);
      c.le("mu >= 1", one, mu);
      c.lt("a > 0", zero, a);
      c.le("a <= 1", a, one);
      c.eq("1/tau = a(1/p - sigma/n) + (1-a)/mu", one / tau, a * (one / p - sigma / n) + (one - a) / mu);
      break;
    }
    case IneqKind::CKN: {
      const Exact q(spec.get("q")), tau(spec.get("tau")), a(spec.get("a")), b(spec.get("b")), cc(spec.get("c"));
      c.lt("q > 0", zero, q);
      c.lt("q < tau", q, tau);
      c.lt("a > (tau-q)/tau", (tau - q) / tau, a);
      c.le("a <= 1", a, one);
      const Exact rest = q - (one - a) * tau;  // > 0 when a > (tau-q)/tau
      if (compare(rest, zero) > 0 && compare(a, zero) > 0) {
        const Exact qt = a * tau * q / rest;
        const Exact d = cc * (one - a) - b;
        c.le("p <= a tau q/(q-(1-a)tau)", p, qt);
        c.le("c(1-a) - b >= 0", zero, d);
        c.le("c(1-a) - b <= n(q-(1-a)tau)/(q tau)", d, n * rest / (q * tau));
        c.eq("(sigma - (c(1-a)-b)/a)/n = 1/p - (q-(1-a)tau)/(a tau q)", (sigma - d / a) / n, one / p - one / qt);
      }
      break;
    }
  }
  return c.v;
}

void require_admissible(const IneqSpec& spec) {
  const Verdict v = admissible_check(spec);
  if (v.admissible) return;
  std::string msg = to_string(spec.kind) + " inadmissible:";
  for (const auto& f : v.failed()) msg += " [" + f + "]";
  throw InadmissibleError(msg);
}

}  // namespace symspec
