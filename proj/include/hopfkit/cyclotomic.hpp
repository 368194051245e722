#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).  Elements are reduced
// residues modulo the N-th cyclotomic polynomial, with rational (GMP)
// coefficients.  Mixed-order operands are lifted into Q(zeta_lcm) via
// zeta_N = zeta_M^(M/N).

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfkit {

using Rat = mpq_class;

struct DivisionByZeroError : std::domain_error {
  DivisionByZeroError() : std::domain_error("division by zero") {}
};

inline long euler_phi(long n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

// -- dense polynomials over Q, coefficient of x^i at index i ----------------

namespace detail {

inline void poly_trim(std::vector<Rat>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rat> c(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  poly_trim(c);
  return c;
}

// Exact division; throws if the remainder is nonzero.
inline std::vector<Rat> poly_divexact(std::vector<Rat> num, const std::vector<Rat>& den) {
  poly_trim(num);
  if (den.empty() || den.back() == 0) throw std::invalid_argument("poly_divexact: zero divisor");
  if (num.size() < den.size()) {
    if (!num.empty()) throw std::invalid_argument("poly_divexact: inexact division");
    return {};
  }
  std::vector<Rat> q(num.size() - den.size() + 1, Rat(0));
  for (size_t i = q.size(); i-- > 0;) {
    Rat coeff = num[i + den.size() - 1] / den.back();
    q[i] = coeff;
    if (coeff == 0) continue;
    for (size_t j = 0; j < den.size(); ++j) num[i + j] -= coeff * den[j];
  }
  poly_trim(num);
  if (!num.empty()) throw std::invalid_argument("poly_divexact: inexact division");
  return q;
}

}  // namespace detail

// N-th cyclotomic polynomial, computed by dividing x^N - 1 by all lower
// Phi_d with d | N.  Monic with integer coefficients; cached per N.
inline const std::vector<Rat>& cyclotomic_polynomial(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
  static std::map<long, std::vector<Rat>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // computes without touching the lock again: all divisors first
  std::vector<long> divisors;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) divisors.push_back(d);
  std::vector<Rat> num(static_cast<size_t>(n) + 1, Rat(0));
  num[0] = -1;
  num[static_cast<size_t>(n)] = 1;
  for (long d : divisors) {
    auto dit = cache.find(d);
    if (dit == cache.end()) {
      // compute recursively inline (divisors are processed in increasing order,
      // so every proper divisor of d is already cached)
      std::vector<Rat> nd(static_cast<size_t>(d) + 1, Rat(0));
      nd[0] = -1;
      nd[static_cast<size_t>(d)] = 1;
      for (long e = 1; e < d; ++e)
        if (d % e == 0) nd = detail::poly_divexact(std::move(nd), cache.at(e));
      dit = cache.emplace(d, std::move(nd)).first;
    }
    num = detail::poly_divexact(std::move(num), dit->second);
  }
  return cache.emplace(n, std::move(num)).first->second;
}

namespace detail {

// Per-order reduction data: x^k mod Phi_N for k in [phi, 2*phi-2].
struct CycContext {
  long order = 1;
  long phi = 1;
  std::vector<Rat> minpoly;
  std::vector<std::vector<Rat>> power_rows;
};

inline const CycContext& cyc_context(long n) {
  static std::map<long, std::unique_ptr<CycContext>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) {
    auto ctx = std::make_unique<CycContext>();
    ctx->order = n;
    ctx->minpoly = cyclotomic_polynomial(n);
    ctx->phi = static_cast<long>(ctx->minpoly.size()) - 1;
    const long phi = ctx->phi;
    // x^phi = -(lower coefficients); then iterate x^(k+1) = x * x^k reduced
    std::vector<Rat> cur(static_cast<size_t>(phi), Rat(0));
    for (long i = 0; i < phi; ++i) cur[static_cast<size_t>(i)] = -ctx->minpoly[static_cast<size_t>(i)];
    for (long k = phi; k <= 2 * phi - 2; ++k) {
      ctx->power_rows.push_back(cur);
      // multiply by x
      std::vector<Rat> next(static_cast<size_t>(phi), Rat(0));
      Rat top = cur[static_cast<size_t>(phi - 1)];
      for (long i = phi - 1; i > 0; --i) next[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)];
      next[0] = 0;
      if (top != 0)
        for (long i = 0; i < phi; ++i) next[static_cast<size_t>(i)] += top * -ctx->minpoly[static_cast<size_t>(i)];
      cur = std::move(next);
    }
    it = cache.emplace(n, std::move(ctx)).first;
  }
  return *it->second;
}

}  // namespace detail

class Cyc {
 public:
  Cyc() : order_(1), c_(1, Rat(0)) {}
  explicit Cyc(const Rat& q, long order = 1) : order_(order) {
    c_.assign(static_cast<size_t>(detail::cyc_context(order).phi), Rat(0));
    c_[0] = q;
  }
  explicit Cyc(long v, long order = 1) : Cyc(Rat(v), order) {}

  static Cyc zero(long order) { return Cyc(Rat(0), order); }
  static Cyc one(long order) { return Cyc(Rat(1), order); }

  // zeta_order^k
  static Cyc root_of_unity(long order, long k) {
    k %= order;
    if (k < 0) k += order;
    const auto& ctx = detail::cyc_context(order);
    std::vector<Rat> p(static_cast<size_t>(k) + 1, Rat(0));
    p[static_cast<size_t>(k)] = 1;
    Cyc r;
    r.order_ = order;
    r.c_ = reduce(p, ctx);
    return r;
  }

  long order() const { return order_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_one() const {
    if (c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  const Rat& rational_part() const { return c_[0]; }

  // embeds into Q(zeta_m); requires order() | m
  Cyc lifted_to(long m) const {
    if (m == order_) return *this;
    if (m % order_ != 0) throw std::invalid_argument("Cyc::lifted_to: target order not a multiple");
    const auto& ctx = detail::cyc_context(m);
    long step = m / order_;
    std::vector<Rat> p(static_cast<size_t>((c_.size() - 1) * static_cast<size_t>(step)) + 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) p[i * static_cast<size_t>(step)] = c_[i];
    Cyc r;
    r.order_ = m;
    r.c_ = reduce(p, ctx);
    return r;
  }

  friend Cyc operator+(const Cyc& a, const Cyc& b) {
    auto [x, y] = aligned(a, b);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
  }
  friend Cyc operator-(const Cyc& a, const Cyc& b) {
    auto [x, y] = aligned(a, b);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
  }
  Cyc operator-() const {
    Cyc r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    auto [x, y] = aligned(a, b);
    const auto& ctx = detail::cyc_context(x.order_);
    std::vector<Rat> p(2 * x.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == 0) continue;
      for (size_t j = 0; j < y.c_.size(); ++j)
        if (y.c_[j] != 0) p[i + j] += x.c_[i] * y.c_[j];
    }
    Cyc r;
    r.order_ = x.order_;
    r.c_ = reduce(p, ctx);
    return r;
  }
  Cyc& operator+=(const Cyc& b) { return *this = *this + b; }
  Cyc& operator-=(const Cyc& b) { return *this = *this - b; }
  Cyc& operator*=(const Cyc& b) { return *this = *this * b; }

  // multiplicative inverse via extended Euclid against the minimal polynomial
  Cyc inv() const {
    if (is_zero()) throw DivisionByZeroError();
    if (is_rational()) {
      Cyc r = *this;
      r.c_[0] = 1 / r.c_[0];
      return r;
    }
    const auto& ctx = detail::cyc_context(order_);
    std::vector<Rat> r0 = ctx.minpoly, r1(c_);
    detail::poly_trim(r1);
    std::vector<Rat> s0{}, s1{Rat(1)};
    while (!r1.empty()) {
      auto [q, rem] = poly_divmod(r0, r1);
      auto s2 = poly_sub(s0, detail::poly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 = gcd = nonzero constant (Phi_N is irreducible over Q)
    if (r0.size() != 1) throw std::logic_error("Cyc::inv: nonconstant gcd with cyclotomic polynomial");
    Rat scale = 1 / r0[0];
    for (auto& x : s0) x *= scale;
    Cyc result;
    result.order_ = order_;
    result.c_ = reduce(s0, ctx);
    return result;
  }

  friend bool operator==(const Cyc& a, const Cyc& b) {
    if (a.order_ == b.order_) return a.c_ == b.c_;
    auto [x, y] = aligned(a, b);
    return x.c_ == y.c_;
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (i == 0) {
        os << c_[i].get_str();
      } else {
        if (c_[i] != 1) os << c_[i].get_str() << "*";
        os << "z" << order_;
        if (i > 1) os << "^" << i;
      }
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  long order_;
  std::vector<Rat> c_;

  static std::pair<Cyc, Cyc> aligned(const Cyc& a, const Cyc& b) {
    if (a.order_ == b.order_) return {a, b};
    long m = lcm_long(a.order_, b.order_);
    return {a.lifted_to(m), b.lifted_to(m)};
  }

  static std::vector<Rat> reduce(const std::vector<Rat>& p, const detail::CycContext& ctx) {
    std::vector<Rat> out(static_cast<size_t>(ctx.phi), Rat(0));
    for (size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0) continue;
      if (i < static_cast<size_t>(ctx.phi)) {
        out[i] += p[i];
      } else {
        size_t k = i - static_cast<size_t>(ctx.phi);
        if (k >= ctx.power_rows.size()) {
          // fall back for high powers (only reachable via root_of_unity)
          std::vector<Rat> mono(i + 1, Rat(0));
          mono[i] = p[i];
          auto rem = poly_mod(mono, ctx.minpoly);
          rem.resize(static_cast<size_t>(ctx.phi), Rat(0));
          for (size_t j = 0; j < out.size(); ++j) out[j] += rem[j];
        } else {
          const auto& row = ctx.power_rows[k];
          for (size_t j = 0; j < out.size(); ++j)
            if (row[j] != 0) out[j] += p[i] * row[j];
        }
      }
    }
    return out;
  }

  static std::vector<Rat> poly_sub(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> c(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    detail::poly_trim(c);
    return c;
  }

  static std::pair<std::vector<Rat>, std::vector<Rat>> poly_divmod(std::vector<Rat> num,
                                                                   const std::vector<Rat>& den) {
    detail::poly_trim(num);
    if (num.size() < den.size()) return {{}, std::move(num)};
    std::vector<Rat> q(num.size() - den.size() + 1, Rat(0));
    for (size_t i = q.size(); i-- > 0;) {
      Rat coeff = num[i + den.size() - 1] / den.back();
      q[i] = coeff;
      if (coeff == 0) continue;
      for (size_t j = 0; j < den.size(); ++j) num[i + j] -= coeff * den[j];
    }
    detail::poly_trim(num);
    detail::poly_trim(q);
    return {std::move(q), std::move(num)};
  }

  static std::vector<Rat> poly_mod(std::vector<Rat> num, const std::vector<Rat>& den) {
    return poly_divmod(std::move(num), den).second;
  }
};

}  // namespace hopfkit
