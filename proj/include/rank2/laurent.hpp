#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rank2/errors.hpp"
#include "rank2/lattice.hpp"

namespace rank2 {

/// Laurent polynomial in x1, x2 with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored; iteration is in
/// lexicographic exponent order.
class LaurentPoly {
 public:
  using Terms = std::map<LatticeVector, Integer>;

  LaurentPoly() = default;
  LaurentPoly(std::initializer_list<std::pair<LatticeVector, Integer>> terms) {
    for (const auto& [m, c] : terms) add_term(m, c);
  }

  static LaurentPoly monomial(const LatticeVector& m, const Integer& c = 1) {
    LaurentPoly p;
    p.add_term(m, c);
    return p;
  }
  static LaurentPoly constant(const Integer& c) { return monomial({0, 0}, c); }
  static LaurentPoly x1() { return monomial({1, 0}); }
  static LaurentPoly x2() { return monomial({0, 1}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Integer coeff(const LatticeVector& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  std::vector<LatticeVector> support() const {
    std::vector<LatticeVector> s;
    s.reserve(terms_.size());
    for (const auto& [m, c] : terms_) s.push_back(m);
    return s;
  }

  /// Accumulates c*x^m, erasing the entry if it cancels.
  void add_term(const LatticeVector& m, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  bool operator==(const LaurentPoly&) const = default;

 private:
  Terms terms_;
};

inline LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q) {
  LaurentPoly r = p;
  r += q;
  return r;
}

inline LaurentPoly operator+(const LaurentPoly& p, const LaurentPoly& q) { return add(p, q); }

inline LaurentPoly operator-(const LaurentPoly& p, const LaurentPoly& q) {
  LaurentPoly r = p;
  r -= q;
  return r;
}

inline LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q) {
  LaurentPoly r;
  for (const auto& [mp, cp] : p)
    for (const auto& [mq, cq] : q) r.add_term(mp + mq, cp * cq);
  return r;
}

inline LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) { return mul(p, q); }

inline LaurentPoly scale(const LaurentPoly& p, const Integer& c, const LatticeVector& shift = {0, 0}) {
  LaurentPoly r;
  for (const auto& [m, k] : p) r.add_term(m + shift, k * c);
  return r;
}

inline LaurentPoly int_pow(const LaurentPoly& p, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("int_pow: negative exponent");
  LaurentPoly result = LaurentPoly::constant(1);
  LaurentPoly base = p;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

/// Returns r with q*r == p, or throws NotDivisible. The quotient's exponents
/// are confined to the box spanned by the Newton polytopes, and each step
/// strictly lowers the lex-leading exponent, so the loop terminates.
inline LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& q) {
  if (q.is_zero()) throw std::invalid_argument("exact_div: division by zero");
  if (p.is_zero()) return {};

  auto bounds = [](const LaurentPoly& f) {
    std::int64_t lo1 = f.begin()->first.m1, hi1 = f.terms().rbegin()->first.m1;
    std::int64_t lo2 = INT64_MAX, hi2 = INT64_MIN;
    for (const auto& [m, c] : f) {
      lo2 = std::min(lo2, m.m2);
      hi2 = std::max(hi2, m.m2);
    }
    return std::array<std::int64_t, 4>{lo1, hi1, lo2, hi2};
  };
  const auto bp = bounds(p);
  const auto bq = bounds(q);
  const std::int64_t lo1 = checked::sub(bp[0], bq[0]), hi1 = checked::sub(bp[1], bq[1]);
  const std::int64_t lo2 = checked::sub(bp[2], bq[2]), hi2 = checked::sub(bp[3], bq[3]);

  const auto& [lead_q, lead_c] = *q.terms().rbegin();
  LaurentPoly rem = p;
  LaurentPoly quot;
  while (!rem.is_zero()) {
    const auto [lead_r, lead_rc] = *rem.terms().rbegin();
    const LatticeVector e = lead_r - lead_q;
    if (e.m1 < lo1 || e.m1 > hi1 || e.m2 < lo2 || e.m2 > hi2)
      throw NotDivisible("exact_div: quotient exponent " + to_string(e) + " outside Newton box");
    Integer t, r;
    boost::multiprecision::divide_qr(lead_rc, lead_c, t, r);
    if (r != 0) throw NotDivisible("exact_div: leading coefficient not divisible");
    quot.add_term(e, t);
    for (const auto& [m, c] : q) rem.add_term(m + e, -(c * t));
  }
  return quot;
}

/// n(n-1)...(n-k+1)/k!, valid for negative n; gen_binomial(n, 0) == 1.
inline Integer gen_binomial(const Integer& n, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("gen_binomial: negative k");
  Integer num = 1, den = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    num *= (n - i);
    den *= (i + 1);
  }
  return num / den;
}

/// Drops every term x^m with ell(m - base) > k.
inline LaurentPoly ell_truncate(const LaurentPoly& p, const LatticeVector& base, const DegreeFunctional& ell,
                                std::int64_t k) {
  LaurentPoly r;
  for (const auto& [m, c] : p)
    if (ell(m - base) <= k) r.add_term(m, c);
  return r;
}

/// Each term c*x^m becomes c*x^(M m).
inline LaurentPoly apply_linear(const LaurentPoly& p, const Matrix2& M) {
  LaurentPoly r;
  for (const auto& [m, c] : p) r.add_term(M * m, c);
  return r;
}

inline std::string monomial_text(const LatticeVector& m) {
  std::string s;
  auto factor = [&s](const char* var, std::int64_t e) {
    if (e == 0) return;
    if (!s.empty()) s += '*';
    s += var;
    if (e != 1) s += '^' + std::to_string(e);
  };
  factor("x1", m.m1);
  factor("x2", m.m2);
  return s;
}

/// Canonical text form, e.g. `x1^-1*x2 + x1^-1*x2^-1 + x1*x2^-1`.
inline std::string to_text(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p) {
    if (!first) out += " + ";
    first = false;
    const std::string mono = monomial_text(m);
    if (mono.empty()) {
      out += c.str();
    } else if (c == 1) {
      out += mono;
    } else if (c == -1) {
      out += '-' + mono;
    } else {
      out += c.str() + '*' + mono;
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << to_text(p); }

}  // namespace rank2
