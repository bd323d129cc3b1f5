#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rank2/cluster.hpp"
#include "rank2/laurent.hpp"

namespace rank2 {

/// Denominator vector (a1, a2). Every point of Z^2 is admissible.
struct DVector {
  std::int64_t a1 = 0;
  std::int64_t a2 = 0;

  auto operator<=>(const DVector&) const = default;

  /// The exponent -d at which a pointed element has coefficient 1.
  LatticeVector pointed_exponent() const { return {-a1, -a2}; }
};

/// Pointed coefficients c(p1, p2), keyed by (p1, p2); only nonzero entries.
using CoefficientMap = std::map<std::pair<std::int64_t, std::int64_t>, Integer>;

/// Dense table of c(p1, p2) over 0 <= p1 <= p1_max, 0 <= p2 <= p2_max.
struct CoefficientTable {
  std::int64_t p1_max = 0;
  std::int64_t p2_max = 0;
  std::vector<Integer> values;

  const Integer& at(std::int64_t p1, std::int64_t p2) const { return values[p1 * (p2_max + 1) + p2]; }
  Integer& at(std::int64_t p1, std::int64_t p2) { return values[p1 * (p2_max + 1) + p2]; }
};

namespace detail {

// One step of the max-recursion: both alternating sums for (p1, p2).
inline std::pair<Integer, Integer> greedy_sums(const ClusterParams& params, const DVector& d,
                                               const CoefficientTable& t, std::int64_t p1, std::int64_t p2) {
  Integer s1 = 0, s2 = 0;
  const Integer top1 = Integer(d.a2) - Integer(params.c) * p2;
  for (std::int64_t k = 1; k <= p1; ++k) {
    const Integer term = t.at(p1 - k, p2) * gen_binomial(top1 + (k - 1), k);
    if (k % 2 == 1) s1 += term; else s1 -= term;
  }
  const Integer top2 = Integer(d.a1) - Integer(params.b) * p1;
  for (std::int64_t j = 1; j <= p2; ++j) {
    const Integer term = t.at(p1, p2 - j) * gen_binomial(top2 + (j - 1), j);
    if (j % 2 == 1) s2 += term; else s2 -= term;
  }
  return {s1, s2};
}

}  // namespace detail

/// Fills c(p1, p2) over the box 0 <= p1 <= max(a2,0)+margin,
/// 0 <= p2 <= max(a1,0)+margin in increasing (p1+p2, p1) order. The zero
/// alternative in the max accounts for empty sums and keeps every value
/// non-negative.
inline CoefficientTable greedy_table(const ClusterParams& params, const DVector& d, std::int64_t margin = 1) {
  CoefficientTable t;
  t.p1_max = std::max<std::int64_t>(d.a2, 0) + margin;
  t.p2_max = std::max<std::int64_t>(d.a1, 0) + margin;
  t.values.assign(static_cast<std::size_t>((t.p1_max + 1) * (t.p2_max + 1)), Integer(0));
  t.at(0, 0) = 1;
  for (std::int64_t total = 1; total <= t.p1_max + t.p2_max; ++total) {
    for (std::int64_t p1 = std::max<std::int64_t>(0, total - t.p2_max); p1 <= std::min(total, t.p1_max); ++p1) {
      const std::int64_t p2 = total - p1;
      auto [s1, s2] = detail::greedy_sums(params, d, t, p1, p2);
      Integer v = std::max(s1, s2);
      if (v < 0) v = 0;
      t.at(p1, p2) = v;
    }
  }
  return t;
}

inline CoefficientMap greedy_coefficients(const ClusterParams& params, const DVector& d) {
  const CoefficientTable t = greedy_table(params, d, 1);
  CoefficientMap out;
  for (std::int64_t p1 = 0; p1 <= t.p1_max; ++p1)
    for (std::int64_t p2 = 0; p2 <= t.p2_max; ++p2) {
      const Integer& v = t.at(p1, p2);
      if (v == 0) continue;
      if (p1 == t.p1_max || p2 == t.p2_max)
        throw InvariantViolation("greedy_coefficients: nonzero coefficient in the zero margin at (" +
                                 std::to_string(p1) + "," + std::to_string(p2) + ")");
      out.emplace(std::make_pair(p1, p2), v);
    }
  return out;
}

struct GreedyElement {
  ClusterParams params;
  DVector d;
  CoefficientMap coeffs;
  LaurentPoly poly;
};

inline LaurentPoly pointed_poly(const ClusterParams& params, const DVector& d, const CoefficientMap& coeffs) {
  LaurentPoly p;
  for (const auto& [idx, v] : coeffs) {
    const LatticeVector m{checked::add(-d.a1, checked::mul(params.b, idx.first)),
                          checked::add(-d.a2, checked::mul(params.c, idx.second))};
    p.add_term(m, v);
  }
  return p;
}

inline GreedyElement greedy_element(const ClusterParams& params, const DVector& d) {
  GreedyElement g{params, d, greedy_coefficients(params, d), {}};
  g.poly = pointed_poly(params, d, g.coeffs);
  return g;
}

/// The region R_{a1,a2} containing the support of x[a1,a2]. Membership is
/// decided from the case inequalities in exact integer arithmetic.
struct SupportRegion {
  ClusterParams params;
  DVector d;
  int case_tag = 1;
  // Case 6 only: the origin is not a strictly convex corner of OABC.
  bool imaginary = false;
  std::vector<std::pair<std::string, LatticeVector>> vertices;

  LatticeVector O() const { return {0, 0}; }
  LatticeVector A() const { return {checked::add(-d.a1, checked::mul(params.b, d.a2)), -d.a2}; }
  LatticeVector B() const { return {-d.a1, -d.a2}; }
  LatticeVector C() const { return {-d.a1, checked::add(-d.a2, checked::mul(params.c, d.a1))}; }
  LatticeVector D1() const {
    return {checked::add(-d.a1, checked::mul(params.b, d.a2)),
            checked::sub(checked::mul(params.c, d.a1), checked::mul(checked::add(params.bc(), 1), d.a2))};
  }
  LatticeVector D2() const {
    return {checked::sub(checked::mul(params.b, d.a2), checked::mul(checked::add(params.bc(), 1), d.a1)),
            checked::add(-d.a2, checked::mul(params.c, d.a1))};
  }
};

inline int support_case(const ClusterParams& params, const DVector& d) {
  const auto [a1, a2] = d;
  if (a1 <= 0 && a2 <= 0) return 1;
  if (a1 <= 0) return 2;
  if (a2 <= 0) return 3;
  if (checked::mul(params.b, a2) <= a1) return 4;
  if (checked::mul(params.c, a1) <= a2) return 5;
  return 6;
}

inline SupportRegion support_region(const ClusterParams& params, const DVector& d) {
  SupportRegion r;
  r.params = params;
  r.d = d;
  r.case_tag = support_case(params, d);
  switch (r.case_tag) {
    case 1: r.vertices = {{"B", r.B()}}; break;
    case 2: r.vertices = {{"B", r.B()}, {"A", r.A()}}; break;
    case 3: r.vertices = {{"B", r.B()}, {"C", r.C()}}; break;
    case 4: r.vertices = {{"B", r.B()}, {"A", r.A()}, {"D1", r.D1()}, {"C", r.C()}}; break;
    case 5: r.vertices = {{"B", r.B()}, {"A", r.A()}, {"D2", r.D2()}, {"C", r.C()}}; break;
    default: {
      r.vertices = {{"B", r.B()}, {"A", r.A()}, {"O", r.O()}, {"C", r.C()}};
      // Turn A -> O -> C; c*a1^2 - bc*a1*a2 + b*a2^2 > 0 iff O is a convex corner.
      const Integer a1 = d.a1, a2 = d.a2;
      const Integer form = Integer(params.c) * a1 * a1 - Integer(params.bc()) * a1 * a2 + Integer(params.b) * a2 * a2;
      r.imaginary = form <= 0;
    }
  }
  return r;
}

inline bool region_contains(const SupportRegion& r, const LatticeVector& pt) {
  const Integer p1 = pt.m1, p2 = pt.m2;
  const Integer a1 = r.d.a1, a2 = r.d.a2, b = r.params.b, c = r.params.c;
  switch (r.case_tag) {
    case 1: return pt == r.B();
    case 2: return p2 == -a2 && -a1 <= p1 && p1 <= -a1 + b * a2;
    case 3: return p1 == -a1 && -a2 <= p2 && p2 <= -a2 + c * a1;
    case 4: return -a1 <= p1 && p1 <= -a1 + b * a2 && -a2 <= p2 && p2 <= -a2 - c * p1;
    case 5: return -a2 <= p2 && p2 <= -a2 + c * a1 && -a1 <= p1 && p1 <= -a1 - b * p2;
    default: break;
  }
  // Half-open quadrilateral OABC plus the corners A and C.
  if (pt == r.A() || pt == r.C()) return true;
  // -a1 <= p1 < 0, -a2 <= p2 < (a2/a1 - c) p1, scaled by a1 > 0.
  if (-a1 <= p1 && p1 < 0 && -a2 <= p2 && a1 * p2 < (a2 - c * a1) * p1) return true;
  // -a1 <= p1 < (a1/a2 - b) p2, -a2 <= p2 < 0, scaled by a2 > 0.
  if (-a1 <= p1 && a2 * p1 < (a1 - b * a2) * p2 && -a2 <= p2 && p2 < 0) return true;
  return false;
}

/// True iff p has coefficient 1 at x^(-a1,-a2) and all of its support lies
/// in R_{a1,a2}. Together with membership in A(b,c) this pins p = x[a1,a2].
inline bool certify_pointed_support(const ClusterParams& params, const DVector& d, const LaurentPoly& p) {
  if (p.coeff(d.pointed_exponent()) != 1) return false;
  const SupportRegion r = support_region(params, d);
  for (const auto& [m, c] : p)
    if (!region_contains(r, m)) return false;
  return true;
}

/// Support points of p outside the region (for failure reports).
inline std::vector<LatticeVector> support_outside_region(const SupportRegion& r, const LaurentPoly& p) {
  std::vector<LatticeVector> out;
  for (const auto& [m, c] : p)
    if (!region_contains(r, m)) out.push_back(m);
  return out;
}

}  // namespace rank2
