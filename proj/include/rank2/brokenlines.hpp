#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rank2/greedy.hpp"
#include "rank2/scattering.hpp"

namespace rank2 {

/// One domain of linearity. Segment i > 0 begins at bend_point, where the
/// line bent at the wall with direction bend_wall.
struct Segment {
  LatticeVector exponent;
  Integer coeff = 1;
  std::optional<LatticeVector> bend_wall;
  std::optional<RationalPoint> bend_point;

  bool operator==(const Segment&) const = default;
};

struct BrokenLine {
  LatticeVector initial;
  RationalPoint endpoint;
  std::vector<Segment> segments;

  bool operator==(const BrokenLine&) const = default;

  const Segment& final_segment() const { return segments.back(); }
  std::size_t bends() const { return segments.size() - 1; }
  LaurentPoly mono() const { return LaurentPoly::monomial(final_segment().exponent, final_segment().coeff); }

  /// Where segment i ends: the next bend point, or the endpoint.
  const RationalPoint& segment_end(std::size_t i) const {
    return i + 1 < segments.size() ? *segments[i + 1].bend_point : endpoint;
  }
};

namespace detail {

inline RationalPoint point_add(const RationalPoint& p, const Rational& s, const LatticeVector& m) {
  return {p.q1 + s * m.m1, p.q2 + s * m.m2};
}

inline void require_unimodular(const ConeSpec& cone) {
  const auto det = cross(cone.gen1, cone.gen2);
  if (det != 1 && det != -1) throw MalformedInput("broken-line enumeration needs a unimodular cone");
}

// Lattice points v of the cone with 0 < ell(v) <= K.
inline std::vector<LatticeVector> cone_points(const ConeSpec& cone, std::int64_t K) {
  require_unimodular(cone);
  std::vector<LatticeVector> out;
  const auto l1 = cone.ell(cone.gen1), l2 = cone.ell(cone.gen2);
  for (std::int64_t a = 0; a * l1 <= K; ++a)
    for (std::int64_t b = 0; a * l1 + b * l2 <= K; ++b)
      if (a + b > 0) out.push_back(a * cone.gen1 + b * cone.gen2);
  return out;
}

// Candidate final exponents m + v, v in the cone with ell(v) <= K, excluding 0.
inline std::vector<LatticeVector> final_exponent_candidates(const ScatteringDiagram& D, const LatticeVector& m,
                                                            std::int64_t K) {
  std::vector<LatticeVector> out{m};
  for (const auto& v : cone_points(D.cone, K))
    if (!(m + v).is_zero()) out.push_back(m + v);
  return out;
}

}  // namespace detail

inline Rational angular_momentum_at(const RationalPoint& q, const LatticeVector& m) {
  return q.q2 * m.m1 - q.q1 * m.m2;
}

/// q avoids every wall support and no candidate final exponent of budget K
/// points along q (which would route a line through the origin).
inline bool is_generic_endpoint(const ScatteringDiagram& D, const LatticeVector& m, const RationalPoint& q,
                                std::int64_t K) {
  if (q.is_origin()) return false;
  for (const auto& w : D.walls)
    if (w.support_contains(q)) return false;
  for (const auto& mf : detail::final_exponent_candidates(D, m, K))
    if (angular_momentum_at(q, mf) == 0) return false;
  return true;
}

/// Deterministic perturbation of hint: attempt i uses (q1 + 1/p, q2 + 1/p^2)
/// for the i-th prime p; the hint itself is tried first.
inline RationalPoint pick_generic_endpoint(const ScatteringDiagram& D, const RationalPoint& hint,
                                           const LatticeVector& m, std::int64_t K) {
  if (is_generic_endpoint(D, m, hint, K)) return hint;
  int attempts = 0;
  for (std::int64_t p = 2; attempts < 100; ++p) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
    if (!prime) continue;
    ++attempts;
    const RationalPoint q{hint.q1 + Rational(1, p), hint.q2 + Rational(1, p * p)};
    if (is_generic_endpoint(D, m, q, K)) return q;
  }
  throw NoGenericPoint("no generic endpoint near " + to_string(hint));
}

namespace detail {

struct BendChoice {
  std::size_t wall;
  RationalPoint point;
  LatticeVector exponent_after;
  Integer factor;
};

// Depth-first search backwards from the endpoint. For each candidate final
// exponent the line is traced back along +m; at every wall it could have
// crossed, a bend is undone by subtracting k w while the remaining deficit
// (current exponent minus initial exponent) stays in the cone.
class BrokenLineSearch {
 public:
  BrokenLineSearch(const ScatteringDiagram& D, const LatticeVector& m, const RationalPoint& q, std::int64_t K)
      : D_(D), m_(m), q_(q), K_(K) {
    caches_.reserve(D_.walls.size());
    for (const auto& w : D_.walls) caches_.emplace_back(w);
  }

  std::vector<BrokenLine> run() {
    for (const auto& mf : final_exponent_candidates(D_, m_, K_)) search(q_, mf, mf - m_);
    return std::move(found_);
  }

 private:
  void search(const RationalPoint& P, const LatticeVector& m_cur, const LatticeVector& deficit) {
    if (deficit.is_zero()) {
      emit();
      return;
    }
    const DegreeFunctional& ell = D_.ell();
    const std::int64_t budget = ell(deficit);
    for (std::size_t i = 0; i < D_.walls.size(); ++i) {
      const Wall& wall = D_.walls[i];
      const LatticeVector& w = wall.direction;
      const std::int64_t dw = ell(w);
      const auto lowest = wall.min_degree(ell);
      if (!lowest || *lowest > budget) continue;
      const std::int64_t cr = cross(m_cur, w);
      if (cr == 0) continue;
      // The backward ray P + s m_cur meets the line R w at s = -cross(P,w)/cross(m,w).
      const Rational s = -cross(P, w) / Rational(cr);
      if (s <= 0) continue;
      const RationalPoint H = point_add(P, s, m_cur);
      if (H.is_origin()) throw InvariantViolation("broken line through the origin");
      if (!wall.is_line() && dot(H, w) > 0) continue;
      const std::int64_t j = cr < 0 ? -cr : cr;
      const auto& pw = caches_[i].get(j, budget / dw);
      for (std::int64_t k = 1; k * dw <= budget; ++k) {
        const LatticeVector rest = deficit - k * w;
        if (!D_.cone.contains(rest)) break;
        const Integer& factor = pw[static_cast<std::size_t>(k)];
        if (factor == 0) continue;
        chain_.push_back({i, H, m_cur, factor});
        search(H, m_cur - k * w, rest);
        chain_.pop_back();
      }
    }
  }

  void emit() {
    BrokenLine line{m_, q_, {}};
    Integer coeff = 1;
    line.segments.push_back({m_, coeff, std::nullopt, std::nullopt});
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
      coeff *= it->factor;
      line.segments.push_back({it->exponent_after, coeff, D_.walls[it->wall].direction, it->point});
    }
    found_.push_back(std::move(line));
  }

  const ScatteringDiagram& D_;
  LatticeVector m_;
  RationalPoint q_;
  std::int64_t K_;
  std::vector<PowerCache> caches_;
  std::vector<BendChoice> chain_;
  std::vector<BrokenLine> found_;
};

inline bool line_less(const BrokenLine& a, const BrokenLine& b) {
  if (a.final_segment().exponent != b.final_segment().exponent)
    return a.final_segment().exponent < b.final_segment().exponent;
  if (a.segments.size() != b.segments.size()) return a.segments.size() < b.segments.size();
  for (std::size_t i = 0; i < a.segments.size(); ++i)
    if (a.segments[i].exponent != b.segments[i].exponent) return a.segments[i].exponent < b.segments[i].exponent;
  for (std::size_t i = 1; i < a.segments.size(); ++i)
    if (a.segments[i].bend_wall != b.segments[i].bend_wall)
      return angle_less(*a.segments[i].bend_wall, *b.segments[i].bend_wall);
  return false;
}

}  // namespace detail

/// All broken lines for (m, q) whose final exponent lies within degree K of m,
/// in canonical order (final exponent, then exponent sequence).
inline std::vector<BrokenLine> enumerate_broken_lines(const ScatteringDiagram& D, const LatticeVector& m,
                                                      const RationalPoint& q, std::int64_t K) {
  if (m.is_zero()) throw std::invalid_argument("initial exponent must be nonzero");
  if (K > D.order) throw std::invalid_argument("budget exceeds the diagram's truncation order");
  if (!is_generic_endpoint(D, m, q, K)) throw NonGenericEndpoint("endpoint " + to_string(q) + " is not generic");
  auto lines = detail::BrokenLineSearch(D, m, q, K).run();
  std::sort(lines.begin(), lines.end(), detail::line_less);
  return lines;
}

inline LaurentPoly theta(const ScatteringDiagram& D, const LatticeVector& m, const RationalPoint& q, std::int64_t K) {
  LaurentPoly out;
  for (const auto& line : enumerate_broken_lines(D, m, q, K)) out.add_term(line.final_segment().exponent, line.final_segment().coeff);
  return out;
}

/// Budget that covers the support region of the pointed element with
/// exponent m, plus one degree of slack.
inline std::int64_t theta_d_budget(const ClusterParams& params, const LatticeVector& m) {
  const DegreeFunctional ell = ConeSpec::first_quadrant().ell;
  const SupportRegion r = support_region(params, {-m.m1, -m.m2});
  std::int64_t top = 0;
  for (const auto& [name, v] : r.vertices) top = std::max(top, ell(v) - ell(m));
  return top + 1;
}

inline const RationalPoint kFirstQuadrantHint{1, 1};

/// theta^d_{q,m} against a completed d-diagram of order >= K, with q picked
/// near (1,1).
inline LaurentPoly theta_d(const ScatteringDiagram& Dd, const LatticeVector& m, std::int64_t K) {
  if (Dd.variant != Variant::d) throw MalformedInput("theta_d needs the d-variant diagram");
  if (m.is_zero()) return LaurentPoly::constant(1);
  const RationalPoint q = pick_generic_endpoint(Dd, kFirstQuadrantHint, m, K);
  return theta(Dd, m, q, K);
}

inline LaurentPoly theta_d(const ClusterParams& params, const LatticeVector& m) {
  const std::int64_t K = theta_d_budget(params, m);
  return theta_d(complete(initial_diagram_d(params, K), K), m, K);
}

// ---------------------------------------------------------------------------
// Invariants of individual lines

/// Common value of q2 m1 - q1 m2 over every segment, evaluated at both ends.
inline Rational angular_momentum(const BrokenLine& line) {
  const Rational L = angular_momentum_at(line.endpoint, line.final_segment().exponent);
  for (std::size_t i = 0; i < line.segments.size(); ++i) {
    const auto& m = line.segments[i].exponent;
    if (angular_momentum_at(line.segment_end(i), m) != L ||
        (line.segments[i].bend_point && angular_momentum_at(*line.segments[i].bend_point, m) != L))
      throw InvariantViolation("angular momentum changes along a broken line");
  }
  return L;
}

/// Checks the definition of a broken line against D: the bending rule at
/// every bend, travel direction -m on every segment, and avoidance of the
/// origin. Returns a description of the first violation.
inline std::optional<std::string> broken_line_violation(const ScatteringDiagram& D, const BrokenLine& line) {
  if (line.segments.empty()) return "no segments";
  if (line.segments[0].exponent != line.initial || line.segments[0].coeff != 1 || line.segments[0].bend_point)
    return "first segment is not x^m";
  if (angular_momentum_at(line.endpoint, line.final_segment().exponent) == 0) return "line passes through the origin";
  for (std::size_t i = 1; i < line.segments.size(); ++i) {
    const Segment& prev = line.segments[i - 1];
    const Segment& cur = line.segments[i];
    if (!cur.bend_point || !cur.bend_wall) return "bend without wall data at segment " + std::to_string(i);
    const Wall* wall = D.find(*cur.bend_wall);
    if (!wall) return "bend at a missing wall " + to_string(*cur.bend_wall);
    if (!wall->support_contains(*cur.bend_point) || cur.bend_point->is_origin())
      return "bend point off the wall support at segment " + std::to_string(i);
    const LatticeVector delta = cur.exponent - prev.exponent;
    const LatticeVector& w = wall->direction;
    if (delta.is_zero() || cross(delta, w) != 0 || dot(delta, w) <= 0) return "exponent jump not along the wall";
    const std::int64_t k = lattice_gcd(delta) / lattice_gcd(w);
    if (checked::mul(k, D.ell()(w)) > D.order) return "bend beyond the diagram's truncation";
    const LatticeVector n = crossing_normal(w, -prev.exponent);
    const std::int64_t j = dot(prev.exponent, n);
    const auto pw = detail::series_pow(wall->series(k), j, k);
    if (cur.coeff != prev.coeff * pw[static_cast<std::size_t>(k)]) return "coefficient violates the bending rule";
  }
  // Segment i runs from its bend point to the next one in direction -m_i.
  for (std::size_t i = 1; i < line.segments.size(); ++i) {
    const RationalPoint& a = *line.segments[i].bend_point;
    const RationalPoint& b = line.segment_end(i);
    const LatticeVector& m = line.segments[i].exponent;
    const Rational dx = b.q1 - a.q1, dy = b.q2 - a.q2;
    if (dx * m.m2 != dy * m.m1 || dx * m.m1 + dy * m.m2 >= 0) return "segment " + std::to_string(i) + " not travelling along -m";
  }
  return std::nullopt;
}

/// Exponents never decrease componentwise from one segment to the next.
inline bool exponents_monotone(const BrokenLine& line) {
  for (std::size_t i = 1; i < line.segments.size(); ++i) {
    const auto& a = line.segments[i - 1].exponent;
    const auto& b = line.segments[i].exponent;
    if (a.m1 > b.m1 || a.m2 > b.m2) return false;
  }
  return true;
}

inline bool in_open_first_quadrant(const RationalPoint& q) { return q.q1 > 0 && q.q2 > 0; }

/// Slopes of consecutive domains decrease (positive momentum) or increase
/// (negative momentum) at every bend off the first-quadrant boundary. Only
/// meaningful for d-variant lines ending in the first quadrant; bends where
/// either exponent has a non-negative entry are not covered.
inline bool slopes_monotone(const BrokenLine& line) {
  const Rational L = angular_momentum(line);
  for (std::size_t i = 1; i < line.segments.size(); ++i) {
    const RationalPoint& h = *line.segments[i].bend_point;
    if (h.q1 >= 0 && h.q2 >= 0) continue;
    const auto& a = line.segments[i - 1].exponent;
    const auto& b = line.segments[i].exponent;
    if (a.m1 >= 0 || a.m2 >= 0 || b.m1 >= 0 || b.m2 >= 0) continue;
    const Rational sa = Rational(a.m2) / a.m1, sb = Rational(b.m2) / b.m1;
    if (L > 0 && !(sb < sa)) return false;
    if (L < 0 && !(sb > sa)) return false;
  }
  return true;
}

/// Bounds on the final exponent of a d-variant line that starts in the open
/// third quadrant and ends in the open first quadrant. Returns true when the
/// hypotheses do not apply.
inline bool final_exponent_bounds_hold(const ClusterParams& params, const BrokenLine& line) {
  const LatticeVector m = line.initial;
  if (!(m.m1 < 0 && m.m2 < 0) || !in_open_first_quadrant(line.endpoint)) return true;
  const LatticeVector mq = line.final_segment().exponent;
  const Rational L = angular_momentum(line);
  if (L > 0) {
    if (!(m.m2 <= mq.m2 && mq.m2 < 0 && m.m1 <= mq.m1)) return false;
    const Rational upper = (Rational(m.m1) / m.m2 - params.b) * mq.m2;
    if (mq.m1 > upper) return false;
    if (mq.m1 == upper && mq != LatticeVector{m.m1 - params.b * m.m2, m.m2}) return false;
  } else {
    if (!(m.m1 <= mq.m1 && mq.m1 < 0 && m.m2 <= mq.m2)) return false;
    const Rational upper = (Rational(m.m2) / m.m1 - params.c) * mq.m1;
    if (mq.m2 > upper) return false;
    if (mq.m2 == upper && mq != LatticeVector{m.m1, m.m2 - params.c * m.m1}) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Transport to the d-variant

/// Image of a g-variant broken line under T: segments are split where they
/// cross the x-axis, exponents map by T_+ or T_- on each half-plane, and
/// pieces with equal exponents are merged.
inline BrokenLine transport_broken_line(const ClusterParams& params, const BrokenLine& line) {
  if (line.segments.empty() || line.segments[0].exponent != line.initial)
    throw MalformedInput("not a broken line");
  const Matrix2 Tm = t_minus_matrix(params);
  struct Piece {
    LatticeVector exponent;
    Integer coeff;
    std::optional<RationalPoint> start;
  };
  std::vector<Piece> pieces;
  auto push = [&](const LatticeVector& m, bool lower, const Integer& c, std::optional<RationalPoint> start) {
    pieces.push_back({lower ? Tm * m : m, c, std::move(start)});
  };
  for (std::size_t i = 0; i < line.segments.size(); ++i) {
    const Segment& s = line.segments[i];
    const RationalPoint& end = line.segment_end(i);
    const LatticeVector& m = s.exponent;
    auto sign = [](const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); };
    // Sign of the height at the start; the unbounded first segment starts at
    // infinity in direction +m.
    const int s_start = s.bend_point ? sign(s.bend_point->q2) : (m.m2 != 0 ? (m.m2 > 0 ? 1 : -1) : sign(end.q2));
    const int s_end = sign(end.q2);
    if (s_start * s_end >= 0) {
      push(m, s_start < 0 || s_end < 0, s.coeff, s.bend_point);
      continue;
    }
    // Crosses the x-axis strictly inside: end + t m hits y = 0 at t = -end.q2 / m2.
    const Rational t = -end.q2 / Rational(m.m2);
    const RationalPoint on_axis{end.q1 + t * m.m1, Rational(0)};
    push(m, s_start < 0, s.coeff, s.bend_point);
    push(m, s_end < 0, s.coeff, on_axis);
  }
  BrokenLine out{apply_T(params, line.initial), apply_T(params, line.endpoint), {}};
  for (auto& p : pieces) {
    if (!out.segments.empty() && out.segments.back().exponent == p.exponent) {
      if (out.segments.back().coeff != p.coeff) throw InvariantViolation("coefficient jump without a bend");
      continue;
    }
    Segment seg{p.exponent, p.coeff, std::nullopt, std::nullopt};
    if (!out.segments.empty()) {
      seg.bend_point = apply_T(params, *p.start);
      seg.bend_wall = primitive_part(p.exponent - out.segments.back().exponent);
    }
    out.segments.push_back(std::move(seg));
  }
  if (out.segments[0].exponent != out.initial) throw InvariantViolation("transported line does not start at T(m)");
  return out;
}

}  // namespace rank2
