#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rank2/cluster.hpp"
#include "rank2/laurent.hpp"

namespace rank2 {

enum class Variant { g, d };
enum class WallGeometry { line, ray };

inline const char* to_string(Variant v) { return v == Variant::g ? "g" : "d"; }
inline const char* to_string(WallGeometry g) { return g == WallGeometry::line ? "line" : "ray"; }

/// Exact rational point of M_R.
struct RationalPoint {
  Rational q1 = 0;
  Rational q2 = 0;

  bool operator==(const RationalPoint&) const = default;
  bool is_origin() const { return q1 == 0 && q2 == 0; }
};

inline std::string to_string(const RationalPoint& p) { return '(' + p.q1.str() + ',' + p.q2.str() + ')'; }

/// q1*w2 - q2*w1
inline Rational cross(const RationalPoint& q, const LatticeVector& w) { return q.q1 * w.m2 - q.q2 * w.m1; }
inline Rational dot(const RationalPoint& q, const LatticeVector& w) { return q.q1 * w.m1 + q.q2 * w.m2; }

/// Strictly convex cone spanned by two primitive generators, graded by ell.
struct ConeSpec {
  LatticeVector gen1;
  LatticeVector gen2;
  DegreeFunctional ell;

  bool operator==(const ConeSpec&) const = default;

  static ConeSpec second_quadrant() { return {{-1, 0}, {0, 1}, {-1, 1}}; }
  static ConeSpec first_quadrant() { return {{1, 0}, {0, 1}, {1, 1}}; }

  void validate() const {
    if (!gen1.is_primitive() || !gen2.is_primitive()) throw MalformedInput("cone generators must be primitive");
    if (cross(gen1, gen2) == 0) throw MalformedInput("cone generators are parallel");
    if (!ell.grades_cone(gen1, gen2)) throw MalformedInput("degree functional not positive on the cone");
  }

  /// Closed-cone membership.
  bool contains(const LatticeVector& v) const {
    const auto s = cross(gen1, gen2) > 0 ? 1 : -1;
    return s * cross(gen1, v) >= 0 && s * cross(v, gen2) >= 0;
  }
};

/// A wall (R w or R_{<=0} w, 1 + sum_k c_k x^{k w}).
struct Wall {
  LatticeVector direction;
  WallGeometry geometry = WallGeometry::ray;
  std::map<std::int64_t, Integer> coeffs;

  bool operator==(const Wall&) const = default;

  bool is_line() const { return geometry == WallGeometry::line; }

  /// Coefficients of f as a series in t = x^w, indices 0..n.
  std::vector<Integer> series(std::int64_t n) const {
    std::vector<Integer> s(static_cast<std::size_t>(std::max<std::int64_t>(n, 0) + 1), Integer(0));
    s[0] = 1;
    for (const auto& [k, c] : coeffs) {
      if (k > n) break;
      s[static_cast<std::size_t>(k)] = c;
    }
    return s;
  }

  LaurentPoly function() const {
    LaurentPoly f = LaurentPoly::constant(1);
    for (const auto& [k, c] : coeffs) f.add_term(k * direction, c);
    return f;
  }

  /// Degree of the lowest nontrivial term, or nullopt for f = 1.
  std::optional<std::int64_t> min_degree(const DegreeFunctional& ell) const {
    if (coeffs.empty()) return std::nullopt;
    return checked::mul(coeffs.begin()->first, ell(direction));
  }

  bool support_contains(const RationalPoint& q) const {
    if (cross(q, direction) != 0) return false;
    return is_line() || dot(q, direction) <= 0;
  }

  /// Drops terms of degree above K.
  void truncate(const DegreeFunctional& ell, std::int64_t K) {
    const auto d = ell(direction);
    for (auto it = coeffs.begin(); it != coeffs.end();)
      it = checked::mul(it->first, d) > K ? coeffs.erase(it) : std::next(it);
  }
};

namespace detail {

inline int half_plane(const LatticeVector& v) { return (v.m2 > 0 || (v.m2 == 0 && v.m1 > 0)) ? 0 : 1; }

}  // namespace detail

/// Exact angular order on nonzero vectors, starting at the positive x-axis.
inline bool angle_less(const LatticeVector& a, const LatticeVector& b) {
  const int ha = detail::half_plane(a), hb = detail::half_plane(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

inline bool same_angle(const LatticeVector& a, const LatticeVector& b) {
  return cross(a, b) == 0 && dot(a, b) > 0;
}

struct ScatteringDiagram {
  ClusterParams params;
  Variant variant = Variant::g;
  ConeSpec cone = ConeSpec::second_quadrant();
  std::int64_t order = 1;
  std::vector<Wall> walls;

  bool operator==(const ScatteringDiagram&) const = default;

  const DegreeFunctional& ell() const { return cone.ell; }

  Wall* find(const LatticeVector& direction) {
    for (auto& w : walls)
      if (w.direction == direction) return &w;
    return nullptr;
  }
  const Wall* find(const LatticeVector& direction) const {
    for (const auto& w : walls)
      if (w.direction == direction) return &w;
    return nullptr;
  }

  void sort_walls() {
    std::sort(walls.begin(), walls.end(),
              [](const Wall& a, const Wall& b) { return angle_less(a.direction, b.direction); });
  }

  /// Truncates every wall to the diagram order and drops trivial walls.
  void normalize() {
    for (auto& w : walls) w.truncate(ell(), order);
    std::erase_if(walls, [](const Wall& w) { return w.coeffs.empty(); });
    sort_walls();
  }

  void validate() const {
    cone.validate();
    for (std::size_t i = 0; i < walls.size(); ++i) {
      const Wall& w = walls[i];
      if (!w.direction.is_primitive()) throw InvariantViolation("wall direction not primitive: " + to_string(w.direction));
      if (!cone.contains(w.direction)) throw InvariantViolation("wall direction outside cone: " + to_string(w.direction));
      for (const auto& [k, c] : w.coeffs) {
        if (k < 1 || c == 0) throw InvariantViolation("bad wall coefficient on " + to_string(w.direction));
        if (checked::mul(k, ell()(w.direction)) > order)
          throw InvariantViolation("wall coefficient beyond truncation on " + to_string(w.direction));
      }
      for (std::size_t j = 0; j < i; ++j)
        if (walls[j].direction == w.direction) throw InvariantViolation("duplicate wall support " + to_string(w.direction));
    }
  }
};

inline ScatteringDiagram initial_diagram_g(const ClusterParams& params, std::int64_t K) {
  if (K < 1) throw std::invalid_argument("truncation order must be >= 1");
  ScatteringDiagram D{params, Variant::g, ConeSpec::second_quadrant(), K, {}};
  D.walls.push_back({{-1, 0}, WallGeometry::line, {{params.b, 1}}});
  D.walls.push_back({{0, 1}, WallGeometry::line, {{params.c, 1}}});
  D.normalize();
  return D;
}

inline ScatteringDiagram initial_diagram_d(const ClusterParams& params, std::int64_t K) {
  if (K < 1) throw std::invalid_argument("truncation order must be >= 1");
  ScatteringDiagram D{params, Variant::d, ConeSpec::first_quadrant(), K, {}};
  D.walls.push_back({{1, 0}, WallGeometry::line, {{params.b, 1}}});
  D.walls.push_back({{0, 1}, WallGeometry::line, {{params.c, 1}}});
  D.normalize();
  return D;
}

// ---------------------------------------------------------------------------
// Wall crossing

namespace detail {

// f^e as a series in t up to t^n, for f(0) = 1 and any integer e, via the
// recurrence k g_k = sum_i ((e+1) i - k) f_i g_{k-i}.
inline std::vector<Integer> series_pow(const std::vector<Integer>& f, std::int64_t e, std::int64_t n) {
  std::vector<Integer> g(static_cast<std::size_t>(n + 1), Integer(0));
  g[0] = 1;
  if (e == 0 || n == 0) return g;
  std::vector<std::size_t> nz;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] != 0) nz.push_back(i);
  const Integer e1 = Integer(e) + 1;
  for (std::int64_t k = 1; k <= n; ++k) {
    Integer acc = 0;
    for (std::size_t i : nz) {
      if (static_cast<std::int64_t>(i) > k) break;
      acc += (e1 * static_cast<std::int64_t>(i) - k) * f[i] * g[static_cast<std::size_t>(k) - i];
    }
    g[static_cast<std::size_t>(k)] = acc / k;
  }
  return g;
}

// Caches powers of one wall function, extending the length on demand.
class PowerCache {
 public:
  explicit PowerCache(const Wall& w) : wall_(&w) {}

  const std::vector<Integer>& get(std::int64_t e, std::int64_t n) {
    auto& slot = powers_[e];
    if (static_cast<std::int64_t>(slot.size()) < n + 1) slot = series_pow(wall_->series(n), e, n);
    return slot;
  }

 private:
  const Wall* wall_;
  std::map<std::int64_t, std::vector<Integer>> powers_;
};

}  // namespace detail

/// Primitive normal n to w with v.n < 0.
inline LatticeVector crossing_normal(const LatticeVector& w, const LatticeVector& v) {
  const LatticeVector n{w.m2, -w.m1};
  const auto s = dot(v, n);
  if (s == 0) throw NonTransversal("direction " + to_string(v) + " is parallel to wall " + to_string(w));
  return s < 0 ? n : -n;
}

namespace detail {

// Applies the crossing automorphism to every term of p, dropping terms of
// degree above K relative to base.
inline LaurentPoly cross_poly(const LaurentPoly& p, const Wall& wall, const LatticeVector& n, PowerCache& cache,
                              const DegreeFunctional& ell, const LatticeVector& base, std::int64_t K) {
  const std::int64_t dw = ell(wall.direction);
  const std::int64_t b0 = ell(base);
  LaurentPoly out;
  for (const auto& [m, c] : p) {
    const std::int64_t budget = K - (ell(m) - b0);
    if (budget < 0) continue;
    const std::int64_t e = dot(m, n);
    if (e == 0) {
      out.add_term(m, c);
      continue;
    }
    const std::int64_t len = budget / dw;
    const auto& s = cache.get(e, len);
    for (std::int64_t i = 0; i <= len; ++i)
      if (s[static_cast<std::size_t>(i)] != 0) out.add_term(m + i * wall.direction, c * s[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace detail

/// c x^m f^{m.n}, truncated to degree K above base.
inline LaurentPoly wall_cross(const Integer& c, const LatticeVector& m, const Wall& wall, const LatticeVector& v,
                              const DegreeFunctional& ell, const LatticeVector& base, std::int64_t K) {
  const LatticeVector n = crossing_normal(wall.direction, v);
  detail::PowerCache cache(wall);
  return detail::cross_poly(LaurentPoly::monomial(m, c), wall, n, cache, ell, base, K);
}

// ---------------------------------------------------------------------------
// Path-ordered products

/// One half of a wall support, {s u : s > 0}.
struct WallPiece {
  std::size_t wall;
  LatticeVector u;
};

inline std::vector<WallPiece> wall_pieces(const ScatteringDiagram& D) {
  std::vector<WallPiece> pieces;
  for (std::size_t i = 0; i < D.walls.size(); ++i) {
    const Wall& w = D.walls[i];
    pieces.push_back({i, -w.direction});
    if (w.is_line()) pieces.push_back({i, w.direction});
  }
  std::sort(pieces.begin(), pieces.end(), [](const WallPiece& a, const WallPiece& b) { return angle_less(a.u, b.u); });
  return pieces;
}

enum class Orientation { ccw, cw };

namespace detail {

// Applies crossings of the given pieces in order, with the velocity of an arc
// around the origin in the given orientation.
inline LaurentPoly cross_pieces(const ScatteringDiagram& D, const std::vector<WallPiece>& pieces, Orientation o,
                                LaurentPoly p, const LatticeVector& base, std::int64_t K) {
  std::map<std::size_t, PowerCache> caches;
  for (const auto& piece : pieces) {
    const Wall& wall = D.walls[piece.wall];
    const auto lowest = wall.min_degree(D.ell());
    if (!lowest || *lowest > K) continue;
    const LatticeVector v = o == Orientation::ccw ? LatticeVector{-piece.u.m2, piece.u.m1}
                                                  : LatticeVector{piece.u.m2, -piece.u.m1};
    const LatticeVector n = crossing_normal(wall.direction, v);
    auto& cache = caches.try_emplace(piece.wall, wall).first->second;
    p = cross_poly(p, wall, n, cache, D.ell(), base, K);
  }
  return p;
}

}  // namespace detail

/// Composition of the crossings met by an arc from angular position start to
/// end in the given orientation. Endpoints must avoid wall supports.
inline LaurentPoly path_ordered_product(const ScatteringDiagram& D, const LatticeVector& start,
                                        const LatticeVector& end, Orientation o, const LaurentPoly& p,
                                        const LatticeVector& base) {
  if (start.is_zero() || end.is_zero()) throw std::invalid_argument("angular position must be nonzero");
  auto pieces = wall_pieces(D);
  for (const auto& piece : pieces)
    if (same_angle(piece.u, start) || same_angle(piece.u, end)) throw PathOnWall("path endpoint lies on a wall");
  if (same_angle(start, end)) return p;
  // Rotate so the arc starts at `start`: first-lap pieces come after start.
  auto rel_less = [&](const LatticeVector& a, const LatticeVector& b) {
    const bool la = angle_less(start, a), lb = angle_less(start, b);
    if (la != lb) return la;
    return angle_less(a, b);
  };
  std::vector<WallPiece> crossed;
  for (const auto& piece : pieces) {
    const bool before_end = rel_less(piece.u, end);
    if (o == Orientation::ccw ? before_end : !before_end) crossed.push_back(piece);
  }
  std::sort(crossed.begin(), crossed.end(), [&](const WallPiece& a, const WallPiece& b) { return rel_less(a.u, b.u); });
  if (o == Orientation::cw) std::reverse(crossed.begin(), crossed.end());
  return detail::cross_pieces(D, crossed, o, p, base, D.order);
}

/// Full counterclockwise loop applied to x^e, truncated at degree K above e.
inline LaurentPoly loop_image(const ScatteringDiagram& D, const LatticeVector& e, std::int64_t K) {
  return detail::cross_pieces(D, wall_pieces(D), Orientation::ccw, LaurentPoly::monomial(e), e, K);
}

/// Deviation of the full loop from the identity on x^(1,0) and x^(0,1).
struct LoopDefect {
  std::int64_t order = 0;
  std::array<LaurentPoly, 2> deviation;
  /// Number of nonzero deviation terms at each degree 0..order.
  std::vector<std::size_t> per_order;

  bool is_zero() const { return deviation[0].is_zero() && deviation[1].is_zero(); }

  std::optional<std::int64_t> first_order() const {
    for (std::size_t k = 0; k < per_order.size(); ++k)
      if (per_order[k] != 0) return static_cast<std::int64_t>(k);
    return std::nullopt;
  }
};

inline LoopDefect loop_defect(const ScatteringDiagram& D, std::int64_t K) {
  LoopDefect r;
  r.order = K;
  r.per_order.assign(static_cast<std::size_t>(std::max<std::int64_t>(K, 0) + 1), 0);
  const std::array<LatticeVector, 2> basis{{{1, 0}, {0, 1}}};
  for (std::size_t i = 0; i < 2; ++i) {
    r.deviation[i] = loop_image(D, basis[i], K) - LaurentPoly::monomial(basis[i]);
    for (const auto& [m, c] : r.deviation[i]) ++r.per_order[static_cast<std::size_t>(D.ell()(m - basis[i]))];
  }
  return r;
}

// ---------------------------------------------------------------------------
// Completion

struct CompletionStats {
  /// Rays created or extended at each order 1..K (index 0 unused).
  std::vector<std::size_t> corrections_per_order;
  /// Walls that ended up with a negative coefficient (observed, not an error).
  std::vector<LatticeVector> negative_coefficient_walls;
};

/// Inserts rays order by order until the loop is the identity through degree K.
inline ScatteringDiagram complete(const ScatteringDiagram& in, std::int64_t K, CompletionStats* stats = nullptr) {
  if (K < 1) throw std::invalid_argument("truncation order must be >= 1");
  ScatteringDiagram D = in;
  D.order = K;
  D.normalize();
  D.validate();
  const DegreeFunctional& ell = D.ell();
  if (stats) stats->corrections_per_order.assign(static_cast<std::size_t>(K + 1), 0);

  const std::array<LatticeVector, 2> basis{{{1, 0}, {0, 1}}};
  for (std::int64_t k = 1; k <= K; ++k) {
    // Correction coefficient per degree-k exponent, with the basis read it came from.
    std::map<LatticeVector, std::pair<Integer, std::array<bool, 2>>> corr;
    for (std::size_t i = 0; i < 2; ++i) {
      const LatticeVector e = basis[i];
      const LaurentPoly img = loop_image(D, e, k);
      for (const auto& [m, d] : img) {
        if (m == e) {
          if (d != 1) throw InvariantViolation("loop changed the leading coefficient");
          continue;
        }
        const LatticeVector v = m - e;
        if (ell(v) < k)
          throw InvariantViolation("loop defect below current order at " + to_string(v));
        const LatticeVector w0 = primitive_part(v);
        const LatticeVector n{-w0.m2, w0.m1};
        const std::int64_t en = dot(e, n);
        if (en == 0 || d % en != 0) throw InvariantViolation("loop defect not cancelled by a ray at " + to_string(v));
        const Integer c = -d / en;
        auto [it, fresh] = corr.try_emplace(v, c, std::array<bool, 2>{false, false});
        if (!fresh && it->second.first != c) throw InvariantViolation("basis reads disagree at " + to_string(v));
        it->second.second[i] = true;
      }
    }
    for (const auto& [v, entry] : corr) {
      const LatticeVector w0 = primitive_part(v);
      const LatticeVector n{-w0.m2, w0.m1};
      for (std::size_t i = 0; i < 2; ++i)
        if (!entry.second[i] && dot(basis[i], n) != 0)
          throw InvariantViolation("basis reads disagree at " + to_string(v));
      if (!D.cone.contains(w0)) throw InvariantViolation("correction outside the cone at " + to_string(v));
      Wall* wall = D.find(w0);
      if (wall && wall->is_line()) throw InvariantViolation("correction on a line support " + to_string(w0));
      if (!wall) {
        D.walls.push_back({w0, WallGeometry::ray, {}});
        wall = &D.walls.back();
      }
      const std::int64_t j = lattice_gcd(v);
      Integer& slot = wall->coeffs[j];
      slot += entry.first;
      if (slot == 0) wall->coeffs.erase(j);
      if (stats) ++stats->corrections_per_order[static_cast<std::size_t>(k)];
    }
    std::erase_if(D.walls, [](const Wall& w) { return w.coeffs.empty(); });
  }
  D.sort_walls();
  if (stats)
    for (const auto& w : D.walls)
      for (const auto& [k, c] : w.coeffs)
        if (c < 0) {
          stats->negative_coefficient_walls.push_back(w.direction);
          break;
        }
  return D;
}

// ---------------------------------------------------------------------------
// Linear images of walls

/// (S(d), f(x^{S w})): direction and coefficients carried along.
inline Wall apply_linear(const Wall& w, const Matrix2& S) { return {S * w.direction, w.geometry, w.coeffs}; }

inline Matrix2 s1_matrix(const ClusterParams& p) { return Matrix2::of(-1, -p.b, 0, 1); }
inline Matrix2 s2_matrix(const ClusterParams& p) { return Matrix2::of(1, 0, -p.c, -1); }

/// Walls generated by alternately applying S1 and S2 to the two seed rays;
/// `steps` counts matrix applications per chain. Only images with support
/// strictly in the fourth quadrant are kept.
inline std::vector<Wall> s_recipe_walls(const ClusterParams& params, std::int64_t steps, std::int64_t K) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  const DegreeFunctional ell = ConeSpec::second_quadrant().ell;
  const Matrix2 S[2] = {s1_matrix(params), s2_matrix(params)};
  const Wall seeds[2] = {{{-1, 0}, WallGeometry::ray, {{params.b, 1}}}, {{0, 1}, WallGeometry::ray, {{params.c, 1}}}};
  auto inside = [](const LatticeVector& w) { return w.m1 < 0 && w.m2 > 0; };

  std::vector<Wall> out;
  auto record = [&](Wall w) {
    for (const auto& o : out)
      if (o.direction == w.direction) return;
    w.truncate(ell, K);
    if (!w.coeffs.empty()) out.push_back(std::move(w));
  };
  // Chain 0 starts with S2 on the horizontal seed, chain 1 with S1 on the vertical one.
  for (int chain = 0; chain < 2; ++chain) {
    Wall w = seeds[chain];
    int next = chain == 0 ? 1 : 0;
    for (std::int64_t s = 0; s < steps; ++s) {
      Wall img = apply_linear(w, S[next]);
      if (!inside(img.direction)) break;
      // Degrees only grow along a chain inside the quadrant, so the first
      // image above K ends it (and keeps the directions from overflowing).
      const auto deg = img.min_degree(ell);
      if (!deg || *deg > K) break;
      record(img);
      if (img.direction == w.direction) break;
      w = std::move(img);
      next = 1 - next;
    }
  }
  std::sort(out.begin(), out.end(), [](const Wall& a, const Wall& b) { return angle_less(a.direction, b.direction); });
  return out;
}

/// Limit rays (x, y +- sqrt(disc)) of the wall directions when bc >= 4.
struct IrrationalCone {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t disc = 0;

  bool degenerate() const { return disc == 0; }

  /// Whether the support direction s = lambda (x, y + t), lambda > 0, has |t| < sqrt(disc).
  bool strictly_contains(const LatticeVector& s) const {
    if (s.m1 <= 0) return false;
    const Integer t = Integer(s.m2) * x - Integer(y) * s.m1;
    return t * t < Integer(disc) * s.m1 * s.m1;
  }

  bool operator==(const IrrationalCone&) const = default;
};

inline std::optional<IrrationalCone> irrational_cone(const ClusterParams& params) {
  const std::int64_t bc = params.bc();
  if (bc < 4) return std::nullopt;
  return IrrationalCone{checked::mul(2, params.b), -bc, checked::mul(bc, bc - 4)};
}

// ---------------------------------------------------------------------------
// The piecewise-linear map T

inline Matrix2 t_minus_matrix(const ClusterParams& p) { return Matrix2::of(1, p.b, 0, 1); }

/// T(m): identity on m2 >= 0, m + (b m2, 0) on m2 <= 0.
inline LatticeVector apply_T(const ClusterParams& p, const LatticeVector& m) {
  return m.m2 >= 0 ? m : t_minus_matrix(p) * m;
}

inline RationalPoint apply_T(const ClusterParams& p, const RationalPoint& q) {
  if (q.q2 >= 0) return q;
  return {q.q1 + Rational(p.b) * q.q2, q.q2};
}

/// Degree bound needed in the g-diagram for a d-diagram of order K_d.
inline std::int64_t transport_source_order(const ClusterParams& p, std::int64_t K_d) {
  return checked::mul(K_d, checked::add(p.b, 1));
}

/// Image of a g-diagram under T, with the horizontal line replaced and the
/// vertical pieces re-merged. Every degree-K_d term of the output comes from a
/// term of degree <= (b+1) K_d in the input, so the output order is
/// floor(K_g / (b+1)).
inline ScatteringDiagram transport_T(const ScatteringDiagram& G) {
  if (G.variant != Variant::g || !(G.cone == ConeSpec::second_quadrant()))
    throw MalformedInput("transport_T expects a g-variant diagram on the second quadrant");
  const ClusterParams& p = G.params;
  const Matrix2 Tm = t_minus_matrix(p);
  ScatteringDiagram D{p, Variant::d, ConeSpec::first_quadrant(), G.order / checked::add(p.b, 1), {}};
  if (D.order < 1) throw MalformedInput("g-diagram order too small to transport");

  std::optional<Wall> upper_vertical;
  std::optional<Wall> lower_vertical;
  for (const Wall& w : G.walls) {
    if (w.direction == LatticeVector{-1, 0}) {
      if (!w.is_line()) throw MalformedInput("horizontal wall must be a line");
      D.walls.push_back({{1, 0}, WallGeometry::line, w.coeffs});
    } else if (w.direction == LatticeVector{0, 1}) {
      if (!w.is_line()) throw MalformedInput("vertical wall must be a line");
      upper_vertical = w;
      // The lower half sits in m2 <= 0 and maps by T_-.
      D.walls.push_back({Tm * w.direction, WallGeometry::ray, w.coeffs});
    } else {
      if (w.is_line()) throw MalformedInput("unexpected line wall " + to_string(w.direction));
      const Wall img = apply_linear(w, Tm);
      if (img.direction == LatticeVector{0, 1})
        lower_vertical = img;
      else
        D.walls.push_back(img);
    }
  }
  for (auto& w : D.walls) w.truncate(D.ell(), D.order);
  if (upper_vertical) upper_vertical->truncate(D.ell(), D.order);
  if (lower_vertical) lower_vertical->truncate(D.ell(), D.order);
  const auto upper = upper_vertical ? upper_vertical->coeffs : std::map<std::int64_t, Integer>{};
  const auto lower = lower_vertical ? lower_vertical->coeffs : std::map<std::int64_t, Integer>{};
  if (upper != lower) throw InvariantViolation("vertical halves do not re-merge into one line");
  if (!upper.empty()) D.walls.push_back({{0, 1}, WallGeometry::line, upper});
  D.normalize();
  D.validate();
  return D;
}

}  // namespace rank2
