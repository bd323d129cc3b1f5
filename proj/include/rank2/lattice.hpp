#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rank2 {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Checked machine arithmetic for exponents. Overflow is a hard error.
namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow in add");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("exponent overflow in sub");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent overflow in mul");
  return r;
}

}  // namespace checked

/// A point of the rank-2 lattice M, identified with Z^2. Ordered
/// lexicographically on (m1, m2).
struct LatticeVector {
  std::int64_t m1 = 0;
  std::int64_t m2 = 0;

  constexpr auto operator<=>(const LatticeVector&) const = default;

  bool is_zero() const { return m1 == 0 && m2 == 0; }

  bool is_primitive() const {
    if (is_zero()) return false;
    return std::gcd(m1, m2) == 1;
  }

  LatticeVector operator+(const LatticeVector& o) const {
    return {checked::add(m1, o.m1), checked::add(m2, o.m2)};
  }
  LatticeVector operator-(const LatticeVector& o) const {
    return {checked::sub(m1, o.m1), checked::sub(m2, o.m2)};
  }
  LatticeVector operator-() const { return {checked::sub(0, m1), checked::sub(0, m2)}; }
  LatticeVector& operator+=(const LatticeVector& o) { return *this = *this + o; }
  LatticeVector& operator-=(const LatticeVector& o) { return *this = *this - o; }
};

inline LatticeVector operator*(std::int64_t k, const LatticeVector& v) {
  return {checked::mul(k, v.m1), checked::mul(k, v.m2)};
}

inline std::int64_t dot(const LatticeVector& a, const LatticeVector& b) {
  return checked::add(checked::mul(a.m1, b.m1), checked::mul(a.m2, b.m2));
}

/// a1*b2 - a2*b1; positive iff b is counterclockwise from a.
inline std::int64_t cross(const LatticeVector& a, const LatticeVector& b) {
  return checked::sub(checked::mul(a.m1, b.m2), checked::mul(a.m2, b.m1));
}

/// Index of divisibility: gcd(|m1|, |m2|), zero for the zero vector.
inline std::int64_t lattice_gcd(const LatticeVector& v) { return std::gcd(v.m1, v.m2); }

inline LatticeVector primitive_part(const LatticeVector& v) {
  const auto g = lattice_gcd(v);
  if (g == 0) throw std::invalid_argument("primitive_part of the zero vector");
  return {v.m1 / g, v.m2 / g};
}

inline std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
  return os << '(' << v.m1 << ',' << v.m2 << ')';
}

inline std::string to_string(const LatticeVector& v) {
  return '(' + std::to_string(v.m1) + ',' + std::to_string(v.m2) + ')';
}

/// Linear form m -> n1*m1 + n2*m2 used to grade monomials.
struct DegreeFunctional {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;

  std::int64_t operator()(const LatticeVector& m) const {
    return checked::add(checked::mul(n1, m.m1), checked::mul(n2, m.m2));
  }

  /// Strictly positive on both generators of the graded cone.
  bool grades_cone(const LatticeVector& g1, const LatticeVector& g2) const {
    return (*this)(g1) > 0 && (*this)(g2) > 0;
  }

  constexpr bool operator==(const DegreeFunctional&) const = default;
};

/// 2x2 integer matrix acting on column vectors.
struct Matrix2 {
  std::array<std::array<std::int64_t, 2>, 2> a{{{1, 0}, {0, 1}}};

  static Matrix2 identity() { return {}; }
  static Matrix2 of(std::int64_t a11, std::int64_t a12, std::int64_t a21, std::int64_t a22) {
    Matrix2 m;
    m.a = {{{a11, a12}, {a21, a22}}};
    return m;
  }

  LatticeVector operator*(const LatticeVector& v) const {
    return {checked::add(checked::mul(a[0][0], v.m1), checked::mul(a[0][1], v.m2)),
            checked::add(checked::mul(a[1][0], v.m1), checked::mul(a[1][1], v.m2))};
  }

  Matrix2 operator*(const Matrix2& o) const {
    Matrix2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r.a[i][j] = checked::add(checked::mul(a[i][0], o.a[0][j]), checked::mul(a[i][1], o.a[1][j]));
    return r;
  }

  std::int64_t det() const {
    return checked::sub(checked::mul(a[0][0], a[1][1]), checked::mul(a[0][1], a[1][0]));
  }

  constexpr bool operator==(const Matrix2&) const = default;
};

}  // namespace rank2
