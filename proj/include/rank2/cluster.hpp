#pragma once

#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "rank2/laurent.hpp"

namespace rank2 {

struct ClusterParams {
  std::int64_t b = 1;
  std::int64_t c = 1;

  ClusterParams() = default;
  ClusterParams(std::int64_t b_, std::int64_t c_) : b(b_), c(c_) {
    if (b < 1 || c < 1) throw std::invalid_argument("ClusterParams: b and c must be positive");
  }

  std::int64_t bc() const { return checked::mul(b, c); }
  /// Exchange exponent at index k: b for odd k, c for even k.
  std::int64_t exponent_at(std::int64_t k) const { return (k % 2 != 0) ? b : c; }
  ClusterParams swapped() const { return {c, b}; }

  auto operator<=>(const ClusterParams&) const = default;
};

/// Default window for bc >= 4, where degrees grow exponentially in |k|.
inline constexpr double kDefaultWildWindow = 12.0;

/// Cluster variables x_k of A(b,c), generated outward from (x1, x2) by the
/// exchange relations and memoized. The cache is transparent: every entry is
/// what a fresh recursion would produce.
class ClusterSequence {
 public:
  explicit ClusterSequence(ClusterParams params, double window = kDefaultWildWindow)
      : params_(params), window_(window) {
    vars_.emplace(1, LaurentPoly::x1());
    vars_.emplace(2, LaurentPoly::x2());
  }

  const ClusterParams& params() const { return params_; }

  const LaurentPoly& variable(std::int64_t k) {
    if (params_.bc() >= 4 && std::abs(static_cast<double>(k) - 1.5) > window_)
      throw std::out_of_range("cluster_variable: index " + std::to_string(k) + " outside the configured window");
    if (auto it = vars_.find(k); it != vars_.end()) return it->second;
    if (k > 2) {
      // x_{k} = (x_{k-1}^{e(k-1)} + 1) / x_{k-2}
      std::int64_t top = vars_.rbegin()->first;
      while (top < k) {
        const auto& prev = vars_.at(top);
        const auto& prev2 = vars_.at(top - 1);
        LaurentPoly num = int_pow(prev, params_.exponent_at(top)) + LaurentPoly::constant(1);
        vars_.emplace(top + 1, exact_div(num, prev2));
        ++top;
      }
    } else {
      // x_{k} = (x_{k+1}^{e(k+1)} + 1) / x_{k+2}
      std::int64_t bottom = vars_.begin()->first;
      while (bottom > k) {
        const auto& next = vars_.at(bottom);
        const auto& next2 = vars_.at(bottom + 1);
        LaurentPoly num = int_pow(next, params_.exponent_at(bottom)) + LaurentPoly::constant(1);
        vars_.emplace(bottom - 1, exact_div(num, next2));
        --bottom;
      }
    }
    return vars_.at(k);
  }

 private:
  ClusterParams params_;
  double window_;
  std::map<std::int64_t, LaurentPoly> vars_;
};

inline LaurentPoly cluster_variable(const ClusterParams& params, std::int64_t k) {
  ClusterSequence seq(params);
  return seq.variable(k);
}

inline bool is_positive(const LaurentPoly& p) {
  for (const auto& [m, c] : p)
    if (c <= 0) return false;
  return true;
}

/// x_k^d1 * x_{k+1}^d2.
inline LaurentPoly cluster_monomial(ClusterSequence& seq, std::int64_t k, std::int64_t d1, std::int64_t d2) {
  if (d1 < 0 || d2 < 0) throw std::invalid_argument("cluster_monomial: exponents must be non-negative");
  LaurentPoly r = int_pow(seq.variable(k), d1);
  if (d2 > 0) r = mul(r, int_pow(seq.variable(k + 1), d2));
  return r;
}

inline LaurentPoly cluster_monomial(const ClusterParams& params, std::int64_t k, std::int64_t d1, std::int64_t d2) {
  ClusterSequence seq(params);
  return cluster_monomial(seq, k, d1, d2);
}

/// Denominator vector of a Laurent polynomial: (-min m1, -min m2).
inline LatticeVector denominator_vector(const LaurentPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("denominator_vector of zero");
  std::int64_t lo1 = INT64_MAX, lo2 = INT64_MAX;
  for (const auto& [m, c] : p) {
    lo1 = std::min(lo1, m.m1);
    lo2 = std::min(lo2, m.m2);
  }
  return {-lo1, -lo2};
}

}  // namespace rank2
