#include <random>

#include <gtest/gtest.h>

#include "rank2/laurent.hpp"

using namespace rank2;

namespace {

LaurentPoly mono(std::int64_t a, std::int64_t b, Integer c = 1) { return LaurentPoly::monomial({a, b}, c); }

LaurentPoly random_poly(std::mt19937& rng, int max_terms = 8) {
  std::uniform_int_distribution<int> nterms(1, max_terms), expo(-3, 3), coef(-9, 9);
  LaurentPoly p;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) p.add_term({expo(rng), expo(rng)}, coef(rng));
  return p;
}

LaurentPoly nonzero_random_poly(std::mt19937& rng) {
  LaurentPoly p;
  while (p.is_zero()) p = random_poly(rng);
  return p;
}

}  // namespace

TEST(Lattice, PrimitivePredicate) {
  EXPECT_TRUE((LatticeVector{-1, 0}).is_primitive());
  EXPECT_TRUE((LatticeVector{-2, 1}).is_primitive());
  EXPECT_FALSE((LatticeVector{2, -2}).is_primitive());
  EXPECT_FALSE((LatticeVector{0, 0}).is_primitive());
  EXPECT_EQ(primitive_part({4, -6}), (LatticeVector{2, -3}));
}

TEST(Lattice, CheckedArithmeticThrows) {
  LatticeVector big{INT64_MAX, 0};
  EXPECT_THROW((big + LatticeVector{1, 0}), std::overflow_error);
  EXPECT_THROW(3 * big, std::overflow_error);
}

TEST(Laurent, Add) {
  EXPECT_EQ(add(mono(1, 0) + mono(0, 1), -mono(0, 1)), mono(1, 0));
  const LaurentPoly p = mono(0, 0) + mono(-2, 0);
  EXPECT_EQ(add(p, LaurentPoly{}), p);
  EXPECT_EQ(add(p, p), mono(0, 0, 2) + mono(-2, 0, 2));
}

TEST(Laurent, ZeroCoefficientsNeverStored) {
  LaurentPoly p = mono(1, 1, 3);
  p.add_term({1, 1}, -3);
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.size(), 0u);
}

TEST(Laurent, Mul) {
  EXPECT_EQ(mul(mono(1, 0), mono(-1, 2)), mono(0, 2));
  const LaurentPoly one_x2 = mono(0, 0) + mono(0, 1);
  EXPECT_EQ(mul(one_x2, one_x2), mono(0, 0) + mono(0, 1, 2) + mono(0, 2));
}

TEST(Laurent, IntPow) {
  const LaurentPoly one_x1 = mono(0, 0) + mono(1, 0);
  EXPECT_EQ(int_pow(one_x1, 0), mono(0, 0));
  EXPECT_EQ(int_pow(one_x1, 2), mono(0, 0) + mono(1, 0, 2) + mono(2, 0));
  EXPECT_THROW(int_pow(one_x1, -1), std::invalid_argument);
}

TEST(Laurent, IntPowThetaSquareIdentity) {
  const LaurentPoly theta1 = mono(1, -1) + mono(-1, -1) + mono(-1, 1);
  const LaurentPoly expected = mono(2, -2) + mono(-2, 2) + mono(-2, -2) + mono(0, -2, 2) + mono(-2, 0, 2);
  EXPECT_EQ(int_pow(theta1, 2) - LaurentPoly::constant(2), expected);
}

TEST(Laurent, ExactDiv) {
  EXPECT_EQ(exact_div(mono(0, 1) + mono(0, 0), mono(1, 0)), mono(-1, 1) + mono(-1, 0));
  EXPECT_EQ(exact_div(mono(2, 0) - mono(0, 2), mono(1, 0) - mono(0, 1)), mono(1, 0) + mono(0, 1));
  EXPECT_THROW(exact_div(mono(1, 0) + mono(0, 1), mono(1, 0) + mono(0, 0)), NotDivisible);
  EXPECT_THROW(exact_div(mono(1, 0), LaurentPoly{}), std::invalid_argument);
  EXPECT_THROW(exact_div(mono(1, 0, 3), mono(0, 0, 2)), NotDivisible);
}

TEST(Laurent, GenBinomial) {
  EXPECT_EQ(gen_binomial(5, 2), 10);
  EXPECT_EQ(gen_binomial(-1, 3), -1);
  EXPECT_EQ(gen_binomial(0, 4), 0);
  EXPECT_EQ(gen_binomial(-7, 0), 1);
}

TEST(Laurent, GenBinomialPascal) {
  for (int n = -10; n <= 10; ++n)
    for (int k = 1; k <= 10; ++k)
      EXPECT_EQ(gen_binomial(n, k), gen_binomial(n - 1, k - 1) + gen_binomial(n - 1, k)) << n << " " << k;
}

TEST(Laurent, EllTruncate) {
  const DegreeFunctional diag{1, 1};
  EXPECT_EQ(ell_truncate(mono(0, 0) + mono(0, 1) + mono(0, 3), {0, 0}, diag, 2), mono(0, 0) + mono(0, 1));
  EXPECT_EQ(ell_truncate(mono(-3, 0), {-3, 0}, DegreeFunctional{5, -7}, 0), mono(-3, 0));
  const LaurentPoly cube = int_pow(mono(0, 0) + mono(-2, 0), 3);
  EXPECT_EQ(ell_truncate(cube, {0, 0}, DegreeFunctional{-1, 1}, 4), mono(0, 0) + mono(-2, 0, 3) + mono(-4, 0, 3));
}

TEST(Laurent, ApplyLinear) {
  const Matrix2 t_minus = Matrix2::of(1, 2, 0, 1);
  EXPECT_EQ(apply_linear(mono(1, -1), t_minus), mono(-1, -1));
  const LaurentPoly p = mono(3, -2, 5) + mono(0, 1);
  EXPECT_EQ(apply_linear(p, Matrix2::identity()), p);
  EXPECT_EQ(apply_linear(mono(0, 1), Matrix2::of(-1, -1, 0, 1)), mono(-1, 1));
}

TEST(Laurent, CanonicalText) {
  const LaurentPoly p = mono(1, -1) + mono(-1, -1) + mono(-1, 1);
  EXPECT_EQ(to_text(p), "x1^-1*x2^-1 + x1^-1*x2 + x1*x2^-1");
  EXPECT_EQ(to_text(mono(0, 0, 2) + mono(2, 0, -3) + mono(0, 1, -1)), "2 + -x2 + -3*x1^2");
  EXPECT_EQ(to_text(LaurentPoly{}), "0");
}

TEST(LaurentProperty, RingAxioms) {
  std::mt19937 rng(20140601);
  for (int iter = 0; iter < 200; ++iter) {
    const auto p = random_poly(rng), q = random_poly(rng), r = random_poly(rng);
    ASSERT_EQ(mul(p, q), mul(q, p));
    ASSERT_EQ(mul(mul(p, q), r), mul(p, mul(q, r)));
    ASSERT_EQ(mul(p, add(q, r)), add(mul(p, q), mul(p, r)));
    ASSERT_EQ(add(p, q), add(q, p));
  }
}

TEST(LaurentProperty, ExactDivInvertsMul) {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    const auto p = random_poly(rng);
    const auto q = nonzero_random_poly(rng);
    ASSERT_EQ(exact_div(mul(p, q), q), p) << to_text(p) << " / " << to_text(q);
  }
}

TEST(LaurentProperty, InvolutionsAndTruncation) {
  std::mt19937 rng(11);
  for (std::int64_t b = 1; b <= 3; ++b)
    for (std::int64_t c = 1; c <= 3; ++c) {
      const Matrix2 s1 = Matrix2::of(-1, -b, 0, 1);
      const Matrix2 s2 = Matrix2::of(1, 0, -c, -1);
      for (int iter = 0; iter < 20; ++iter) {
        const auto p = random_poly(rng);
        ASSERT_EQ(apply_linear(apply_linear(p, s1), s1), p);
        ASSERT_EQ(apply_linear(apply_linear(p, s2), s2), p);
      }
    }
  const DegreeFunctional ell{-1, 1};
  for (int iter = 0; iter < 100; ++iter) {
    const auto p = random_poly(rng);
    for (int k = -4; k <= 6; ++k) {
      const auto t = ell_truncate(p, {0, 0}, ell, k);
      ASSERT_EQ(ell_truncate(t, {0, 0}, ell, k), t);
      const auto t_next = ell_truncate(p, {0, 0}, ell, k + 1);
      for (const auto& [m, c] : t) ASSERT_EQ(t_next.coeff(m), c);
    }
  }
}
