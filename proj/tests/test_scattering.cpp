#include <random>

#include <gtest/gtest.h>

#include "rank2/scattering.hpp"

using namespace rank2;

namespace {

LaurentPoly mono(std::int64_t a, std::int64_t b, Integer c = 1) { return LaurentPoly::monomial({a, b}, c); }

Wall ray(std::int64_t w1, std::int64_t w2, std::map<std::int64_t, Integer> coeffs) {
  return {{w1, w2}, WallGeometry::ray, std::move(coeffs)};
}
Wall line(std::int64_t w1, std::int64_t w2, std::map<std::int64_t, Integer> coeffs) {
  return {{w1, w2}, WallGeometry::line, std::move(coeffs)};
}

const std::vector<ClusterParams> kParams = {{1, 1}, {2, 1}, {1, 2}, {3, 1}, {2, 2}, {3, 2}};

}  // namespace

TEST(Scattering, InitialDiagrams) {
  const auto g = initial_diagram_g({2, 1}, 5);
  ASSERT_EQ(g.walls.size(), 2u);
  EXPECT_EQ(g.find({-1, 0})->function(), mono(0, 0) + mono(-2, 0));
  EXPECT_EQ(g.find({0, 1})->function(), mono(0, 0) + mono(0, 1));
  EXPECT_TRUE(g.find({-1, 0})->is_line());
  EXPECT_EQ(g.ell()({-1, 0}), 1);
  EXPECT_EQ(g.ell()({0, 1}), 1);

  const auto d = initial_diagram_d({3, 2}, 5);
  EXPECT_EQ(d.find({1, 0})->function(), mono(0, 0) + mono(3, 0));
  EXPECT_EQ(d.find({0, 1})->function(), mono(0, 0) + mono(0, 2));
  EXPECT_EQ(d.ell()({1, 0}), 1);
  EXPECT_EQ(d.ell()({0, 1}), 1);
  EXPECT_THROW(initial_diagram_g({1, 1}, 0), std::invalid_argument);
}

TEST(Scattering, WallCross) {
  const DegreeFunctional ell{-1, 1};
  const Wall horizontal = line(-1, 0, {{2, 1}});
  EXPECT_EQ(wall_cross(1, {1, -1}, horizontal, {-1, 1}, ell, {1, -1}, 10), mono(1, -1) + mono(-1, -1));
  const Wall vertical = line(0, 1, {{2, 1}});
  EXPECT_EQ(wall_cross(1, {-1, -1}, vertical, {1, 1}, ell, {-1, -1}, 10), mono(-1, -1) + mono(-1, 1));
  // x^m with m parallel to the wall is fixed.
  EXPECT_EQ(wall_cross(3, {0, 4}, vertical, {1, 0}, ell, {0, 4}, 10), mono(0, 4, 3));
  EXPECT_THROW(wall_cross(1, {1, 0}, vertical, {0, 1}, ell, {1, 0}, 10), NonTransversal);
}

TEST(Scattering, WallCrossNegativePowerIsGeometricSeries) {
  const DegreeFunctional ell{-1, 1};
  const Wall vertical = line(0, 1, {{1, 1}});
  // Crossing in the +x direction: n = (-1,0), so x1 picks up (1+x2)^{-1}.
  const auto img = wall_cross(1, {1, 0}, vertical, {1, 0}, ell, {1, 0}, 4);
  EXPECT_EQ(img, mono(1, 0) - mono(1, 1) + mono(1, 2) - mono(1, 3) + mono(1, 4));
}

TEST(Scattering, SeriesPowMatchesRepeatedMultiplication) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<Integer> f{1, coef(rng), coef(rng), coef(rng)};
    LaurentPoly fp;
    for (std::size_t i = 0; i < f.size(); ++i) fp.add_term({static_cast<std::int64_t>(i), 0}, f[i]);
    for (std::int64_t e = 0; e <= 5; ++e) {
      const auto s = detail::series_pow(f, e, 8);
      const auto p = int_pow(fp, e);
      for (std::int64_t i = 0; i <= 8; ++i) ASSERT_EQ(s[static_cast<std::size_t>(i)], p.coeff({i, 0}));
    }
    // f^-e * f^e = 1 as series.
    for (std::int64_t e = 1; e <= 4; ++e) {
      const auto a = detail::series_pow(f, -e, 8), b = detail::series_pow(f, e, 8);
      for (std::int64_t k = 0; k <= 8; ++k) {
        Integer acc = 0;
        for (std::int64_t i = 0; i <= k; ++i) acc += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(k - i)];
        ASSERT_EQ(acc, k == 0 ? 1 : 0);
      }
    }
  }
}

TEST(Scattering, PathOrderedProductBasics) {
  const auto D = initial_diagram_g({2, 2}, 6);
  const LaurentPoly p = mono(1, 0) + mono(0, 1);
  // Empty sector: both endpoints in the open first quadrant.
  EXPECT_EQ(path_ordered_product(D, {2, 1}, {1, 2}, Orientation::ccw, p, {0, 0}), p);
  // Crossing only the upper vertical piece: x2 is fixed, x1 gains 1+x2^2.
  EXPECT_EQ(path_ordered_product(D, {1, 1}, {-1, 1}, Orientation::ccw, mono(0, 1), {0, 1}), mono(0, 1));
  EXPECT_EQ(path_ordered_product(D, {1, 1}, {-1, 1}, Orientation::ccw, mono(1, 0), {1, 0}), mono(1, 0) + mono(1, 2));
  EXPECT_THROW(path_ordered_product(D, {0, 3}, {1, 1}, Orientation::ccw, p, {0, 0}), PathOnWall);
}

TEST(Scattering, PathReversalIsInverse) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> coord(-5, 5);
  const auto D = complete(initial_diagram_g({2, 2}, 8), 8);
  auto random_dir = [&] {
    for (;;) {
      LatticeVector v{coord(rng), coord(rng)};
      if (v.is_zero()) continue;
      bool on_wall = false;
      for (const auto& piece : wall_pieces(D)) on_wall = on_wall || same_angle(piece.u, v);
      if (!on_wall) return v;
    }
  };
  for (int iter = 0; iter < 40; ++iter) {
    const auto a = random_dir(), b = random_dir();
    for (const LatticeVector e : {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{-2, 3}}) {
      const auto there = path_ordered_product(D, a, b, Orientation::ccw, LaurentPoly::monomial(e), e);
      const auto back = path_ordered_product(D, b, a, Orientation::cw, there, e);
      ASSERT_EQ(back, LaurentPoly::monomial(e)) << to_string(a) << " -> " << to_string(b);
    }
  }
}

TEST(Scattering, CompleteD21) {
  const auto D = complete(initial_diagram_g({2, 1}, 10), 10);
  ASSERT_EQ(D.walls.size(), 4u);
  EXPECT_EQ(*D.find({-1, 0}), line(-1, 0, {{2, 1}}));
  EXPECT_EQ(*D.find({0, 1}), line(0, 1, {{1, 1}}));
  EXPECT_EQ(*D.find({-1, 1}), ray(-1, 1, {{2, 1}}));
  EXPECT_EQ(*D.find({-2, 1}), ray(-2, 1, {{1, 1}}));
  EXPECT_EQ(D.find({-1, 1})->function(), mono(0, 0) + mono(-2, 2));
  EXPECT_EQ(D.find({-2, 1})->function(), mono(0, 0) + mono(-2, 1));
}

TEST(Scattering, CompletePentagon) {
  const auto D = complete(initial_diagram_g({1, 1}, 6), 6);
  ASSERT_EQ(D.walls.size(), 3u);
  EXPECT_EQ(*D.find({-1, 1}), ray(-1, 1, {{1, 1}}));
}

TEST(Scattering, CompleteSmallOrdersNeedNoRays) {
  // Below the degree of the first commutator nothing is added.
  EXPECT_EQ(complete(initial_diagram_g({2, 2}, 3), 3).walls.size(), 2u);
  EXPECT_EQ(complete(initial_diagram_g({1, 1}, 1), 1).walls.size(), 2u);
}

TEST(Scattering, LoopDefect) {
  const auto raw = initial_diagram_g({1, 1}, 5);
  const auto defect = loop_defect(raw, 5);
  EXPECT_FALSE(defect.is_zero());
  EXPECT_EQ(defect.first_order(), 2);

  EXPECT_TRUE(loop_defect(complete(initial_diagram_g({2, 1}, 10), 10), 10).is_zero());

  ScatteringDiagram empty = initial_diagram_g({1, 1}, 4);
  empty.walls.clear();
  EXPECT_TRUE(loop_defect(empty, 4).is_zero());
  EXPECT_FALSE(loop_defect(empty, 4).first_order().has_value());
}

TEST(Scattering, FullLoopFixesBasisOnD21) {
  const auto D = complete(initial_diagram_g({2, 1}, 10), 10);
  EXPECT_EQ(loop_image(D, {1, 0}, 10), mono(1, 0));
  EXPECT_EQ(loop_image(D, {0, 1}, 10), mono(0, 1));
}

TEST(Scattering, SRecipe) {
  const auto walls21 = s_recipe_walls({2, 1}, 2, 10);
  ASSERT_EQ(walls21.size(), 2u);
  EXPECT_EQ(walls21[0], ray(-1, 1, {{2, 1}}));
  EXPECT_EQ(walls21[1], ray(-2, 1, {{1, 1}}));

  const auto walls11 = s_recipe_walls({1, 1}, 5, 10);
  ASSERT_EQ(walls11.size(), 1u);
  EXPECT_EQ(walls11[0], ray(-1, 1, {{1, 1}}));

  const auto walls22 = s_recipe_walls({2, 2}, 1, 20);
  ASSERT_EQ(walls22.size(), 2u);
  EXPECT_EQ(walls22[0], ray(-1, 2, {{2, 1}}));
  EXPECT_EQ(walls22[1], ray(-2, 1, {{2, 1}}));

  // Infinite families for bc >= 4 are cut off by the truncation order.
  EXPECT_EQ(s_recipe_walls({2, 2}, 50, 12).size(), s_recipe_walls({2, 2}, 100, 12).size());
  EXPECT_THROW(s_recipe_walls({1, 1}, 0, 4), std::invalid_argument);
}

TEST(Scattering, IrrationalCone) {
  EXPECT_FALSE(irrational_cone({2, 1}).has_value());
  EXPECT_FALSE(irrational_cone({3, 1}).has_value());
  const auto k22 = irrational_cone({2, 2});
  ASSERT_TRUE(k22.has_value());
  EXPECT_TRUE(k22->degenerate());
  EXPECT_EQ(cross(LatticeVector{k22->x, k22->y}, LatticeVector{1, -1}), 0);
  EXPECT_EQ(irrational_cone({3, 2}), (IrrationalCone{6, -6, 12}));
}

TEST(Scattering, TransportD21) {
  const ClusterParams p{2, 1};
  const auto G = complete(initial_diagram_g(p, 30), 30);
  const auto T = transport_T(G);
  EXPECT_EQ(T.order, 10);
  ASSERT_EQ(T.walls.size(), 4u);
  EXPECT_EQ(T.find({1, 0})->function(), mono(0, 0) + mono(2, 0));
  EXPECT_TRUE(T.find({1, 0})->is_line());
  EXPECT_EQ(T.find({0, 1})->function(), mono(0, 0) + mono(0, 1));
  EXPECT_TRUE(T.find({0, 1})->is_line());
  EXPECT_EQ(*T.find({1, 1}), ray(1, 1, {{2, 1}}));
  EXPECT_EQ(T.find({1, 1})->function(), mono(0, 0) + mono(2, 2));
  EXPECT_EQ(*T.find({2, 1}), ray(2, 1, {{1, 1}}));
  EXPECT_EQ(T.find({2, 1})->function(), mono(0, 0) + mono(2, 1));
  EXPECT_EQ(T, complete(initial_diagram_d(p, 10), 10));
  EXPECT_THROW(transport_T(initial_diagram_d(p, 10)), MalformedInput);
}

TEST(Scattering, TransportInitialVerticalSplit) {
  // Without completion the lower vertical half has no partner to merge with.
  EXPECT_THROW(transport_T(initial_diagram_g({1, 1}, 8)), InvariantViolation);
}

// Consistency, idempotence, order-monotonicity and the structural claims on
// both variants for every parameter pair of the desk-scale grid.
TEST(ScatteringProperty, CompletionInvariants) {
  constexpr std::int64_t K = 12;
  for (const auto& p : kParams) {
    for (Variant v : {Variant::g, Variant::d}) {
      const auto in = v == Variant::g ? initial_diagram_g(p, K) : initial_diagram_d(p, K);
      const auto D = complete(in, K);
      D.validate();
      ASSERT_TRUE(loop_defect(D, K).is_zero()) << p.b << "," << p.c;
      ASSERT_EQ(complete(D, K), D);
      for (std::int64_t k = 1; k < K; ++k) {
        ScatteringDiagram t = D;
        t.order = k;
        t.normalize();
        ASSERT_EQ(t, complete(in, k)) << p.b << "," << p.c << " k=" << k;
      }
      for (const auto& w : D.walls) {
        if (w.is_line()) continue;
        // Non-initial walls are rays strictly inside the cone.
        ASSERT_NE(cross(D.cone.gen1, w.direction), 0);
        ASSERT_NE(cross(D.cone.gen2, w.direction), 0);
      }
    }
  }
}

TEST(ScatteringProperty, SRecipeAgreesWithCompletion) {
  constexpr std::int64_t K = 12;
  for (const auto& p : kParams) {
    const auto D = complete(initial_diagram_g(p, K), K);
    for (const auto& w : s_recipe_walls(p, 40, K)) {
      const Wall* found = D.find(w.direction);
      ASSERT_NE(found, nullptr) << p.b << "," << p.c << " " << to_string(w.direction);
      ASSERT_EQ(*found, w) << p.b << "," << p.c << " " << to_string(w.direction);
    }
    if (p.bc() < 4) {
      // Finite type: the recipe produces every ray.
      ASSERT_EQ(s_recipe_walls(p, 40, K).size() + 2, D.walls.size()) << p.b << "," << p.c;
    }
  }
}

TEST(ScatteringProperty, TransportMatchesDirectCompletion) {
  for (const auto& p : kParams) {
    for (std::int64_t kd = 1; kd <= 4; ++kd) {
      const auto G = complete(initial_diagram_g(p, transport_source_order(p, kd)), transport_source_order(p, kd));
      ASSERT_EQ(transport_T(G), complete(initial_diagram_d(p, kd), kd)) << p.b << "," << p.c << " K=" << kd;
    }
  }
}
