// Simplex weights, projections, proximal operators and weighted prox dispatch.

#include "merit/projection.hpp"
#include "merit/prox.hpp"
#include "merit/random.hpp"
#include "merit/smooth_terms.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

using namespace merit;

namespace {

// Euclidean projection onto the simplex via bisection on the threshold tau in
// w = max(v - tau, 0); independent of the sort-based implementation.
Vector simplex_projection_by_bisection(const Vector& v) {
  double lo = v.minCoeff() - 1.0, hi = v.maxCoeff();
  for (int it = 0; it < 200; ++it) {
    const double tau = 0.5 * (lo + hi);
    if ((v.array() - tau).max(0.0).sum() > 1.0) {
      lo = tau;
    } else {
      hi = tau;
    }
  }
  return (v.array() - 0.5 * (lo + hi)).max(0.0).matrix();
}

// argmin_y sum_i w_i g_i(y) + |y - x|^2 / (2t) over a fine grid of S (2-D).
Vector grid_prox_2d(const std::vector<const ConvexTerm*>& terms, const Vector& w, const Vector& x, double t,
                    const FeasibleSet& set, double lo, double hi, int k) {
  Vector best = x;
  double best_v = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= k; ++a) {
    for (int b = 0; b <= k; ++b) {
      const Vector y = make_vector({lo + (hi - lo) * a / k, lo + (hi - lo) * b / k});
      if (!set.contains(y)) continue;
      double v = (y - x).squaredNorm() / (2.0 * t);
      for (std::size_t i = 0; i < terms.size(); ++i) v += w[static_cast<Index>(i)] * terms[i]->value(y);
      if (v < best_v) {
        best_v = v;
        best = y;
      }
    }
  }
  return best;
}

}  // namespace

TEST(SimplexWeights, RejectsNegativeAndBadSum) {
  EXPECT_THROW(SimplexWeights(make_vector({-0.1, 1.1})), Error);
  EXPECT_THROW(SimplexWeights(make_vector({0.5, 0.6})), Error);
  EXPECT_THROW(SimplexWeights{Vector()}, Error);
  const SimplexWeights w(make_vector({0.25, 0.75}));
  EXPECT_DOUBLE_EQ(w[1], 0.75);
}

TEST(SimplexWeights, BarycenterAndVertex) {
  const auto b = SimplexWeights::barycenter(4);
  for (Index i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(b[i], 0.25);
  const auto v = SimplexWeights::vertex(3, 2);
  EXPECT_EQ(v.values(), make_vector({0.0, 0.0, 1.0}));
}

TEST(ProjectSimplex, Examples) {
  EXPECT_TRUE(project_simplex(make_vector({0.2, 0.8})).values().isApprox(make_vector({0.2, 0.8}), 1e-15));
  EXPECT_TRUE(project_simplex(make_vector({2.0, 0.0})).values().isApprox(make_vector({1.0, 0.0}), 1e-15));
  const Vector third = Vector::Constant(3, 1.0 / 3.0);
  EXPECT_TRUE(project_simplex(make_vector({0.5, 0.5, 0.5})).values().isApprox(third, 1e-15));
}

TEST(ProjectSimplex, TwoDimensionalGridSearch) {
  // (2, 0): scan w = (s, 1 - s) for the closest point.
  const Vector v = make_vector({2.0, 0.0});
  double best_s = 0.0, best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 10000; ++k) {
    const double s = k / 10000.0;
    const double d = (make_vector({s, 1.0 - s}) - v).squaredNorm();
    if (d < best) {
      best = d;
      best_s = s;
    }
  }
  EXPECT_NEAR(project_simplex(v)[0], best_s, 1e-4);
}

TEST(ProjectSimplex, MatchesBisectionOracle) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const Index m = 1 + static_cast<Index>(rng.index(6));
    const Vector v = 3.0 * rng.normal_vector(m);
    const Vector got = project_simplex(v).values();
    EXPECT_NEAR((got - simplex_projection_by_bisection(v)).lpNorm<Eigen::Infinity>(), 0.0, 1e-10);
    EXPECT_NEAR(got.sum(), 1.0, 1e-12);
    EXPECT_GE(got.minCoeff(), 0.0);
  }
}

TEST(ProjectSet, BoxBallExamples) {
  const auto box = FeasibleSet::box(Vector::Constant(2, -1.0), Vector::Constant(2, 1.0));
  EXPECT_EQ(box.project(make_vector({2.0, 0.5})), make_vector({1.0, 0.5}));
  const auto ball = FeasibleSet::ball(Vector::Zero(2), 1.0);
  EXPECT_TRUE(ball.project(make_vector({3.0, 4.0})).isApprox(make_vector({0.6, 0.8}), 1e-15));
  const auto half = FeasibleSet::box(make_vector({0.0}), make_vector({std::numeric_limits<double>::infinity()}));
  EXPECT_EQ(half.project(make_vector({-2.0})), make_vector({0.0}));
  EXPECT_FALSE(half.bounding_box().has_value());
}

TEST(ProjectSet, Idempotent) {
  Rng rng(3);
  const auto ball = FeasibleSet::ball(make_vector({1.0, -1.0, 0.5}), 0.7);
  for (int k = 0; k < 50; ++k) {
    const Vector p = ball.project(3.0 * rng.normal_vector(3));
    EXPECT_TRUE(ball.contains(p));
    EXPECT_NEAR((ball.project(p) - p).norm(), 0.0, 1e-14);
  }
}

TEST(Prox, ZeroIsIdentity) {
  EXPECT_EQ(prox_zero(make_vector({3.0, -1.0}), 5.0), make_vector({3.0, -1.0}));
  EXPECT_EQ(prox_zero(make_vector({0.0}), 1.0), make_vector({0.0}));
  EXPECT_EQ(prox_zero(make_vector({1e9}), 1e-9), make_vector({1e9}));
}

TEST(Prox, SoftThreshold) {
  EXPECT_DOUBLE_EQ(prox_abs(make_vector({0.5}), 1.0)[0], 0.0);
  EXPECT_DOUBLE_EQ(prox_abs(make_vector({2.0}), 1.0)[0], 1.0);
  EXPECT_DOUBLE_EQ(prox_abs(make_vector({-3.0}), 0.5)[0], -2.5);
}

TEST(Prox, MoreauEnvelopeOfAbs) {
  const auto g = convex_abs(1);
  const auto a = moreau_envelope(g, make_vector({0.5}), 1.0);
  EXPECT_DOUBLE_EQ(a.value, 0.125);
  EXPECT_DOUBLE_EQ(a.minimizer[0], 0.0);
  const auto b = moreau_envelope(g, make_vector({2.0}), 1.0);
  EXPECT_DOUBLE_EQ(b.value, 1.5);
  EXPECT_DOUBLE_EQ(b.minimizer[0], 1.0);
  const auto z = moreau_envelope(convex_zero(2), make_vector({0.3, -4.0}), 7.0);
  EXPECT_DOUBLE_EQ(z.value, 0.0);
  EXPECT_EQ(z.minimizer, make_vector({0.3, -4.0}));
}

TEST(Prox, SqnormClosedForm) {
  // prox of (a/2)|y - c|^2 at x with scale t: (x + t a c) / (1 + t a).
  const auto g = convex_sqnorm(2.0, make_vector({1.0, -1.0}));
  const Vector p = g.prox(make_vector({3.0, 0.0}), 0.5);
  EXPECT_TRUE(p.isApprox(make_vector({2.0, -0.5}), 1e-15));
}

TEST(Prox, WeightedL1MatchesGrid) {
  const auto g = convex_l1(make_vector({1.0, 0.5}), make_vector({0.5, -0.5}));
  const std::vector<const ConvexTerm*> terms{&g};
  const Vector x = make_vector({2.0, -0.2});
  const Vector got = g.prox(x, 0.8);
  const Vector ref = grid_prox_2d(terms, make_vector({1.0}), x, 0.8, FeasibleSet::reals(2), -1.0, 3.0, 800);
  EXPECT_NEAR((got - ref).lpNorm<Eigen::Infinity>(), 0.0, 6e-3);
}

TEST(Prox, ProxUnavailableForEnvelopeWithoutOracle) {
  ConvexTerm g;
  g.eval = [](const Vector& x) { return x.norm(); };
  EXPECT_THROW(
      {
        try {
          moreau_envelope(g, make_vector({1.0}), 1.0);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::ProxUnavailable);
          throw;
        }
      },
      Error);
}

TEST(WeightedSumProx, IdenticalTermsCollapse) {
  const auto g1 = convex_abs(1), g2 = convex_abs(1), g3 = convex_abs(1);
  const std::vector<const ConvexTerm*> terms{&g1, &g2, &g3};
  const auto r = weighted_sum_prox(terms, SimplexWeights(make_vector({0.2, 0.3, 0.5})), make_vector({2.0}), 1.0,
                                   FeasibleSet::reals(1));
  EXPECT_EQ(r.strategy, ProxStrategy::Identical);
  EXPECT_DOUBLE_EQ(r.point[0], 1.0);
}

TEST(WeightedSumProx, ZeroTermsProject) {
  const auto g1 = convex_zero(1), g2 = convex_zero(1);
  const std::vector<const ConvexTerm*> terms{&g1, &g2};
  const auto r = weighted_sum_prox(terms, SimplexWeights::barycenter(2), make_vector({5.0}), 1.0,
                                   FeasibleSet::box(make_vector({-1.0}), make_vector({1.0})));
  EXPECT_EQ(r.strategy, ProxStrategy::Zero);
  EXPECT_DOUBLE_EQ(r.point[0], 1.0);
}

TEST(WeightedSumProx, DisjointBlocks) {
  const auto g1 = convex_l1(make_vector({1.0, 0.0}), Vector::Zero(2));
  const auto g2 = convex_l1(make_vector({0.0, 1.0}), Vector::Zero(2));
  const std::vector<const ConvexTerm*> terms{&g1, &g2};
  const Vector x = make_vector({2.0, 2.0});
  const auto r = weighted_sum_prox(terms, SimplexWeights::barycenter(2), x, 1.0, FeasibleSet::reals(2));
  EXPECT_EQ(r.strategy, ProxStrategy::DisjointBlocks);
  EXPECT_TRUE(r.point.isApprox(make_vector({1.5, 1.5}), 1e-15));
  const Vector ref = grid_prox_2d(terms, make_vector({0.5, 0.5}), x, 1.0, FeasibleSet::reals(2), 0.0, 3.0, 600);
  EXPECT_NEAR((r.point - ref).lpNorm<Eigen::Infinity>(), 0.0, 5e-3);
}

TEST(WeightedSumProx, OverlappingNeedsIterativeConfig) {
  const auto g1 = convex_abs(2);
  const auto g2 = convex_sqnorm(1.0, make_vector({1.0, 1.0}));
  const std::vector<const ConvexTerm*> terms{&g1, &g2};
  const auto w = SimplexWeights(make_vector({0.4, 0.6}));
  EXPECT_THROW(weighted_sum_prox(terms, w, make_vector({2.0, -1.0}), 1.0, FeasibleSet::reals(2)), Error);
  InnerSolveConfig cfg;
  const auto r = weighted_sum_prox(terms, w, make_vector({2.0, -1.0}), 1.0, FeasibleSet::reals(2), &cfg);
  EXPECT_EQ(r.strategy, ProxStrategy::Iterative);
}

TEST(WeightedSumProx, IterativeMatchesGridWithBox) {
  const auto g1 = convex_abs(2);
  const auto g2 = convex_sqnorm(1.0, make_vector({1.0, 1.0}));
  const auto g3 = convex_l1(make_vector({0.0, 2.0}), make_vector({0.0, 0.5}));
  const std::vector<const ConvexTerm*> terms{&g1, &g2, &g3};
  const auto set = FeasibleSet::box(make_vector({-0.5, -0.5}), make_vector({1.2, 0.3}));
  const Vector wv = make_vector({0.3, 0.5, 0.2});
  InnerSolveConfig cfg;
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const Vector x = 2.0 * rng.normal_vector(2);
    const double t = rng.uniform(0.3, 2.0);
    const auto r = weighted_sum_prox(terms, SimplexWeights(wv), x, t, set, &cfg);
    EXPECT_TRUE(set.contains(r.point));
    const Vector ref = grid_prox_2d(terms, wv, x, t, set, -0.5, 1.2, 850);
    EXPECT_NEAR((r.point - ref).lpNorm<Eigen::Infinity>(), 0.0, 4e-3) << "trial " << trial;
  }
}

TEST(WeightedSumProx, IterativeSatisfiesOptimality) {
  // y = prox(x) iff (x - y)/t lies in the subdifferential of the weighted sum
  // at y; check the variational inequality against random feasible z.
  const auto g1 = convex_abs(2);
  const auto g2 = convex_sqnorm(2.0, make_vector({-1.0, 0.5}));
  const std::vector<const ConvexTerm*> terms{&g1, &g2};
  const auto set = FeasibleSet::ball(make_vector({0.5, 0.0}), 1.0);
  const Vector wv = make_vector({0.7, 0.3});
  InnerSolveConfig cfg;
  const Vector x = make_vector({3.0, 2.0});
  const double t = 0.9;
  const auto r = weighted_sum_prox(terms, SimplexWeights(wv), x, t, set, &cfg);
  auto h = [&](const Vector& y) { return wv[0] * g1.value(y) + wv[1] * g2.value(y); };
  Rng rng(9);
  for (int k = 0; k < 100; ++k) {
    const Vector z = set.project(r.point + rng.normal_vector(2));
    EXPECT_LE((x - r.point).dot(z - r.point) / t, h(z) - h(r.point) + 1e-6);
  }
}

TEST(SmoothTerms, QuadraticRejectsAsymmetric) {
  Matrix Q(2, 2);
  Q << 1.0, 2.0, 0.0, 1.0;
  try {
    smooth_quadratic(Q, Vector::Zero(2), 0.0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconsistentDimensions);
  }
}

TEST(SmoothTerms, CustomRegistry) {
  EXPECT_DOUBLE_EQ(smooth_custom("double_well", 1).eval(make_vector({0.0})), 1.0);
  EXPECT_NEAR(smooth_custom("softplus", 1).eval(make_vector({0.0})), std::log(2.0), 1e-15);
  EXPECT_THROW(smooth_custom("rosenbrock", 2), Error);
}

TEST(Rng, Deterministic) {
  Rng a(42), b(42);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(a.next(), b.next());
  Rng c(1);
  for (int k = 0; k < 1000; ++k) {
    const double u = c.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}
