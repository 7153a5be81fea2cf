// Inner solvers, the simplex Frank-Wolfe driver, merit evaluation and
// directional derivatives.

#include "merit/evaluate.hpp"
#include "merit/smooth_terms.hpp"
#include "merit/zoo.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace merit;

namespace {

ObjectiveFacts convex_facts(std::optional<double> sigma = std::nullopt) {
  ObjectiveFacts f;
  f.sigma = sigma;
  f.mu = sigma ? sigma : std::optional<double>(0.0);
  f.f_convex = f.F_convex = true;
  f.F_strictly_convex = sigma.has_value();
  return f;
}

MultiobjectiveProblem single(SmoothTerm f, ConvexTerm g, ObjectiveFacts facts, FeasibleSet set) {
  const Index n = set.dimension();
  return MultiobjectiveProblem(n, {Objective{std::move(f), std::move(g)}}, std::move(set), {facts});
}

// max over a y-grid on [lo, hi] of min_i integrand, independent of the library.
double brute_force_1d(const MultiobjectiveProblem& p, double x, double ell, bool linearized, double lo, double hi,
                      int k) {
  const Vector xv = make_vector({x});
  double best = -std::numeric_limits<double>::infinity();
  for (int a = 0; a <= k; ++a) {
    const Vector y = make_vector({lo + (hi - lo) * a / k});
    if (!p.feasible_set().contains(y)) continue;
    double v = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < p.objective_count(); ++i) {
      const auto& o = p.objective(i);
      const double lin = linearized ? o.f.gradient(xv).dot(xv - y) + o.g.value(xv) - o.g.value(y)
                                    : p.value(i, xv) - p.value(i, y);
      v = std::min(v, lin - 0.5 * ell * (xv - y).squaredNorm());
    }
    best = std::max(best, v);
  }
  return best;
}

DualSolveConfig tight() {
  DualSolveConfig cfg;
  cfg.gap_tol = 1e-12;
  cfg.max_iter = 20000;
  cfg.inner.tol = 1e-13;
  cfg.inner.max_iter = 200000;
  return cfg;
}

}  // namespace

// --- inner solver ---------------------------------------------------------------------

TEST(InnerSolver, RegularizedAbsEnvelopeBranch) {
  const auto p = single(smooth_zero(1), convex_abs(1), convex_facts(), FeasibleSet::reals(1));
  const auto sol = solve_regularized_weighted(p, SimplexWeights::barycenter(1), make_vector({0.5}), 1.0, InnerSolveConfig{});
  EXPECT_NEAR(sol.point[0], 0.0, 1e-12);
  EXPECT_NEAR(sol.value, 0.125, 1e-12);
  EXPECT_TRUE(sol.converged);
}

TEST(InnerSolver, RegularizedQuadratic) {
  // F(y) = y^2 + (2/2)(y - 3)^2: 2y + 2(y - 3) = 0 gives y = 1.5 and value 2.25 + 2.25.
  const auto p = single(smooth_quadratic(Matrix::Constant(1, 1, 2.0), Vector::Zero(1), 0.0), convex_zero(1),
                        convex_facts(2.0), FeasibleSet::reals(1));
  const auto sol = solve_regularized_weighted(p, SimplexWeights::barycenter(1), make_vector({3.0}), 2.0, InnerSolveConfig{});
  EXPECT_NEAR(sol.point[0], 1.5, 1e-8);
  EXPECT_NEAR(sol.value, 4.5, 1e-8);
  // Fine grid cross-check of the minimizer.
  double best_y = 0.0, best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 40000; ++k) {
    const double y = -1.0 + 4.0 * k / 40000.0;
    const double v = y * y + (y - 3.0) * (y - 3.0);
    if (v < best) {
      best = v;
      best_y = y;
    }
  }
  EXPECT_NEAR(sol.point[0], best_y, 1e-4);
}

TEST(InnerSolver, CenterAlreadyOptimal) {
  const auto p = single(smooth_zero(2), convex_zero(2), convex_facts(), FeasibleSet::reals(2));
  const auto sol = solve_regularized_weighted(p, SimplexWeights::barycenter(1), make_vector({0.3, -2.0}), 4.0, InnerSolveConfig{});
  EXPECT_EQ(sol.point, make_vector({0.3, -2.0}));
  EXPECT_LE(sol.iterations, 1u);
}

TEST(InnerSolver, RecordsMonotoneTrace) {
  const auto e = builtin("composite-box-2d");
  const auto sol = solve_regularized_weighted(e.problem, SimplexWeights(make_vector({0.3, 0.7})), make_vector({2.0, -0.5}), 0.5,
                                              InnerSolveConfig{}, true);
  ASSERT_GE(sol.objective_trace.size(), 2u);
  for (std::size_t k = 1; k < sol.objective_trace.size(); ++k) {
    EXPECT_LE(sol.objective_trace[k], sol.objective_trace[k - 1] + 1e-12);
  }
}

TEST(InnerSolver, FixedStepRule) {
  const auto e = builtin("quad-pair-1d");
  InnerSolveConfig cfg;
  cfg.step_rule = FixedStep{0.1};
  const auto sol = solve_weighted_scalarization(e.problem, SimplexWeights::barycenter(2), cfg);
  EXPECT_NEAR(sol.point[0], 0.0, 1e-7);
}

TEST(InnerSolver, ScalarizationExamples) {
  const auto e = builtin("quad-pair-1d");
  EXPECT_NEAR(solve_weighted_scalarization(e.problem, SimplexWeights::vertex(2, 0), InnerSolveConfig{}).point[0], 1.0, 1e-7);
  EXPECT_NEAR(solve_weighted_scalarization(e.problem, SimplexWeights::barycenter(2), InnerSolveConfig{}).point[0], 0.0, 1e-7);
}

TEST(InnerSolver, ScalarizationUnbounded) {
  // F = (x, -x): weights (0, 1) minimize -x without bound.
  ObjectiveFacts lin;
  lin.mu = 0.0;
  lin.lip = 1.0;
  lin.f_convex = lin.F_convex = true;
  MultiobjectiveProblem p(1,
                          {Objective{smooth_quadratic(Matrix::Zero(1, 1), make_vector({1.0}), 0.0), convex_zero(1)},
                           Objective{smooth_quadratic(Matrix::Zero(1, 1), make_vector({-1.0}), 0.0), convex_zero(1)}},
                          FeasibleSet::reals(1), {lin, lin});
  try {
    solve_weighted_scalarization(p, SimplexWeights::vertex(2, 1), InnerSolveConfig{});
    FAIL() << "expected Unbounded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unbounded);
  }
}

TEST(InnerSolver, RequiresConvexity) {
  const auto e = builtin("single-negsq");
  try {
    solve_regularized_weighted(e.problem, SimplexWeights::barycenter(1), make_vector({0.0}), 1.0, InnerSolveConfig{});
    FAIL() << "expected ConvexityRequired";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::ConvexityRequired);
  }
}

TEST(InnerSolver, ConfigValidation) {
  InnerSolveConfig bad;
  bad.tol = 0.0;
  EXPECT_THROW(bad.validate(), Error);
  DualSolveConfig dbad;
  dbad.gap_tol = -1.0;
  EXPECT_THROW(dbad.validate(), Error);
}

// --- Frank-Wolfe over the simplex ----------------------------------------------------------

TEST(SimplexFrankWolfe, MinimizesSeparableQuadratic) {
  // psi(w) = |w - c|^2 / 2 with c outside the simplex; minimizer = projection of c.
  const Vector c = make_vector({0.9, 0.6, -0.4});
  const DualOracle oracle = [&](const SimplexWeights& w) {
    DualPoint d;
    d.value = 0.5 * (w.values() - c).squaredNorm();
    d.gradient = w.values() - c;
    d.maximizer = Vector::Zero(1);
    return d;
  };
  const auto r = minimize_over_simplex(oracle, 3, 1e-10, 5000);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR((r.weights.values() - project_simplex(c).values()).lpNorm<Eigen::Infinity>(), 0.0, 1e-6);
  EXPECT_LE(r.gap, 1e-10);
}

TEST(SimplexFrankWolfe, VertexOptimumReachedExactly) {
  // Linear objective: the away steps must drive inactive weights to zero.
  const Vector g = make_vector({3.0, 1.0, 2.0});
  const DualOracle oracle = [&](const SimplexWeights& w) {
    return DualPoint{g.dot(w.values()), g, Vector::Zero(1), 0, true};
  };
  const auto r = minimize_over_simplex(oracle, 3, 1e-12, 100);
  EXPECT_DOUBLE_EQ(r.weights[1], 1.0);
  EXPECT_DOUBLE_EQ(r.at.value, 1.0);
}

// --- merit evaluation ------------------------------------------------------------------

TEST(EvalUEll, SingleAbsValues) {
  const auto e = builtin("single-abs");
  EXPECT_NEAR(eval_u_ell(e.problem, make_vector({0.5}), 1.0).value, 0.375, 1e-9);
  EXPECT_NEAR(eval_u_ell(e.problem, make_vector({2.0}), 1.0).value, 0.5, 1e-9);
  EXPECT_NEAR(eval_u_ell(e.problem, make_vector({0.0}), 1.0).value, 0.0, 1e-12);
  EXPECT_NEAR(eval_u_ell(e.problem, make_vector({0.5}), 2.0).value, 0.25, 1e-9);
}

TEST(EvalUEll, ZeroAtWeakParetoPoint) {
  const auto e = builtin("quad-pair-1d");
  const DualSolveConfig cfg;
  EXPECT_LE(std::abs(eval_u_ell(e.problem, make_vector({0.3}), 1.0, cfg).value), cfg.eval_tolerance());
}

TEST(EvalUEll, MatchesBruteForceGrid) {
  const auto e = builtin("quad-pair-1d");
  const auto r = eval_u_ell(e.problem, make_vector({2.0}), 1.0);
  // ((x-1)^2, (x+1)^2) at x = 2, ell = 1: the max-min is 2/3.
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-7);
  EXPECT_NEAR(r.value, brute_force_1d(e.problem, 2.0, 1.0, false, -5.0, 5.0, 200000), 1e-6);
  EXPECT_GE(r.value + 1e-9, r.lower_bound);
}

TEST(EvalWEll, SingleNegsqIsZeroAtOrigin) {
  const auto e = builtin("single-negsq");
  for (double ell : {0.5, 1.0, 3.0}) EXPECT_NEAR(eval_w_ell(e.problem, make_vector({0.0}), ell).value, 0.0, 1e-12);
  // Elsewhere w_ell(x) = |f'(x)|^2 / (2 ell) = 2 x^2 / ell.
  EXPECT_NEAR(eval_w_ell(e.problem, make_vector({0.5}), 1.0).value, 0.5, 1e-9);
}

TEST(EvalWEll, CompositeMatchesBruteForce) {
  // f = (x - 1)^2 / 2, g = |x|, x = 0, ell = 1.
  auto set = FeasibleSet::reals(1);
  set.set_bounding_box(Box{make_vector({-4.0}), make_vector({4.0})});
  const auto p = single(smooth_quadratic(Matrix::Constant(1, 1, 1.0), make_vector({-1.0}), 0.5), convex_abs(1),
                        convex_facts(1.0), set);
  const double ref = brute_force_1d(p, 0.0, 1.0, true, -4.0, 4.0, 160000);
  EXPECT_NEAR(eval_w_ell(p, make_vector({0.0}), 1.0).value, ref, 1e-6);
  const auto g = grid_oracle_maxmin(p, make_vector({0.0}), 1.0, true, 4001);
  EXPECT_NEAR(eval_w_ell(p, make_vector({0.0}), 1.0).value, g.value, g.slack);
}

TEST(EvalWEll, EqualsUEllWhenSmoothPartsVanish) {
  const auto e = builtin("l1-sq-2d");
  const DualSolveConfig cfg;
  for (const auto& x : {make_vector({0.5, 1.0}), make_vector({-2.0, 0.3}), make_vector({2.0, -2.0})}) {
    for (double ell : {0.5, 1.0, 2.0}) {
      const double w = eval_w_ell(e.problem, x, ell, cfg).value;
      const double u = eval_u_ell(e.problem, x, ell, cfg).value;
      EXPECT_NEAR(w, u, 2.0 * cfg.eval_tolerance());
    }
  }
}

TEST(EvalU0, LevelboundPairVanishes) {
  const auto e = builtin("square-zero-pair");
  for (double x : {-3.0, -1.0, 0.0, 0.7, 2.5}) {
    const auto r = eval_u0(e.problem, make_vector({x}));
    EXPECT_EQ(r.route, "grid");
    EXPECT_NEAR(r.value, 0.0, r.fw_gap + 1e-15);
  }
}

TEST(EvalU0, StronglyConvexPairDualRoute) {
  const auto e = builtin("quad-pair-1d");
  const auto zero = eval_u0(e.problem, make_vector({0.0}));
  EXPECT_EQ(zero.route, "dual");
  EXPECT_NEAR(zero.value, 0.0, 1e-9);
  // x = 2: sup_y min((1 - (y-1)^2), (9 - (y+1)^2)) = 1 at y = 1.
  const auto two = eval_u0(e.problem, make_vector({2.0}));
  EXPECT_NEAR(two.value, 1.0, 1e-7);
  EXPECT_NEAR(two.value, brute_force_1d(e.problem, 2.0, 0.0, false, -5.0, 5.0, 200000), 1e-6);
}

TEST(EvalU0, UnsupportedWithoutRoute) {
  // Not strongly convex and n = 4 with no box.
  std::vector<Objective> objs{{smooth_zero(4), convex_abs(4)}};
  MultiobjectiveProblem p(4, std::move(objs), FeasibleSet::reals(4), {convex_facts()});
  try {
    eval_u0(p, Vector::Zero(4));
    FAIL() << "expected UnsupportedProblem";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::UnsupportedProblem);
  }
}

TEST(Evaluate, InfeasiblePointRejected) {
  const auto e = builtin("quad-pair-1d-box");
  EXPECT_THROW(eval_w_ell(e.problem, make_vector({0.0}), 1.0), Error);
  EXPECT_THROW(eval_u_ell(e.problem, make_vector({1.0}), 0.0), Error);
}

TEST(Evaluate, ValueBoundsTheLowerEstimate) {
  for (const char* id : {"quad-triple-2d", "composite-box-2d", "random-quadratic-abs-2d"}) {
    const auto e = builtin(id);
    Rng rng(1);
    for (int k = 0; k < 4; ++k) {
      const Vector x = detail::sample_feasible(e.problem, rng);
      for (auto kind : {MeritKind::UEll, MeritKind::WEll}) {
        const auto r = evaluate(kind, e.problem, x, 1.0);
        EXPECT_GE(r.value, r.lower_bound - 1e-9) << id;
        EXPECT_LE(r.value - r.lower_bound, 1e-5) << id;
      }
    }
  }
}

// --- grid oracle -----------------------------------------------------------------------

TEST(GridOracle, SmallExamples) {
  const auto abs = builtin("single-abs");
  const auto g = grid_oracle_maxmin(abs.problem, make_vector({0.5}), 1.0, false, 4001);
  EXPECT_NEAR(g.value, 0.375, g.slack);
  const auto neg = builtin("single-negsq");
  const auto w = grid_oracle_maxmin(neg.problem, make_vector({0.0}), 1.0, true, 4001);
  EXPECT_NEAR(w.value, 0.0, w.slack + 1e-15);
  const auto lb = builtin("square-zero-pair");
  EXPECT_NEAR(grid_oracle_maxmin(lb.problem, make_vector({1.3}), 0.0, false, 4001).value, 0.0, 1e-15);
}

TEST(GridOracle, DimensionLimit) {
  const auto e = builtin("random-quadratic-4d");
  try {
    grid_oracle_maxmin(e.problem, Vector::Zero(4), 1.0, false, 11);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::DimensionTooLarge);
  }
}

// --- directional derivatives -------------------------------------------------------------

TEST(DirectionalDerivative, ZeroDirectionIsExactlyZero) {
  const auto e = builtin("quad-triple-2d");
  const Vector x = make_vector({1.5, 0.7});
  EXPECT_EQ(directional_derivative_u_ell(e.problem, x, x, 1.0), 0.0);
  EXPECT_EQ(directional_derivative_w_ell(e.problem, x, x, 1.0), 0.0);
}

TEST(DirectionalDerivative, UEllMatchesFiniteDifferences) {
  const auto e = builtin("random-quadratic-2d");
  const auto cfg = tight();
  const Vector x = make_vector({2.0, -1.5});
  const Vector z = make_vector({0.5, 1.0});
  const double got = directional_derivative_u_ell(e.problem, x, z, 1.0, cfg);
  const Vector d = z - x;
  const double h = 1e-4;
  const double fd = (eval_u_ell(e.problem, x + h * d, 1.0, cfg).value - eval_u_ell(e.problem, x - h * d, 1.0, cfg).value) / (2 * h);
  EXPECT_NEAR(got, fd, 1e-4 * (1.0 + std::abs(fd)));
}

TEST(DirectionalDerivative, WEllMatchesFiniteDifferences) {
  const auto e = builtin("quad-triple-2d");
  const auto cfg = tight();
  const Vector x = make_vector({2.0, 2.0});
  const Vector z = make_vector({-1.0, 0.5});
  const double got = directional_derivative_w_ell(e.problem, x, z, 1.0, cfg);
  const Vector d = z - x;
  const double h = 1e-4;
  const double fd = (eval_w_ell(e.problem, x + h * d, 1.0, cfg).value - eval_w_ell(e.problem, x - h * d, 1.0, cfg).value) / (2 * h);
  EXPECT_NEAR(got, fd, 1e-4 * (1.0 + std::abs(fd)));
}

TEST(DirectionalDerivative, NonnegativeAtWeakParetoPoint) {
  const auto e = builtin("quad-pair-2d");
  const Vector x = make_vector({0.0, 0.5});
  Rng rng(8);
  for (int k = 0; k < 10; ++k) {
    const Vector z = x + rng.normal_vector(2);
    EXPECT_GE(directional_derivative_u_ell(e.problem, x, z, 1.0), -1e-6);
  }
}

TEST(DirectionalDerivative, WAgreesWithUWhenSmoothPartsVanish) {
  const auto e = builtin("single-abs");
  const Vector x = make_vector({0.4});
  const Vector z = make_vector({1.4});
  EXPECT_NEAR(directional_derivative_w_ell(e.problem, x, z, 1.0), directional_derivative_u_ell(e.problem, x, z, 1.0), 1e-8);
  // u_1(x) = |x| - x^2/2 near 0.4: derivative 1 - x = 0.6 along d = 1.
  EXPECT_NEAR(directional_derivative_u_ell(e.problem, x, z, 1.0), 0.6, 1e-8);
}

TEST(DirectionalDerivative, HessianRequired) {
  ConvexTerm g = convex_zero(1);
  SmoothTerm f = smooth_quadratic(Matrix::Constant(1, 1, 1.0), Vector::Zero(1), 0.0);
  f.hessian = nullptr;
  const auto p = single(f, g, convex_facts(1.0), FeasibleSet::reals(1));
  try {
    directional_derivative_w_ell(p, make_vector({1.0}), make_vector({0.0}), 1.0);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::HessianRequired);
  }
}

TEST(StationarityResidual, Examples) {
  const auto neg = builtin("single-negsq");
  EXPECT_NEAR(pareto_stationarity_residual(neg.problem, make_vector({0.0}), 1.0), 0.0, 1e-12);
  const auto abs = builtin("single-abs");
  EXPECT_NEAR(pareto_stationarity_residual(abs.problem, make_vector({0.0}), 1.0), 0.0, 1e-12);
  EXPECT_NEAR(pareto_stationarity_residual(abs.problem, make_vector({0.5}), 1.0), 0.375, 1e-9);
  const auto pair = builtin("quad-pair-1d");
  const double lower = grid_oracle_maxmin(pair.problem, make_vector({2.5}), 1.0, true, 4001).value;
  EXPECT_GT(lower, 0.1);
  EXPECT_GE(pareto_stationarity_residual(pair.problem, make_vector({2.5}), 1.0), lower - 1e-9);
}
