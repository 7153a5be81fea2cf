#pragma once

// Evaluation of the three merit functions
//
//   u0(x)   = sup_{y in S} min_i F_i(x) - F_i(y)
//   u_l(x)  = max_{y in S} min_i F_i(x) - F_i(y) - (l/2)|x - y|^2
//   w_l(x)  = max_{y in S} min_i grad f_i(x)^T (x - y) + g_i(x) - g_i(y) - (l/2)|x - y|^2
//
// through their simplex-constrained duals. Each dual objective is convex in
// the weights with an explicit gradient, so Frank-Wolfe applies directly; the
// maximizer in y falls out of the inner problem at the final weights.

#include "merit/config.hpp"
#include "merit/inner_solver.hpp"
#include "merit/problem.hpp"
#include "merit/prox.hpp"
#include "merit/simplex_fw.hpp"

#include <string>

namespace merit {

enum class MeritKind { U0, UEll, WEll };

inline const char* to_string(MeritKind k) {
  switch (k) {
    case MeritKind::U0: return "u0";
    case MeritKind::UEll: return "u_ell";
    case MeritKind::WEll: return "w_ell";
  }
  return "?";
}

inline MeritKind parse_merit_kind(const std::string& s) {
  if (s == "u0") return MeritKind::U0;
  if (s == "u_ell") return MeritKind::UEll;
  if (s == "w_ell") return MeritKind::WEll;
  throw Error(ErrorCode::InvalidArgument, "unknown merit kind '" + s + "'");
}

struct MeritEvaluation {
  MeritKind kind = MeritKind::UEll;
  double ell = 0.0;
  double value = 0.0;        // dual objective at exit: an upper estimate
  double lower_bound = 0.0;  // primal integrand at (x, maximizer)
  Vector maximizer;
  SimplexWeights dual_weights;
  double fw_gap = 0.0;
  std::size_t iterations = 0;
  std::size_t oracle_calls = 0;
  std::size_t inner_iterations = 0;
  bool converged = true;
  std::string route = "dual";
};

namespace detail {

inline void require_feasible(const MultiobjectiveProblem& p, const Vector& x) {
  if (x.size() != p.dimension()) throw Error(ErrorCode::InconsistentDimensions, "point dimension mismatch");
  if (!p.feasible_set().contains(x)) throw Error(ErrorCode::InvalidArgument, "point is not in S");
}

inline double primal_integrand(const MultiobjectiveProblem& p, const Vector& x, const Vector& y, double ell,
                               bool linearized) {
  double best = std::numeric_limits<double>::infinity();
  const double reg = 0.5 * ell * (x - y).squaredNorm();
  for (Index i = 0; i < p.objective_count(); ++i) {
    double v;
    if (linearized) {
      const auto& o = p.objective(i);
      v = o.f.gradient(x).dot(x - y) + o.g.value(x) - o.g.value(y) - reg;
    } else {
      v = p.value(i, x) - p.value(i, y) - reg;
    }
    best = std::min(best, v);
  }
  return best;
}

inline MeritEvaluation finish(MeritKind kind, double ell, SimplexMinimum&& sm, double lower) {
  MeritEvaluation e;
  e.kind = kind;
  e.ell = ell;
  e.value = sm.at.value;
  e.lower_bound = lower;
  e.maximizer = std::move(sm.at.maximizer);
  e.dual_weights = std::move(sm.weights);
  e.fw_gap = sm.gap;
  e.iterations = sm.iterations;
  e.oracle_calls = sm.oracle_calls;
  e.inner_iterations = sm.at.inner_iterations;
  e.converged = sm.converged && sm.at.inner_converged;
  return e;
}

}  // namespace detail

/// Objective of the u_ell dual at weights lambda:
///   value    = sum_i lambda_i F_i(x) - ell * E_{(1/ell) sum lambda_i F_i + ind_S}(x)
///   gradient = F(x) - F(y_lambda)
/// where y_lambda is the prox point solved by solve_regularized_weighted.
inline DualPoint u_ell_dual(const MultiobjectiveProblem& p, const Vector& x, double ell,
                            const SimplexWeights& lambda, const InnerSolveConfig& inner) {
  const InnerSolution sol = solve_regularized_weighted(p, lambda, x, ell, inner);
  const Vector Fx = p.values(x);
  const Vector Fy = p.values(sol.point);
  DualPoint out;
  out.gradient = Fx - Fy;
  out.value = lambda.values().dot(out.gradient) - 0.5 * ell * (x - sol.point).squaredNorm();
  out.maximizer = sol.point;
  out.inner_iterations = sol.iterations;
  out.inner_converged = sol.converged;
  return out;
}

/// Objective of the w_ell dual at weights gamma, with c = x - (1/ell) J^T gamma
/// and y = prox_{(1/ell) sum gamma_i g_i + ind_S}(c):
///   value    = sum_i gamma_i [grad f_i(x)^T (x - y) + g_i(x) - g_i(y)] - (ell/2)|x - y|^2
///   gradient = g(x) - g(y) - J (y - x)
inline DualPoint w_ell_dual(const MultiobjectiveProblem& p, const Vector& x, double ell,
                            const SimplexWeights& gamma, const InnerSolveConfig& inner) {
  const Matrix J = p.smooth_jacobian(x);
  const Vector c = x - J.transpose() * gamma.values() / ell;
  const auto terms = convex_terms(p);
  const WeightedProx wp = weighted_sum_prox(terms, gamma, c, 1.0 / ell, p.feasible_set(), &inner);
  const Vector& y = wp.point;
  const Index m = p.objective_count();
  Vector gx(m), gy(m);
  for (Index i = 0; i < m; ++i) {
    gx[i] = p.objective(i).g.value(x);
    gy[i] = p.objective(i).g.value(y);
  }
  DualPoint out;
  out.gradient = gx - gy - J * (y - x);
  out.value = gamma.values().dot(out.gradient) - 0.5 * ell * (x - y).squaredNorm();
  out.maximizer = y;
  out.inner_iterations = wp.iterations;
  return out;
}

/// Objective of the u0 dual (strongly convex problems):
///   value = sum_i lambda_i F_i(x) - min_{y in S} sum_i lambda_i F_i(y), gradient = F(x) - F(y_lambda).
inline DualPoint u0_dual(const MultiobjectiveProblem& p, const Vector& x, const SimplexWeights& lambda,
                         const InnerSolveConfig& inner) {
  const InnerSolution sol = solve_weighted_scalarization(p, lambda, inner, &x);
  DualPoint out;
  out.gradient = p.values(x) - p.values(sol.point);
  out.value = lambda.values().dot(out.gradient);
  out.maximizer = sol.point;
  out.inner_iterations = sol.iterations;
  out.inner_converged = sol.converged;
  return out;
}

inline MeritEvaluation eval_u_ell(const MultiobjectiveProblem& p, const Vector& x, double ell,
                                  const DualSolveConfig& cfg = {}) {
  cfg.validate();
  if (!(ell > 0.0)) throw Error(ErrorCode::InvalidArgument, "ell must be positive");
  detail::require_convex(p, "eval_u_ell");
  detail::require_feasible(p, x);
  auto sm = minimize_over_simplex(
      [&](const SimplexWeights& w) { return u_ell_dual(p, x, ell, w, cfg.inner); }, p.objective_count(),
      cfg.gap_tol, cfg.max_iter);
  const double lower = detail::primal_integrand(p, x, sm.at.maximizer, ell, false);
  return detail::finish(MeritKind::UEll, ell, std::move(sm), lower);
}

inline MeritEvaluation eval_w_ell(const MultiobjectiveProblem& p, const Vector& x, double ell,
                                  const DualSolveConfig& cfg = {}) {
  cfg.validate();
  if (!(ell > 0.0)) throw Error(ErrorCode::InvalidArgument, "ell must be positive");
  detail::require_feasible(p, x);
  auto sm = minimize_over_simplex(
      [&](const SimplexWeights& w) { return w_ell_dual(p, x, ell, w, cfg.inner); }, p.objective_count(),
      cfg.gap_tol, cfg.max_iter);
  const double lower = detail::primal_integrand(p, x, sm.at.maximizer, ell, true);
  return detail::finish(MeritKind::WEll, ell, std::move(sm), lower);
}

/// u0 by the dual route when every F_i is declared strongly convex, else by
/// the grid route over S intersected with the bounding box (n <= 3). The grid
/// route is a lower estimate whenever S extends past the box.
inline MeritEvaluation eval_u0(const MultiobjectiveProblem& p, const Vector& x, const DualSolveConfig& cfg = {}) {
  cfg.validate();
  detail::require_feasible(p, x);
  if (p.all_strongly_convex() && p.all_F_convex()) {
    auto sm = minimize_over_simplex([&](const SimplexWeights& w) { return u0_dual(p, x, w, cfg.inner); },
                                    p.objective_count(), cfg.gap_tol, cfg.max_iter);
    const double lower = detail::primal_integrand(p, x, sm.at.maximizer, 0.0, false);
    auto e = detail::finish(MeritKind::U0, 0.0, std::move(sm), lower);
    e.route = "dual";
    return e;
  }
  if (p.dimension() <= 3 && p.feasible_set().bounding_box()) {
    const auto g = grid_oracle_maxmin(p, x, 0.0, false, cfg.grid_points(p.dimension()));
    MeritEvaluation e;
    e.kind = MeritKind::U0;
    e.ell = 0.0;
    e.value = g.value;
    e.lower_bound = g.value;
    e.maximizer = g.maximizer;
    // The objective attaining the min at the witness.
    Index arg = 0;
    double best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < p.objective_count(); ++i) {
      const double v = p.value(i, x) - p.value(i, g.maximizer);
      if (v < best) {
        best = v;
        arg = i;
      }
    }
    e.dual_weights = SimplexWeights::vertex(p.objective_count(), arg);
    e.fw_gap = g.slack;
    e.route = "grid";
    return e;
  }
  throw Error(ErrorCode::UnsupportedProblem,
              "u0 needs declared strong convexity (dual route) or n <= 3 with a bounding box (grid route)");
}

inline MeritEvaluation evaluate(MeritKind kind, const MultiobjectiveProblem& p, const Vector& x, double ell,
                                const DualSolveConfig& cfg = {}) {
  switch (kind) {
    case MeritKind::U0: return eval_u0(p, x, cfg);
    case MeritKind::UEll: return eval_u_ell(p, x, ell, cfg);
    case MeritKind::WEll: return eval_w_ell(p, x, ell, cfg);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown merit kind");
}

/// u_ell'(x; z - x) at the computed dual weights (one element of the optimal
/// weight set, so an upper estimate when that set is not a singleton).
inline double directional_derivative_u_ell(const MultiobjectiveProblem& p, const Vector& x, const Vector& z,
                                           const MeritEvaluation& at) {
  const Vector d = z - x;
  if (d.squaredNorm() == 0.0) return 0.0;
  double s = 0.0;
  for (Index i = 0; i < p.objective_count(); ++i) {
    const double w = at.dual_weights[i];
    if (w > 0.0) s += w * p.directional_derivative(i, x, d);
  }
  return s - at.ell * (x - at.maximizer).dot(d);
}

inline double directional_derivative_u_ell(const MultiobjectiveProblem& p, const Vector& x, const Vector& z,
                                           double ell, const DualSolveConfig& cfg = {}) {
  if (!p.feasible_set().contains(z)) throw Error(ErrorCode::InvalidArgument, "direction endpoint not in S");
  if ((z - x).squaredNorm() == 0.0) {
    detail::require_feasible(p, x);
    return 0.0;
  }
  return directional_derivative_u_ell(p, x, z, eval_u_ell(p, x, ell, cfg));
}

/// w_ell'(x; z - x) at the computed weights gamma:
///   sum_i gamma_i g_i'(x; d) - ell ([I - H/ell](x - y) - v/ell)^T d
/// with H = sum gamma_i hess f_i(x), v = sum gamma_i grad f_i(x), d = z - x.
inline double directional_derivative_w_ell(const MultiobjectiveProblem& p, const Vector& x, const Vector& z,
                                           const MeritEvaluation& at) {
  if (!p.all_hessians()) throw Error(ErrorCode::HessianRequired, "w_ell directional derivative needs hessians");
  const Vector d = z - x;
  if (d.squaredNorm() == 0.0) return 0.0;
  const Index n = p.dimension();
  Matrix H = Matrix::Zero(n, n);
  Vector v = Vector::Zero(n);
  double s = 0.0;
  for (Index i = 0; i < p.objective_count(); ++i) {
    const double w = at.dual_weights[i];
    if (w <= 0.0) continue;
    const auto& o = p.objective(i);
    H += w * o.f.hessian(x);
    v += w * o.f.gradient(x);
    s += w * o.g.directional_derivative(x, d);
  }
  const double ell = at.ell;
  const Vector r = (x - at.maximizer) - H * (x - at.maximizer) / ell - v / ell;
  return s - ell * r.dot(d);
}

inline double directional_derivative_w_ell(const MultiobjectiveProblem& p, const Vector& x, const Vector& z,
                                           double ell, const DualSolveConfig& cfg = {}) {
  if (!p.all_hessians()) throw Error(ErrorCode::HessianRequired, "w_ell directional derivative needs hessians");
  if (!p.feasible_set().contains(z)) throw Error(ErrorCode::InvalidArgument, "direction endpoint not in S");
  if ((z - x).squaredNorm() == 0.0) {
    detail::require_feasible(p, x);
    return 0.0;
  }
  return directional_derivative_w_ell(p, x, z, eval_w_ell(p, x, ell, cfg));
}

/// w_ell(x) as a certificate: zero (within the evaluation budget) exactly at
/// Pareto stationary points.
inline double pareto_stationarity_residual(const MultiobjectiveProblem& p, const Vector& x, double ell,
                                           const DualSolveConfig& cfg = {}) {
  return eval_w_ell(p, x, ell, cfg).value;
}

}  // namespace merit
