#pragma once

// Closed-form proximal operators, a small catalog of convex terms, the
// Moreau envelope and the prox of a simplex-weighted sum of terms.
//
// Scale convention used everywhere: prox(x, t) = argmin_y g(y) + |x - y|^2/(2t).
// A merit parameter ell maps to t = 1 / ell.

#include "merit/config.hpp"
#include "merit/problem.hpp"
#include "merit/projection.hpp"
#include "merit/prox_splitting.hpp"

#include <cstdio>
#include <span>
#include <string>
#include <vector>

namespace merit {

inline Vector prox_zero(const Vector& x, double /*t*/) { return x; }

/// Soft-threshold: sign(x) * max(|x| - t, 0), coordinatewise.
inline Vector prox_abs(const Vector& x, double t) {
  Vector y(x.size());
  for (Index j = 0; j < x.size(); ++j) {
    const double a = std::abs(x[j]) - t;
    y[j] = a > 0.0 ? std::copysign(a, x[j]) : 0.0;
  }
  return y;
}

struct EnvelopeValue {
  double value;
  Vector minimizer;
};

/// E_{t g}(x) = min_y g(y) + |x - y|^2 / (2t), with its minimizer prox(x, t).
inline EnvelopeValue moreau_envelope(const ConvexTerm& g, const Vector& x, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "envelope scale must be positive");
  if (!g.has_prox()) throw Error(ErrorCode::ProxUnavailable, "convex term has no prox oracle");
  Vector y = g.prox(x, t);
  const double value = g.value(y) + (x - y).squaredNorm() / (2.0 * t);
  return {value, std::move(y)};
}

namespace detail {

inline std::string format_vector(const Vector& v) {
  std::string s = "[";
  char buf[32];
  for (Index j = 0; j < v.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", v[j]);
    if (j) s += ',';
    s += buf;
  }
  return s + "]";
}

inline std::vector<Index> all_coordinates(Index n) {
  std::vector<Index> out(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = j;
  return out;
}

}  // namespace detail

// --- catalog ---------------------------------------------------------------

inline ConvexTerm convex_zero(Index /*n*/) {
  ConvexTerm g;
  g.eval = [](const Vector&) { return 0.0; };
  g.prox = [](const Vector& x, double) { return x; };
  g.directional = [](const Vector&, const Vector&) { return 0.0; };
  g.key = "zero";
  g.support = std::vector<Index>{};
  g.is_zero = true;
  return g;
}

/// sum_j w_j |x_j - c_j| with w >= 0.
inline ConvexTerm convex_l1(Vector weights, Vector center) {
  if (weights.size() != center.size()) {
    throw Error(ErrorCode::InconsistentDimensions, "l1 weights and center differ in size");
  }
  if ((weights.array() < 0.0).any()) throw Error(ErrorCode::InvalidArgument, "l1 weights must be >= 0");
  ConvexTerm g;
  g.eval = [weights, center](const Vector& x) {
    return (weights.array() * (x - center).array().abs()).sum();
  };
  g.prox = [weights, center](const Vector& x, double t) {
    Vector y(x.size());
    for (Index j = 0; j < x.size(); ++j) {
      const double r = x[j] - center[j];
      const double a = std::abs(r) - t * weights[j];
      y[j] = center[j] + (a > 0.0 ? std::copysign(a, r) : 0.0);
    }
    return y;
  };
  g.directional = [weights, center](const Vector& x, const Vector& d) {
    double s = 0.0;
    for (Index j = 0; j < x.size(); ++j) {
      const double r = x[j] - center[j];
      s += weights[j] * (r > 0.0 ? d[j] : r < 0.0 ? -d[j] : std::abs(d[j]));
    }
    return s;
  };
  g.key = "l1:w=" + detail::format_vector(weights) + ";c=" + detail::format_vector(center);
  std::vector<Index> support;
  for (Index j = 0; j < weights.size(); ++j) {
    if (weights[j] > 0.0) support.push_back(j);
  }
  g.support = std::move(support);
  g.is_zero = (weights.array() == 0.0).all();
  return g;
}

/// |x|_1 on R^n.
inline ConvexTerm convex_abs(Index n) {
  ConvexTerm g = convex_l1(Vector::Ones(n), Vector::Zero(n));
  g.prox = [](const Vector& x, double t) { return prox_abs(x, t); };
  return g;
}

/// (coef / 2) |x - c|^2 with coef >= 0.
inline ConvexTerm convex_sqnorm(double coef, Vector center) {
  if (!(coef >= 0.0)) throw Error(ErrorCode::InvalidArgument, "sqnorm coefficient must be >= 0");
  ConvexTerm g;
  g.eval = [coef, center](const Vector& x) { return 0.5 * coef * (x - center).squaredNorm(); };
  g.prox = [coef, center](const Vector& x, double t) -> Vector {
    return (x + t * coef * center) / (1.0 + t * coef);
  };
  g.directional = [coef, center](const Vector& x, const Vector& d) { return coef * (x - center).dot(d); };
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", coef);
  g.key = std::string("sqnorm:a=") + buf + ";c=" + detail::format_vector(center);
  g.support = coef > 0.0 ? detail::all_coordinates(center.size()) : std::vector<Index>{};
  g.is_zero = coef == 0.0;
  return g;
}

// --- weighted sums -----------------------------------------------------------

enum class ProxStrategy { Identical, Zero, DisjointBlocks, Iterative };

inline const char* to_string(ProxStrategy s) {
  switch (s) {
    case ProxStrategy::Identical: return "identical";
    case ProxStrategy::Zero: return "zero";
    case ProxStrategy::DisjointBlocks: return "disjoint-blocks";
    case ProxStrategy::Iterative: return "iterative";
  }
  return "?";
}

struct WeightedProx {
  Vector point;
  ProxStrategy strategy;
  std::size_t iterations = 0;
};

/// prox of (sum_i w_i g_i + indicator_S) at x with scale t.
///
/// Strategies are tried in order and the first match wins: identical active
/// terms (S = R^n), all active terms zero (plain projection), active terms on
/// pairwise disjoint coordinate blocks (S = R^n), then the iterative splitting
/// when `iterative` is non-null. Terms with zero weight are inactive.
inline WeightedProx weighted_sum_prox(std::span<const ConvexTerm* const> terms, const SimplexWeights& weights,
                                      const Vector& x, double t, const FeasibleSet& set,
                                      const InnerSolveConfig* iterative = nullptr) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "prox scale must be positive");
  if (static_cast<Index>(terms.size()) != weights.size()) {
    throw Error(ErrorCode::InconsistentDimensions, "one weight per convex term required");
  }
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (weights[static_cast<Index>(i)] > 0.0) active.push_back(i);
  }

  bool all_zero = true;
  for (auto i : active) all_zero = all_zero && terms[i]->is_zero;
  for (auto i : active) {
    if (!terms[i]->is_zero && !terms[i]->has_prox()) {
      throw Error(ErrorCode::ProxUnavailable, "active convex term has no prox oracle");
    }
  }

  if (set.is_reals() && !all_zero) {
    bool identical = true;
    const std::string& key = terms[active.front()]->key;
    for (auto i : active) identical = identical && !terms[i]->key.empty() && terms[i]->key == key;
    if (active.size() == 1 || identical) {
      // Weights sum to one, so the weighted sum collapses to the shared term.
      const double w = active.size() == 1 ? weights[static_cast<Index>(active.front())] : 1.0;
      return {terms[active.front()]->prox(x, t * w), ProxStrategy::Identical, 0};
    }
  }

  if (all_zero) return {set.project(x), ProxStrategy::Zero, 0};

  if (set.is_reals()) {
    bool disjoint = true;
    std::vector<char> used(static_cast<std::size_t>(x.size()), 0);
    for (auto i : active) {
      if (terms[i]->is_zero) continue;
      if (!terms[i]->support) {
        disjoint = false;
        break;
      }
      for (Index j : *terms[i]->support) {
        if (used[static_cast<std::size_t>(j)]) disjoint = false;
        used[static_cast<std::size_t>(j)] = 1;
      }
    }
    if (disjoint) {
      Vector y = x;
      for (auto i : active) {
        if (!terms[i]->is_zero) y = terms[i]->prox(y, t * weights[static_cast<Index>(i)]);
      }
      return {std::move(y), ProxStrategy::DisjointBlocks, 0};
    }
  }

  if (!iterative) throw Error(ErrorCode::ProxUnavailable, "no closed form for this weighted prox");
  auto r = prox_of_weighted_sum_iterative(terms, weights, x, t, set, *iterative);
  return {std::move(r.point), ProxStrategy::Iterative, r.iterations};
}

inline std::vector<const ConvexTerm*> convex_terms(const MultiobjectiveProblem& p) {
  std::vector<const ConvexTerm*> out;
  out.reserve(p.objectives().size());
  for (const auto& o : p.objectives()) out.push_back(&o.g);
  return out;
}

}  // namespace merit
