#pragma once

// Iterative prox of a weighted sum: argmin_{y in S} t * sum_i w_i g_i(y) +
// |c - y|^2 / 2, for terms whose individual prox oracles are known but
// whose sum has no closed form. Uses the parallel Dykstra-like splitting:
// each term (and the indicator of S) gets its own auxiliary sequence and
// the iterate is their average.

#include "merit/config.hpp"
#include "merit/problem.hpp"
#include "merit/projection.hpp"

#include <span>
#include <vector>

namespace merit {

struct SplittingResult {
  Vector point;
  std::size_t iterations = 0;
  bool converged = false;
};

inline SplittingResult prox_of_weighted_sum_iterative(std::span<const ConvexTerm* const> terms,
                                                      const SimplexWeights& weights, const Vector& c,
                                                      double t, const FeasibleSet& set,
                                                      const InnerSolveConfig& cfg) {
  struct Block {
    const ConvexTerm* term;  // nullptr stands for the indicator of S
    double scale;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double w = weights[static_cast<Index>(i)];
    if (w > 0.0 && !terms[i]->is_zero) blocks.push_back({terms[i], t * w});
  }
  if (!set.is_reals()) blocks.push_back({nullptr, 0.0});

  SplittingResult out;
  if (blocks.empty()) {
    out.point = c;
    out.converged = true;
    return out;
  }

  const double k = static_cast<double>(blocks.size());
  Vector x = c;
  std::vector<Vector> z(blocks.size(), c);
  std::vector<Vector> p(blocks.size());
  // Absolute step tolerance, two orders tighter than the caller's residual
  // target so the outer residual is not dominated by splitting error.
  const double step_tol = 1e-2 * cfg.tol;
  const std::size_t max_iter = 20 * cfg.max_iter;

  for (std::size_t it = 1; it <= max_iter; ++it) {
    Vector next = Vector::Zero(c.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      p[b] = blocks[b].term ? blocks[b].term->prox(z[b], k * blocks[b].scale) : set.project(z[b]);
      next += p[b];
    }
    next /= k;
    for (std::size_t b = 0; b < blocks.size(); ++b) z[b] += next - p[b];
    const double move = (next - x).norm();
    x = std::move(next);
    out.iterations = it;
    if (move <= step_tol) {
      out.converged = true;
      break;
    }
  }
  out.point = set.project(x);
  return out;
}

}  // namespace merit
