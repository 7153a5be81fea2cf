#pragma once

#include "merit/core.hpp"

#include <cstddef>
#include <variant>

namespace merit {

struct FixedStep {
  double step = 1.0;
};

/// Shrink by `beta` until f(y+) <= f(y) + <grad, d> + (c / step) |d|^2.
/// c = 1/2 is the classical quadratic upper-bound test.
struct Backtracking {
  double beta = 0.5;
  double c = 0.5;
};

using StepRule = std::variant<FixedStep, Backtracking>;

struct InnerSolveConfig {
  double tol = 1e-8;  // prox-gradient residual |y - T(y)| / step
  std::size_t max_iter = 10000;
  StepRule step_rule = Backtracking{};

  void validate() const {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "inner tol must be positive");
    if (const auto* bt = std::get_if<Backtracking>(&step_rule)) {
      if (!(bt->beta > 0.0 && bt->beta < 1.0) || !(bt->c > 0.0 && bt->c < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "backtracking needs 0 < beta, c < 1");
      }
    } else if (!(std::get<FixedStep>(step_rule).step > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "fixed step must be positive");
    }
  }
};

struct DualSolveConfig {
  double gap_tol = 1e-7;
  std::size_t max_iter = 2000;
  InnerSolveConfig inner{};
  /// Points per axis for grid routes (u0 without declared strong convexity).
  std::size_t grid_points_1d = 4001;
  std::size_t grid_points_2d = 401;
  std::size_t grid_points_3d = 61;

  void validate() const {
    if (!(gap_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "gap_tol must be positive");
    inner.validate();
  }

  /// Error budget of a single merit evaluation.
  double eval_tolerance() const { return 10.0 * (gap_tol + inner.tol); }

  std::size_t grid_points(Index n) const {
    switch (n) {
      case 1: return grid_points_1d;
      case 2: return grid_points_2d;
      default: return grid_points_3d;
    }
  }
};

}  // namespace merit
