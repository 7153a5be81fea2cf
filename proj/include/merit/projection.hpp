#pragma once

#include "merit/core.hpp"
#include "merit/problem.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace merit {

/// Euclidean projection onto the standard simplex (sort-and-threshold).
inline SimplexWeights project_simplex(const Vector& v) {
  const Index m = v.size();
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "project_simplex needs m >= 1");
  std::vector<double> u(v.data(), v.data() + m);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Index k = 0; k < m; ++k) {
    cumsum += u[static_cast<std::size_t>(k)];
    const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (u[static_cast<std::size_t>(k)] - t > 0.0) theta = t;
  }
  Vector w = (v.array() - theta).cwiseMax(0.0).matrix();
  // A zero vector can only come from rounding; fall back to the argmax vertex.
  if (w.sum() <= 0.0) {
    Index best = 0;
    v.maxCoeff(&best);
    return SimplexWeights::vertex(m, best);
  }
  return SimplexWeights(w / w.sum());
}

inline Vector project_box(const Vector& x, const Vector& lo, const Vector& hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

inline Vector project_ball(const Vector& x, const Vector& center, double radius) {
  const Vector d = x - center;
  const double norm = d.norm();
  if (norm <= radius) return x;
  return center + (radius / norm) * d;
}

inline Vector FeasibleSet::project(const Vector& x) const {
  switch (kind_) {
    case Kind::Reals: return x;
    case Kind::Box: return project_box(x, lo_, hi_);
    case Kind::Ball: return project_ball(x, center_, radius_);
  }
  return x;
}

}  // namespace merit
