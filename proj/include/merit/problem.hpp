#pragma once

// Problem instances: m composite objectives F_i = f_i + g_i over a closed
// convex set S, exposed only through oracles. Every other module consumes
// these abstractions and nothing else.

#include "merit/core.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace merit {

/// Continuously differentiable (possibly nonconvex) part f_i.
struct SmoothTerm {
  std::function<double(const Vector&)> eval;
  std::function<Vector(const Vector&)> gradient;
  std::function<Matrix(const Vector&)> hessian;  // optional
  bool is_zero = false;

  bool has_hessian() const { return static_cast<bool>(hessian); }
};

/// Closed proper convex part g_i with a prox oracle.
///
/// `prox(x, t)` returns argmin_y g(y) + |x - y|^2 / (2t). `key` identifies
/// structurally identical terms (empty when unknown) and `support` lists the
/// coordinates the term depends on, when known. Both feed the dispatch in
/// weighted_sum_prox.
struct ConvexTerm {
  std::function<double(const Vector&)> eval;
  std::function<Vector(const Vector&, double)> prox;
  std::function<double(const Vector&, const Vector&)> directional;  // g'(x; d)
  std::function<bool(const Vector&)> domain;
  std::string key;
  std::optional<std::vector<Index>> support;
  bool is_zero = false;

  bool has_prox() const { return static_cast<bool>(prox); }

  bool in_domain(const Vector& x) const { return !domain || domain(x); }

  /// g(x), or kInfinity outside the domain.
  double value(const Vector& x) const { return in_domain(x) ? eval(x) : kInfinity; }

  /// One-sided derivative g'(x; d). Falls back to a forward difference.
  double directional_derivative(const Vector& x, const Vector& d) const {
    if (directional) return directional(x, d);
    if (d.squaredNorm() == 0.0) return 0.0;
    const double t = 1e-7;
    return (eval(x + t * d) - eval(x)) / t;
  }
};

struct Box {
  Vector lo;
  Vector hi;

  double diameter() const { return (hi - lo).norm(); }
  Vector center() const { return 0.5 * (lo + hi); }
};

class FeasibleSet {
 public:
  enum class Kind { Reals, Box, Ball };

  static FeasibleSet reals(Index n) {
    FeasibleSet s;
    s.kind_ = Kind::Reals;
    s.n_ = n;
    return s;
  }

  static FeasibleSet box(Vector lo, Vector hi) {
    if (lo.size() != hi.size()) throw Error(ErrorCode::InconsistentDimensions, "box bounds differ in size");
    for (Index j = 0; j < lo.size(); ++j) {
      if (!(lo[j] <= hi[j])) throw Error(ErrorCode::InvalidArgument, "box lower bound exceeds upper bound");
    }
    FeasibleSet s;
    s.kind_ = Kind::Box;
    s.n_ = lo.size();
    s.lo_ = std::move(lo);
    s.hi_ = std::move(hi);
    return s;
  }

  static FeasibleSet ball(Vector center, double radius) {
    if (!(radius >= 0.0)) throw Error(ErrorCode::InvalidArgument, "ball radius must be nonnegative");
    FeasibleSet s;
    s.kind_ = Kind::Ball;
    s.n_ = center.size();
    s.center_ = std::move(center);
    s.radius_ = radius;
    return s;
  }

  Kind kind() const { return kind_; }
  Index dimension() const { return n_; }
  bool is_reals() const { return kind_ == Kind::Reals; }
  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }
  const Vector& center() const { return center_; }
  double radius() const { return radius_; }

  bool contains(const Vector& x) const {
    switch (kind_) {
      case Kind::Reals: return true;
      case Kind::Box:
        for (Index j = 0; j < n_; ++j) {
          if (x[j] < lo_[j] - kFeasibilityTol || x[j] > hi_[j] + kFeasibilityTol) return false;
        }
        return true;
      case Kind::Ball: return (x - center_).norm() <= radius_ + kFeasibilityTol;
    }
    return false;
  }

  Vector project(const Vector& x) const;  // defined in prox.hpp

  /// Box used by grid oracles, samplers and unboundedness detection.
  std::optional<Box> bounding_box() const {
    if (override_box_) return override_box_;
    switch (kind_) {
      case Kind::Reals: return std::nullopt;
      case Kind::Box:
        if (!lo_.allFinite() || !hi_.allFinite()) return std::nullopt;
        return Box{lo_, hi_};
      case Kind::Ball:
        return Box{(center_.array() - radius_).matrix(), (center_.array() + radius_).matrix()};
    }
    return std::nullopt;
  }

  void set_bounding_box(Box b) { override_box_ = std::move(b); }
  bool has_explicit_bounding_box() const { return override_box_.has_value(); }

 private:
  Kind kind_ = Kind::Reals;
  Index n_ = 0;
  Vector lo_, hi_, center_;
  double radius_ = 0.0;
  std::optional<Box> override_box_;
};

/// Declared convexity facts for one objective. Validation can falsify them,
/// never certify them.
struct ObjectiveFacts {
  std::optional<double> mu;     // f_i is mu-convex
  std::optional<double> sigma;  // F_i is sigma-convex, sigma > 0
  std::optional<double> lip;    // grad f_i is L-Lipschitz
  bool f_convex = false;
  bool F_convex = false;
  bool F_strictly_convex = false;
};

using ConvexityMetadata = std::vector<ObjectiveFacts>;

struct Objective {
  SmoothTerm f;
  ConvexTerm g;
};

class MultiobjectiveProblem {
 public:
  MultiobjectiveProblem(Index n, std::vector<Objective> objectives, FeasibleSet set,
                        ConvexityMetadata metadata)
      : n_(n), objectives_(std::move(objectives)), set_(std::move(set)), metadata_(std::move(metadata)) {
    if (n_ < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
    if (objectives_.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one objective");
    if (set_.dimension() != n_) throw Error(ErrorCode::InconsistentDimensions, "feasible set dimension mismatch");
    if (metadata_.empty()) metadata_.resize(objectives_.size());
    if (metadata_.size() != objectives_.size()) {
      throw Error(ErrorCode::InconsistentDimensions, "metadata count differs from objective count");
    }
    for (const auto& o : objectives_) {
      if (!o.f.eval || !o.f.gradient || !o.g.eval) {
        throw Error(ErrorCode::InvalidArgument, "objective is missing an eval/gradient oracle");
      }
    }
  }

  Index dimension() const { return n_; }
  Index objective_count() const { return static_cast<Index>(objectives_.size()); }
  const std::vector<Objective>& objectives() const { return objectives_; }
  const Objective& objective(Index i) const { return objectives_[static_cast<std::size_t>(i)]; }
  const FeasibleSet& feasible_set() const { return set_; }
  FeasibleSet& feasible_set() { return set_; }
  const ConvexityMetadata& metadata() const { return metadata_; }
  ConvexityMetadata& metadata() { return metadata_; }
  const ObjectiveFacts& facts(Index i) const { return metadata_[static_cast<std::size_t>(i)]; }

  /// F_i(x) = f_i(x) + g_i(x); kInfinity when x leaves dom g_i.
  double value(Index i, const Vector& x) const {
    const auto& o = objective(i);
    const double gv = o.g.value(x);
    if (is_infinite_value(gv)) return kInfinity;
    return o.f.eval(x) + gv;
  }

  Vector values(const Vector& x) const {
    Vector out(objective_count());
    for (Index i = 0; i < objective_count(); ++i) out[i] = value(i, x);
    return out;
  }

  /// Rows are grad f_i(x): the Jacobian of the smooth part.
  Matrix smooth_jacobian(const Vector& x) const {
    Matrix J(objective_count(), n_);
    for (Index i = 0; i < objective_count(); ++i) J.row(i) = objective(i).f.gradient(x).transpose();
    return J;
  }

  /// F_i'(x; d) = grad f_i(x)^T d + g_i'(x; d).
  double directional_derivative(Index i, const Vector& x, const Vector& d) const {
    const auto& o = objective(i);
    return o.f.gradient(x).dot(d) + o.g.directional_derivative(x, d);
  }

  bool all_F_convex() const {
    for (const auto& f : metadata_) {
      if (!f.F_convex) return false;
    }
    return true;
  }

  bool all_strongly_convex() const {
    for (const auto& f : metadata_) {
      if (!f.sigma || !(*f.sigma > 0.0)) return false;
    }
    return true;
  }

  bool all_f_zero() const {
    for (const auto& o : objectives_) {
      if (!o.f.is_zero) return false;
    }
    return true;
  }

  bool all_hessians() const {
    for (const auto& o : objectives_) {
      if (!o.f.has_hessian()) return false;
    }
    return true;
  }

 private:
  Index n_;
  std::vector<Objective> objectives_;
  FeasibleSet set_;
  ConvexityMetadata metadata_;
};

}  // namespace merit
