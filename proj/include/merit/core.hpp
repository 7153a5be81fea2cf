#pragma once

// Basic vocabulary shared by every merit-function module: vector aliases,
// the error type, the finite "infinity" sentinel and simplex weights.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace merit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Finite stand-in for +inf returned by convex terms outside their domain.
/// Never summed with anything: composite evaluation short-circuits on it.
inline constexpr double kInfinity = 1e300;

inline bool is_infinite_value(double v) { return v >= kInfinity; }

/// Per-coordinate feasibility tolerance used by FeasibleSet::contains.
inline constexpr double kFeasibilityTol = 1e-9;

enum class ErrorCode {
  OracleInconsistent,
  ProxUnavailable,
  ConvexityRequired,
  HessianRequired,
  Unbounded,
  DimensionTooLarge,
  UnsupportedProblem,
  MetadataMissing,
  DistanceOracleMissing,
  ParseError,
  UnknownKind,
  InconsistentDimensions,
  UnknownId,
  InvalidArgument,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::OracleInconsistent: return "OracleInconsistent";
    case ErrorCode::ProxUnavailable: return "ProxUnavailable";
    case ErrorCode::ConvexityRequired: return "ConvexityRequired";
    case ErrorCode::HessianRequired: return "HessianRequired";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::UnsupportedProblem: return "UnsupportedProblem";
    case ErrorCode::MetadataMissing: return "MetadataMissing";
    case ErrorCode::DistanceOracleMissing: return "DistanceOracleMissing";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::InconsistentDimensions: return "InconsistentDimensions";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A point of the standard simplex {w >= 0, sum w = 1}.
class SimplexWeights {
 public:
  static constexpr double kSumTol = 1e-12;

  SimplexWeights() = default;

  /// Validates membership; throws InvalidArgument otherwise.
  explicit SimplexWeights(Vector w) : w_(std::move(w)) {
    if (w_.size() < 1) throw Error(ErrorCode::InvalidArgument, "simplex weights need m >= 1");
    for (Index i = 0; i < w_.size(); ++i) {
      if (!(w_[i] >= 0.0)) throw Error(ErrorCode::InvalidArgument, "negative simplex weight");
    }
    if (std::abs(w_.sum() - 1.0) > 1e-9) {
      throw Error(ErrorCode::InvalidArgument, "simplex weights must sum to one");
    }
    renormalize();
  }

  static SimplexWeights barycenter(Index m) {
    return SimplexWeights(Vector::Constant(m, 1.0 / static_cast<double>(m)));
  }

  static SimplexWeights vertex(Index m, Index i) {
    Vector w = Vector::Zero(m);
    w[i] = 1.0;
    return SimplexWeights(std::move(w));
  }

  const Vector& values() const noexcept { return w_; }
  Index size() const noexcept { return w_.size(); }
  double operator[](Index i) const { return w_[i]; }

 private:
  // Pushes the sum to 1 within kSumTol after arithmetic drift.
  void renormalize() {
    w_ = w_.cwiseMax(0.0);
    w_ /= w_.sum();
  }

  Vector w_;
};

inline Vector make_vector(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

inline Vector to_vector(const std::vector<double>& values) {
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

inline std::vector<double> to_std(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace merit
