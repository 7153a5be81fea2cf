#pragma once

#include "merit/problem.hpp"

#include <string>

namespace merit {

inline SmoothTerm smooth_zero(Index n) {
  SmoothTerm f;
  f.eval = [](const Vector&) { return 0.0; };
  f.gradient = [n](const Vector&) -> Vector { return Vector::Zero(n); };
  f.hessian = [n](const Vector&) -> Matrix { return Matrix::Zero(n, n); };
  f.is_zero = true;
  return f;
}

/// f(x) = 1/2 x^T Q x + b^T x + c, Q symmetric.
inline SmoothTerm smooth_quadratic(Matrix Q, Vector b, double c) {
  if (Q.rows() != Q.cols() || Q.rows() != b.size()) {
    throw Error(ErrorCode::InconsistentDimensions, "quadratic Q must be n x n with b of length n");
  }
  if (!Q.isApprox(Q.transpose(), 1e-12) && (Q - Q.transpose()).norm() > 1e-12) {
    throw Error(ErrorCode::InconsistentDimensions, "quadratic Q must be symmetric");
  }
  SmoothTerm f;
  f.eval = [Q, b, c](const Vector& x) { return 0.5 * x.dot(Q * x) + b.dot(x) + c; };
  f.gradient = [Q, b](const Vector& x) -> Vector { return Q * x + b; };
  f.hessian = [Q](const Vector&) -> Matrix { return Q; };
  return f;
}

/// f(x) = -|x|^2.
inline SmoothTerm smooth_negated_square(Index n) {
  SmoothTerm f;
  f.eval = [](const Vector& x) { return -x.squaredNorm(); };
  f.gradient = [](const Vector& x) -> Vector { return -2.0 * x; };
  f.hessian = [n](const Vector&) -> Matrix { return -2.0 * Matrix::Identity(n, n); };
  return f;
}

/// f(x) = sum_j (x_j^2 - 1)^2: stationary at every x with x_j in {-1, 0, 1}.
inline SmoothTerm smooth_double_well(Index /*n*/) {
  SmoothTerm f;
  f.eval = [](const Vector& x) { return (x.array().square() - 1.0).square().sum(); };
  f.gradient = [](const Vector& x) -> Vector {
    return (4.0 * x.array() * (x.array().square() - 1.0)).matrix();
  };
  f.hessian = [](const Vector& x) -> Matrix {
    return (12.0 * x.array().square() - 4.0).matrix().asDiagonal();
  };
  return f;
}

/// f(x) = sum_j log(1 + exp(x_j)), convex with grad Lipschitz constant 1/4.
inline SmoothTerm smooth_softplus(Index n) {
  SmoothTerm f;
  auto sp = [](double t) { return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); };
  f.eval = [sp](const Vector& x) {
    double s = 0.0;
    for (Index j = 0; j < x.size(); ++j) s += sp(x[j]);
    return s;
  };
  f.gradient = [](const Vector& x) -> Vector { return (1.0 / (1.0 + (-x.array()).exp())).matrix(); };
  f.hessian = [n](const Vector& x) -> Matrix {
    Vector s = (1.0 / (1.0 + (-x.array()).exp())).matrix();
    Matrix H = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) H(j, j) = s[j] * (1.0 - s[j]);
    return H;
  };
  return f;
}

/// Compiled-in registry backing `custom` smooth kinds in problem files.
inline SmoothTerm smooth_custom(const std::string& id, Index n) {
  if (id == "double_well") return smooth_double_well(n);
  if (id == "softplus") return smooth_softplus(n);
  throw Error(ErrorCode::UnknownKind, "unknown custom smooth term '" + id + "'");
}

}  // namespace merit
