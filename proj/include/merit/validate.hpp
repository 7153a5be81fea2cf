#pragma once

// Sampling-based falsification of oracle consistency and declared convexity
// facts. Passing says nothing was caught; it never certifies a modulus.

#include "merit/problem.hpp"
#include "merit/projection.hpp"
#include "merit/random.hpp"

#include <string>
#include <vector>

namespace merit {

struct ValidationCheck {
  std::string name;
  Index objective = -1;  // -1 for checks on the feasible set
  double worst = -std::numeric_limits<double>::infinity();  // worst (lhs - rhs); > tolerance fails
  double tolerance = 0.0;
  Vector witness;
  std::size_t samples = 0;

  bool passed() const { return worst <= tolerance; }

  void record(double violation, const Vector& at) {
    ++samples;
    if (violation > worst) {
      worst = violation;
      witness = at;
    }
  }
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed()) return false;
    }
    return true;
  }

  const ValidationCheck* first_failure() const {
    for (const auto& c : checks) {
      if (!c.passed()) return &c;
    }
    return nullptr;
  }

  const ValidationCheck* find(const std::string& name, Index objective = -1) const {
    for (const auto& c : checks) {
      if (c.name == name && c.objective == objective) return &c;
    }
    return nullptr;
  }
};

namespace detail {

inline Vector sample_feasible(const MultiobjectiveProblem& p, Rng& rng) {
  const auto box = p.feasible_set().bounding_box();
  const Index n = p.dimension();
  const Vector lo = box ? box->lo : Vector::Constant(n, -3.0);
  const Vector hi = box ? box->hi : Vector::Constant(n, 3.0);
  return p.feasible_set().project(rng.uniform_vector(lo, hi));
}

inline double rel_scale(double a, double b) { return 1.0 + std::max(std::abs(a), std::abs(b)); }

}  // namespace detail

/// Runs every oracle invariant at `samples` random feasible points.
inline ValidationReport inspect_problem(const MultiobjectiveProblem& p, std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  const Index n = p.dimension();
  const Index m = p.objective_count();
  ValidationReport report;
  // References returned by `add` must stay valid: at most 12 checks per
  // objective plus 3 for the set.
  report.checks.reserve(static_cast<std::size_t>(12 * m + 3));
  auto add =[&](std::string name, Index obj, double tol) -> ValidationCheck& {
    report.checks.push_back(ValidationCheck{std::move(name), obj, -std::numeric_limits<double>::infinity(), tol, {}, 0});
    return report.checks.back();
  };

  std::vector<Vector> pts;
  for (std::size_t s = 0; s < samples; ++s) pts.push_back(detail::sample_feasible(p, rng));

  for (Index i = 0; i < m; ++i) {
    const auto& o = p.objective(i);
    const auto& facts = p.facts(i);

    auto& grad = add("gradient_fd", i, 1e-5);
    auto& hess = add("hessian_fd", i, 1e-4);
    auto& sym = add("hessian_symmetry", i, 1e-10);
    auto& sum = add("composite_sum", i, 0.0);
    for (const auto& x : pts) {
      const Vector g = o.f.gradient(x);
      Vector fd(n);
      for (Index j = 0; j < n; ++j) {
        const double h = 1e-5 * (1.0 + std::abs(x[j]));
        Vector e = Vector::Zero(n);
        e[j] = h;
        fd[j] = (o.f.eval(x + e) - o.f.eval(x - e)) / (2.0 * h);
      }
      grad.record((fd - g).lpNorm<Eigen::Infinity>() / (1.0 + g.lpNorm<Eigen::Infinity>()), x);
      if (o.f.has_hessian()) {
        const Matrix H = o.f.hessian(x);
        Matrix Hfd(n, n);
        for (Index j = 0; j < n; ++j) {
          const double h = 1e-5 * (1.0 + std::abs(x[j]));
          Vector e = Vector::Zero(n);
          e[j] = h;
          Hfd.col(j) = (o.f.gradient(x + e) - o.f.gradient(x - e)) / (2.0 * h);
        }
        hess.record((Hfd - H).lpNorm<Eigen::Infinity>() / (1.0 + H.lpNorm<Eigen::Infinity>()), x);
        sym.record((H - H.transpose()).lpNorm<Eigen::Infinity>(), x);
      }
      const double direct = o.f.eval(x) + o.g.value(x);
      sum.record(std::abs(p.value(i, x) - direct), x);
    }

    if (o.g.has_prox()) {
      auto& nonexp = add("prox_nonexpansive", i, 1e-12);
      auto& local = add("prox_local_optimality", i, 1e-12);
      auto& second = add("second_prox", i, 1e-10);
      for (std::size_t s = 0; s < pts.size(); ++s) {
        const Vector& a = pts[s];
        const Vector b = pts[(s + 1) % pts.size()] + 0.1 * rng.normal_vector(n);
        const double t = rng.uniform(0.1, 2.0);
        const Vector pa = o.g.prox(a, t), pb = o.g.prox(b, t);
        nonexp.record(((pa - pb).norm() - (a - b).norm()) / (1.0 + (a - b).norm()), a);

        auto obj = [&](const Vector& y) { return o.g.value(y) + (a - y).squaredNorm() / (2.0 * t); };
        const double base = obj(pa);
        for (int k = 0; k < 8; ++k) {
          const Vector q = pa + 1e-3 * rng.normal_vector(n);
          local.record((base - obj(q)) / detail::rel_scale(base, 0.0), a);
        }

        const Vector p1 = o.g.prox(a, 1.0);
        const double gx = o.g.value(a);
        if (!is_infinite_value(gx)) {
          const double gp = o.g.value(p1);
          second.record(((a - p1).squaredNorm() - (gx - gp)) / detail::rel_scale(gx, gp), a);
        }
      }
    }

    // sigma-convexity of F_i and mu-convexity of f_i on random triples.
    auto convexity_check = [&](const std::string& name, double modulus, auto&& fn) {
      auto& c = add(name, i, 1e-9);
      for (std::size_t s = 0; s < pts.size(); ++s) {
        const Vector& x = pts[s];
        const Vector& y = pts[(s * 7 + 3) % pts.size()];
        const double a = rng.uniform();
        const Vector mid = a * x + (1.0 - a) * y;
        const double fx = fn(x), fy = fn(y);
        const double lhs = fn(mid);
        const double rhs = a * fx + (1.0 - a) * fy - 0.5 * a * (1.0 - a) * modulus * (x - y).squaredNorm();
        c.record((lhs - rhs) / detail::rel_scale(fx, fy), x);
      }
    };
    auto F = [&](const Vector& x) { return p.value(i, x); };
    auto f = [&](const Vector& x) { return o.f.eval(x); };
    if (facts.sigma) convexity_check("sigma_convexity", *facts.sigma, F);
    if (facts.F_convex) convexity_check("F_convexity", 0.0, F);
    if (facts.mu) convexity_check("mu_convexity", *facts.mu, f);
    if (facts.f_convex) convexity_check("f_convexity", 0.0, f);

    if (facts.lip) {
      auto& lip = add("lipschitz", i, 1e-9);
      for (std::size_t s = 0; s < pts.size(); ++s) {
        const Vector& a = pts[s];
        const Vector b = pts[(s + 1) % pts.size()] + 0.05 * rng.normal_vector(n);
        const double dist = (a - b).norm();
        if (dist == 0.0) continue;
        const double ratio = (o.f.gradient(a) - o.f.gradient(b)).norm() / dist;
        lip.record((ratio - *facts.lip) / (1.0 + *facts.lip), a);
      }
    }
  }

  const auto& set = p.feasible_set();
  auto& idem = add("projection_idempotent", -1, 1e-12);
  auto& fixed = add("projection_fixes_members", -1, 1e-12);
  auto& nonexp = add("projection_nonexpansive", -1, 1e-12);
  for (std::size_t s = 0; s < pts.size(); ++s) {
    const Vector a = pts[s] + rng.normal_vector(n);
    const Vector b = pts[(s + 1) % pts.size()] + rng.normal_vector(n);
    const Vector pa = set.project(a);
    idem.record((set.project(pa) - pa).norm(), a);
    if (set.contains(pts[s])) fixed.record((set.project(pts[s]) - pts[s]).norm(), pts[s]);
    nonexp.record((pa - set.project(b)).norm() - (a - b).norm(), a);
  }
  return report;
}

/// inspect_problem, throwing OracleInconsistent on the first failed check.
inline ValidationReport validate_problem(const MultiobjectiveProblem& p, std::size_t samples, std::uint64_t seed) {
  ValidationReport report = inspect_problem(p, samples, seed);
  if (const auto* bad = report.first_failure()) {
    std::string at;
    for (Index j = 0; j < bad->witness.size(); ++j) at += (j ? "," : "") + std::to_string(bad->witness[j]);
    throw Error(ErrorCode::OracleInconsistent, bad->name + " (objective " + std::to_string(bad->objective) +
                                                   ") at (" + at + "), magnitude " + std::to_string(bad->worst));
  }
  return report;
}

}  // namespace merit
