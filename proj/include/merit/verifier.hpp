#pragma once

// Sampling-based checks of the structural properties of u0, u_ell and w_ell
// over zoo problems. Each check reports its worst violation of the
// tolerance-relaxed inequality (<= 0 passes) and the sample attaining it.

#include "merit/evaluate.hpp"
#include "merit/validate.hpp"
#include "merit/zoo.hpp"

#include <cstdio>
#include <future>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace merit {

enum class CheckId {
  NONNEG_U0,
  IFF_WEAK_PARETO_U0,
  NONNEG_UL,
  IFF_WEAK_PARETO_UL,
  NONNEG_WL,
  IFF_STATIONARY_WL,
  BETWEEN_CONVEX,
  BETWEEN_LIPSCHITZ,
  INNER_SCALING_W,
  INNER_SCALING_U,
  LEVEL_BOUNDED_PROBE,
  ERROR_BOUND_W,
  ERROR_BOUND_U,
  ERROR_BOUND_U0,
  GRAD_ENVELOPE,
  SECOND_PROX,
  REMARK_W_EQUALS_U,
};

inline const std::vector<CheckId>& all_checks() {
  static const std::vector<CheckId> ids{
      CheckId::NONNEG_U0,       CheckId::IFF_WEAK_PARETO_U0, CheckId::NONNEG_UL,       CheckId::IFF_WEAK_PARETO_UL,
      CheckId::NONNEG_WL,       CheckId::IFF_STATIONARY_WL,  CheckId::BETWEEN_CONVEX,  CheckId::BETWEEN_LIPSCHITZ,
      CheckId::INNER_SCALING_W, CheckId::INNER_SCALING_U,    CheckId::LEVEL_BOUNDED_PROBE, CheckId::ERROR_BOUND_W,
      CheckId::ERROR_BOUND_U,   CheckId::ERROR_BOUND_U0,     CheckId::GRAD_ENVELOPE,   CheckId::SECOND_PROX,
      CheckId::REMARK_W_EQUALS_U};
  return ids;
}

inline const char* to_string(CheckId id) {
  switch (id) {
    case CheckId::NONNEG_U0: return "NONNEG_U0";
    case CheckId::IFF_WEAK_PARETO_U0: return "IFF_WEAK_PARETO_U0";
    case CheckId::NONNEG_UL: return "NONNEG_UL";
    case CheckId::IFF_WEAK_PARETO_UL: return "IFF_WEAK_PARETO_UL";
    case CheckId::NONNEG_WL: return "NONNEG_WL";
    case CheckId::IFF_STATIONARY_WL: return "IFF_STATIONARY_WL";
    case CheckId::BETWEEN_CONVEX: return "BETWEEN_CONVEX";
    case CheckId::BETWEEN_LIPSCHITZ: return "BETWEEN_LIPSCHITZ";
    case CheckId::INNER_SCALING_W: return "INNER_SCALING_W";
    case CheckId::INNER_SCALING_U: return "INNER_SCALING_U";
    case CheckId::LEVEL_BOUNDED_PROBE: return "LEVEL_BOUNDED_PROBE";
    case CheckId::ERROR_BOUND_W: return "ERROR_BOUND_W";
    case CheckId::ERROR_BOUND_U: return "ERROR_BOUND_U";
    case CheckId::ERROR_BOUND_U0: return "ERROR_BOUND_U0";
    case CheckId::GRAD_ENVELOPE: return "GRAD_ENVELOPE";
    case CheckId::SECOND_PROX: return "SECOND_PROX";
    case CheckId::REMARK_W_EQUALS_U: return "REMARK_W_EQUALS_U";
  }
  return "?";
}

inline CheckId parse_check_id(const std::string& s) {
  for (CheckId id : all_checks()) {
    if (s == to_string(id)) return id;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown check id '" + s + "'");
}

/// The statement each check exercises.
inline const char* citation(CheckId id) {
  switch (id) {
    case CheckId::NONNEG_U0: return "u0(x) >= 0 for all x in S";
    case CheckId::IFF_WEAK_PARETO_U0: return "u0(x) = 0 iff x is weakly Pareto optimal";
    case CheckId::NONNEG_UL: return "u_ell(x) >= 0 for all x in S (F convex)";
    case CheckId::IFF_WEAK_PARETO_UL: return "u_ell(x) = 0 iff x is weakly Pareto optimal (F convex)";
    case CheckId::NONNEG_WL: return "w_ell(x) >= 0 for all x in S";
    case CheckId::IFF_STATIONARY_WL: return "w_ell(x) = 0 iff x is Pareto stationary";
    case CheckId::BETWEEN_CONVEX:
      return "f_i mu_i-convex, mu = min mu_i: u0 <= w_mu and u_ell <= w_{mu+ell} if mu >= 0, else u_{-mu+ell} <= w_ell";
    case CheckId::BETWEEN_LIPSCHITZ:
      return "grad f_i L_i-Lipschitz, L = max L_i: u_{L+ell} <= w_ell, u0 >= w_L, u_ell >= w_{L+ell}";
    case CheckId::INNER_SCALING_W: return "r >= ell: w_r <= w_ell <= (r/ell) w_r";
    case CheckId::INNER_SCALING_U: return "r >= ell: u_r <= u_ell <= (r/ell) u_r (F convex)";
    case CheckId::LEVEL_BOUNDED_PROBE:
      return "every F_i level-bounded implies u0 level-bounded; F = (x^2, 0) has u0 = 0 everywhere";
    case CheckId::ERROR_BOUND_W:
      return "w_ell(x) >= kappa(rho) dist(x, X*)^2, kappa = (rho-ell)/2 if ell < rho/2 else rho^2/(8 ell)";
    case CheckId::ERROR_BOUND_U:
      return "u_ell(x) >= upsilon(sigma) dist(x, X*)^2, upsilon = (sigma-ell)/2 if ell < sigma/2 else sigma^2/(8 ell)";
    case CheckId::ERROR_BOUND_U0: return "u0(x) >= (sigma/2) dist(x, X*)^2 (F_i sigma_i-convex)";
    case CheckId::GRAD_ENVELOPE: return "grad E_{t h}(x) = (x - prox_{t h}(x)) / t for closed proper convex h";
    case CheckId::SECOND_PROX: return "|x - prox_h(x)|^2 <= h(x) - h(prox_h(x)) for closed proper convex h";
    case CheckId::REMARK_W_EQUALS_U: return "f_i = 0 implies w_ell = u_ell";
  }
  return "?";
}

struct SamplePlan {
  std::size_t points_per_problem = 6;
  std::vector<double> ells{0.5, 1.0, 2.0};
  std::uint64_t seed = 0;
  DualSolveConfig eval;
  unsigned jobs = 1;

  /// Check tolerance: ten times the evaluation tolerance.
  double epsilon() const { return 10.0 * eval.eval_tolerance(); }
};

struct Witness {
  std::string problem;
  Vector x;
  double ell = std::numeric_limits<double>::quiet_NaN();
  double r = std::numeric_limits<double>::quiet_NaN();
};

struct CheckResult {
  CheckId id = CheckId::NONNEG_U0;
  double worst = -std::numeric_limits<double>::infinity();  // <= 0 passes
  double tolerance = 0.0;
  Witness witness;
  std::size_t samples = 0;
  std::size_t problems = 0;
  std::string note;

  bool skipped() const { return samples == 0; }
  bool passed() const { return worst <= 0.0; }
  const char* status() const { return skipped() ? "SKIP" : passed() ? "PASS" : "FAIL"; }

  void record(double violation, const Witness& w) {
    ++samples;
    if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
    if (violation > worst) {
      worst = violation;
      witness = w;
    }
  }

  void merge(const CheckResult& o) {
    if (o.samples == 0) return;
    samples += o.samples;
    problems += o.problems;
    if (o.worst > worst) {
      worst = o.worst;
      witness = o.witness;
    }
    if (!o.note.empty()) note += (note.empty() ? "" : "; ") + o.note;
  }
};

struct VerificationReport {
  std::vector<CheckResult> results;
  std::uint64_t seed = 0;

  bool passed() const {
    for (const auto& r : results) {
      if (!r.skipped() && !r.passed()) return false;
    }
    return true;
  }

  const CheckResult* find(CheckId id) const {
    for (const auto& r : results) {
      if (r.id == id) return &r;
    }
    return nullptr;
  }

  std::string csv() const;
  std::string text() const;
};

namespace verify_detail {

inline std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return buf;
}

inline std::string fmt_point(const Vector& x) {
  std::string s;
  for (Index j = 0; j < x.size(); ++j) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x[j]);
    s += (j ? " " : "") + std::string(buf);
  }
  return s;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace verify_detail

inline std::string VerificationReport::csv() const {
  using namespace verify_detail;
  std::ostringstream os;
  os << "check_id,status,worst_violation,tolerance,samples,problems,witness_problem,witness_x,witness_ell,witness_r,note\n";
  for (const auto& r : results) {
    os << to_string(r.id) << "," << r.status() << "," << (r.skipped() ? "" : fmt(r.worst)) << "," << fmt(r.tolerance)
       << "," << r.samples << "," << r.problems << "," << csv_quote(r.witness.problem) << ","
       << fmt_point(r.witness.x) << "," << fmt(r.witness.ell) << "," << fmt(r.witness.r) << "," << csv_quote(r.note)
       << "\n";
  }
  return os.str();
}

inline std::string VerificationReport::text() const {
  using namespace verify_detail;
  std::ostringstream os;
  std::size_t fails = 0, skips = 0;
  os << "merit verification report (seed " << seed << ")\n\n";
  for (const auto& r : results) {
    os << r.status() << "  " << to_string(r.id) << "\n";
    os << "      statement: " << citation(r.id) << "\n";
    if (r.skipped()) {
      ++skips;
      os << "      no applicable problem in the selection\n";
    } else {
      if (!r.passed()) ++fails;
      os << "      worst violation " << fmt(r.worst) << " (tolerance " << fmt(r.tolerance) << ") over " << r.samples
         << " samples on " << r.problems << " problems\n";
      os << "      witness: problem " << r.witness.problem << ", x = (" << fmt_point(r.witness.x) << ")";
      if (!std::isnan(r.witness.ell)) os << ", ell = " << fmt(r.witness.ell);
      if (!std::isnan(r.witness.r)) os << ", r = " << fmt(r.witness.r);
      os << "\n";
    }
    if (!r.note.empty()) os << "      note: " << r.note << "\n";
  }
  os << "\n" << results.size() << " checks, " << fails << " failed, " << skips << " skipped\n";
  return os.str();
}

// --- applicability -------------------------------------------------------------------

inline bool u0_available(const MultiobjectiveProblem& p) {
  return (p.all_strongly_convex() && p.all_F_convex()) ||
         (p.dimension() <= 3 && p.feasible_set().bounding_box().has_value());
}

inline bool u_ell_available(const MultiobjectiveProblem& p) { return p.all_F_convex(); }

inline std::optional<double> min_mu(const MultiobjectiveProblem& p) {
  double mu = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < p.objective_count(); ++i) {
    if (!p.facts(i).mu) return std::nullopt;
    mu = std::min(mu, *p.facts(i).mu);
  }
  return mu;
}

inline std::optional<double> max_lip(const MultiobjectiveProblem& p) {
  double L = 0.0;
  for (Index i = 0; i < p.objective_count(); ++i) {
    if (!p.facts(i).lip) return std::nullopt;
    L = std::max(L, *p.facts(i).lip);
  }
  return L;
}

inline std::optional<double> min_sigma(const MultiobjectiveProblem& p) {
  double s = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < p.objective_count(); ++i) {
    if (!p.facts(i).sigma) return std::nullopt;
    s = std::min(s, *p.facts(i).sigma);
  }
  return s;
}

/// rho = min_i rho_i with rho_i = max(sigma_i + mu_i, sigma_i - L_i) over the
/// declared facts; nullopt unless every rho_i is positive.
inline std::optional<double> error_bound_rho(const MultiobjectiveProblem& p) {
  double rho = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < p.objective_count(); ++i) {
    const auto& f = p.facts(i);
    if (!f.sigma) return std::nullopt;
    double best = -std::numeric_limits<double>::infinity();
    if (f.mu) best = std::max(best, *f.sigma + *f.mu);
    if (f.lip) best = std::max(best, *f.sigma - *f.lip);
    if (!(best > 0.0)) return std::nullopt;
    rho = std::min(rho, best);
  }
  return rho;
}

/// (rho - ell)/2 if ell < rho/2, else rho^2/(8 ell).
inline double kappa(double rho, double ell) { return ell < rho / 2.0 ? (rho - ell) / 2.0 : rho * rho / (8.0 * ell); }

// --- single-sample checks ------------------------------------------------------------------

/// Worst excess over the applicable inequalities between u0, u_ell and w_ell,
/// each relaxed by eps. Both branches run when their facts are declared.
inline double check_between(const MultiobjectiveProblem& p, const Vector& x, double ell, const DualSolveConfig& cfg,
                            double eps) {
  const auto mu = min_mu(p);
  const auto L = max_lip(p);
  if (!mu && !L) throw Error(ErrorCode::MetadataMissing, "between-merit check needs mu_i or L_i for every objective");
  if (!u_ell_available(p)) throw Error(ErrorCode::ConvexityRequired, "between-merit check evaluates u_ell");
  double worst = -std::numeric_limits<double>::infinity();
  auto u0_upper = [&] {
    const auto e = eval_u0(p, x, cfg);
    return e.route == "grid" ? e.value + e.fw_gap : e.value;
  };
  if (mu) {
    if (*mu >= 0.0) {
      if (*mu > 0.0 && u0_available(p)) worst = std::max(worst, eval_u0(p, x, cfg).value - eval_w_ell(p, x, *mu, cfg).value - eps);
      worst = std::max(worst, eval_u_ell(p, x, ell, cfg).value - eval_w_ell(p, x, *mu + ell, cfg).value - eps);
    } else {
      worst = std::max(worst, eval_u_ell(p, x, -*mu + ell, cfg).value - eval_w_ell(p, x, ell, cfg).value - eps);
    }
  }
  if (L) {
    worst = std::max(worst, eval_u_ell(p, x, *L + ell, cfg).value - eval_w_ell(p, x, ell, cfg).value - eps);
    if (u0_available(p)) worst = std::max(worst, eval_w_ell(p, x, *L, cfg).value - u0_upper() - eps);
    worst = std::max(worst, eval_w_ell(p, x, *L + ell, cfg).value - eval_u_ell(p, x, ell, cfg).value - eps);
  }
  return worst;
}

/// Excess of merit_r <= merit_ell <= (r/ell) merit_r, each relaxed by eps.
inline double check_inner_scaling(const MultiobjectiveProblem& p, const Vector& x, double ell, double r, MeritKind kind,
                                  const DualSolveConfig& cfg, double eps) {
  if (!(r >= ell) || !(ell > 0.0)) throw Error(ErrorCode::InvalidArgument, "inner scaling needs r >= ell > 0");
  if (kind == MeritKind::U0) throw Error(ErrorCode::InvalidArgument, "inner scaling compares u_ell or w_ell");
  const double a = evaluate(kind, p, x, ell, cfg).value;
  const double b = r == ell ? a : evaluate(kind, p, x, r, cfg).value;
  return std::max(b - a - eps, a - (r / ell) * b - eps);
}

/// Excess of the error-bound inequality merit(x) >= c dist(x, X*)^2 - eps with
/// c = kappa(rho) for w_ell, upsilon(sigma) for u_ell, sigma/2 for u0.
inline double check_error_bound(const MultiobjectiveProblem& p, const KnownSolutions& known, const Vector& x,
                                MeritKind kind, double ell, const DualSolveConfig& cfg, double eps,
                                double* coefficient = nullptr) {
  if (!known.has_pareto_distance()) throw Error(ErrorCode::DistanceOracleMissing, "no closed-form Pareto set");
  double c = 0.0;
  if (kind == MeritKind::WEll) {
    const auto rho = error_bound_rho(p);
    if (!rho) throw Error(ErrorCode::MetadataMissing, "error bound for w_ell needs sigma_i and mu_i or L_i with rho_i > 0");
    c = kappa(*rho, ell);
  } else {
    const auto sigma = min_sigma(p);
    if (!sigma || !p.all_F_convex()) throw Error(ErrorCode::MetadataMissing, "error bound needs sigma_i for every objective");
    c = kind == MeritKind::UEll ? kappa(*sigma, ell) : *sigma / 2.0;
  }
  if (coefficient) *coefficient = c;
  const double d = known.pareto_distance(x);
  return c * d * d - evaluate(kind, p, x, ell, cfg).value - eps;
}

struct ProbeLevel {
  double alpha = 0.0;
  double largest_sublevel_radius = -1.0;  // -1: no sublevel point observed
  bool sublevel_at_outer_ring = false;
};

struct ProbeReport {
  MeritKind kind = MeritKind::U0;
  double ell = 0.0;
  double outer_radius = 0.0;
  std::vector<ProbeLevel> levels;
  std::vector<double> radii;
  /// Ring point with the smallest merit on the outermost ring, and that merit.
  Vector outer_argmin;
  double outer_min = std::numeric_limits<double>::infinity();
};

/// Evaluates the merit on rings of growing radius around the bounding-box
/// center and records, per level alpha, the largest radius with a point whose
/// merit is <= alpha. Points outside S are skipped.
inline ProbeReport probe_level_boundedness(const MultiobjectiveProblem& p, MeritKind kind, double ell,
                                           const std::vector<double>& thresholds, const std::vector<double>& radius_grid,
                                           const DualSolveConfig& cfg = {}) {
  const auto box = p.feasible_set().bounding_box();
  if (!box) throw Error(ErrorCode::UnsupportedProblem, "level-boundedness probe needs a bounding box");
  const Index n = p.dimension();
  const Vector center = box->center();
  ProbeReport rep;
  rep.kind = kind;
  rep.ell = ell;
  rep.radii = radius_grid;
  for (double a : thresholds) rep.levels.push_back(ProbeLevel{a, -1.0, false});
  if (radius_grid.empty()) return rep;
  rep.outer_radius = *std::max_element(radius_grid.begin(), radius_grid.end());

  std::vector<Vector> dirs;
  if (n == 1) {
    dirs = {make_vector({1.0}), make_vector({-1.0})};
  } else if (n == 2) {
    for (int k = 0; k < 16; ++k) {
      const double a = 2.0 * std::numbers::pi * k / 16.0;
      dirs.push_back(make_vector({std::cos(a), std::sin(a)}));
    }
  } else {
    for (Index j = 0; j < n; ++j) {
      Vector e = Vector::Zero(n);
      e[j] = 1.0;
      dirs.push_back(e);
      dirs.push_back(-e);
    }
    for (int s = 0; s < (1 << std::min<Index>(n, 4)); ++s) {
      Vector v = Vector::Ones(n);
      for (Index j = 0; j < std::min<Index>(n, 4); ++j) v[j] = (s >> j) & 1 ? -1.0 : 1.0;
      dirs.push_back(v.normalized());
    }
  }
  for (double radius : radius_grid) {
    for (const auto& d : dirs) {
      const Vector x = center + radius * d;
      if (!p.feasible_set().contains(x)) continue;
      const double v = evaluate(kind, p, x, ell, cfg).value;
      for (auto& lvl : rep.levels) {
        if (v <= lvl.alpha) {
          lvl.largest_sublevel_radius = std::max(lvl.largest_sublevel_radius, radius);
          if (radius == rep.outer_radius) lvl.sublevel_at_outer_ring = true;
        }
      }
      if (radius == rep.outer_radius && v < rep.outer_min) {
        rep.outer_min = v;
        rep.outer_argmin = x;
      }
    }
  }
  return rep;
}

// --- suite runner ---------------------------------------------------------------------------

/// Tolerance a check's violations are measured against.
inline double check_tolerance(CheckId id, const SamplePlan& plan) {
  switch (id) {
    case CheckId::GRAD_ENVELOPE: return 1e-4;
    case CheckId::REMARK_W_EQUALS_U: return 2.0 * plan.eval.eval_tolerance();
    default: return plan.epsilon();
  }
}

namespace verify_detail {

/// Memoizes merit evaluations at (kind, ell, point) within one problem.
class EvalCache {
 public:
  EvalCache(const MultiobjectiveProblem& p, const DualSolveConfig& cfg) : p_(p), cfg_(cfg) {}

  const MeritEvaluation& get(MeritKind kind, const Vector& x, double ell) {
    Key key{static_cast<int>(kind), kind == MeritKind::U0 ? 0.0 : ell, to_std(x)};
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(std::move(key), evaluate(kind, p_, x, ell, cfg_)).first;
    return it->second;
  }

  double value(MeritKind kind, const Vector& x, double ell) { return get(kind, x, ell).value; }

 private:
  using Key = std::tuple<int, double, std::vector<double>>;
  const MultiobjectiveProblem& p_;
  const DualSolveConfig& cfg_;
  std::map<Key, MeritEvaluation> cache_;
};

inline std::vector<double> with_extra(std::vector<double> ells, std::initializer_list<double> extra) {
  for (double e : extra) {
    if (std::find(ells.begin(), ells.end(), e) == ells.end()) ells.push_back(e);
  }
  return ells;
}

inline std::vector<CheckResult> run_on_entry(const std::vector<CheckId>& suite, const ZooEntry& entry,
                                             const SamplePlan& plan) {
  const auto& p = entry.problem;
  const auto& known = entry.known;
  const DualSolveConfig& cfg = plan.eval;
  const double eps = plan.epsilon();
  const double eps_eval = cfg.eval_tolerance();
  EvalCache cache(p, cfg);

  Rng rng(plan.seed ^ fnv1a(entry.id()));
  std::vector<Vector> pts;
  for (std::size_t s = 0; s < plan.points_per_problem; ++s) pts.push_back(detail::sample_feasible(p, rng));

  // Solutions for u-type merits are the weakly Pareto optimal points; listed
  // stationary points that are not weakly Pareto optimal count against them.
  std::vector<Vector> u_nonsol = known.non_solution_points;
  for (const auto& s : entry.spec.known.stationary_points) u_nonsol.push_back(s);

  std::vector<CheckResult> out;
  for (CheckId id : suite) {
    CheckResult res;
    res.id = id;
    res.tolerance = check_tolerance(id, plan);
    auto wit = [&](const Vector& x, double ell = std::numeric_limits<double>::quiet_NaN(),
                   double r = std::numeric_limits<double>::quiet_NaN()) { return Witness{entry.id(), x, ell, r}; };
    try {
      switch (id) {
        case CheckId::NONNEG_U0:
          if (!u0_available(p)) break;
          for (const auto& x : pts) res.record(-cache.value(MeritKind::U0, x, 0.0) - eps, wit(x));
          break;
        case CheckId::IFF_WEAK_PARETO_U0:
          if (!u0_available(p)) break;
          for (const auto& x : known.weak_pareto_points) res.record(cache.value(MeritKind::U0, x, 0.0) - eps, wit(x));
          for (const auto& x : u_nonsol) res.record(10.0 * eps - cache.value(MeritKind::U0, x, 0.0), wit(x));
          break;
        case CheckId::NONNEG_UL:
          if (!u_ell_available(p)) break;
          for (double ell : plan.ells) {
            for (const auto& x : pts) res.record(-cache.value(MeritKind::UEll, x, ell) - eps, wit(x, ell));
          }
          break;
        case CheckId::IFF_WEAK_PARETO_UL:
          if (!u_ell_available(p)) break;
          for (double ell : plan.ells) {
            for (const auto& x : known.weak_pareto_points) res.record(cache.value(MeritKind::UEll, x, ell) - eps, wit(x, ell));
            for (const auto& x : u_nonsol) res.record(10.0 * eps - cache.value(MeritKind::UEll, x, ell), wit(x, ell));
          }
          break;
        case CheckId::NONNEG_WL:
          for (double ell : plan.ells) {
            for (const auto& x : pts) res.record(-cache.value(MeritKind::WEll, x, ell) - eps, wit(x, ell));
          }
          break;
        case CheckId::IFF_STATIONARY_WL:
          for (double ell : plan.ells) {
            for (const auto& x : known.stationary_points) res.record(cache.value(MeritKind::WEll, x, ell) - eps, wit(x, ell));
            for (const auto& x : known.non_solution_points) {
              res.record(10.0 * eps - cache.value(MeritKind::WEll, x, ell), wit(x, ell));
            }
          }
          break;
        case CheckId::BETWEEN_CONVEX:
        case CheckId::BETWEEN_LIPSCHITZ: {
          if (!u_ell_available(p)) break;
          const bool convex_branch = id == CheckId::BETWEEN_CONVEX;
          const auto mu = min_mu(p);
          const auto L = max_lip(p);
          if (convex_branch ? !mu : !L) break;
          for (double ell : plan.ells) {
            for (const auto& x : pts) {
              double worst = -std::numeric_limits<double>::infinity();
              if (convex_branch) {
                if (*mu >= 0.0) {
                  if (*mu > 0.0 && u0_available(p)) {
                    worst = std::max(worst, cache.value(MeritKind::U0, x, 0.0) - cache.value(MeritKind::WEll, x, *mu) - eps);
                  }
                  worst = std::max(worst, cache.value(MeritKind::UEll, x, ell) - cache.value(MeritKind::WEll, x, *mu + ell) - eps);
                } else {
                  worst = std::max(worst, cache.value(MeritKind::UEll, x, -*mu + ell) - cache.value(MeritKind::WEll, x, ell) - eps);
                }
              } else {
                worst = std::max(worst, cache.value(MeritKind::UEll, x, *L + ell) - cache.value(MeritKind::WEll, x, ell) - eps);
                if (u0_available(p)) {
                  const auto& u0 = cache.get(MeritKind::U0, x, 0.0);
                  const double upper = u0.route == "grid" ? u0.value + u0.fw_gap : u0.value;
                  worst = std::max(worst, cache.value(MeritKind::WEll, x, *L) - upper - eps);
                }
                worst = std::max(worst, cache.value(MeritKind::WEll, x, *L + ell) - cache.value(MeritKind::UEll, x, ell) - eps);
              }
              res.record(worst, wit(x, ell));
            }
          }
          res.note = entry.id() + (convex_branch ? ": mu = " + fmt(*mu) : ": L = " + fmt(*L));
          break;
        }
        case CheckId::INNER_SCALING_W:
        case CheckId::INNER_SCALING_U: {
          const MeritKind kind = id == CheckId::INNER_SCALING_W ? MeritKind::WEll : MeritKind::UEll;
          if (kind == MeritKind::UEll && !u_ell_available(p)) break;
          for (std::size_t a = 0; a < plan.ells.size(); ++a) {
            for (std::size_t b = 0; b < plan.ells.size(); ++b) {
              const double ell = plan.ells[a], r = plan.ells[b];
              if (r < ell) continue;
              for (const auto& x : pts) {
                const double va = cache.value(kind, x, ell), vb = cache.value(kind, x, r);
                res.record(std::max(vb - va - eps, va - (r / ell) * vb - eps), wit(x, ell, r));
              }
            }
          }
          break;
        }
        case CheckId::LEVEL_BOUNDED_PROBE: {
          if (!known.level_bounded || !u0_available(p)) break;
          if (p.feasible_set().kind() != FeasibleSet::Kind::Reals) break;
          const auto box = p.feasible_set().bounding_box();
          if (!box) break;
          const double outer = 0.9 * 0.5 * (box->hi - box->lo).minCoeff();
          std::vector<double> radii;
          for (int k = 1; k <= 6; ++k) radii.push_back(outer * k / 6.0);
          const std::vector<double> alphas = *known.level_bounded ? std::vector<double>{0.1, 1.0} : std::vector<double>{0.0};
          const auto rep = probe_level_boundedness(p, MeritKind::U0, 0.0, alphas, radii, cfg);
          const double alpha_max = alphas.back();
          if (*known.level_bounded) {
            // Sublevel points must not reach the outermost ring.
            res.record(alpha_max + eps - rep.outer_min, wit(rep.outer_argmin));
          } else {
            // Counterexample: the zero sublevel set must persist to the outer ring.
            res.record(rep.outer_min - (alpha_max + eps), wit(rep.outer_argmin));
          }
          std::string radii_note;
          for (const auto& lvl : rep.levels) {
            radii_note += (radii_note.empty() ? "" : ", ") + std::string("alpha ") + fmt(lvl.alpha) + " reaches radius " +
                          fmt(lvl.largest_sublevel_radius);
          }
          res.note = entry.id() + (*known.level_bounded ? " (level-bounded): " : " (sublevel persists): ") + radii_note;
          break;
        }
        case CheckId::ERROR_BOUND_W:
        case CheckId::ERROR_BOUND_U:
        case CheckId::ERROR_BOUND_U0: {
          if (!known.has_pareto_distance()) break;
          const MeritKind kind = id == CheckId::ERROR_BOUND_W ? MeritKind::WEll
                                 : id == CheckId::ERROR_BOUND_U ? MeritKind::UEll
                                                                : MeritKind::U0;
          std::optional<double> modulus = kind == MeritKind::WEll ? error_bound_rho(p) : min_sigma(p);
          if (!modulus || (kind != MeritKind::WEll && !p.all_F_convex())) break;
          if (kind == MeritKind::U0 && !u0_available(p)) break;
          std::vector<Vector> xs = pts;
          for (const auto& x : known.non_solution_points) xs.push_back(x);
          const std::vector<double> ells =
              kind == MeritKind::U0 ? std::vector<double>{0.0} : with_extra(plan.ells, {*modulus / 4.0, *modulus});
          std::size_t small = 0, large = 0;
          for (double ell : ells) {
            const double c = kind == MeritKind::U0 ? *modulus / 2.0 : kappa(*modulus, ell);
            for (const auto& x : xs) {
              const double d = known.pareto_distance(x);
              res.record(c * d * d - cache.value(kind, x, ell) - eps, wit(x, kind == MeritKind::U0 ? 0.0 : ell));
              (ell < *modulus / 2.0 ? small : large) += 1;
            }
          }
          res.note = entry.id() + (kind == MeritKind::U0
                                       ? ": sigma/2 = " + fmt(*modulus / 2.0)
                                       : std::string(kind == MeritKind::WEll ? ": rho = " : ": sigma = ") + fmt(*modulus) +
                                             ", branch (m-ell)/2 x " + std::to_string(small) + ", branch m^2/(8 ell) x " +
                                             std::to_string(large));
          break;
        }
        case CheckId::GRAD_ENVELOPE: {
          const Index n = p.dimension();
          for (Index i = 0; i < p.objective_count(); ++i) {
            const auto& g = p.objective(i).g;
            if (!g.has_prox()) continue;
            for (double t : {0.5, 1.0}) {
              for (const auto& x0 : pts) {
                const Vector x = x0 + 0.37 * Vector::Ones(n);
                const Vector grad = (x - g.prox(x, t)) / t;
                Vector fd(n);
                for (Index j = 0; j < n; ++j) {
                  const double h = 1e-6;
                  Vector e = Vector::Zero(n);
                  e[j] = h;
                  fd[j] = (moreau_envelope(g, x + e, t).value - moreau_envelope(g, x - e, t).value) / (2.0 * h);
                }
                res.record((fd - grad).lpNorm<Eigen::Infinity>() - 1e-4 * (1.0 + grad.lpNorm<Eigen::Infinity>()), wit(x, 1.0 / t));
              }
            }
          }
          // Envelope of the indicator of S: grad = x - proj_S(x).
          for (const auto& x0 : pts) {
            const Vector x = x0 + rng.normal_vector(n);
            auto env = [&](const Vector& z) { return 0.5 * (z - p.feasible_set().project(z)).squaredNorm(); };
            const Vector grad = x - p.feasible_set().project(x);
            Vector fd(n);
            for (Index j = 0; j < n; ++j) {
              const double h = 1e-6;
              Vector e = Vector::Zero(n);
              e[j] = h;
              fd[j] = (env(x + e) - env(x - e)) / (2.0 * h);
            }
            res.record((fd - grad).lpNorm<Eigen::Infinity>() - 1e-4 * (1.0 + grad.lpNorm<Eigen::Infinity>()), wit(x));
          }
          break;
        }
        case CheckId::SECOND_PROX: {
          const auto terms = convex_terms(p);
          const Index m = p.objective_count();
          for (const auto& x : pts) {
            Vector raw(m);
            for (Index i = 0; i < m; ++i) raw[i] = rng.uniform(0.05, 1.0);
            const SimplexWeights lambda(raw / raw.sum());
            const double t = rng.uniform(0.2, 2.0);
            const auto wp = weighted_sum_prox(terms, lambda, x, t, p.feasible_set(), &cfg.inner);
            auto h = [&](const Vector& z) {
              double s = 0.0;
              for (Index i = 0; i < m; ++i) s += lambda[i] * terms[static_cast<std::size_t>(i)]->value(z);
              return t * s;
            };
            const double hx = h(x), hp = h(wp.point);
            res.record((x - wp.point).squaredNorm() - (hx - hp) - eps * (1.0 + std::abs(hx)), wit(x, 1.0 / t));
          }
          break;
        }
        case CheckId::REMARK_W_EQUALS_U:
          if (!p.all_f_zero() || !u_ell_available(p)) break;
          for (double ell : plan.ells) {
            for (const auto& x : pts) {
              res.record(std::abs(cache.value(MeritKind::WEll, x, ell) - cache.value(MeritKind::UEll, x, ell)) - 2.0 * eps_eval,
                         wit(x, ell));
            }
          }
          break;
      }
    } catch (const Error& e) {
      res.record(std::numeric_limits<double>::infinity(), wit(Vector()));
      res.note = entry.id() + ": " + to_string(e.code()) + ": " + e.what();
    }
    if (res.samples > 0) res.problems = 1;
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace verify_detail

/// Runs `suite` on every entry. Problems run in parallel when plan.jobs > 1;
/// the reduction walks them in input order, so the report does not depend on
/// scheduling.
inline VerificationReport run_all(const std::vector<CheckId>& suite, const std::vector<ZooEntry>& problems,
                                  const SamplePlan& plan) {
  plan.eval.validate();
  VerificationReport report;
  report.seed = plan.seed;
  if (suite.empty()) return report;
  std::vector<std::vector<CheckResult>> per_problem(problems.size());
  if (plan.jobs <= 1) {
    for (std::size_t k = 0; k < problems.size(); ++k) per_problem[k] = verify_detail::run_on_entry(suite, problems[k], plan);
  } else {
    std::size_t next = 0;
    while (next < problems.size()) {
      std::vector<std::future<std::vector<CheckResult>>> batch;
      const std::size_t end = std::min(problems.size(), next + plan.jobs);
      for (std::size_t k = next; k < end; ++k) {
        batch.push_back(std::async(std::launch::async, [&, k] { return verify_detail::run_on_entry(suite, problems[k], plan); }));
      }
      for (std::size_t k = next; k < end; ++k) per_problem[k] = batch[k - next].get();
      next = end;
    }
  }
  for (std::size_t c = 0; c < suite.size(); ++c) {
    CheckResult agg;
    agg.id = suite[c];
    agg.tolerance = check_tolerance(suite[c], plan);
    for (const auto& rs : per_problem) agg.merge(rs[c]);
    report.results.push_back(std::move(agg));
  }
  return report;
}

}  // namespace merit
