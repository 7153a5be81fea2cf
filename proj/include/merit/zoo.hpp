#pragma once

// Built-in problem instances and the JSON problem format.
//
// A problem document lists objectives by kind (quadratic, zero,
// negated_square, custom smooth parts; zero, abs, l1, sqnorm convex parts),
// or names a generated family by its parameters and seed, so ensembles are
// reproducible documents. See docs/problem-format.md.

#include "merit/problem.hpp"
#include "merit/prox.hpp"
#include "merit/random.hpp"
#include "merit/smooth_terms.hpp"
#include "merit/validate.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace merit {

using json = nlohmann::ordered_json;

// --- typed document ----------------------------------------------------------

struct SmoothSpec {
  std::string kind = "zero";  // quadratic | zero | negated_square | custom
  Matrix Q;
  Vector b;
  double c = 0.0;
  std::string custom_id;
};

struct ConvexSpec {
  std::string kind = "zero";  // zero | abs | l1 | sqnorm
  Vector weights;
  Vector center;
  double coef = 0.0;
};

struct ObjectiveSpec {
  SmoothSpec smooth;
  ConvexSpec convex;
  ObjectiveFacts facts;
};

struct SetSpec {
  std::string kind = "reals";  // reals | box | ball
  Vector lo, hi, center;
  double radius = 0.0;
};

/// Generated families. random_quadratic: f_i = 1/2 x^T Q_i x + b_i^T x with
/// spectrum of Q_i in sigma_range. isotropic_quadratic: F_i = (s_i/2)|x - a_i|^2
/// + (shared_sqnorm/2)|x|^2, anchors explicit or drawn from anchor_range.
struct FamilySpec {
  std::string kind;
  std::uint64_t seed = 0;
  Index n = 0;
  Index m = 0;
  double sigma_lo = 1.0, sigma_hi = 1.0;
  double anchor_lo = -2.0, anchor_hi = 2.0;
  std::vector<Vector> anchors;
  std::vector<double> sigmas;
  double shared_sqnorm = 0.0;
  std::optional<ConvexSpec> shared_convex;  // random_quadratic only
};

struct ParetoSetSpec {
  std::string kind;  // interval | hull
  double lo = 0.0, hi = 0.0;
  std::vector<Vector> points;
};

struct KnownSpec {
  std::vector<Vector> weak_pareto_points;
  std::vector<Vector> stationary_points;
  std::vector<Vector> non_solution_points;
  std::optional<ParetoSetSpec> pareto_set;
  std::optional<bool> level_bounded;
};

struct ProblemSpec {
  std::string id;
  std::string provenance;
  Index n = 0;
  SetSpec set;
  std::optional<Box> bounding_box;
  std::vector<ObjectiveSpec> objectives;
  std::optional<FamilySpec> family;
  KnownSpec known;
};

// --- runtime entry ---------------------------------------------------------------

/// Distance to a closed-form Pareto set: an interval on the line or the convex
/// hull of finitely many points.
inline double distance_to_hull(const std::vector<Vector>& pts, const Vector& x) {
  if (pts.empty()) throw Error(ErrorCode::InvalidArgument, "empty hull");
  if (pts.size() == 1) return (x - pts[0]).norm();
  if (pts.size() == 2) {
    const Vector d = pts[1] - pts[0];
    const double len2 = d.squaredNorm();
    const double t = len2 > 0.0 ? std::clamp((x - pts[0]).dot(d) / len2, 0.0, 1.0) : 0.0;
    return (x - pts[0] - t * d).norm();
  }
  // Accelerated projected gradient on min_theta |A theta - x|^2 over the simplex.
  const Index k = static_cast<Index>(pts.size());
  Matrix A(x.size(), k);
  for (Index j = 0; j < k; ++j) A.col(j) = pts[static_cast<std::size_t>(j)];
  const double L = std::max(Eigen::SelfAdjointEigenSolver<Matrix>(A.transpose() * A).eigenvalues().maxCoeff(), 1e-12);
  Vector theta = Vector::Constant(k, 1.0 / static_cast<double>(k));
  Vector z = theta;
  double tk = 1.0;
  for (int it = 0; it < 20000; ++it) {
    const Vector grad = A.transpose() * (A * z - x);
    const Vector next = project_simplex(z - grad / L).values();
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
    z = next + ((tk - 1.0) / tn) * (next - theta);
    const double move = (next - theta).norm();
    theta = next;
    tk = tn;
    if (move < 1e-15) break;
  }
  return (A * theta - x).norm();
}

struct KnownSolutions {
  std::vector<Vector> weak_pareto_points;   // zero of every merit
  std::vector<Vector> stationary_points;    // zero of w_ell
  std::vector<Vector> non_solution_points;  // not stationary: every merit positive
  std::optional<ParetoSetSpec> pareto_set;
  std::optional<bool> level_bounded;
  /// Closed-form u_ell(x) when known.
  std::function<double(const Vector&, double)> u_ell_closed_form;
  /// Closed-form u0(x) when known.
  std::function<double(const Vector&)> u0_closed_form;

  bool has_pareto_distance() const { return pareto_set.has_value(); }

  double pareto_distance(const Vector& x) const {
    if (!pareto_set) throw Error(ErrorCode::DistanceOracleMissing, "no closed-form Pareto set");
    if (pareto_set->kind == "interval") {
      const double v = x[0];
      return v < pareto_set->lo ? pareto_set->lo - v : v > pareto_set->hi ? v - pareto_set->hi : 0.0;
    }
    return distance_to_hull(pareto_set->points, x);
  }
};

struct ZooEntry {
  ProblemSpec spec;
  MultiobjectiveProblem problem;
  KnownSolutions known;

  const std::string& id() const { return spec.id; }
};

// --- JSON parsing ------------------------------------------------------------------

namespace zoo_detail {

[[noreturn]] inline void parse_fail(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + why);
}

inline const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) parse_fail(path + "." + key, "missing");
  return j.at(key);
}

inline double number(const json& j, const std::string& path) {
  if (!j.is_number()) parse_fail(path, "expected a number");
  return j.get<double>();
}

inline Vector vec(const json& j, const std::string& path) {
  if (j.is_number()) return make_vector({j.get<double>()});
  if (!j.is_array()) parse_fail(path, "expected an array of numbers");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v[static_cast<Index>(k)] = number(j[k], path + "[" + std::to_string(k) + "]");
  return v;
}

inline std::vector<Vector> points(const json& j, const std::string& path, Index n) {
  if (!j.is_array()) parse_fail(path, "expected an array of points");
  std::vector<Vector> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    Vector v = vec(j[k], path + "[" + std::to_string(k) + "]");
    if (n > 0 && v.size() != n) {
      throw Error(ErrorCode::InconsistentDimensions, path + "[" + std::to_string(k) + "]: point has wrong dimension");
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline void expect_size(const Vector& v, Index n, const std::string& path) {
  if (v.size() != n) {
    throw Error(ErrorCode::InconsistentDimensions,
                path + ": expected length " + std::to_string(n) + ", got " + std::to_string(v.size()));
  }
}

inline std::optional<double> opt_number(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return number(j.at(key), path + "." + key);
}

inline bool opt_bool(const json& j, const char* key, bool dflt) {
  if (!j.contains(key)) return dflt;
  if (!j.at(key).is_boolean()) parse_fail(key, "expected a boolean");
  return j.at(key).get<bool>();
}

inline SmoothSpec parse_smooth(const json& j, Index n, const std::string& path) {
  SmoothSpec s;
  s.kind = require(j, "kind", path).get<std::string>();
  if (s.kind == "quadratic") {
    const Vector q = vec(require(j, "Q", path), path + ".Q");
    if (q.size() != n * n) throw Error(ErrorCode::InconsistentDimensions, path + ".Q: expected n*n row-major entries");
    s.Q = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(q.data(), n, n);
    if ((s.Q - s.Q.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw Error(ErrorCode::InconsistentDimensions, path + ".Q: matrix is not symmetric");
    }
    s.b = j.contains("b") ? vec(j.at("b"), path + ".b") : Vector::Zero(n);
    expect_size(s.b, n, path + ".b");
    s.c = j.contains("c") ? number(j.at("c"), path + ".c") : 0.0;
  } else if (s.kind == "custom") {
    s.custom_id = require(j, "id", path).get<std::string>();
    (void)smooth_custom(s.custom_id, n);  // rejects unknown ids early
  } else if (s.kind != "zero" && s.kind != "negated_square") {
    throw Error(ErrorCode::UnknownKind, path + ": unknown smooth kind '" + s.kind + "'");
  }
  return s;
}

inline ConvexSpec parse_convex(const json& j, Index n, const std::string& path) {
  ConvexSpec c;
  c.kind = require(j, "kind", path).get<std::string>();
  if (c.kind == "l1") {
    c.weights = j.contains("weights") ? vec(j.at("weights"), path + ".weights") : Vector::Ones(n);
    expect_size(c.weights, n, path + ".weights");
    c.center = j.contains("center") ? vec(j.at("center"), path + ".center") : Vector::Zero(n);
    expect_size(c.center, n, path + ".center");
  } else if (c.kind == "sqnorm") {
    c.coef = number(require(j, "coef", path), path + ".coef");
    c.center = j.contains("center") ? vec(j.at("center"), path + ".center") : Vector::Zero(n);
    expect_size(c.center, n, path + ".center");
  } else if (c.kind != "zero" && c.kind != "abs" && c.kind != "indicator-free") {
    throw Error(ErrorCode::UnknownKind, path + ": unknown convex kind '" + c.kind + "'");
  }
  if (c.kind == "indicator-free") c.kind = "zero";
  return c;
}

inline ObjectiveFacts parse_facts(const json& j, const std::string& path) {
  ObjectiveFacts f;
  f.mu = opt_number(j, "mu", path);
  f.sigma = opt_number(j, "sigma", path);
  f.lip = opt_number(j, "lip", path);
  if (f.sigma && !(*f.sigma > 0.0)) parse_fail(path + ".sigma", "must be positive");
  if (f.lip && !(*f.lip > 0.0)) parse_fail(path + ".lip", "must be positive");
  f.f_convex = opt_bool(j, "f_convex", false);
  f.F_convex = opt_bool(j, "F_convex", false);
  f.F_strictly_convex = opt_bool(j, "F_strictly_convex", false);
  return f;
}

inline FamilySpec parse_family(const json& j, const std::string& path) {
  FamilySpec f;
  f.kind = require(j, "kind", path).get<std::string>();
  if (f.kind != "random_quadratic" && f.kind != "isotropic_quadratic") {
    throw Error(ErrorCode::UnknownKind, path + ": unknown family '" + f.kind + "'");
  }
  f.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
  if (j.contains("sigma_range")) {
    const Vector r = vec(j.at("sigma_range"), path + ".sigma_range");
    if (r.size() != 2 || !(r[0] > 0.0) || r[0] > r[1]) parse_fail(path + ".sigma_range", "need [lo, hi] with 0 < lo <= hi");
    f.sigma_lo = r[0];
    f.sigma_hi = r[1];
  }
  if (j.contains("anchor_range")) {
    const Vector r = vec(j.at("anchor_range"), path + ".anchor_range");
    if (r.size() != 2 || r[0] > r[1]) parse_fail(path + ".anchor_range", "need [lo, hi]");
    f.anchor_lo = r[0];
    f.anchor_hi = r[1];
  }
  f.n = j.contains("n") ? j.at("n").get<Index>() : 0;
  f.m = j.contains("m") ? j.at("m").get<Index>() : 0;
  if (j.contains("anchors")) {
    f.anchors = points(j.at("anchors"), path + ".anchors", 0);
    if (f.m == 0) f.m = static_cast<Index>(f.anchors.size());
    if (f.n == 0 && !f.anchors.empty()) f.n = f.anchors.front().size();
  }
  if (j.contains("sigmas")) {
    const Vector s = vec(j.at("sigmas"), path + ".sigmas");
    f.sigmas = to_std(s);
  }
  if (j.contains("shared_sqnorm")) f.shared_sqnorm = number(j.at("shared_sqnorm"), path + ".shared_sqnorm");
  if (f.n < 1 || f.m < 1) parse_fail(path, "family needs n >= 1 and m >= 1");
  if (!f.anchors.empty() && static_cast<Index>(f.anchors.size()) != f.m) {
    throw Error(ErrorCode::InconsistentDimensions, path + ".anchors: expected m anchors");
  }
  for (const auto& a : f.anchors) expect_size(a, f.n, path + ".anchors");
  if (!f.sigmas.empty() && static_cast<Index>(f.sigmas.size()) != f.m) {
    throw Error(ErrorCode::InconsistentDimensions, path + ".sigmas: expected m values");
  }
  if (j.contains("convex")) f.shared_convex = parse_convex(j.at("convex"), f.n, path + ".convex");
  return f;
}

inline SetSpec parse_set(const json& j, Index n, const std::string& path) {
  SetSpec s;
  s.kind = require(j, "kind", path).get<std::string>();
  if (s.kind == "box") {
    s.lo = vec(require(j, "lo", path), path + ".lo");
    s.hi = vec(require(j, "hi", path), path + ".hi");
    expect_size(s.lo, n, path + ".lo");
    expect_size(s.hi, n, path + ".hi");
  } else if (s.kind == "ball") {
    s.center = vec(require(j, "center", path), path + ".center");
    expect_size(s.center, n, path + ".center");
    s.radius = number(require(j, "radius", path), path + ".radius");
  } else if (s.kind != "reals") {
    throw Error(ErrorCode::UnknownKind, path + ": unknown set kind '" + s.kind + "'");
  }
  return s;
}

inline json vec_json(const Vector& v) {
  json a = json::array();
  for (Index j = 0; j < v.size(); ++j) a.push_back(v[j]);
  return a;
}

inline json points_json(const std::vector<Vector>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(vec_json(p));
  return a;
}

inline json convex_json(const ConvexSpec& c) {
  json j{{"kind", c.kind}};
  if (c.kind == "l1") {
    j["weights"] = vec_json(c.weights);
    j["center"] = vec_json(c.center);
  } else if (c.kind == "sqnorm") {
    j["coef"] = c.coef;
    j["center"] = vec_json(c.center);
  }
  return j;
}

}  // namespace zoo_detail

inline ProblemSpec parse_problem_spec(const std::string& text) {
  using namespace zoo_detail;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  try {
    ProblemSpec spec;
    spec.id = doc.value("id", std::string("user"));
    spec.provenance = doc.value("provenance", std::string("user file"));
    if (doc.contains("family")) {
      spec.family = parse_family(doc.at("family"), "family");
      spec.n = spec.family->n;
      if (doc.contains("dimension") && doc.at("dimension").get<Index>() != spec.n) {
        throw Error(ErrorCode::InconsistentDimensions, "dimension differs from family n");
      }
    } else {
      spec.n = require(doc, "dimension", "").get<Index>();
      if (spec.n < 1) parse_fail("dimension", "must be >= 1");
      const json& objs = require(doc, "objectives", "");
      if (!objs.is_array() || objs.empty()) parse_fail("objectives", "expected a non-empty array");
      for (std::size_t i = 0; i < objs.size(); ++i) {
        const std::string path = "objectives[" + std::to_string(i) + "]";
        ObjectiveSpec o;
        o.smooth = objs[i].contains("smooth") ? parse_smooth(objs[i].at("smooth"), spec.n, path + ".smooth") : SmoothSpec{};
        o.convex = objs[i].contains("convex") ? parse_convex(objs[i].at("convex"), spec.n, path + ".convex") : ConvexSpec{};
        o.facts = objs[i].contains("metadata") ? parse_facts(objs[i].at("metadata"), path + ".metadata") : ObjectiveFacts{};
        spec.objectives.push_back(std::move(o));
      }
    }
    spec.set = doc.contains("set") ? parse_set(doc.at("set"), spec.n, "set") : SetSpec{};
    if (doc.contains("bounding_box")) {
      const json& b = doc.at("bounding_box");
      Box box{vec(require(b, "lo", "bounding_box"), "bounding_box.lo"), vec(require(b, "hi", "bounding_box"), "bounding_box.hi")};
      expect_size(box.lo, spec.n, "bounding_box.lo");
      expect_size(box.hi, spec.n, "bounding_box.hi");
      spec.bounding_box = std::move(box);
    }
    if (doc.contains("known")) {
      const json& k = doc.at("known");
      if (k.contains("weak_pareto_points")) spec.known.weak_pareto_points = points(k.at("weak_pareto_points"), "known.weak_pareto_points", spec.n);
      if (k.contains("stationary_points")) spec.known.stationary_points = points(k.at("stationary_points"), "known.stationary_points", spec.n);
      if (k.contains("non_solution_points")) spec.known.non_solution_points = points(k.at("non_solution_points"), "known.non_solution_points", spec.n);
      if (k.contains("level_bounded")) spec.known.level_bounded = k.at("level_bounded").get<bool>();
      if (k.contains("pareto_set")) {
        const json& ps = k.at("pareto_set");
        ParetoSetSpec p;
        p.kind = require(ps, "kind", "known.pareto_set").get<std::string>();
        if (p.kind == "interval") {
          if (spec.n != 1) throw Error(ErrorCode::InconsistentDimensions, "interval Pareto sets need n = 1");
          p.lo = number(require(ps, "lo", "known.pareto_set"), "known.pareto_set.lo");
          p.hi = number(require(ps, "hi", "known.pareto_set"), "known.pareto_set.hi");
        } else if (p.kind == "hull") {
          p.points = points(require(ps, "points", "known.pareto_set"), "known.pareto_set.points", spec.n);
        } else {
          throw Error(ErrorCode::UnknownKind, "known.pareto_set: unknown kind '" + p.kind + "'");
        }
        spec.known.pareto_set = std::move(p);
      }
    }
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad field type: ") + e.what());
  }
}

inline json spec_to_json(const ProblemSpec& spec) {
  using namespace zoo_detail;
  json doc;
  doc["id"] = spec.id;
  doc["provenance"] = spec.provenance;
  doc["dimension"] = spec.n;
  json set{{"kind", spec.set.kind}};
  if (spec.set.kind == "box") {
    set["lo"] = vec_json(spec.set.lo);
    set["hi"] = vec_json(spec.set.hi);
  } else if (spec.set.kind == "ball") {
    set["center"] = vec_json(spec.set.center);
    set["radius"] = spec.set.radius;
  }
  doc["set"] = set;
  if (spec.bounding_box) doc["bounding_box"] = {{"lo", vec_json(spec.bounding_box->lo)}, {"hi", vec_json(spec.bounding_box->hi)}};
  if (spec.family) {
    const auto& f = *spec.family;
    json fj{{"kind", f.kind}, {"seed", f.seed}, {"n", f.n}, {"m", f.m}, {"sigma_range", {f.sigma_lo, f.sigma_hi}}};
    if (f.kind == "isotropic_quadratic") {
      fj["anchor_range"] = {f.anchor_lo, f.anchor_hi};
      if (!f.anchors.empty()) fj["anchors"] = points_json(f.anchors);
      if (!f.sigmas.empty()) fj["sigmas"] = f.sigmas;
      fj["shared_sqnorm"] = f.shared_sqnorm;
    }
    if (f.shared_convex) fj["convex"] = convex_json(*f.shared_convex);
    doc["family"] = fj;
  } else {
    json objs = json::array();
    for (const auto& o : spec.objectives) {
      json sm{{"kind", o.smooth.kind}};
      if (o.smooth.kind == "quadratic") {
        json q = json::array();
        for (Index r = 0; r < o.smooth.Q.rows(); ++r) {
          for (Index c = 0; c < o.smooth.Q.cols(); ++c) q.push_back(o.smooth.Q(r, c));
        }
        sm["Q"] = q;
        sm["b"] = vec_json(o.smooth.b);
        sm["c"] = o.smooth.c;
      } else if (o.smooth.kind == "custom") {
        sm["id"] = o.smooth.custom_id;
      }
      json md = json::object();
      if (o.facts.mu) md["mu"] = *o.facts.mu;
      if (o.facts.sigma) md["sigma"] = *o.facts.sigma;
      if (o.facts.lip) md["lip"] = *o.facts.lip;
      md["f_convex"] = o.facts.f_convex;
      md["F_convex"] = o.facts.F_convex;
      md["F_strictly_convex"] = o.facts.F_strictly_convex;
      objs.push_back({{"smooth", sm}, {"convex", convex_json(o.convex)}, {"metadata", md}});
    }
    doc["objectives"] = objs;
  }
  json known = json::object();
  if (!spec.known.weak_pareto_points.empty()) known["weak_pareto_points"] = points_json(spec.known.weak_pareto_points);
  if (!spec.known.stationary_points.empty()) known["stationary_points"] = points_json(spec.known.stationary_points);
  if (!spec.known.non_solution_points.empty()) known["non_solution_points"] = points_json(spec.known.non_solution_points);
  if (spec.known.level_bounded) known["level_bounded"] = *spec.known.level_bounded;
  if (spec.known.pareto_set) {
    const auto& p = *spec.known.pareto_set;
    if (p.kind == "interval") {
      known["pareto_set"] = {{"kind", "interval"}, {"lo", p.lo}, {"hi", p.hi}};
    } else {
      known["pareto_set"] = {{"kind", "hull"}, {"points", points_json(p.points)}};
    }
  }
  if (!known.empty()) doc["known"] = known;
  return doc;
}

inline std::string serialize(const ProblemSpec& spec) { return spec_to_json(spec).dump(2); }

// --- building ----------------------------------------------------------------------

namespace zoo_detail {

inline SmoothTerm build_smooth(const SmoothSpec& s, Index n) {
  if (s.kind == "quadratic") return smooth_quadratic(s.Q, s.b, s.c);
  if (s.kind == "negated_square") return smooth_negated_square(n);
  if (s.kind == "custom") return smooth_custom(s.custom_id, n);
  return smooth_zero(n);
}

inline ConvexTerm build_convex(const ConvexSpec& c, Index n) {
  if (c.kind == "abs") return convex_abs(n);
  if (c.kind == "l1") return convex_l1(c.weights, c.center);
  if (c.kind == "sqnorm") return convex_sqnorm(c.coef, c.center);
  return convex_zero(n);
}

inline Matrix random_rotation(Rng& rng, Index n) {
  Matrix G(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) G(r, c) = rng.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(G);
  return qr.householderQ() * Matrix::Identity(n, n);
}

/// Expands a family into explicit objectives and its closed-form Pareto set.
inline void expand_family(ProblemSpec& spec) {
  const FamilySpec& f = *spec.family;
  Rng rng(f.seed);
  spec.objectives.clear();
  if (f.kind == "random_quadratic") {
    for (Index i = 0; i < f.m; ++i) {
      Vector eig(f.n);
      for (Index j = 0; j < f.n; ++j) eig[j] = rng.uniform(f.sigma_lo, f.sigma_hi);
      const Matrix R = random_rotation(rng, f.n);
      Matrix Q = R * eig.asDiagonal() * R.transpose();
      Q = 0.5 * (Q + Q.transpose());
      Vector b(f.n);
      for (Index j = 0; j < f.n; ++j) b[j] = rng.uniform(-2.0, 2.0);
      ObjectiveSpec o;
      o.smooth.kind = "quadratic";
      o.smooth.Q = Q;
      o.smooth.b = b;
      o.smooth.c = 0.0;
      const Eigen::SelfAdjointEigenSolver<Matrix> es(Q);
      const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
      o.facts.mu = lo;
      o.facts.lip = hi;
      o.facts.f_convex = true;
      o.facts.F_convex = true;
      o.facts.F_strictly_convex = true;
      double sigma = lo;
      if (f.shared_convex) {
        o.convex = *f.shared_convex;
        if (o.convex.kind == "sqnorm") sigma += o.convex.coef;
      }
      o.facts.sigma = sigma;
      spec.objectives.push_back(std::move(o));
    }
    return;
  }
  // isotropic_quadratic
  std::vector<Vector> anchors = f.anchors;
  std::vector<double> sigmas = f.sigmas;
  if (anchors.empty()) {
    for (Index i = 0; i < f.m; ++i) anchors.push_back(rng.uniform_vector(Vector::Constant(f.n, f.anchor_lo), Vector::Constant(f.n, f.anchor_hi)));
  }
  if (sigmas.empty()) {
    for (Index i = 0; i < f.m; ++i) sigmas.push_back(rng.uniform(f.sigma_lo, f.sigma_hi));
  }
  ParetoSetSpec ps;
  for (Index i = 0; i < f.m; ++i) {
    const double s = sigmas[static_cast<std::size_t>(i)];
    const Vector& a = anchors[static_cast<std::size_t>(i)];
    ObjectiveSpec o;
    o.smooth.kind = "quadratic";
    o.smooth.Q = s * Matrix::Identity(f.n, f.n);
    o.smooth.b = -s * a;
    o.smooth.c = 0.5 * s * a.squaredNorm();
    if (f.shared_sqnorm > 0.0) {
      o.convex.kind = "sqnorm";
      o.convex.coef = f.shared_sqnorm;
      o.convex.center = Vector::Zero(f.n);
    }
    o.facts.mu = s;
    o.facts.lip = s;
    o.facts.sigma = s + f.shared_sqnorm;
    o.facts.f_convex = o.facts.F_convex = o.facts.F_strictly_convex = true;
    spec.objectives.push_back(std::move(o));
    ps.points.push_back(s * a / (s + f.shared_sqnorm));
  }
  if (f.n == 1) {
    ps.kind = "interval";
    ps.lo = ps.hi = ps.points.front()[0];
    for (const auto& p : ps.points) {
      ps.lo = std::min(ps.lo, p[0]);
      ps.hi = std::max(ps.hi, p[0]);
    }
    ps.points.clear();
  } else {
    ps.kind = "hull";
  }
  if (!spec.known.pareto_set) spec.known.pareto_set = ps;
  if (!spec.known.level_bounded) spec.known.level_bounded = true;
}

}  // namespace zoo_detail

inline ZooEntry build_entry(ProblemSpec spec) {
  using namespace zoo_detail;
  if (spec.family) expand_family(spec);
  const Index n = spec.n;
  std::vector<Objective> objectives;
  ConvexityMetadata metadata;
  for (const auto& o : spec.objectives) {
    objectives.push_back({build_smooth(o.smooth, n), build_convex(o.convex, n)});
    metadata.push_back(o.facts);
  }
  FeasibleSet set = spec.set.kind == "box"    ? FeasibleSet::box(spec.set.lo, spec.set.hi)
                    : spec.set.kind == "ball" ? FeasibleSet::ball(spec.set.center, spec.set.radius)
                                              : FeasibleSet::reals(n);
  if (spec.bounding_box) set.set_bounding_box(*spec.bounding_box);
  MultiobjectiveProblem problem(n, std::move(objectives), std::move(set), std::move(metadata));
  KnownSolutions known;
  known.weak_pareto_points = spec.known.weak_pareto_points;
  known.stationary_points = spec.known.stationary_points;
  known.non_solution_points = spec.known.non_solution_points;
  known.pareto_set = spec.known.pareto_set;
  known.level_bounded = spec.known.level_bounded;
  // Weakly Pareto optimal points are always Pareto stationary.
  for (const auto& p : known.weak_pareto_points) known.stationary_points.push_back(p);
  return ZooEntry{std::move(spec), std::move(problem), std::move(known)};
}

struct LoadOptions {
  bool validate = false;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
};

inline ZooEntry load_spec(const std::string& text, const LoadOptions& opts = {}) {
  ZooEntry e = build_entry(parse_problem_spec(text));
  if (opts.validate) validate_problem(e.problem, opts.samples, opts.seed);
  return e;
}

// --- builtins -------------------------------------------------------------------------

namespace zoo_detail {

inline std::vector<Vector> scalars(std::initializer_list<double> xs) {
  std::vector<Vector> out;
  for (double x : xs) out.push_back(make_vector({x}));
  return out;
}

inline std::vector<Vector> grid_1d(double lo, double hi, int count) {
  std::vector<Vector> out;
  for (int k = 0; k < count; ++k) out.push_back(make_vector({lo + (hi - lo) * k / (count - 1)}));
  return out;
}

inline std::vector<Vector> segment(const Vector& a, const Vector& b, int count) {
  std::vector<Vector> out;
  for (int k = 0; k < count; ++k) out.push_back(a + (b - a) * (static_cast<double>(k) / (count - 1)));
  return out;
}

inline ObjectiveSpec quad1d(double q, double b, double c, ObjectiveFacts facts, ConvexSpec g = {}) {
  ObjectiveSpec o;
  o.smooth.kind = "quadratic";
  o.smooth.Q = Matrix::Constant(1, 1, q);
  o.smooth.b = make_vector({b});
  o.smooth.c = c;
  o.convex = std::move(g);
  o.facts = facts;
  return o;
}

inline ObjectiveFacts strongly(double sigma, double mu, double lip) {
  ObjectiveFacts f;
  f.sigma = sigma;
  f.mu = mu;
  f.lip = lip;
  f.f_convex = mu >= 0.0;
  f.F_convex = true;
  f.F_strictly_convex = true;
  return f;
}

inline ConvexSpec convex_kind(const std::string& kind) {
  ConvexSpec c;
  c.kind = kind;
  return c;
}

inline Box box1(double lo, double hi) { return Box{make_vector({lo}), make_vector({hi})}; }
inline Box box2(double lo, double hi) { return Box{Vector::Constant(2, lo), Vector::Constant(2, hi)}; }

inline ProblemSpec single_abs() {
  ProblemSpec s;
  s.id = "single-abs";
  s.provenance = "single objective F(x) = |x| on R: u_1(x) = |x| - x^2/2 for |x| < 1, 1/2 otherwise";
  s.n = 1;
  ObjectiveSpec o;
  o.convex = convex_kind("abs");
  o.facts.mu = 0.0;
  o.facts.f_convex = true;
  o.facts.F_convex = true;
  s.objectives.push_back(o);
  s.bounding_box = box1(-3.0, 3.0);
  s.known.weak_pareto_points = scalars({0.0});
  s.known.non_solution_points = scalars({0.5, -0.5, 1.0, 2.0, -2.5});
  s.known.level_bounded = true;
  return s;
}

inline ProblemSpec single_negsq() {
  ProblemSpec s;
  s.id = "single-negsq";
  s.provenance = "single objective f(x) = -x^2, g = 0 on R: x = 0 is stationary but not a global minimizer";
  s.n = 1;
  ObjectiveSpec o;
  o.smooth.kind = "negated_square";
  o.facts.mu = -2.0;
  o.facts.lip = 2.0;
  s.objectives.push_back(o);
  s.bounding_box = box1(-2.0, 2.0);
  s.known.stationary_points = scalars({0.0});
  s.known.non_solution_points = scalars({0.5, -0.75, 1.0, 1.5});
  return s;
}

inline ProblemSpec square_zero_pair() {
  ProblemSpec s;
  s.id = "square-zero-pair";
  s.provenance = "F = (x^2, 0) on R: F is level-bounded but u0 vanishes identically";
  s.n = 1;
  ObjectiveFacts f1 = strongly(2.0, 2.0, 2.0);
  s.objectives.push_back(quad1d(2.0, 0.0, 0.0, f1));
  ObjectiveSpec o2;
  o2.facts.mu = 0.0;
  o2.facts.f_convex = true;
  o2.facts.F_convex = true;
  s.objectives.push_back(o2);
  s.bounding_box = box1(-3.0, 3.0);
  s.known.weak_pareto_points = grid_1d(-3.0, 3.0, 7);
  s.known.level_bounded = false;
  return s;
}

inline ProblemSpec quad_pair_1d() {
  ProblemSpec s;
  s.id = "quad-pair-1d";
  s.provenance = "constructed: F = ((x-1)^2, (x+1)^2), Pareto set [-1, 1]";
  s.n = 1;
  s.objectives.push_back(quad1d(2.0, -2.0, 1.0, strongly(2.0, 2.0, 2.0)));
  s.objectives.push_back(quad1d(2.0, 2.0, 1.0, strongly(2.0, 2.0, 2.0)));
  s.bounding_box = box1(-5.0, 5.0);
  s.known.weak_pareto_points = grid_1d(-1.0, 1.0, 20);
  s.known.non_solution_points = scalars({-3.0, -2.5, -2.0, -1.75, -1.6, -1.5, 1.5, 1.6, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0, -2.25, -2.75, 1.9, -1.9, 2.1, -2.1});
  s.known.pareto_set = ParetoSetSpec{"interval", -1.0, 1.0, {}};
  s.known.level_bounded = true;
  return s;
}

inline ProblemSpec quad_pair_1d_box() {
  ProblemSpec s = quad_pair_1d();
  s.id = "quad-pair-1d-box";
  s.provenance = "constructed: F = ((x-1)^2, (x+1)^2) on S = [0.5, 3], Pareto set [0.5, 1]";
  s.set.kind = "box";
  s.set.lo = make_vector({0.5});
  s.set.hi = make_vector({3.0});
  s.bounding_box.reset();
  s.known.weak_pareto_points = grid_1d(0.5, 1.0, 20);
  s.known.non_solution_points = grid_1d(1.5, 3.0, 20);
  s.known.pareto_set = ParetoSetSpec{"interval", 0.5, 1.0, {}};
  return s;
}

inline ProblemSpec abs_quad_1d() {
  ProblemSpec s;
  s.id = "abs-quad-1d";
  s.provenance = "constructed: F = (|x|, (x-2)^2), weak Pareto set [0, 2]";
  s.n = 1;
  ObjectiveSpec o1;
  o1.convex = convex_kind("abs");
  o1.facts.mu = 0.0;
  o1.facts.f_convex = true;
  o1.facts.F_convex = true;
  s.objectives.push_back(o1);
  s.objectives.push_back(quad1d(2.0, -4.0, 4.0, strongly(2.0, 2.0, 2.0)));
  s.bounding_box = box1(-4.0, 4.0);
  s.known.weak_pareto_points = grid_1d(0.0, 2.0, 20);
  s.known.non_solution_points = scalars({-2.0, -1.5, -1.0, -0.8, -0.6, -0.5, -1.25, -1.75, -0.9, -0.7, 2.5, 2.6, 2.75, 3.0, 3.25, 3.5, 2.9, 3.1, 3.4, 2.8});
  s.known.level_bounded = true;
  return s;
}

inline ProblemSpec quad_pair_2d() {
  ProblemSpec s;
  s.id = "quad-pair-2d";
  s.provenance = "constructed: isotropic pair around (-1, 0) and (1, 1), Pareto set the segment";
  s.n = 2;
  FamilySpec f;
  f.kind = "isotropic_quadratic";
  f.n = 2;
  f.m = 2;
  f.anchors = {make_vector({-1.0, 0.0}), make_vector({1.0, 1.0})};
  f.sigmas = {1.0, 1.0};
  s.family = f;
  s.bounding_box = box2(-4.0, 4.0);
  s.known.weak_pareto_points = segment(make_vector({-1.0, 0.0}), make_vector({1.0, 1.0}), 20);
  for (int k = 0; k < 20; ++k) {
    const double a = 0.3 * k;
    s.known.non_solution_points.push_back(make_vector({0.5 * std::cos(a) * 3.0, 0.5 + 1.5 * std::sin(a) + (k % 2 ? 1.0 : -1.0)}));
  }
  s.known.level_bounded = true;
  return s;
}

inline ProblemSpec quad_triple_2d() {
  ProblemSpec s;
  s.id = "quad-triple-2d";
  s.provenance = "constructed: three isotropic quadratics, Pareto set the anchor triangle";
  s.n = 2;
  FamilySpec f;
  f.kind = "isotropic_quadratic";
  f.n = 2;
  f.m = 3;
  f.anchors = {make_vector({-1.0, -1.0}), make_vector({1.0, -1.0}), make_vector({0.0, 1.0})};
  f.sigmas = {1.0, 2.0, 1.5};
  s.family = f;
  s.bounding_box = box2(-4.0, 4.0);
  s.known.weak_pareto_points = {make_vector({0.0, 0.0}), make_vector({-1.0, -1.0}), make_vector({0.5, 0.0}),
                                make_vector({0.0, -1.0}), make_vector({-0.5, 0.0}), make_vector({0.2, -0.5})};
  s.known.non_solution_points = {make_vector({2.0, 2.0}), make_vector({-2.0, 1.5}), make_vector({0.0, -2.5}),
                                 make_vector({3.0, -1.0}), make_vector({-3.0, -2.0}), make_vector({0.0, 2.5})};
  s.known.level_bounded = true;
  return s;
}

inline ProblemSpec composite_negcurv_1d() {
  ProblemSpec s;
  s.id = "composite-negcurv-1d";
  s.provenance = "constructed: f_i = -(x -+ 1)^2/2 nonconvex, shared g = x^2, F convex; Pareto set [-1, 1]";
  s.n = 1;
  ConvexSpec g;
  g.kind = "sqnorm";
  g.coef = 2.0;
  g.center = make_vector({0.0});
  ObjectiveFacts facts;
  facts.mu = -1.0;
  facts.lip = 1.0;
  facts.sigma = 1.0;
  facts.F_convex = facts.F_strictly_convex = true;
  s.objectives.push_back(quad1d(-1.0, 1.0, -0.5, facts, g));
  s.objectives.push_back(quad1d(-1.0, -1.0, -0.5, facts, g));
  s.bounding_box = box1(-4.0, 4.0);
  s.known.weak_pareto_points = grid_1d(-1.0, 1.0, 20);
  s.known.non_solution_points = grid_1d(1.5, 3.5, 10);
  for (auto& p : grid_1d(-3.5, -1.5, 10)) s.known.non_solution_points.push_back(p);
  s.known.pareto_set = ParetoSetSpec{"interval", -1.0, 1.0, {}};
  s.known.level_bounded = true;
  return s;
}

inline ProblemSpec double_well_1d() {
  ProblemSpec s;
  s.id = "double-well-1d";
  s.provenance = "constructed: f(x) = (x^2 - 1)^2, stationary at -1, 0, 1; weakly Pareto optimal at +-1";
  s.n = 1;
  ObjectiveSpec o;
  o.smooth.kind = "custom";
  o.smooth.custom_id = "double_well";
  o.facts.mu = -4.0;
  s.objectives.push_back(o);
  s.bounding_box = box1(-2.0, 2.0);
  s.known.weak_pareto_points = scalars({-1.0, 1.0});
  s.known.stationary_points = scalars({0.0});
  s.known.non_solution_points = scalars({-1.6, -0.5, 0.5, 1.5});
  return s;
}

inline ProblemSpec l1_sq_2d() {
  ProblemSpec s;
  s.id = "l1-sq-2d";
  s.provenance = "constructed: purely nonsmooth pair F = (|x - (1,0)|_1, |x + (1,0)|^2/2), f = 0";
  s.n = 2;
  ObjectiveSpec o1;
  o1.convex.kind = "l1";
  o1.convex.weights = Vector::Ones(2);
  o1.convex.center = make_vector({1.0, 0.0});
  o1.facts.mu = 0.0;
  o1.facts.f_convex = o1.facts.F_convex = true;
  ObjectiveSpec o2;
  o2.convex.kind = "sqnorm";
  o2.convex.coef = 1.0;
  o2.convex.center = make_vector({-1.0, 0.0});
  o2.facts.mu = 0.0;
  o2.facts.sigma = 1.0;
  o2.facts.f_convex = o2.facts.F_convex = o2.facts.F_strictly_convex = true;
  s.objectives = {o1, o2};
  s.bounding_box = box2(-3.0, 3.0);
  // The segment between the two minimizers is weakly Pareto optimal.
  s.known.weak_pareto_points = segment(make_vector({-1.0, 0.0}), make_vector({1.0, 0.0}), 20);
  s.known.non_solution_points = {make_vector({0.0, 1.5}), make_vector({0.0, -2.0}), make_vector({2.0, 1.0}),
                                 make_vector({-2.0, -1.0}), make_vector({2.5, 0.0})};
  s.known.level_bounded = true;
  return s;
}

inline ProblemSpec composite_box_2d() {
  ProblemSpec s;
  s.id = "composite-box-2d";
  s.provenance = "constructed: F_1 = |x - a|^2/2 + |x|_1, F_2 = |x - b|^2/2 on the box [-0.5, 2]^2";
  s.n = 2;
  ObjectiveSpec o1;
  o1.smooth.kind = "quadratic";
  o1.smooth.Q = Matrix::Identity(2, 2);
  o1.smooth.b = make_vector({-1.5, -0.5});
  o1.smooth.c = 0.5 * (1.5 * 1.5 + 0.5 * 0.5);
  o1.convex = convex_kind("abs");
  o1.facts = strongly(1.0, 1.0, 1.0);
  ObjectiveSpec o2;
  o2.smooth.kind = "quadratic";
  o2.smooth.Q = Matrix::Identity(2, 2);
  o2.smooth.b = make_vector({0.0, -1.5});
  o2.smooth.c = 0.5 * 1.5 * 1.5;
  o2.facts = strongly(1.0, 1.0, 1.0);
  s.objectives = {o1, o2};
  s.set.kind = "box";
  s.set.lo = Vector::Constant(2, -0.5);
  s.set.hi = Vector::Constant(2, 2.0);
  s.known.level_bounded = true;
  return s;
}

inline ProblemSpec random_quadratic(const std::string& id, std::uint64_t seed, Index n, Index m, double lo, double hi,
                                    std::optional<ConvexSpec> g = std::nullopt) {
  ProblemSpec s;
  s.id = id;
  s.provenance = "generated: random strongly convex quadratics, spectrum in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
  s.n = n;
  FamilySpec f;
  f.kind = "random_quadratic";
  f.seed = seed;
  f.n = n;
  f.m = m;
  f.sigma_lo = lo;
  f.sigma_hi = hi;
  f.shared_convex = std::move(g);
  s.family = f;
  if (n <= 3) s.bounding_box = Box{Vector::Constant(n, -6.0), Vector::Constant(n, 6.0)};
  s.known.level_bounded = true;
  return s;
}

inline ProblemSpec isotropic(const std::string& id, std::uint64_t seed, Index n, Index m, double sq) {
  ProblemSpec s;
  s.id = id;
  s.provenance = "generated: isotropic quadratics (closed-form Pareto set)" +
                 std::string(sq > 0.0 ? " with shared squared-norm convex part" : "");
  s.n = n;
  FamilySpec f;
  f.kind = "isotropic_quadratic";
  f.seed = seed;
  f.n = n;
  f.m = m;
  f.sigma_lo = 0.5;
  f.sigma_hi = 3.0;
  f.anchor_lo = -2.0;
  f.anchor_hi = 2.0;
  f.shared_sqnorm = sq;
  s.family = f;
  s.bounding_box = Box{Vector::Constant(n, -6.0), Vector::Constant(n, 6.0)};
  return s;
}

inline std::vector<ProblemSpec> builtin_specs() {
  std::vector<ProblemSpec> out{single_abs(),       single_negsq(),          square_zero_pair(), quad_pair_1d(),
                               quad_pair_1d_box(), abs_quad_1d(),          quad_pair_2d(),     quad_triple_2d(),
                               composite_negcurv_1d(), double_well_1d(),   l1_sq_2d(),         composite_box_2d()};
  ConvexSpec abs = convex_kind("abs");
  out.push_back(random_quadratic("random-quadratic-2d", 7, 2, 2, 0.5, 3.0));
  out.push_back(random_quadratic("random-quadratic-abs-2d", 11, 2, 3, 0.5, 2.0, abs));
  out.push_back(random_quadratic("random-quadratic-4d", 5, 4, 3, 0.5, 2.5));
  out.push_back(isotropic("isotropic-1d", 3, 1, 2, 0.0));
  out.push_back(isotropic("isotropic-2d", 4, 2, 3, 0.0));
  out.push_back(isotropic("isotropic-sq-2d", 9, 2, 2, 1.5));
  return out;
}

}  // namespace zoo_detail

inline std::vector<std::string> builtin_ids() {
  std::vector<std::string> ids;
  for (const auto& s : zoo_detail::builtin_specs()) ids.push_back(s.id);
  return ids;
}

/// Alternate names accepted by builtin(); zoo listings use the canonical ids.
inline const std::vector<std::pair<std::string, std::string>>& builtin_aliases() {
  static const std::vector<std::pair<std::string, std::string>> aliases{
      {"paper-abs", "single-abs"}, {"paper-negsq", "single-negsq"}, {"paper-levelbound", "square-zero-pair"}};
  return aliases;
}

inline ZooEntry builtin(const std::string& requested) {
  std::string id = requested;
  for (const auto& [alias, canonical] : builtin_aliases()) {
    if (requested == alias) id = canonical;
  }
  for (auto& s : zoo_detail::builtin_specs()) {
    if (s.id != id) continue;
    ZooEntry e = build_entry(std::move(s));
    if (id == "single-abs") {
      e.known.u_ell_closed_form = [](const Vector& x, double ell) {
        const double a = std::abs(x[0]);
        return a < 1.0 / ell ? a - 0.5 * ell * x[0] * x[0] : 0.5 / ell;
      };
    } else if (id == "square-zero-pair") {
      e.known.u0_closed_form = [](const Vector&) { return 0.0; };
    }
    return e;
  }
  throw Error(ErrorCode::UnknownId, "unknown builtin problem '" + requested + "'");
}

inline std::vector<ZooEntry> default_zoo() {
  std::vector<ZooEntry> out;
  for (const auto& id : builtin_ids()) out.push_back(builtin(id));
  return out;
}

/// Known-solution table as CSV: role,x1,...,xn.
inline std::string known_solutions_csv(const ZooEntry& e) {
  std::ostringstream os;
  os << "role";
  for (Index j = 0; j < e.problem.dimension(); ++j) os << ",x" << (j + 1);
  os << "\n";
  os.precision(17);
  auto rows = [&](const char* role, const std::vector<Vector>& pts) {
    for (const auto& p : pts) {
      os << role;
      for (Index j = 0; j < p.size(); ++j) os << "," << p[j];
      os << "\n";
    }
  };
  rows("weak_pareto", e.spec.known.weak_pareto_points);
  rows("stationary", e.spec.known.stationary_points);
  rows("non_solution", e.spec.known.non_solution_points);
  return os.str();
}

}  // namespace merit
