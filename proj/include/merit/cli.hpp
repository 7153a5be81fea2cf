#pragma once

// Command-line front end. run_cli takes the streams explicitly so tests can
// drive every subcommand in-process; tools/merit_cli.cpp only forwards argv.
//
// Exit codes: 0 success, 1 verification failure, 2 evaluation failure,
// 64 usage error, 65 data error, 66 file error.

#include "merit/evaluate.hpp"
#include "merit/verifier.hpp"
#include "merit/zoo.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace merit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitEvalFailed = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitFile = 66;

/// Thrown by the helpers below; carries the process exit code.
struct CliError : std::runtime_error {
  int exit_code;
  CliError(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
};

/// MERIT_LOG=quiet|info|debug (default quiet) controls diagnostics on stderr.
enum class LogLevel { Quiet, Info, Debug };

inline LogLevel log_level_from_env() {
  const char* v = std::getenv("MERIT_LOG");
  if (!v) return LogLevel::Quiet;
  const std::string s(v);
  if (s == "debug") return LogLevel::Debug;
  if (s == "info") return LogLevel::Info;
  return LogLevel::Quiet;
}

class Logger {
 public:
  Logger(std::ostream& err, LogLevel level) : err_(err), level_(level) {}
  void info(const std::string& msg) const {
    if (level_ >= LogLevel::Info) err_ << "[info] " << msg << "\n";
  }
  void debug(const std::string& msg) const {
    if (level_ >= LogLevel::Debug) err_ << "[debug] " << msg << "\n";
  }

 private:
  std::ostream& err_;
  LogLevel level_;
};

// --- input helpers ----------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitFile, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline double parse_number(const std::string& tok, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  const std::string t = [&] {
    const auto a = tok.find_first_not_of(" \t\r");
    const auto b = tok.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : tok.substr(a, b - a + 1);
  }();
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw CliError(kExitData, "bad number '" + tok + "' in " + what);
  }
  if (used != t.size()) throw CliError(kExitData, "bad number '" + tok + "' in " + what);
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

/// Inline points: ';' separates points and ',' coordinates. For n = 1 without
/// ';', every comma-separated value is its own point ("0,0.5,2").
inline std::vector<Vector> parse_inline_points(const std::string& text, Index n) {
  std::vector<Vector> pts;
  if (n == 1 && text.find(';') == std::string::npos) {
    for (const auto& tok : split(text, ',')) pts.push_back(make_vector({parse_number(tok, "--points")}));
    return pts;
  }
  for (const auto& chunk : split(text, ';')) {
    const auto toks = split(chunk, ',');
    if (static_cast<Index>(toks.size()) != n) {
      throw CliError(kExitData, "point '" + chunk + "' has " + std::to_string(toks.size()) + " coordinates, expected " +
                                    std::to_string(n));
    }
    Vector v(n);
    for (Index j = 0; j < n; ++j) v[j] = parse_number(toks[static_cast<std::size_t>(j)], "--points");
    pts.push_back(v);
  }
  return pts;
}

/// Points CSV: header x1,...,xn then one point per row.
inline std::vector<Vector> parse_points_csv(const std::string& text, Index n) {
  std::istringstream in(text);
  std::string line;
  std::vector<Vector> pts;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto toks = split(line, ',');
    if (header) {
      header = false;
      if (static_cast<Index>(toks.size()) != n) {
        throw CliError(kExitData, "points CSV header has " + std::to_string(toks.size()) + " columns, problem dimension is " +
                                      std::to_string(n));
      }
      for (Index j = 0; j < n; ++j) {
        std::string want = "x" + std::to_string(j + 1);
        std::string got = toks[static_cast<std::size_t>(j)];
        got.erase(0, got.find_first_not_of(" \t"));
        got.erase(got.find_last_not_of(" \t") + 1);
        if (got != want) throw CliError(kExitData, "points CSV header column " + std::to_string(j + 1) + " must be " + want);
      }
      continue;
    }
    if (static_cast<Index>(toks.size()) != n) {
      throw CliError(kExitData, "points CSV line " + std::to_string(lineno) + " has " + std::to_string(toks.size()) +
                                    " values, expected " + std::to_string(n));
    }
    Vector v(n);
    for (Index j = 0; j < n; ++j) v[j] = parse_number(toks[static_cast<std::size_t>(j)], "points CSV line " + std::to_string(lineno));
    pts.push_back(v);
  }
  if (header) throw CliError(kExitData, "points CSV is empty");
  return pts;
}

inline std::vector<double> parse_ells(const std::vector<std::string>& raw) {
  std::vector<double> out;
  for (const auto& item : raw) {
    for (const auto& tok : split(item, ',')) {
      const double v = parse_number(tok, "--ell");
      if (!(v > 0.0)) throw CliError(kExitUsage, "--ell values must be positive");
      out.push_back(v);
    }
  }
  return out;
}

inline std::vector<std::string> flatten_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    for (const auto& tok : split(item, ',')) {
      if (!tok.empty()) out.push_back(tok);
    }
  }
  return out;
}

inline ZooEntry load_builtin(const std::string& id) {
  try {
    return builtin(id);
  } catch (const Error& e) {
    throw CliError(kExitUsage, e.what());
  }
}

inline ZooEntry load_spec_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return load_spec(text);
  } catch (const Error& e) {
    throw CliError(kExitData, path + ": " + e.what());
  }
}

// --- output helpers ------------------------------------------------------------------------

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string vec_field(const Vector& v) {
  std::string s;
  for (Index j = 0; j < v.size(); ++j) s += (j ? " " : "") + num(v[j]);
  return s;
}

inline std::string csv_field(const std::string& s) { return verify_detail::csv_quote(s); }

/// Runs f(k) for k in [0, count) on up to `jobs` threads; results keep input order.
template <typename F>
auto ordered_map(std::size_t count, unsigned jobs, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  std::vector<decltype(f(std::size_t{}))> out(count);
  if (jobs <= 1) {
    for (std::size_t k = 0; k < count; ++k) out[k] = f(k);
    return out;
  }
  for (std::size_t start = 0; start < count; start += jobs) {
    const std::size_t end = std::min(count, start + jobs);
    std::vector<std::future<decltype(f(std::size_t{}))>> batch;
    for (std::size_t k = start; k < end; ++k) batch.push_back(std::async(std::launch::async, [&f, k] { return f(k); }));
    for (std::size_t k = start; k < end; ++k) out[k] = batch[k - start].get();
  }
  return out;
}

// --- configuration -------------------------------------------------------------------------

struct CliConfig {
  std::string builtin_id;
  std::string spec_path;
  std::vector<std::string> kinds;
  std::vector<std::string> ells;
  std::string points;
  std::string points_csv;
  std::size_t sample = 0;
  std::string out_path;
  std::uint64_t seed = 0;
  double gap_tol = DualSolveConfig{}.gap_tol;
  double inner_tol = InnerSolveConfig{}.tol;
  unsigned jobs = 1;
  // verify
  std::vector<std::string> suite;
  std::vector<std::string> problems;
  std::vector<std::string> spec_files;
  std::size_t points_per_problem = SamplePlan{}.points_per_problem;
  std::string report_prefix = "merit-report";
  // zoo-list
  std::string known_id;
  std::string dump_id;
};

inline DualSolveConfig solve_config(const CliConfig& c) {
  DualSolveConfig cfg;
  cfg.gap_tol = c.gap_tol;
  cfg.inner.tol = c.inner_tol;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw CliError(kExitUsage, e.what());
  }
  return cfg;
}

inline ZooEntry problem_source(const CliConfig& c) {
  if (c.builtin_id.empty() == c.spec_path.empty()) throw CliError(kExitUsage, "give exactly one of --builtin or --spec");
  return c.builtin_id.empty() ? load_spec_file(c.spec_path) : load_builtin(c.builtin_id);
}

inline std::vector<Vector> point_source(const CliConfig& c, const MultiobjectiveProblem& p) {
  const int given = !c.points.empty() + !c.points_csv.empty() + (c.sample > 0);
  if (given != 1) throw CliError(kExitUsage, "give exactly one of --points, --points-csv or --sample");
  if (!c.points.empty()) return parse_inline_points(c.points, p.dimension());
  if (!c.points_csv.empty()) return parse_points_csv(read_file(c.points_csv), p.dimension());
  Rng rng(c.seed);
  std::vector<Vector> pts;
  for (std::size_t k = 0; k < c.sample; ++k) pts.push_back(detail::sample_feasible(p, rng));
  return pts;
}

inline std::vector<MeritKind> merit_kinds(const CliConfig& c) {
  std::vector<MeritKind> out;
  for (const auto& k : flatten_list(c.kinds.empty() ? std::vector<std::string>{"u_ell"} : c.kinds)) {
    try {
      out.push_back(parse_merit_kind(k));
    } catch (const Error& e) {
      throw CliError(kExitUsage, e.what());
    }
  }
  return out;
}

/// Writes to --out when given, else to `out`.
inline void emit(const CliConfig& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw CliError(kExitFile, "cannot write '" + c.out_path + "'");
  f << text;
}

// --- subcommands ---------------------------------------------------------------------------

struct EvalRow {
  std::string text;
  bool failed = false;
};

/// Columns: point,x,kind,ell,value,lower_bound,fw_gap,route,converged,dual_weights,maximizer,error
inline int cmd_eval(const CliConfig& c, std::ostream& out, const Logger& log) {
  const ZooEntry entry = problem_source(c);
  const auto& p = entry.problem;
  const auto cfg = solve_config(c);
  const auto kinds = merit_kinds(c);
  std::vector<double> ells = parse_ells(c.ells);
  const auto pts = point_source(c, p);
  bool needs_ell = false;
  for (auto k : kinds) needs_ell |= k != MeritKind::U0;
  if (needs_ell && ells.empty()) throw CliError(kExitUsage, "--ell is required for u_ell and w_ell");

  struct Task {
    std::size_t point;
    MeritKind kind;
    double ell;
  };
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (auto kind : kinds) {
      if (kind == MeritKind::U0) {
        tasks.push_back({k, kind, 0.0});
      } else {
        for (double ell : ells) tasks.push_back({k, kind, ell});
      }
    }
  }
  log.info("eval: " + entry.id() + ", " + std::to_string(tasks.size()) + " evaluations");
  const auto rows = ordered_map(tasks.size(), c.jobs, [&](std::size_t t) {
    const Task& task = tasks[t];
    const Vector& x = pts[task.point];
    std::string head = std::to_string(task.point) + "," + vec_field(x) + "," + to_string(task.kind) + "," + num(task.ell) + ",";
    try {
      const auto e = evaluate(task.kind, p, x, task.ell, cfg);
      return EvalRow{head + num(e.value) + "," + num(e.lower_bound) + "," + num(e.fw_gap) + "," + e.route + "," +
                         (e.converged ? "1" : "0") + "," + vec_field(e.dual_weights.values()) + "," + vec_field(e.maximizer) + ",\n",
                     false};
    } catch (const Error& e) {
      return EvalRow{head + ",,,,,,," + csv_field(std::string(to_string(e.code())) + ": " + e.what()) + "\n", true};
    }
  });
  std::string text = "point,x,kind,ell,value,lower_bound,fw_gap,route,converged,dual_weights,maximizer,error\n";
  bool failed = false;
  for (const auto& r : rows) {
    text += r.text;
    failed |= r.failed;
    log.debug(r.text.substr(0, r.text.size() - 1));
  }
  emit(c, out, text);
  return failed ? kExitEvalFailed : kExitOk;
}

/// Columns: point,x,kind,ell,value,fw_gap,nonincreasing,ratio_ok,error. Rows per
/// point run in increasing ell; nonincreasing compares with the previous row
/// and ratio_ok checks value_prev <= (ell/ell_prev) value, both within 10 eps.
inline int cmd_sweep(const CliConfig& c, std::ostream& out, const Logger& log) {
  const ZooEntry entry = problem_source(c);
  const auto& p = entry.problem;
  const auto cfg = solve_config(c);
  const auto kinds = merit_kinds(c);
  std::vector<double> ells = parse_ells(c.ells);
  if (ells.empty()) throw CliError(kExitUsage, "sweep needs a nonempty --ell grid");
  std::sort(ells.begin(), ells.end());
  ells.erase(std::unique(ells.begin(), ells.end()), ells.end());
  for (auto k : kinds) {
    if (k == MeritKind::U0) throw CliError(kExitUsage, "sweep runs over ell: use --kind u_ell or w_ell");
  }
  const auto pts = point_source(c, p);
  const double eps = 10.0 * cfg.eval_tolerance();
  log.info("sweep: " + entry.id() + ", " + std::to_string(pts.size()) + " points x " + std::to_string(ells.size()) + " values of ell");

  struct Task {
    std::size_t point;
    MeritKind kind;
  };
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (auto kind : kinds) tasks.push_back({k, kind});
  }
  const auto blocks = ordered_map(tasks.size(), c.jobs, [&](std::size_t t) {
    EvalRow block;
    const Vector& x = pts[tasks[t].point];
    double prev = std::numeric_limits<double>::quiet_NaN(), prev_ell = 0.0;
    for (double ell : ells) {
      std::string head = std::to_string(tasks[t].point) + "," + vec_field(x) + "," + to_string(tasks[t].kind) + "," + num(ell) + ",";
      try {
        const auto e = evaluate(tasks[t].kind, p, x, ell, cfg);
        std::string mono, ratio;
        if (!std::isnan(prev)) {
          mono = e.value <= prev + eps ? "1" : "0";
          ratio = prev <= (ell / prev_ell) * e.value + eps ? "1" : "0";
        }
        block.text += head + num(e.value) + "," + num(e.fw_gap) + "," + mono + "," + ratio + ",\n";
        prev = e.value;
        prev_ell = ell;
      } catch (const Error& e) {
        block.text += head + ",,,," + csv_field(std::string(to_string(e.code())) + ": " + e.what()) + "\n";
        block.failed = true;
        prev = std::numeric_limits<double>::quiet_NaN();
      }
    }
    return block;
  });
  std::string text = "point,x,kind,ell,value,fw_gap,nonincreasing,ratio_ok,error\n";
  bool failed = false;
  for (const auto& b : blocks) {
    text += b.text;
    failed |= b.failed;
  }
  emit(c, out, text);
  return failed ? kExitEvalFailed : kExitOk;
}

/// Columns: iterate,kind,ell,value,fw_gap,error.
inline int cmd_trace(const CliConfig& c, std::ostream& out, const Logger& log) {
  if (c.points_csv.empty()) throw CliError(kExitUsage, "trace reads the iterate sequence from --points-csv");
  const ZooEntry entry = problem_source(c);
  const auto& p = entry.problem;
  const auto cfg = solve_config(c);
  const auto kinds = merit_kinds(c);
  if (kinds.size() != 1) throw CliError(kExitUsage, "trace takes a single --kind");
  const auto ells = parse_ells(c.ells);
  if (kinds[0] != MeritKind::U0 && ells.size() != 1) throw CliError(kExitUsage, "trace takes a single --ell");
  const double ell = kinds[0] == MeritKind::U0 ? 0.0 : ells[0];
  const auto pts = parse_points_csv(read_file(c.points_csv), p.dimension());
  log.info("trace: " + entry.id() + ", " + std::to_string(pts.size()) + " iterates");
  const auto rows = ordered_map(pts.size(), c.jobs, [&](std::size_t k) {
    std::string head = std::to_string(k) + "," + to_string(kinds[0]) + "," + num(ell) + ",";
    try {
      const auto e = evaluate(kinds[0], p, pts[k], ell, cfg);
      return EvalRow{head + num(e.value) + "," + num(e.fw_gap) + ",\n", false};
    } catch (const Error& e) {
      return EvalRow{head + ",," + csv_field(std::string(to_string(e.code())) + ": " + e.what()) + "\n", true};
    }
  });
  std::string text = "iterate,kind,ell,value,fw_gap,error\n";
  bool failed = false;
  for (const auto& r : rows) {
    text += r.text;
    failed |= r.failed;
  }
  emit(c, out, text);
  return failed ? kExitEvalFailed : kExitOk;
}

/// Writes <prefix>.txt and <prefix>.csv and prints the text report.
inline int cmd_verify(const CliConfig& c, std::ostream& out, const Logger& log) {
  std::vector<CheckId> suite;
  try {
    for (const auto& s : flatten_list(c.suite)) suite.push_back(parse_check_id(s));
  } catch (const Error& e) {
    throw CliError(kExitUsage, e.what());
  }
  if (c.suite.empty()) suite = all_checks();
  std::vector<ZooEntry> problems;
  for (const auto& id : flatten_list(c.problems)) problems.push_back(load_builtin(id));
  for (const auto& path : c.spec_files) problems.push_back(load_spec_file(path));
  if (c.problems.empty() && c.spec_files.empty()) problems = default_zoo();
  SamplePlan plan;
  plan.seed = c.seed;
  plan.eval = solve_config(c);
  plan.jobs = c.jobs;
  plan.points_per_problem = c.points_per_problem;
  if (!c.ells.empty()) plan.ells = parse_ells(c.ells);
  log.info("verify: " + std::to_string(suite.size()) + " checks on " + std::to_string(problems.size()) + " problems");
  const VerificationReport report = run_all(suite, problems, plan);
  const std::string text = report.text();
  for (const auto& [suffix, body] : {std::pair<std::string, std::string>{".txt", text}, {".csv", report.csv()}}) {
    std::ofstream f(c.report_prefix + suffix, std::ios::binary);
    if (!f) throw CliError(kExitFile, "cannot write '" + c.report_prefix + suffix + "'");
    f << body;
  }
  out << text;
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

/// Columns: id,n,m,set,provenance. --known ID prints that entry's known-solution
/// table instead; --dump ID prints its JSON document.
inline int cmd_zoo_list(const CliConfig& c, std::ostream& out, const Logger&) {
  if (!c.known_id.empty()) {
    emit(c, out, known_solutions_csv(load_builtin(c.known_id)));
    return kExitOk;
  }
  if (!c.dump_id.empty()) {
    emit(c, out, serialize(load_builtin(c.dump_id).spec) + "\n");
    return kExitOk;
  }
  std::string text = "id,n,m,set,provenance\n";
  for (const auto& e : default_zoo()) {
    const char* set = e.problem.feasible_set().kind() == FeasibleSet::Kind::Reals  ? "reals"
                      : e.problem.feasible_set().kind() == FeasibleSet::Kind::Box ? "box"
                                                                                   : "ball";
    text += e.id() + "," + std::to_string(e.problem.dimension()) + "," + std::to_string(e.problem.objective_count()) + "," +
            set + "," + csv_field(e.spec.provenance) + "\n";
  }
  emit(c, out, text);
  return kExitOk;
}

// --- entry point ---------------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Merit functions for multiobjective optimization"};
  app.name("merit");
  app.require_subcommand(1);

  auto add_problem = [&](CLI::App* s) {
    s->add_option("--builtin", c.builtin_id, "built-in problem id (see zoo-list)");
    s->add_option("--spec", c.spec_path, "problem JSON file");
  };
  auto add_solver = [&](CLI::App* s) {
    s->add_option("--gap-tol", c.gap_tol, "Frank-Wolfe gap tolerance");
    s->add_option("--inner-tol", c.inner_tol, "inner solver tolerance");
    s->add_option("--jobs", c.jobs, "worker threads (output order is unaffected)");
    s->add_option("--seed", c.seed, "seed for all sampling");
  };
  auto add_points = [&](CLI::App* s) {
    s->add_option("--points", c.points, "inline points: '0,0.5,2' for n = 1, else '1,2;3,4'");
    s->add_option("--points-csv", c.points_csv, "CSV file with header x1,...,xn");
    s->add_option("--sample", c.sample, "number of random feasible points");
    s->add_option("--out", c.out_path, "output CSV path (default stdout)");
  };

  auto* eval = app.add_subcommand("eval", "evaluate merit values at points");
  add_problem(eval);
  add_points(eval);
  add_solver(eval);
  eval->add_option("--kind", c.kinds, "u0, u_ell, w_ell (comma list)");
  eval->add_option("--ell", c.ells, "ell values (comma list)");

  auto* sweep = app.add_subcommand("sweep", "merit values over an ell grid");
  add_problem(sweep);
  add_points(sweep);
  add_solver(sweep);
  sweep->add_option("--kind", c.kinds, "u_ell or w_ell (comma list)");
  sweep->add_option("--ell", c.ells, "ell grid (comma list)");

  auto* trace = app.add_subcommand("trace", "merit values along an iterate sequence");
  add_problem(trace);
  add_solver(trace);
  trace->add_option("--points-csv", c.points_csv, "iterates, header x1,...,xn");
  trace->add_option("--out", c.out_path, "output CSV path (default stdout)");
  trace->add_option("--kind", c.kinds, "u0, u_ell or w_ell");
  trace->add_option("--ell", c.ells, "ell");

  auto* verify = app.add_subcommand("verify", "run property checks over zoo problems");
  add_solver(verify);
  verify->add_option("--suite", c.suite, "check ids (comma list, default all)");
  verify->add_option("--problems", c.problems, "builtin ids (comma list, default the whole zoo)");
  verify->add_option("--spec", c.spec_files, "extra problem JSON files");
  verify->add_option("--points-per-problem", c.points_per_problem, "random points per problem");
  verify->add_option("--ell", c.ells, "ell grid (comma list)");
  verify->add_option("--report-prefix", c.report_prefix, "writes PREFIX.txt and PREFIX.csv");

  auto* zoo = app.add_subcommand("zoo-list", "list built-in problems");
  zoo->add_option("--known", c.known_id, "print the known-solution table of one entry");
  zoo->add_option("--dump", c.dump_id, "print the JSON document of one entry");
  zoo->add_option("--out", c.out_path, "output path (default stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "merit: " << e.what() << "\n";
    return kExitUsage;
  }

  const Logger log(err, log_level_from_env());
  try {
    if (eval->parsed()) return cmd_eval(c, out, log);
    if (sweep->parsed()) return cmd_sweep(c, out, log);
    if (trace->parsed()) return cmd_trace(c, out, log);
    if (verify->parsed()) return cmd_verify(c, out, log);
    return cmd_zoo_list(c, out, log);
  } catch (const CliError& e) {
    err << "merit: " << e.what() << "\n";
    return e.exit_code;
  } catch (const Error& e) {
    err << "merit: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitEvalFailed;
  }
}

}  // namespace merit::cli
