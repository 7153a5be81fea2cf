// The merit command-line front end, driven in-process through run_cli.

#include "merit/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using merit::cli::run_cli;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') {
        quoted = !quoted;
      } else if (ch == ',' && !quoted) {
        row.push_back(cell);
        cell.clear();
      } else {
        cell += ch;
      }
    }
    row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == name) return k;
  }
  ADD_FAILURE() << "no column " << name;
  return 0;
}

std::string fixture(const std::string& name) { return std::string(MERIT_FIXTURE_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "merit-cli-tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, EvalAbsValues) {
  const auto r = run({"eval", "--builtin", "single-abs", "--kind", "u_ell", "--ell", "1", "--points", "0,0.5,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].size(), 12u);
  const auto v = column(rows[0], "value");
  const double expect[] = {0.0, 0.375, 0.5};
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(std::stod(rows[k + 1][v]), expect[k], 1e-6);
  const auto alias = run({"eval", "--builtin", "paper-abs", "--kind", "u_ell", "--ell", "1", "--points", "0,0.5,2"});
  EXPECT_EQ(alias.out, r.out);
}

TEST(Cli, EvalNegatedSquareStationary) {
  const auto r = run({"eval", "--builtin", "single-negsq", "--kind", "w_ell", "--ell", "0.5,1,2", "--points", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  const auto v = column(rows[0], "value");
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_NEAR(std::stod(rows[k][v]), 0.0, 1e-8);
}

TEST(Cli, EvalTwoDimensionalPoints) {
  const auto r = run({"eval", "--builtin", "quad-pair-2d", "--kind", "u_ell,w_ell", "--ell", "1", "--points", "0,0;2,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_csv(r.out).size(), 5u);
}

TEST(Cli, EvalSampledPointsAreSeeded) {
  const auto a = run({"eval", "--builtin", "l1-sq-2d", "--ell", "1", "--sample", "3", "--seed", "9"});
  const auto b = run({"eval", "--builtin", "l1-sq-2d", "--ell", "1", "--sample", "3", "--seed", "9", "--jobs", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, EvalFromSpecFile) {
  const auto r = run({"eval", "--spec", fixture("abs-1d.json"), "--ell", "1", "--points", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  EXPECT_NEAR(std::stod(rows[1][column(rows[0], "value")]), 0.375, 1e-6);
}

TEST(Cli, EvalUnsupportedKindReportsRow) {
  // u_ell needs every F_i convex; -x^2 is not.
  const auto r = run({"eval", "--builtin", "single-negsq", "--kind", "u_ell", "--ell", "1", "--points", "0.5"});
  EXPECT_EQ(r.code, 2);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NE(rows[1].back().find("ConvexityRequired"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"eval", "--builtin", "nope", "--ell", "1", "--points", "0"}).code, 64);
  EXPECT_EQ(run({"eval", "--ell", "1", "--points", "0"}).code, 64);
  EXPECT_EQ(run({"eval", "--builtin", "single-abs", "--spec", fixture("abs-1d.json"), "--ell", "1", "--points", "0"}).code, 64);
  EXPECT_EQ(run({"eval", "--builtin", "single-abs", "--ell", "-1", "--points", "0"}).code, 64);
  EXPECT_EQ(run({"eval", "--builtin", "single-abs", "--ell", "1"}).code, 64);
  EXPECT_EQ(run({"eval", "--builtin", "single-abs", "--kind", "v_ell", "--ell", "1", "--points", "0"}).code, 64);
  EXPECT_EQ(run({"frobnicate"}).code, 64);
  EXPECT_EQ(run({}).code, 64);
  EXPECT_EQ(run({"verify", "--suite", "NOT_A_CHECK"}).code, 64);
}

TEST(Cli, DataAndFileErrors) {
  EXPECT_EQ(run({"eval", "--builtin", "quad-pair-2d", "--ell", "1", "--points", "1,2,3"}).code, 65);
  EXPECT_EQ(run({"eval", "--spec", fixture("asymmetric-q.json"), "--ell", "1", "--points", "0,0"}).code, 65);
  EXPECT_EQ(run({"eval", "--spec", fixture("missing.json"), "--ell", "1", "--points", "0"}).code, 66);
}

TEST(Cli, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, SweepIsNonincreasing) {
  const auto r = run({"sweep", "--builtin", "single-abs", "--kind", "u_ell", "--ell", "4,1,2", "--points", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  const auto ell = column(rows[0], "ell"), v = column(rows[0], "value"), mono = column(rows[0], "nonincreasing"),
             ratio = column(rows[0], "ratio_ok");
  EXPECT_EQ(rows[1][ell], "1");
  EXPECT_NEAR(std::stod(rows[1][v]), 0.375, 1e-6);
  EXPECT_NEAR(std::stod(rows[2][v]), 0.25, 1e-6);
  EXPECT_NEAR(std::stod(rows[3][v]), 0.125, 1e-6);
  for (std::size_t k = 2; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k][mono], "1");
    EXPECT_EQ(rows[k][ratio], "1");
  }
}

TEST(Cli, TraceConvergingSequence) {
  const auto r = run({"trace", "--builtin", "single-abs", "--kind", "u_ell", "--ell", "1", "--points-csv",
                      fixture("trace-to-zero.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 14u);
  const auto v = column(rows[0], "value");
  EXPECT_LE(std::stod(rows.back()[v]), 1.1e-5);
  for (std::size_t k = 2; k < rows.size(); ++k) EXPECT_LE(std::stod(rows[k][v]), std::stod(rows[k - 1][v]) + 1e-9);
}

TEST(Cli, TraceConstantNonSolution) {
  const auto path = scratch("constant.csv");
  {
    std::ofstream f(path);
    f << "x1\n2\n2\n2\n";
  }
  const auto r = run({"trace", "--builtin", "quad-pair-1d", "--kind", "w_ell", "--ell", "1", "--points-csv", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  const auto v = column(rows[0], "value");
  const double first = std::stod(rows[1][v]);
  EXPECT_GT(first, 0.1);
  for (std::size_t k = 2; k < rows.size(); ++k) EXPECT_EQ(std::stod(rows[k][v]), first);
}

TEST(Cli, TraceInputErrors) {
  EXPECT_EQ(run({"trace", "--builtin", "single-abs", "--ell", "1", "--points-csv", fixture("wrong-dim.csv")}).code, 65);
  EXPECT_EQ(run({"trace", "--builtin", "single-abs", "--ell", "1", "--points-csv", fixture("nonexistent.csv")}).code, 66);
  EXPECT_EQ(run({"trace", "--builtin", "single-abs", "--ell", "1"}).code, 64);
}

TEST(Cli, VerifyErrorBoundReportsBranch) {
  const auto prefix = scratch("isotropic").string();
  const auto r = run({"verify", "--suite", "ERROR_BOUND_W", "--problems", "isotropic-2d", "--report-prefix", prefix});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("ERROR_BOUND_W"), std::string::npos);
  EXPECT_NE(r.out.find("branch"), std::string::npos);
  EXPECT_TRUE(fs::exists(prefix + ".txt"));
  std::ifstream csv(prefix + ".csv");
  std::stringstream ss;
  ss << csv.rdbuf();
  const auto rows = parse_csv(ss.str());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "ERROR_BOUND_W");
  EXPECT_EQ(rows[1][1], "PASS");
}

TEST(Cli, VerifyCorruptedFixtureFails) {
  const auto prefix = scratch("corrupted").string();
  const auto r = run({"verify", "--suite", "BETWEEN_CONVEX", "--spec", fixture("corrupted-quad-pair.json"),
                      "--report-prefix", prefix});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("corrupted-quad-pair"), std::string::npos);
}

TEST(Cli, VerifyIsReproducible) {
  const auto a = scratch("rep-a").string(), b = scratch("rep-b").string();
  const std::vector<std::string> base{"verify", "--suite", "NONNEG_WL,INNER_SCALING_W", "--problems", "single-abs,quad-pair-2d",
                                      "--seed", "3"};
  auto args_a = base, args_b = base;
  args_a.insert(args_a.end(), {"--report-prefix", a});
  args_b.insert(args_b.end(), {"--report-prefix", b, "--jobs", "2"});
  ASSERT_EQ(run(args_a).code, 0);
  ASSERT_EQ(run(args_b).code, 0);
  std::ifstream fa(a + ".csv"), fb(b + ".csv");
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_FALSE(sa.str().empty());
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Cli, ZooList) {
  const auto r = run({"zoo-list"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"id", "n", "m", "set", "provenance"}));
  EXPECT_EQ(rows.size(), merit::builtin_ids().size() + 1);
  EXPECT_EQ(rows[1][0], "single-abs");

  const auto known = run({"zoo-list", "--known", "quad-pair-1d"});
  ASSERT_EQ(known.code, 0);
  EXPECT_EQ(known.out.rfind("role,x1\n", 0), 0u);

  const auto dump = run({"zoo-list", "--dump", "isotropic-2d"});
  ASSERT_EQ(dump.code, 0);
  const auto e = merit::load_spec(dump.out);
  EXPECT_EQ(e.id(), "isotropic-2d");
  EXPECT_EQ(run({"zoo-list", "--known", "nope"}).code, 64);
}
