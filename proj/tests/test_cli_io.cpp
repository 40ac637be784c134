#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "dynlforge/catalog.hpp"
#include "dynlforge/errors.hpp"
#include "dynlforge/suites.hpp"

#ifndef DYNLFORGE_CLI
#define DYNLFORGE_CLI "dynlforge"
#endif

using namespace dynlforge;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + DYNLFORGE_CLI + " " + args + " 2>/dev/null";
  RunResult r{-1, ""};
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string last_line(const std::string& text) {
  std::istringstream in(text);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  return last;
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("dynlforge_test_" + name); }

fs::path exported(const std::string& name) {
  const fs::path path = temp_file(name + ".json");
  std::ofstream(path) << setup_to_json(catalog_get(name));
  return path;
}

}  // namespace

TEST(ResidualReport, RoundTripIsBitExact) {
  ResidualReport r;
  r.setup_name = "x";
  r.setup_hash = "00ff";
  r.suite = "lcan";
  r.seed = std::numeric_limits<std::uint64_t>::max();
  r.points = 3;
  VecD p(2);
  p << 0.1, -1.0 / 3.0;
  r.records.push_back(ResidualRecord::make(0, p, "a", 1.2345678901234567e-17, 1e-8));
  r.records.push_back(ResidualRecord::make(1, p, "b", std::numeric_limits<double>::infinity(), 1e-8));
  r.records.push_back(ResidualRecord::make(2, p, "c", std::nextafter(1.0, 2.0), 0.5, true));
  r.records.push_back(ResidualRecord::make(-1, VecD(0), "d", -0.0, 0.0));
  r.skipped.push_back({2, {0.5, 0.25}, "OutsideAnalyticDomain", 3.5e9});
  const ResidualReport back = ResidualReport::from_jsonl(r.to_jsonl());
  EXPECT_TRUE(back == r);
  EXPECT_EQ(back.to_jsonl(), r.to_jsonl());
  EXPECT_FALSE(r.verdict());
}

TEST(ResidualReport, VerdictFailsWhenMostPointsSkip) {
  ResidualReport r;
  r.points = 4;
  for (int i = 0; i < 3; ++i) r.skipped.push_back({i, {}, "OutsideAnalyticDomain", 1e9});
  EXPECT_FALSE(r.verdict());
  r.skipped.pop_back();
  EXPECT_TRUE(r.verdict());
}

TEST(ResidualReport, MalformedInputIsParseError) {
  EXPECT_THROW(ResidualReport::from_jsonl("{\"type\":\"record\"}\n"), ParseError);
  EXPECT_THROW(ResidualReport::from_jsonl("not json\n"), ParseError);
}

TEST(ResidualReport, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Suites, DeterministicAcrossThreadCounts) {
  const QuasiBialgebra g = catalog_get("heisenberg-degenerate");
  SuiteOptions a;
  a.seed = 99;
  a.grid_count = 8;
  a.threads = 1;
  SuiteOptions b = a;
  b.threads = 4;
  EXPECT_EQ(run_suite(g, "lcan", a).to_jsonl(), run_suite(g, "lcan", b).to_jsonl());
}

TEST(Suites, UnknownSuiteThrows) {
  EXPECT_THROW(run_suite(catalog_get("sl2-cartan"), "nope", {}), UnknownName);
}

TEST(Suites, LogLogSlope) {
  std::vector<double> t, e;
  for (int j = 0; j < 6; ++j) {
    t.push_back(std::ldexp(1.0, -j));
    e.push_back(3.0 * std::pow(t.back(), 5));
  }
  EXPECT_NEAR(loglog_slope(t, e, 0.0), 5.0, 1e-12);
  EXPECT_TRUE(std::isinf(loglog_slope(t, std::vector<double>(6, 0.0), 1e-12)));
}

TEST(Cli, ExportValidatesForEveryCatalogEntry) {
  for (const auto& name : catalog_names()) {
    const fs::path path = temp_file(name + "_cli.json");
    const RunResult e = run("export " + name + " --out " + path.string());
    ASSERT_EQ(e.code, 0) << name;
    const RunResult v = run("validate " + path.string());
    EXPECT_EQ(v.code, 0) << name;
    EXPECT_NE(last_line(v.out).find("\"verdict\":\"pass\""), std::string::npos);
  }
}

TEST(Cli, ExportIsStable) {
  const RunResult a = run("export sl2-cartan"), b = run("export sl2-cartan");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(fnv1a(a.out), fnv1a(b.out));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("export no-such-setup").code, 5);
  EXPECT_EQ(run("").code, 5);
  EXPECT_EQ(run("frobnicate").code, 5);
  const fs::path good = exported("sl2-cartan");
  EXPECT_EQ(run("suite " + good.string() + " nonsense").code, 5);

  const fs::path bad = temp_file("bad.json");
  std::ofstream(bad) << "{\"dim_l\": 1,";
  EXPECT_EQ(run("validate " + bad.string()).code, 3);

  QuasiBialgebra g = catalog_get("sl2-cartan");
  g.c(0, 1, 1) = 5.0;
  const fs::path corrupt = temp_file("corrupt.json");
  std::ofstream(corrupt) << setup_to_json(g);
  const RunResult c = run("validate " + corrupt.string());
  EXPECT_EQ(c.code, 2);
  EXPECT_NE(c.out.find("antisymmetry"), std::string::npos);

  QuasiBialgebra h = catalog_get("heisenberg-degenerate");
  h.bidynamical = false;
  add_wedge3(h.phi, 1, 2, 3, 0.8);
  const fs::path axiom = temp_file("axiom.json");
  std::ofstream(axiom) << setup_to_json(h);
  const RunResult a = run("validate " + axiom.string());
  EXPECT_EQ(a.code, 2);
  EXPECT_NE(a.out.find("AxiomError"), std::string::npos);
}

TEST(Cli, SuiteOutputIsDeterministicAndSummaryLast) {
  const fs::path so3 = exported("so3-quadratic-AM");
  const std::string args = "suite " + so3.string() + " lcan --seed 7 --grid-count 6";
  const RunResult a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(last_line(a.out).find("\"type\":\"summary\""), std::string::npos);
  EXPECT_NE(last_line(a.out).find("\"seed\":7"), std::string::npos);
  const ResidualReport r = ResidualReport::from_jsonl(a.out);
  EXPECT_EQ(r.records.size(), 6u * 9u);
}

TEST(Cli, ToleranceScaleCanFailASuite) {
  const fs::path so3 = exported("so3-quadratic-AM");
  EXPECT_EQ(run("suite " + so3.string() + " lcan --grid-count 4", "DYNLFORGE_TOL_SCALE=1e-30").code, 4);
}

TEST(Cli, OutFlagWritesReport) {
  const fs::path sl2 = exported("sl2-cartan");
  const fs::path out = temp_file("report.jsonl");
  fs::remove(out);
  EXPECT_EQ(run("suite " + sl2.string() + " link --grid-count 4 --out " + out.string()).code, 0);
  std::ifstream in(out);
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_TRUE(ResidualReport::from_jsonl(s.str()).verdict());
}

TEST(Cli, ScalarsSuitePasses) {
  const fs::path sl2 = exported("sl2-cartan");
  const RunResult r = run("suite " + sl2.string() + " scalars");
  EXPECT_EQ(r.code, 0);
}
