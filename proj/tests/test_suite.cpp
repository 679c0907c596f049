#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "padic_hg/suite.hpp"

using namespace padic_hg;

namespace {

SuiteConfig parse(const std::string& text) {
  SuiteConfig cfg;
  std::istringstream in(text);
  load_config(cfg, in);
  return cfg;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Config, ParsesKeyValueLists) {
  const auto cfg = parse(
      "# desk grid\n"
      "p: [3, 5]\n"
      "n: 1..3\n"
      "a: [\"1/2\", \"2\"]\n"
      "s: 1,2\n"
      "c: 1, 4\n"
      "checks: braced, section   # trailing comment\n"
      "jobs: 4\n"
      "prec: 6\n"
      "out: report.jsonl\n");
  EXPECT_EQ(cfg.primes, (std::vector<std::uint32_t>{3, 5}));
  EXPECT_EQ(cfg.ns, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(cfg.as, (std::vector<std::string>{"1/2", "2"}));
  EXPECT_EQ(cfg.ss, (std::vector<int>{1, 2}));
  EXPECT_EQ(cfg.cs, (std::vector<std::string>{"1", "4"}));
  EXPECT_EQ(cfg.checks, (std::vector<std::string>{"braced", "section"}));
  EXPECT_EQ(cfg.jobs, 4u);
  EXPECT_EQ(cfg.prec, 6);
  EXPECT_EQ(cfg.out, "report.jsonl");
}

TEST(Config, BadLinesAreConfigErrors) {
  EXPECT_EQ(kind_of([] { parse("p 3\n"); }), ErrorKind::ConfigInvalid);
  EXPECT_EQ(kind_of([] { parse("colour: red\n"); }), ErrorKind::ConfigInvalid);
  EXPECT_EQ(kind_of([] { parse("n: x\n"); }), ErrorKind::ConfigInvalid);
  EXPECT_EQ(kind_of([] { parse("jobs: 0\n"); }), ErrorKind::ConfigInvalid);
}

TEST(Config, EnvironmentOverrides) {
  auto cfg = parse("p: 3\nn: 1\na: 1/2\nchecks: braced\n");
  std::map<std::string, std::string> env{{"PADIC_HG_P", "5"}, {"PADIC_HG_N", "1..2"}, {"PADIC_HG_JOBS", "3"}};
  apply_env(cfg, [&](const char* name) -> const char* {
    auto it = env.find(name);
    return it == env.end() ? nullptr : it->second.c_str();
  });
  EXPECT_EQ(cfg.primes, (std::vector<std::uint32_t>{5}));
  EXPECT_EQ(cfg.ns, (std::vector<int>{1, 2}));
  EXPECT_EQ(cfg.jobs, 3u);
  EXPECT_EQ(cfg.as, (std::vector<std::string>{"1/2"}));
}

TEST(Validate, RejectsBadGrids) {
  auto base = [] { return parse("p: 3\nn: 1\na: 1/2\nchecks: braced\n"); };
  EXPECT_NO_THROW(validate(base()));
  auto empty = base();
  empty.checks.clear();
  EXPECT_EQ(kind_of([&] { validate(empty); }), ErrorKind::ConfigInvalid);
  auto unknown = base();
  unknown.checks = {"nonsense"};
  EXPECT_EQ(kind_of([&] { validate(unknown); }), ErrorKind::ConfigInvalid);
  auto den = base();
  den.as = {"1/3"};
  EXPECT_EQ(kind_of([&] { validate(den); }), ErrorKind::ConfigInvalid);
  auto c = base();
  c.cs = {"2"};
  EXPECT_EQ(kind_of([&] { validate(c); }), ErrorKind::ConfigInvalid);
  auto big = base();
  big.ns = {7};
  EXPECT_EQ(kind_of([&] { validate(big); }), ErrorKind::ConfigInvalid);
  auto notprime = base();
  notprime.primes = {9};
  EXPECT_EQ(kind_of([&] { validate(notprime); }), ErrorKind::ConfigInvalid);
}

TEST(Validate, ShallowCAtTwoOnlyWhereAllowed) {
  auto cfg = parse("p: 2\nn: 1\na: 1/3\nc: 3\nchecks: log-congruence\n");
  EXPECT_NO_THROW(validate(cfg));
  cfg.checks.push_back("main-congruence");
  EXPECT_EQ(kind_of([&] { validate(cfg); }), ErrorKind::ConfigInvalid);
}

TEST(Suite, CounterexampleConfig) {
  auto cfg = parse("p: 2\na: 1\ns: 1\nchecks: dwork-transform\nn: 1..3\n");
  std::ostringstream report;
  const auto res = run_suite(cfg, &report);
  EXPECT_TRUE(res.all_passed());
  ASSERT_EQ(res.reports.size(), 3u);
  for (const auto& r : res.reports) EXPECT_EQ(r.conjecture_sign, -1);
  std::istringstream lines(report.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto j = Json::parse(line);
    EXPECT_EQ(j["check"], "dwork-transform");
    ++count;
  }
  EXPECT_EQ(count, 3);
}

TEST(Suite, MainCongruenceConfig) {
  auto cfg = parse("p: 3\na: 1/2\ns: 1\nc: 4\nchecks: main-congruence\nn: 1, 2\n");
  EXPECT_TRUE(run_suite(cfg).all_passed());
}

TEST(Suite, ReportIsIndependentOfJobs) {
  auto cfg = parse("p: 3, 5\na: 1/2, 2\ns: 1, 2\nc: 1\nchecks: dwork-congruence, braced, beta-pairing\nn: 1..2\n");
  std::ostringstream one, many;
  cfg.jobs = 1;
  run_suite(cfg, &one);
  cfg.jobs = 6;
  run_suite(cfg, &many);
  EXPECT_EQ(one.str(), many.str());
  EXPECT_EQ(one.str().find("time"), std::string::npos);
}

TEST(Suite, CellErrorsBecomeFailures) {
  SuiteCell cell{"beta-pairing", 2, "1/3", 1, 1, "3"};
  const auto r = run_cell(cell, std::nullopt);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.error.has_value());
  EXPECT_NE(r.error->find("PreconditionViolated"), std::string::npos);
}

TEST(Suite, CellOrderIsFixed) {
  auto cfg = parse("p: 3\na: 1/2\ns: 1\nc: 1, 4\nchecks: section, main-congruence\nn: 1..2\n");
  const auto cells = enumerate_cells(cfg);
  ASSERT_EQ(cells.size(), 2u + 4u);
  EXPECT_EQ(cells[0].check, "section");
  EXPECT_EQ(cells[2].check, "main-congruence");
  EXPECT_EQ(cells[2].c, "1");
  EXPECT_EQ(cells[3].c, "4");
  EXPECT_EQ(cells[4].n, 2);
}

TEST(Summary, Counts) {
  auto cfg = parse("p: 3\na: 1/2\ns: 1\nchecks: braced, section\nn: 1\n");
  const auto res = run_suite(cfg);
  std::ostringstream os;
  print_summary(os, res);
  EXPECT_NE(os.str().find("braced"), std::string::npos);
  EXPECT_NE(os.str().find("total"), std::string::npos);
}

TEST(Io, TableFormats) {
  const auto t = b_coefficients(HGParams::make(Rational(1), 1, 3), FrobeniusSpec::sigma(Rational(1)), 4, 2);
  std::ostringstream csv, json;
  write_table(csv, t, TableFormat::csv);
  EXPECT_EQ(csv.str(), "k,kind,residue,prec\n0,B,0,2\n1,B,1,2\n2,B,5,2\n3,B,0,2\n");
  write_table(json, t, TableFormat::json);
  const auto j = Json::parse(json.str());
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[2]["residue"], "5");
  EXPECT_EQ(j[2]["kind"], "B");
}

TEST(Io, ATableOfOnes) {
  std::ostringstream os;
  write_table(os, hg_coefficients(HGParams::make(Rational(1), 1, 5), 4, 3), TableFormat::csv);
  EXPECT_EQ(os.str(), "k,kind,residue,prec\n0,A,1,3\n1,A,1,3\n2,A,1,3\n3,A,1,3\n");
}

TEST(Io, SeriesRoundTrip) {
  const auto f = hg_series(HGParams::make(Rational(1, 2), 2, 3), 12, 4);
  const auto j = to_json(f);
  EXPECT_EQ(j["order"], 12);
  EXPECT_EQ(series_from_json(j).coeffs(), f.coeffs());
  auto bad = j;
  bad["order"] = 3;
  EXPECT_THROW(series_from_json(bad), Error);
}
