#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "padic_hg/io.hpp"
#include "padic_hg/verify.hpp"

namespace padic_hg {

struct CheckInfo {
  std::string name;
  bool uses_c;
  bool needs_q;  // c must lie in 1 + qW
};

inline const std::vector<CheckInfo>& known_checks() {
  static const std::vector<CheckInfo> checks = {
      {"dwork-congruence", false, false}, {"log-congruence", true, false}, {"hat-congruence", true, true},
      {"dwork-transform", false, false},  {"integrality", true, false},    {"interpolation", true, true},
      {"beta-pairing", true, true},       {"braced", false, false},       {"ratio-identity", false, false},
      {"section", false, false},          {"main-congruence", true, true}, {"b0-consistency", true, true},
  };
  return checks;
}

inline std::optional<CheckInfo> find_check(const std::string& name) {
  for (const auto& c : known_checks()) {
    if (c.name == name) return c;
  }
  return std::nullopt;
}

struct SuiteConfig {
  std::vector<std::uint32_t> primes;
  std::vector<int> ns;
  std::vector<std::string> as;
  std::vector<int> ss{1};
  std::vector<std::string> cs{"1"};
  std::vector<std::string> checks;
  std::optional<int> prec;
  std::string out;
  unsigned jobs = 1;
};

namespace detail {

inline std::string trim(std::string s) {
  auto ws = [](unsigned char ch) { return std::isspace(ch) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && t.front() == '[' && t.back() == ']') t = t.substr(1, t.size() - 2);
  std::vector<std::string> out;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.size() >= 2 && item.front() == '"' && item.back() == '"') item = item.substr(1, item.size() - 2);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline long long parse_int(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ConfigInvalid, key + ": not an integer: " + s);
  }
}

// "1,2,5" or "1..3" (inclusive) or a mix.
inline std::vector<long long> parse_int_list(const std::string& text, const std::string& key) {
  std::vector<long long> out;
  for (const auto& item : split_list(text)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(item, key));
      continue;
    }
    const long long lo = parse_int(trim(item.substr(0, dots)), key);
    const long long hi = parse_int(trim(item.substr(dots + 2)), key);
    if (hi < lo || hi - lo > 1000) throw Error(ErrorKind::ConfigInvalid, key + ": bad range " + item);
    for (long long v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// Applies one key/value setting; keys mirror the CLI flags.
inline void apply_setting(SuiteConfig& cfg, std::string key, const std::string& value) {
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (key == "p") {
    cfg.primes.clear();
    for (long long v : detail::parse_int_list(value, key)) {
      if (v < 2 || v > 1000) throw Error(ErrorKind::ConfigInvalid, "p out of range: " + std::to_string(v));
      cfg.primes.push_back(static_cast<std::uint32_t>(v));
    }
  } else if (key == "n") {
    cfg.ns.clear();
    for (long long v : detail::parse_int_list(value, key)) cfg.ns.push_back(static_cast<int>(v));
  } else if (key == "s") {
    cfg.ss.clear();
    for (long long v : detail::parse_int_list(value, key)) cfg.ss.push_back(static_cast<int>(v));
  } else if (key == "a") {
    cfg.as = detail::split_list(value);
  } else if (key == "c") {
    cfg.cs = detail::split_list(value);
  } else if (key == "check" || key == "checks") {
    cfg.checks = detail::split_list(value);
  } else if (key == "prec") {
    cfg.prec = static_cast<int>(detail::parse_int(detail::trim(value), key));
  } else if (key == "out") {
    cfg.out = detail::trim(value);
  } else if (key == "jobs") {
    const long long j = detail::parse_int(detail::trim(value), key);
    if (j < 1 || j > 256) throw Error(ErrorKind::ConfigInvalid, "jobs out of range");
    cfg.jobs = static_cast<unsigned>(j);
  } else {
    throw Error(ErrorKind::ConfigInvalid, "unknown key: " + key);
  }
}

/// "key: value" lines; blank lines and '#' comments are skipped.
inline void load_config(SuiteConfig& cfg, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorKind::ConfigInvalid, "line " + std::to_string(lineno) + ": expected key: value");
    }
    apply_setting(cfg, detail::trim(line.substr(0, colon)), line.substr(colon + 1));
  }
}

inline void load_config_file(SuiteConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigInvalid, "cannot open config " + path);
  load_config(cfg, in);
}

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {"p", "n", "a", "s", "c", "checks", "prec", "out", "jobs"};
  return keys;
}

/// PADIC_HG_<KEY> overrides, e.g. PADIC_HG_P=3,5 or PADIC_HG_CHECKS=braced.
inline void apply_env(SuiteConfig& cfg, const std::function<const char*(const char*)>& getenv_fn = std::getenv) {
  for (const auto& key : config_keys()) {
    std::string var = "PADIC_HG_" + key;
    std::transform(var.begin(), var.end(), var.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (const char* v = getenv_fn(var.c_str())) apply_setting(cfg, key, v);
  }
  if (const char* v = getenv_fn("PADIC_HG_CHECK")) apply_setting(cfg, "check", v);
}

/// Largest p^n a suite cell may use.
inline constexpr std::uint64_t kSuiteMaxPower = 625;

inline void validate(const SuiteConfig& cfg) {
  auto bad = [](const std::string& msg) { throw Error(ErrorKind::ConfigInvalid, msg); };
  if (cfg.checks.empty()) bad("empty check list");
  if (cfg.primes.empty()) bad("empty p list");
  if (cfg.ns.empty()) bad("empty n list");
  if (cfg.as.empty()) bad("empty a list");
  if (cfg.ss.empty()) bad("empty s list");
  if (cfg.cs.empty()) bad("empty c list");
  if (cfg.prec && *cfg.prec < 1) bad("prec must be positive");
  bool any_q = false;
  for (const auto& name : cfg.checks) {
    auto info = find_check(name);
    if (!info) bad("unknown check: " + name);
    any_q = any_q || info->needs_q;
  }
  for (int s : cfg.ss) {
    if (s < 1 || s > 8) bad("s out of range: " + std::to_string(s));
  }
  for (auto p : cfg.primes) {
    if (!detail::is_prime(p)) bad("not a prime: " + std::to_string(p));
    for (int n : cfg.ns) {
      if (n < 1) bad("n must be positive");
      std::uint64_t pn = 1;
      for (int i = 0; i < n; ++i) {
        pn *= p;
        if (pn > kSuiteMaxPower) bad("p^n exceeds " + std::to_string(kSuiteMaxPower) + " at p=" + std::to_string(p));
      }
    }
    for (const auto& text : cfg.as) {
      Rational a;
      try {
        a = Rational::parse(text);
      } catch (const std::exception& e) {
        bad("a: " + std::string(e.what()));
      }
      if (a.is_nonpositive_integer()) bad("a must not be a nonpositive integer: " + text);
      if (a.denominator() % static_cast<std::int64_t>(p) == 0) {
        bad("p=" + std::to_string(p) + " divides the denominator of a=" + text);
      }
    }
    for (const auto& text : cfg.cs) {
      Rational c;
      try {
        c = Rational::parse(text);
      } catch (const std::exception& e) {
        bad("c: " + std::string(e.what()));
      }
      const FrobeniusSpec f = FrobeniusSpec::sigma(c);
      if (c.denominator() % static_cast<std::int64_t>(p) == 0 || f.depth(p) < 1) {
        bad("c=" + text + " is not 1 mod p at p=" + std::to_string(p));
      }
      if (any_q && !f.in_one_plus_q(p)) bad("c=" + text + " is not 1 mod 4 at p=2");
    }
  }
}

struct SuiteCell {
  std::string check;
  std::uint32_t p;
  std::string a;
  int s;
  int n;
  std::string c;
};

/// Cells in a fixed order: check, p, a, s, n, c. Checks that ignore c run once.
inline std::vector<SuiteCell> enumerate_cells(const SuiteConfig& cfg) {
  std::vector<SuiteCell> cells;
  for (const auto& check : cfg.checks) {
    const bool uses_c = find_check(check)->uses_c;
    for (auto p : cfg.primes) {
      for (const auto& a : cfg.as) {
        for (int s : cfg.ss) {
          for (int n : cfg.ns) {
            if (uses_c) {
              for (const auto& c : cfg.cs) cells.push_back({check, p, a, s, n, c});
            } else {
              cells.push_back({check, p, a, s, n, "1"});
            }
          }
        }
      }
    }
  }
  return cells;
}

inline CheckReport run_check(const SuiteCell& cell, std::optional<int> prec) {
  const HGParams params = HGParams::make(Rational::parse(cell.a), cell.s, cell.p);
  const Rational c = Rational::parse(cell.c);
  const int n = cell.n;
  const std::uint64_t pn = detail::pow_p(cell.p, n);
  const auto M = static_cast<std::size_t>(2 * pn);
  const std::string& k = cell.check;
  if (k == "dwork-congruence") return check_congruence_relation(RelationKind::dwork, params, FrobeniusSpec{}, n, M);
  if (k == "log-congruence") return check_congruence_relation(RelationKind::log, params, FrobeniusSpec::sigma(c), n, M);
  if (k == "hat-congruence") {
    return check_congruence_relation(RelationKind::hat, params, FrobeniusSpec::sigma_hat(c), n, M);
  }
  if (k == "dwork-transform") return check_dwork_transformation(params, n, prec);
  if (k == "integrality") return check_integrality(params, c, n, 2 * pn);
  if (k == "interpolation") return check_ratio_congruence(params, c, n, 2 * pn);
  if (k == "beta-pairing") return check_beta_pairing_all(params, c, n);
  if (k == "braced") return check_braced_all(params, n, pn * pn);
  if (k == "ratio-identity") return check_ratio_identity(params, 200, prec.value_or(n));
  if (k == "section") return check_section_all(params, n);
  if (k == "main-congruence") return check_main_congruence(params, c, n);
  if (k == "b0-consistency") return check_b0_log(params, c, n);
  throw Error(ErrorKind::ConfigInvalid, "unknown check: " + k);
}

/// Never throws for mathematical errors: they become failed reports.
inline CheckReport run_cell(const SuiteCell& cell, std::optional<int> prec) {
  try {
    return run_check(cell, prec);
  } catch (const std::exception& e) {
    CheckReport r;
    r.check = cell.check;
    r.params = {{"a", cell.a}, {"s", std::to_string(cell.s)}, {"p", std::to_string(cell.p)},
                {"n", std::to_string(cell.n)}, {"c", cell.c}};
    r.p = cell.p;
    r.modulus_exp = cell.n;
    r.passed = false;
    r.error = e.what();
    return r;
  }
}

struct SuiteResult {
  std::vector<CheckReport> reports;
  std::size_t passed = 0;
  std::size_t failed = 0;
  bool all_passed() const { return failed == 0; }
};

/// Runs every cell on a pool of cfg.jobs threads; reports keep cell order.
/// When report is given, one JSON object per line is written to it.
inline SuiteResult run_suite(const SuiteConfig& cfg, std::ostream* report = nullptr) {
  validate(cfg);
  const auto cells = enumerate_cells(cfg);
  SuiteResult res;
  res.reports.resize(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) res.reports[i] = run_cell(cells[i], cfg.prec);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& r : res.reports) {
    (r.passed ? res.passed : res.failed) += 1;
    if (report) *report << to_json(r).dump() << '\n';
  }
  return res;
}

inline void print_summary(std::ostream& os, const SuiteResult& res) {
  std::map<std::string, std::pair<int, int>> by_check;
  std::vector<std::string> order;
  for (const auto& r : res.reports) {
    if (!by_check.count(r.check)) order.push_back(r.check);
    auto& [pass, fail] = by_check[r.check];
    (r.passed ? pass : fail) += 1;
  }
  os << std::left << std::setw(20) << "check" << std::right << std::setw(8) << "pass" << std::setw(8) << "fail" << '\n';
  for (const auto& name : order) {
    os << std::left << std::setw(20) << name << std::right << std::setw(8) << by_check[name].first << std::setw(8)
       << by_check[name].second << '\n';
  }
  os << std::left << std::setw(20) << "total" << std::right << std::setw(8) << res.passed << std::setw(8) << res.failed
     << '\n';
}

}  // namespace padic_hg
