// padic-hg: coefficient tables, series, interpolation values and the
// verification suite for p-adic hypergeometric functions.
//
//   padic-hg table --kind B --p 3 --a 1 --count 4
//   padic-hg series --kind G --p 3 --a 1/2 --c 4 --order 12 --prec 3
//   padic-hg interp --p 3 --a 1/2 --s 2 --c 4 --lambda 0,1,1/2 --n 2
//   padic-hg suite --config configs/desk.cfg --out report.jsonl --jobs 4
//
// Exit status: 0 all checks pass, 1 a check failed, 2 bad configuration.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include "padic_hg/padic_hg.hpp"

namespace {

using namespace padic_hg;

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Common {
  std::uint32_t p = 3;
  std::string a = "1/2";
  int s = 1;
  std::string c = "1";
  int prec = 5;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* cmd, Common& o) {
  cmd->add_option("--p", o.p, "prime")->capture_default_str();
  cmd->add_option("--a", o.a, "parameter a as n/d")->capture_default_str();
  cmd->add_option("--s", o.s, "number of equal parameters")->capture_default_str();
  cmd->add_option("--c", o.c, "Frobenius constant, c = 1 mod p")->capture_default_str();
  cmd->add_option("--prec", o.prec, "target p-adic precision N")->capture_default_str();
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--out", o.out, "output file (default stdout)");
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorKind::ConfigInvalid, "cannot write " + path);
    }
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<Rational> parse_rationals(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  for (const auto& s : items) out.push_back(Rational::parse(s));
  return out;
}

int run_table(const Common& o, const std::string& kind, std::size_t count, const std::vector<std::string>& lambdas,
              bool hat) {
  const HGParams params = HGParams::make(Rational::parse(o.a), o.s, o.p);
  const Rational c = Rational::parse(o.c);
  const TableFormat fmt = o.format == "csv" ? TableFormat::csv : TableFormat::json;
  Output out(o.out);
  if (kind == "beta") {
    CoefficientEngine eng(params, hat ? FrobeniusSpec::sigma_hat(c) : FrobeniusSpec::sigma(c));
    std::vector<InterpPoint> pts;
    for (const auto& l : parse_rationals(lambdas)) pts.push_back(beta_at(eng, l, o.prec, hat));
    write_points(out.get(), pts, hat ? "betahat" : "beta", fmt);
  } else if (kind == "A") {
    write_table(out.get(), hg_coefficients(params, count, o.prec), fmt);
  } else if (kind == "A1") {
    write_table(out.get(), hg_coefficients(params, count, o.prec, 1), fmt);
  } else if (kind == "B") {
    write_table(out.get(), b_coefficients(params, FrobeniusSpec::sigma(c), count, o.prec), fmt);
  } else {
    write_table(out.get(), bhat_coefficients(params, FrobeniusSpec::sigma_hat(c), count, o.prec), fmt);
  }
  return 0;
}

int run_series(const Common& o, const std::string& kind, std::size_t order, int n) {
  const HGParams params = HGParams::make(Rational::parse(o.a), o.s, o.p);
  const Rational c = Rational::parse(o.c);
  TruncSeries f;
  if (kind == "F") f = hg_series(params, order, o.prec);
  else if (kind == "dwork") f = dwork_function(params, n, order);
  else if (kind == "G") f = log_type_series(params, FrobeniusSpec::sigma(c), order, o.prec).first;
  else if (kind == "Ghat") f = hat_series(params, FrobeniusSpec::sigma_hat(c), order, o.prec).first;
  else if (kind == "log") f = log_type_function(params, FrobeniusSpec::sigma(c), order, o.prec);
  else if (kind == "hat") f = hat_function(params, FrobeniusSpec::sigma_hat(c), order, o.prec);
  else f = compute_h(params, o.prec);
  Output out(o.out);
  out.get() << to_json(f).dump() << '\n';
  return 0;
}

int run_interp(const Common& o, const std::vector<std::string>& lambdas, int n) {
  const HGParams params = HGParams::make(Rational::parse(o.a), o.s, o.p);
  const Rational c = Rational::parse(o.c);
  Output out(o.out);
  bool all = true;
  for (const auto& l : parse_rationals(lambdas)) {
    const CheckReport r = check_beta_pairing(l, params, c, n);
    const InterpPoint b = beta_at(params, FrobeniusSpec::sigma(c), l, n);
    const InterpPoint bh = beta_at(params, FrobeniusSpec::sigma_hat(c), -l - params.a, n, true);
    Json row = {{"lambda", l.to_string()},
                {"beta", std::to_string(b.value.residue())},
                {"witness", b.witness},
                {"betahat_partner", std::to_string(bh.value.residue())},
                {"partner_witness", bh.witness},
                {"modulus", r.modulus()},
                {"pairing_passed", r.passed}};
    out.get() << row.dump() << '\n';
    all = all && r.passed;
  }
  return all ? 0 : kExitFail;
}

struct SuiteFlags {
  std::string config;
  std::string p, n, a, s, c, check, out;
  std::optional<int> prec;
  std::optional<unsigned> jobs;
};

int run_suite_cmd(const SuiteFlags& f) {
  SuiteConfig cfg;
  if (!f.config.empty()) load_config_file(cfg, f.config);
  apply_env(cfg);
  auto set = [&](const char* key, const std::string& v) {
    if (!v.empty()) apply_setting(cfg, key, v);
  };
  set("p", f.p);
  set("n", f.n);
  set("a", f.a);
  set("s", f.s);
  set("c", f.c);
  set("checks", f.check);
  set("out", f.out);
  if (f.prec) apply_setting(cfg, "prec", std::to_string(*f.prec));
  if (f.jobs) apply_setting(cfg, "jobs", std::to_string(*f.jobs));
  validate(cfg);

  std::unique_ptr<std::ofstream> report;
  if (!cfg.out.empty()) {
    report = std::make_unique<std::ofstream>(cfg.out);
    if (!*report) throw Error(ErrorKind::ConfigInvalid, "cannot write " + cfg.out);
  }
  const SuiteResult res = run_suite(cfg, report ? report.get() : nullptr);
  print_summary(std::cout, res);
  for (const auto& r : res.reports) {
    if (r.passed) continue;
    std::cout << "FAIL " << to_json(r).dump() << '\n';
  }
  return res.all_passed() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic hypergeometric functions: tables, series and congruence checks"};
  app.require_subcommand(1);

  Common tab;
  std::string table_kind = "A";
  std::size_t count = 8;
  std::vector<std::string> table_lambdas{"1"};
  bool table_hat = false;
  auto* table = app.add_subcommand("table", "coefficient table or interpolation values");
  add_common(table, tab);
  table->add_option("--kind", table_kind, "A, A1, B, Bhat or beta")
      ->check(CLI::IsMember({"A", "A1", "B", "Bhat", "beta"}))
      ->capture_default_str();
  table->add_option("--count", count, "number of coefficients")->capture_default_str();
  table->add_option("--lambda", table_lambdas, "points for kind=beta")->delimiter(',');
  table->add_flag("--hat", table_hat, "kind=beta: use Bhat and the inverse Frobenius");

  Common ser;
  std::string series_kind = "F";
  std::size_t order = 10;
  int series_n = 1;
  auto* series = app.add_subcommand("series", "truncated series as JSON");
  add_common(series, ser);
  series->add_option("--kind", series_kind, "F, dwork, G, Ghat, log, hat or h")
      ->check(CLI::IsMember({"F", "dwork", "G", "Ghat", "log", "hat", "h"}))
      ->capture_default_str();
  series->add_option("--order", order, "number of coefficients")->capture_default_str();
  series->add_option("--n", series_n, "truncation level for kind=dwork")->capture_default_str();

  Common itp;
  std::vector<std::string> interp_lambdas{"0", "1"};
  int interp_n = 2;
  auto* interp = app.add_subcommand("interp", "beta values and the pairing with betahat");
  add_common(interp, itp);
  interp->add_option("--lambda", interp_lambdas, "points, comma separated")->delimiter(',');
  interp->add_option("--n", interp_n, "modulus exponent")->capture_default_str();

  SuiteFlags sf;
  auto* suite = app.add_subcommand("suite", "run a grid of checks and write a JSON-lines report");
  suite->add_option("--config", sf.config, "key: value config file");
  suite->add_option("--p", sf.p, "primes, e.g. 3,5");
  suite->add_option("--n", sf.n, "levels, e.g. 1..2");
  suite->add_option("--a", sf.a, "parameters, e.g. 1/2,1/3");
  suite->add_option("--s", sf.s, "multiplicities");
  suite->add_option("--c", sf.c, "Frobenius constants");
  suite->add_option("--check", sf.check, "check names, comma separated");
  suite->add_option("--prec", sf.prec, "precision override");
  suite->add_option("--out", sf.out, "report path");
  suite->add_option("--jobs", sf.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*table) return run_table(tab, table_kind, count, table_lambdas, table_hat);
    if (*series) return run_series(ser, series_kind, order, series_n);
    if (*interp) return run_interp(itp, interp_lambdas, interp_n);
    return run_suite_cmd(sf);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const bool config = e.kind() == ErrorKind::ConfigInvalid || e.kind() == ErrorKind::InvalidArgument ||
                        e.kind() == ErrorKind::DenominatorDivisibleByP || e.kind() == ErrorKind::CNotOneModP ||
                        e.kind() == ErrorKind::PreconditionViolated;
    return config ? kExitConfig : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
