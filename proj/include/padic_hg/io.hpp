#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "padic_hg/verify.hpp"

namespace padic_hg {

using Json = nlohmann::ordered_json;

inline Json to_json(const KeyValues& kv) {
  Json j = Json::object();
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

inline Json to_json(const CheckReport& r) {
  Json j;
  j["check"] = r.check;
  j["params"] = to_json(r.params);
  j["passed"] = r.passed;
  if (r.first_failure) {
    j["first_failure"] = {{"at", to_json(r.first_failure->at)},
                          {"left", r.first_failure->left},
                          {"right", r.first_failure->right}};
  } else {
    j["first_failure"] = nullptr;
  }
  j["sign"] = r.sign ? Json(*r.sign) : Json(nullptr);
  j["conjecture_sign"] = r.conjecture_sign ? Json(*r.conjecture_sign) : Json(nullptr);
  j["modulus"] = r.modulus();
  if (r.error) j["error"] = *r.error;
  return j;
}

inline Json to_json(const TruncSeries& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(std::to_string(c.residue()));
  return {{"p", f.p()}, {"prec", f.prec()}, {"order", f.order()}, {"coeffs", coeffs}};
}

inline TruncSeries series_from_json(const Json& j) {
  const auto p = j.at("p").get<std::uint32_t>();
  const int prec = j.at("prec").get<int>();
  std::vector<PadicApprox> c;
  for (const auto& r : j.at("coeffs")) c.emplace_back(p, prec, std::stoull(r.get<std::string>()));
  if (c.size() != j.at("order").get<std::size_t>()) {
    throw Error(ErrorKind::InvalidArgument, "series order does not match coefficient count");
  }
  return TruncSeries(p, std::move(c));
}

enum class TableFormat { json, csv };

/// One row per coefficient: {k, kind, residue, prec}.
inline void write_table(std::ostream& os, const CoeffTable& t, TableFormat fmt) {
  const std::string kind = to_string(t.kind);
  if (fmt == TableFormat::csv) {
    os << "k,kind,residue,prec\n";
    for (std::size_t k = 0; k < t.values.size(); ++k) {
      os << k << ',' << kind << ',' << t.values[k].residue() << ',' << t.values[k].prec() << '\n';
    }
    return;
  }
  Json rows = Json::array();
  for (std::size_t k = 0; k < t.values.size(); ++k) {
    rows.push_back({{"k", k}, {"kind", kind}, {"residue", std::to_string(t.values[k].residue())},
                    {"prec", t.values[k].prec()}});
  }
  os << rows.dump(2) << '\n';
}

inline void write_points(std::ostream& os, const std::vector<InterpPoint>& pts, const std::string& kind,
                         TableFormat fmt) {
  if (fmt == TableFormat::csv) {
    os << "lambda,kind,witness,residue,prec\n";
    for (const auto& pt : pts) {
      os << pt.lambda << ',' << kind << ',' << pt.witness << ',' << pt.value.residue() << ',' << pt.value.prec()
         << '\n';
    }
    return;
  }
  Json rows = Json::array();
  for (const auto& pt : pts) {
    rows.push_back({{"lambda", pt.lambda.to_string()},
                    {"kind", kind},
                    {"witness", pt.witness},
                    {"residue", std::to_string(pt.value.residue())},
                    {"prec", pt.value.prec()}});
  }
  os << rows.dump(2) << '\n';
}

}  // namespace padic_hg
