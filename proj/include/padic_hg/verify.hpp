#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padic_hg/interp.hpp"

namespace padic_hg {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct FirstFailure {
  KeyValues at;
  std::string left;
  std::string right;
};

struct CheckReport {
  std::string check;
  KeyValues params;
  bool passed = false;
  std::optional<FirstFailure> first_failure;
  // Fitted sign of the transformation identity, and that sign relative to (-1)^{sl}.
  std::optional<int> sign;
  std::optional<int> conjecture_sign;
  std::uint32_t p = 0;
  int modulus_exp = 0;
  std::optional<std::string> error;

  std::string modulus() const { return std::to_string(p) + "^" + std::to_string(modulus_exp); }
};

enum class RelationKind { dwork, log, hat };

inline std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::dwork: return "dwork";
    case RelationKind::log: return "log";
    case RelationKind::hat: return "hat";
  }
  return "?";
}

namespace detail {

inline std::string str(std::int64_t v) { return std::to_string(v); }

inline CheckReport start_report(std::string name, const HGParams& params, int n) {
  CheckReport r;
  r.check = std::move(name);
  r.params = {{"a", params.a.to_string()}, {"s", str(params.s)}, {"p", str(params.p)}, {"n", str(n)}};
  r.p = params.p;
  r.modulus_exp = n;
  return r;
}

inline void fail_at(CheckReport& r, KeyValues at, const PadicApprox& left, const PadicApprox& right) {
  r.passed = false;
  if (!r.first_failure) r.first_failure = FirstFailure{std::move(at), left.to_string(), right.to_string()};
}

inline std::uint64_t pow_index(std::uint32_t p, int n) {
  const std::uint64_t v = pow_p(p, n);
  if (v > 100'000'000) throw Error(ErrorKind::PrecisionExhausted, "p^n too large for an exhaustive check");
  return v;
}

// Compares coefficients 0..m-1 modulo p^n and records the first mismatch.
inline void compare_series(CheckReport& r, const TruncSeries& lhs, const TruncSeries& rhs, int n) {
  r.passed = true;
  const std::size_t m = std::min(lhs.order(), rhs.order());
  for (std::size_t k = 0; k < m; ++k) {
    if (!lhs[k].congruent(rhs[k], n)) {
      fail_at(r, {{"k", str(static_cast<std::int64_t>(k))}}, lhs[k].with_prec(n), rhs[k].with_prec(n));
      return;
    }
  }
}

}  // namespace detail

/// f/g == [f]_{<p^n}/[g]_{<p^n} mod p^n, checked as f [g] == [f] g on
/// coefficients 0..M-1, for (f, g) = (F_a, F_{a'}(t^p)), (G, F) or (Ghat, F).
inline CheckReport check_congruence_relation(RelationKind kind, const HGParams& params, const FrobeniusSpec& frob,
                                             int n, std::size_t M) {
  const std::uint32_t p = params.p;
  CheckReport r = detail::start_report(to_string(kind) + "-congruence", params, n);
  r.params.emplace_back("M", detail::str(static_cast<std::int64_t>(M)));
  const std::size_t pn = detail::pow_index(p, n);

  if (kind == RelationKind::dwork) {
    TruncSeries F = hg_series(params, M, n, 0);
    TruncSeries F1p = frobenius_substitute(hg_series(params, (M - 1) / p + 1, n, 1), FrobeniusSpec{}, M);
    detail::compare_series(r, F * truncate_below(F1p, pn), truncate_below(F, pn) * F1p, n);
    return r;
  }

  r.params.emplace_back("c", frob.c.to_string());
  int modulus = n;
  if (kind == RelationKind::hat) {
    frob.validate(p, true);
  } else if (!frob.in_one_plus_q(p)) {
    frob.validate(p, false);
    modulus = n - 1;
  }
  r.modulus_exp = modulus;
  auto [G, F] = kind == RelationKind::log ? log_type_series(params, frob, M, n) : hat_series(params, frob, M, n);
  detail::compare_series(r, G * truncate_below(F, pn), F * truncate_below(G, pn), modulus);
  return r;
}

/// t^{p-1-l} P(t) revQ(t) == eps revP(t) Q(t^p) mod p^n with P = [F_a]_{<p^n},
/// Q = [F_{a'}]_{<p^{n-1}}, revP = t^{p^n-1} P(1/t), revQ = t^{p^n-p} Q(t^{-p}).
/// eps is the sign under which the identity holds to the most digits (ties go
/// to (-1)^{sl}); for p odd the check also requires eps = (-1)^{sl}.
inline CheckReport check_dwork_transformation(const HGParams& params, int n,
                                             std::optional<int> fit_prec = std::nullopt) {
  const std::uint32_t p = params.p;
  CheckReport r = detail::start_report("dwork-transform", params, n);
  const auto pn = static_cast<std::int64_t>(detail::pow_index(p, n));
  const int guard = fit_prec ? std::max(n, *fit_prec) : std::min(n + 4, detail::max_precision(p));
  auto [Ps, Qs] = dwork_truncation_pair(params, n, guard);
  const LaurentPoly P = LaurentPoly::from_series(Ps);
  const LaurentPoly Qp = LaurentPoly::from_series(Qs).substitute_power(p);
  const LaurentPoly revP = P.reversed().shifted(pn - 1);
  const LaurentPoly revQ = Qp.reversed().shifted(pn - static_cast<std::int64_t>(p));
  const LaurentPoly L = (P * revQ).shifted(static_cast<std::int64_t>(p) - 1 - params.l());
  const LaurentPoly R = revP * Qp;

  const std::int64_t lo = std::min(L.min_deg(), R.min_deg());
  const std::int64_t hi = std::max(L.max_deg(), R.max_deg());
  bool any_unit_mod = false;
  int agree_plus = guard, agree_minus = guard;
  for (std::int64_t d = lo; d <= hi; ++d) {
    const PadicApprox x = L.coefficient(d).with_prec(guard), y = R.coefficient(d).with_prec(guard);
    if (!x.with_prec(n).is_zero() || !y.with_prec(n).is_zero()) any_unit_mod = true;
    const Valuation vp = (x - y).valuation(), vm = (x + y).valuation();
    agree_plus = std::min(agree_plus, vp.at_least ? guard : vp.value);
    agree_minus = std::min(agree_minus, vm.at_least ? guard : vm.value);
  }
  if (!any_unit_mod) {
    throw Error(ErrorKind::NoUnitCoefficient, "every compared coefficient vanishes mod p^n");
  }
  const int expected = (params.s * params.l()) % 2 == 0 ? 1 : -1;
  int eps = expected;
  if (agree_plus != agree_minus) eps = agree_plus > agree_minus ? 1 : -1;
  r.sign = eps;
  r.conjecture_sign = eps * expected;
  const int required = p == 2 ? eps : expected;
  r.passed = true;
  for (std::int64_t d = lo; d <= hi; ++d) {
    const PadicApprox x = L.coefficient(d).with_prec(n);
    const PadicApprox y = required > 0 ? R.coefficient(d).with_prec(n) : -R.coefficient(d).with_prec(n);
    if (x != y) {
      detail::fail_at(r, {{"degree", detail::str(d)}}, x, y);
      break;
    }
  }
  return r;
}

/// (-1)^{f_x} {1}_x / {a}_x == (-1)^{f_y} {1}_y / {a}_y mod p^n for x + y + a == 0 mod p^n.
inline CheckReport check_braced_congruence(const HGParams& params, std::uint64_t x, std::uint64_t y, int n) {
  const std::uint32_t p = params.p;
  const Rational sum = Rational(static_cast<std::int64_t>(x + y)) + params.a;
  if (!sum.is_zero() && valuation(sum, p) < n) {
    throw Error(ErrorKind::PreconditionViolated, "v_p(x+y+a) < n");
  }
  CheckReport r = detail::start_report("braced", params, n);
  r.params.emplace_back("x", detail::str(static_cast<std::int64_t>(x)));
  r.params.emplace_back("y", detail::str(static_cast<std::int64_t>(y)));
  const std::uint64_t q = q_of(p);
  auto side = [&](std::uint64_t z) {
    const std::uint64_t lz = z % q;
    const std::uint64_t f = lz - lz / p;
    PadicApprox v = braced_product(Rational(1), z, p, n) * braced_product(params.a, z, p, n).inverse();
    return f % 2 == 0 ? v : -v;
  };
  const PadicApprox left = side(x), right = side(y);
  r.passed = left == right;
  if (!r.passed) detail::fail_at(r, {{"x", detail::str(static_cast<std::int64_t>(x))}, {"y", detail::str(static_cast<std::int64_t>(y))}}, left, right);
  return r;
}

/// All pairs x, y <= bound with v_p(x+y+a) >= n, using prefix tables.
inline CheckReport check_braced_all(const HGParams& params, int n, std::uint64_t bound) {
  const std::uint32_t p = params.p;
  CheckReport r = detail::start_report("braced", params, n);
  r.params.emplace_back("bound", detail::str(static_cast<std::int64_t>(bound)));
  const std::uint64_t pn = detail::pow_index(p, n);
  const std::uint64_t q = q_of(p);
  const auto ones = braced_products(Rational(1), bound, p, n);
  const auto as = braced_products(params.a, bound, p, n);
  std::vector<PadicApprox> side;
  side.reserve(bound + 1);
  for (std::uint64_t z = 0; z <= bound; ++z) {
    const std::uint64_t lz = z % q;
    PadicApprox v = ones[z] * as[z].inverse();
    side.push_back((lz - lz / p) % 2 == 0 ? v : -v);
  }
  const std::uint64_t minus_a = embed_rational(-params.a, p, n).residue();
  r.passed = true;
  std::uint64_t pairs = 0;
  for (std::uint64_t x = 0; x <= bound; ++x) {
    // y == -x-a mod p^n
    const std::uint64_t y0 = (minus_a + pn - x % pn) % pn;
    for (std::uint64_t y = y0; y <= bound; y += pn) {
      ++pairs;
      if (side[x] != side[y]) {
        detail::fail_at(r, {{"x", detail::str(static_cast<std::int64_t>(x))}, {"y", detail::str(static_cast<std::int64_t>(y))}},
                        side[x], side[y]);
      }
    }
  }
  r.params.emplace_back("pairs", detail::str(static_cast<std::int64_t>(pairs)));
  return r;
}

/// beta_lambda (sigma: t -> c t^p) + betahat_{-lambda-a} (sigma_hat: t -> c^{-1} t^p) == 0 mod p^n.
inline CheckReport check_beta_pairing(const Rational& lambda, const HGParams& params, const Rational& c, int n) {
  const FrobeniusSpec sigma = FrobeniusSpec::sigma(c), sigma_hat = FrobeniusSpec::sigma_hat(c);
  sigma.validate(params.p, true);
  CheckReport r = detail::start_report("beta-pairing", params, n);
  r.params.emplace_back("c", c.to_string());
  r.params.emplace_back("lambda", lambda.to_string());
  const InterpPoint b = beta_at(params, sigma, lambda, n, false);
  const InterpPoint bh = beta_at(params, sigma_hat, -lambda - params.a, n, true);
  const PadicApprox total = b.value + bh.value;
  r.passed = total.is_zero();
  if (!r.passed) {
    detail::fail_at(r, {{"lambda", lambda.to_string()}, {"k", detail::str(static_cast<std::int64_t>(b.witness))},
                        {"k_hat", detail::str(static_cast<std::int64_t>(bh.witness))}},
                    b.value, -bh.value);
  }
  return r;
}

/// The default pairing grid {0, 1, 2, 1/2, -a-1}, skipping points that are not p-integral.
inline std::vector<Rational> pairing_points(const HGParams& params) {
  std::vector<Rational> out;
  for (const Rational& l : {Rational(0), Rational(1), Rational(2), Rational(1, 2), -params.a - Rational(1)}) {
    if (l.denominator() % static_cast<std::int64_t>(params.p) != 0) out.push_back(l);
  }
  return out;
}

inline CheckReport check_beta_pairing_all(const HGParams& params, const Rational& c, int n) {
  CheckReport r = detail::start_report("beta-pairing", params, n);
  r.params.emplace_back("c", c.to_string());
  r.passed = true;
  for (const Rational& lambda : pairing_points(params)) {
    CheckReport one = check_beta_pairing(lambda, params, c, n);
    if (!one.passed) {
      r.passed = false;
      if (!r.first_failure) r.first_failure = one.first_failure;
    }
  }
  return r;
}

namespace detail {

struct SectionTables {
  std::vector<PadicApprox> A;  // A_0 .. A_{p^n-1} at precision n+1
  std::uint64_t pn = 0;
};

inline SectionTables section_tables(const HGParams& params, int n) {
  SectionTables t;
  t.pn = pow_index(params.p, n);
  t.A = hg_coefficients(params, t.pn, n + 1).values;
  return t;
}

inline PadicApprox section_difference(const HGParams& params, const SectionTables& t, int n, int d, std::uint64_t k,
                                      std::uint64_t m) {
  const std::uint32_t p = params.p;
  const std::uint64_t cls = pow_p(p, n - d);
  const int prec = d + 1;
  PadicApprox s1 = PadicApprox::zero(p, prec), s2 = PadicApprox::zero(p, prec);
  for (std::uint64_t i = k % cls; i <= m; i += cls) {
    s1 += t.A[i].with_prec(prec) * t.A[t.pn - (m - i) - 1].with_prec(prec);
  }
  for (std::uint64_t j = 0; j <= m; ++j) {
    // p^n - j - 1 == -k - a mod p^{n-d}, decided on p^n - j - 1 + k + a.
    const Rational probe = Rational(static_cast<std::int64_t>(t.pn - j - 1 + k)) + params.a;
    if (n - d > 0 && !embed_rational(probe, p, n - d).is_zero()) continue;
    s2 += t.A[m - j].with_prec(prec) * t.A[t.pn - j - 1].with_prec(prec);
  }
  return s1 - s2;
}

}  // namespace detail

/// S1 - S2 == 0 mod p^{d+1} for the two class-restricted sums of A_i A_{p^n-j-1}, i + j = m.
inline CheckReport check_section_congruence(const HGParams& params, int n, int d, std::uint64_t k, std::uint64_t m) {
  const auto t = detail::section_tables(params, n);
  if (m >= t.pn || d < 0 || d > n || k >= detail::pow_p(params.p, n - d)) {
    throw Error(ErrorKind::InvalidArgument, "section indices out of range");
  }
  CheckReport r = detail::start_report("section", params, n);
  r.params.emplace_back("d", detail::str(d));
  r.params.emplace_back("k", detail::str(static_cast<std::int64_t>(k)));
  r.params.emplace_back("m", detail::str(static_cast<std::int64_t>(m)));
  r.modulus_exp = d + 1;
  const PadicApprox diff = detail::section_difference(params, t, n, d, k, m);
  r.passed = diff.is_zero();
  if (!r.passed) detail::fail_at(r, {{"d", detail::str(d)}, {"k", detail::str(static_cast<std::int64_t>(k))}, {"m", detail::str(static_cast<std::int64_t>(m))}}, diff, PadicApprox::zero(params.p, d + 1));
  return r;
}

/// Every m < p^n, d <= n, k < p^{n-d}.
inline CheckReport check_section_all(const HGParams& params, int n) {
  const auto t = detail::section_tables(params, n);
  CheckReport r = detail::start_report("section", params, n);
  r.modulus_exp = n + 1;
  r.passed = true;
  for (int d = 0; d <= n; ++d) {
    const std::uint64_t cls = detail::pow_p(params.p, n - d);
    for (std::uint64_t k = 0; k < cls; ++k) {
      for (std::uint64_t m = 0; m < t.pn; ++m) {
        const PadicApprox diff = detail::section_difference(params, t, n, d, k, m);
        if (!diff.is_zero()) {
          detail::fail_at(r, {{"d", detail::str(d)}, {"k", detail::str(static_cast<std::int64_t>(k))}, {"m", detail::str(static_cast<std::int64_t>(m))}}, diff, PadicApprox::zero(params.p, d + 1));
        }
      }
    }
  }
  return r;
}

struct MainTerms {
  std::vector<PadicApprox> b_part;     // sum B_i A_{p^n-j-1}
  std::vector<PadicApprox> bhat_part;  // sum Bhat_{p^n-j-1} A_i
};

/// The two halves of the main sum for m = 0 .. 2(p^n-1), with B from sigma(c)
/// and Bhat from sigma_hat(c).
inline MainTerms main_congruence_terms(const HGParams& params, const Rational& c, int n) {
  const std::uint32_t p = params.p;
  const FrobeniusSpec sigma = FrobeniusSpec::sigma(c), sigma_hat = FrobeniusSpec::sigma_hat(c);
  sigma.validate(p, true);
  const std::uint64_t pn = detail::pow_index(p, n);
  const auto A = hg_coefficients(params, pn, n).values;
  const auto B = b_coefficients(params, sigma, pn, n).values;
  const auto Bh = bhat_coefficients(params, sigma_hat, pn, n).values;
  MainTerms t;
  t.b_part.assign(2 * pn - 1, PadicApprox::zero(p, n));
  t.bhat_part = t.b_part;
  for (std::uint64_t i = 0; i < pn; ++i) {
    for (std::uint64_t j = 0; j < pn; ++j) {
      t.b_part[i + j] += B[i] * A[pn - j - 1];
      t.bhat_part[i + j] += Bh[pn - j - 1] * A[i];
    }
  }
  return t;
}

inline CheckReport check_main_congruence(const HGParams& params, const Rational& c, int n) {
  CheckReport r = detail::start_report("main-congruence", params, n);
  r.params.emplace_back("c", c.to_string());
  const MainTerms t = main_congruence_terms(params, c, n);
  r.passed = true;
  for (std::size_t m = 0; m < t.b_part.size(); ++m) {
    const PadicApprox total = t.b_part[m] + t.bhat_part[m];
    if (!total.is_zero()) {
      detail::fail_at(r, {{"m", detail::str(static_cast<std::int64_t>(m))}}, t.b_part[m], -t.bhat_part[m]);
      break;
    }
  }
  return r;
}

/// The same statement as the Laurent identity [G] revF + rev[Ghat] [F] == 0,
/// with rev f = t^{p^n-1} f(1/t) on the truncations below p^n.
inline CheckReport check_main_congruence_laurent(const HGParams& params, const Rational& c, int n) {
  const std::uint32_t p = params.p;
  FrobeniusSpec::sigma(c).validate(p, true);
  CheckReport r = detail::start_report("main-congruence", params, n);
  r.params.emplace_back("c", c.to_string());
  r.params.emplace_back("form", "laurent");
  const auto pn = static_cast<std::int64_t>(detail::pow_index(p, n));
  const auto F = LaurentPoly::from_series(hg_series(params, static_cast<std::size_t>(pn), n));
  const auto G = LaurentPoly::from_series(log_type_series(params, FrobeniusSpec::sigma(c), pn, n).first);
  const auto Gh = LaurentPoly::from_series(hat_series(params, FrobeniusSpec::sigma_hat(c), pn, n).first);
  const LaurentPoly total = G * F.reversed().shifted(pn - 1) + Gh.reversed().shifted(pn - 1) * F;
  r.passed = true;
  for (std::int64_t d = total.min_deg(); d <= total.max_deg(); ++d) {
    if (!total.coefficient(d).is_zero()) {
      detail::fail_at(r, {{"m", detail::str(d)}}, total.coefficient(d), PadicApprox::zero(p, n));
      break;
    }
  }
  return r;
}

/// Every B_k and Bhat_k, k <= kmax, is p-integral. The numerators are computed
/// with room for the divisor's valuation, so a non-integral value shows up as
/// a residue that p^{v(divisor)} does not divide.
inline CheckReport check_integrality(const HGParams& params, const Rational& c, int n, std::uint64_t kmax) {
  CheckReport r = detail::start_report("integrality", params, n);
  r.params.emplace_back("c", c.to_string());
  r.params.emplace_back("kmax", detail::str(static_cast<std::int64_t>(kmax)));
  r.passed = true;
  CoefficientEngine eb(params, FrobeniusSpec::sigma(c)), eh(params, FrobeniusSpec::sigma_hat(c));
  for (std::uint64_t k = 0; k <= kmax && r.passed; ++k) {
    for (const bool hat : {false, true}) {
      if (!hat && k == 0) continue;
      try {
        (void)(hat ? eh.Bhat(k, n) : eb.B(k, n));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotDivisible) throw;
        r.passed = false;
        r.first_failure = FirstFailure{{{"k", detail::str(static_cast<std::int64_t>(k))}, {"kind", hat ? "Bhat" : "B"}},
                                       "negative valuation", "p-integral"};
        break;
      }
    }
  }
  return r;
}

/// B_k/A_k == B_k'/A_k' (and the same for Bhat) whenever k == k' mod p^n, k, k' <= kmax.
inline CheckReport check_ratio_congruence(const HGParams& params, const Rational& c, int n, std::uint64_t kmax) {
  CheckReport r = detail::start_report("interpolation", params, n);
  r.params.emplace_back("c", c.to_string());
  r.params.emplace_back("kmax", detail::str(static_cast<std::int64_t>(kmax)));
  FrobeniusSpec::sigma(c).validate(params.p, true);
  const std::uint64_t pn = detail::pow_index(params.p, n);
  r.passed = true;
  for (const bool hat : {false, true}) {
    CoefficientEngine eng(params, hat ? FrobeniusSpec::sigma_hat(c) : FrobeniusSpec::sigma(c));
    std::vector<PadicApprox> ratios;
    for (std::uint64_t k = 0; k <= kmax; ++k) ratios.push_back(eng.ratio(k, n, hat));
    for (std::uint64_t k = pn; k <= kmax; ++k) {
      if (ratios[k] != ratios[k % pn]) {
        detail::fail_at(r, {{"k", detail::str(static_cast<std::int64_t>(k % pn))}, {"k'", detail::str(static_cast<std::int64_t>(k))}, {"kind", hat ? "Bhat" : "B"}},
                        ratios[k % pn], ratios[k]);
      }
    }
  }
  return r;
}

inline CheckReport check_ratio_identity(const HGParams& params, std::uint64_t xmax, int N) {
  CheckReport r = detail::start_report("ratio-identity", params, N);
  r.params.emplace_back("xmax", detail::str(static_cast<std::int64_t>(xmax)));
  r.passed = true;
  for (std::uint64_t x = 0; x <= xmax; ++x) {
    const RatioIdentity id = ratio_identity_check(params, x, N);
    if (!id.holds) {
      detail::fail_at(r, {{"x", detail::str(static_cast<std::int64_t>(x))}}, id.lhs, id.rhs);
      break;
    }
  }
  return r;
}

/// B_0(c) - B_0(1) == -p^{-1} log(c) mod p^N.
inline CheckReport check_b0_log(const HGParams& params, const Rational& c, int N) {
  const std::uint32_t p = params.p;
  CheckReport r = detail::start_report("b0-consistency", params, N);
  r.params.emplace_back("c", c.to_string());
  const PadicApprox diff = b0_constant(params, FrobeniusSpec::sigma(c), N) -
                           b0_constant(params, FrobeniusSpec::sigma(Rational(1)), N);
  const PadicApprox lg = iwasawa_log(embed_rational(c, p, N + 1));
  const PadicApprox expected = -exact_divide(lg, Rational(static_cast<std::int64_t>(p)));
  r.passed = diff == expected.with_prec(N);
  if (!r.passed) detail::fail_at(r, {}, diff, expected);
  return r;
}

}  // namespace padic_hg
