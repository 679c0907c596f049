#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "padic_hg/dwork_chain.hpp"
#include "padic_hg/frobenius.hpp"
#include "padic_hg/padic.hpp"
#include "padic_hg/series.hpp"

namespace padic_hg {

/// Equal-parameter data a_1 = ... = a_s = a at a prime p.
struct HGParams {
  Rational a;
  int s = 1;
  std::uint32_t p = 2;
  DworkChain chain;

  static HGParams make(const Rational& a, int s, std::uint32_t p) {
    detail::require_prime(p);
    if (s < 1) throw Error(ErrorKind::InvalidArgument, "s must be positive");
    if (a.is_nonpositive_integer()) {
      throw Error(ErrorKind::InvalidArgument, "a must not be a nonpositive integer");
    }
    if (a.denominator() % static_cast<std::int64_t>(p) == 0) {
      throw Error(ErrorKind::DenominatorDivisibleByP, a.to_string() + " at p=" + std::to_string(p));
    }
    return HGParams{a, s, p, dwork_chain(a, p)};
  }

  int l() const { return chain.l; }
  int e() const { return chain.e; }
  Rational dwork_prime() const { return chain.at(1); }
  /// (-1)^{se}.
  int hat_sign() const { return (s * chain.e) % 2 == 0 ? 1 : -1; }
  std::vector<Rational> tuple(std::size_t level = 0) const {
    return std::vector<Rational>(static_cast<std::size_t>(s), chain.at(level));
  }
};

enum class CoeffKind { A, A1, B, Bhat };

inline std::string to_string(CoeffKind kind) {
  switch (kind) {
    case CoeffKind::A: return "A";
    case CoeffKind::A1: return "A1";
    case CoeffKind::B: return "B";
    case CoeffKind::Bhat: return "Bhat";
  }
  return "?";
}

struct CoeffTable {
  HGParams params;
  std::optional<FrobeniusSpec> frob;
  CoeffKind kind = CoeffKind::A;
  int level = 0;
  std::vector<PadicApprox> values;
};

/// Exact splits of prod_i (a_i)_k / k! for k = 0, 1, ..., grown on demand.
/// Units are kept at the full 64-bit precision so any target N can be read off.
class HGSplitTable {
 public:
  HGSplitTable(std::vector<Rational> tuple, std::uint32_t p)
      : tuple_(std::move(tuple)), p_(p), work_(detail::max_precision(p)) {
    for (const auto& a : tuple_) {
      if (a.denominator() % static_cast<std::int64_t>(p) == 0) {
        throw Error(ErrorKind::DenominatorDivisibleByP, a.to_string() + " at p=" + std::to_string(p));
      }
    }
    splits_.emplace_back(p_, work_);
  }

  const UnitSplit& at(std::size_t k) {
    while (splits_.size() <= k) {
      const auto j = static_cast<std::int64_t>(splits_.size());
      UnitSplit next = splits_.back();
      for (const auto& a : tuple_) {
        next *= a + Rational(j - 1);
        next /= Rational(j);
      }
      splits_.push_back(std::move(next));
    }
    return splits_[k];
  }

  PadicApprox value(std::size_t k, int N) { return at(k).to_padic(N); }

 private:
  std::vector<Rational> tuple_;
  std::uint32_t p_;
  int work_;
  std::vector<UnitSplit> splits_;
};

/// A_k for an arbitrary tuple (a_1, ..., a_s): prod_i (a_i)_k / k!, k < count.
inline std::vector<PadicApprox> hg_coefficients(std::span<const Rational> tuple, std::uint32_t p, std::size_t count,
                                                int N) {
  HGSplitTable table(std::vector<Rational>(tuple.begin(), tuple.end()), p);
  std::vector<PadicApprox> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(table.value(k, N));
  return out;
}

/// A_k (level 0) or the coefficients of the level-th Dwork prime parameter.
inline CoeffTable hg_coefficients(const HGParams& params, std::size_t count, int N, int level = 0) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "count must be at least 1");
  auto tuple = params.tuple(static_cast<std::size_t>(level));
  return CoeffTable{params, std::nullopt, level == 0 ? CoeffKind::A : CoeffKind::A1, level,
                    hg_coefficients(tuple, params.p, count, N)};
}

/// Computes A_k, B_k, Bhat_k and their ratios at exactly the requested
/// precision. Each coefficient is evaluated at N + v_p(divisor) digits so the
/// final exact division lands on N. Caches grow lazily, so an instance is not
/// meant to be shared between threads.
class CoefficientEngine {
 public:
  CoefficientEngine(HGParams params, FrobeniusSpec frob)
      : params_(std::move(params)), frob_(frob), a_(params_.tuple(0), params_.p), a1_(params_.tuple(1), params_.p) {
    frob_.validate(params_.p, false);
  }

  const HGParams& params() const { return params_; }
  const FrobeniusSpec& frob() const { return frob_; }

  PadicApprox A(std::size_t k, int N) { return a_.value(k, N); }
  PadicApprox A1(std::size_t k, int N) { return a1_.value(k, N); }
  const UnitSplit& A_split(std::size_t k) { return a_.at(k); }

  /// B_k = (A_k - c^{k/p} A1_{k/p}) / k for k >= 1.
  PadicApprox B(std::size_t k, int N) {
    if (k == 0) return B0(N);
    const std::uint32_t p = params_.p;
    const auto kk = static_cast<std::int64_t>(k);
    const int W = N + detail::vp_int(kk, p);
    PadicApprox x = A(k, W);
    if (k % p == 0) {
      x -= frob_.effective_c(p, W).pow(k / p) * A1(k / p, W);
    }
    return exact_divide(x, Rational(kk));
  }

  /// Bhat_k = (A_k - (-1)^{se} A1_{(k-l)/p} c^{(k+a)/p}) / (k + a), where the
  /// second term is present only when k >= l and p | k - l.
  PadicApprox Bhat(std::size_t k, int N) {
    const std::uint32_t p = params_.p;
    const auto kk = static_cast<std::int64_t>(k);
    const Rational ka = Rational(kk) + params_.a;
    const int W = N + valuation(ka, p);
    PadicApprox x = A(k, W);
    const std::int64_t l = params_.l();
    if (kk >= l && (kk - l) % static_cast<std::int64_t>(p) == 0) {
      const auto j = static_cast<std::size_t>((kk - l) / static_cast<std::int64_t>(p));
      PadicApprox second = A1(j, W) * c_power(frob_.effective_c(p, W), ka / Rational(p), W);
      x = params_.hat_sign() > 0 ? x - second : x + second;
    }
    return exact_divide(x, ka);
  }

  /// B_k / A_k (or Bhat_k / A_k) modulo p^n. For B at k = 0 this is B_0.
  PadicApprox ratio(std::size_t k, int n, bool hat) {
    if (!hat && k == 0) return B0(n);
    const UnitSplit& split = A_split(k);
    const int vA = split.valuation();
    PadicApprox num = hat ? Bhat(k, n + vA) : B(k, n + vA);
    return exact_divide(num, split.to_padic(n + vA));
  }

  /// B_0 modulo p^N, read off the interpolation congruence at k = p^N.
  /// No check that c lies in 1 + qW; see b0_constant.
  PadicApprox B0(int N) {
    const std::uint32_t p = params_.p;
    if (N < 1) throw Error(ErrorKind::InvalidArgument, "precision must be positive");
    constexpr std::uint64_t kMaxIndex = 5'000'000;
    std::uint64_t k = 1;
    for (int i = 0; i < N; ++i) {
      k *= p;
      if (k > kMaxIndex) throw Error(ErrorKind::PrecisionExhausted, "p^N too large for the B_0 interpolation");
    }
    return ratio(static_cast<std::size_t>(k), N, false);
  }

 private:
  HGParams params_;
  FrobeniusSpec frob_;
  HGSplitTable a_;
  HGSplitTable a1_;
};

/// B_k^(sigma) for 0 <= k < count; the k = 0 entry is b0_constant.
inline CoeffTable b_coefficients(const HGParams& params, const FrobeniusSpec& frob, std::size_t count, int N) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "count must be at least 1");
  CoefficientEngine eng(params, frob);
  CoeffTable t{params, frob, CoeffKind::B, 0, {}};
  t.values.reserve(count);
  for (std::size_t k = 0; k < count; ++k) t.values.push_back(eng.B(k, N));
  return t;
}

/// Bhat_k for 0 <= k < count with the direction of frob deciding c or c^{-1}.
inline CoeffTable bhat_coefficients(const HGParams& params, const FrobeniusSpec& frob, std::size_t count, int N) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "count must be at least 1");
  CoefficientEngine eng(params, frob);
  CoeffTable t{params, frob, CoeffKind::Bhat, 0, {}};
  t.values.reserve(count);
  for (std::size_t k = 0; k < count; ++k) t.values.push_back(eng.Bhat(k, N));
  return t;
}

/// The constant B_0 modulo p^N, defined through B_k/A_k == B_0 mod p^N for
/// k == 0 mod p^N. Requires c in 1 + qW.
inline PadicApprox b0_constant(const HGParams& params, const FrobeniusSpec& frob, int N) {
  frob.validate(params.p, true);
  CoefficientEngine eng(params, frob);
  return eng.B0(N);
}

namespace detail {

inline int max_divisor_valuation(std::uint32_t p, std::size_t M, const Rational& shift) {
  int v = 0;
  for (std::size_t k = 0; k < M; ++k) {
    Rational d = Rational(static_cast<std::int64_t>(k)) + shift;
    if (!d.is_zero()) v = std::max(v, valuation(d, p));
  }
  return v;
}

inline TruncSeries series_from(HGSplitTable& table, std::uint32_t p, std::size_t order, int N) {
  std::vector<PadicApprox> c;
  c.reserve(order);
  for (std::size_t k = 0; k < order; ++k) c.push_back(table.value(k, N));
  return TruncSeries(p, std::move(c));
}

}  // namespace detail

/// F_a(t) = sum A_k t^k to order M.
inline TruncSeries hg_series(const HGParams& params, std::size_t M, int N, int level = 0) {
  HGSplitTable t(params.tuple(static_cast<std::size_t>(level)), params.p);
  return detail::series_from(t, params.p, M, N);
}

/// (G, F) with G = B_0 + integral_0^t (F(t) - F_{a'}(t^sigma)) dt/t, built
/// from series operations rather than the closed coefficient formula.
inline std::pair<TruncSeries, TruncSeries> log_type_series(const HGParams& params, const FrobeniusSpec& frob,
                                                           std::size_t M, int N) {
  const std::uint32_t p = params.p;
  const int W = N + detail::max_divisor_valuation(p, M, Rational(0));
  HGSplitTable a(params.tuple(0), p), a1(params.tuple(1), p);
  TruncSeries F = detail::series_from(a, p, M, W);
  TruncSeries F1 = detail::series_from(a1, p, M == 0 ? 0 : (M - 1) / p + 1, W);
  TruncSeries G = log_integral(F - frobenius_substitute(F1, frob, M)).with_prec(N);
  if (M > 0) G[0] = CoefficientEngine(params, frob).B0(N);
  return {G, F.with_prec(N)};
}

/// (Ghat, F) with Ghat = t^{-a} integral (t^a F - (-1)^{se} [t^{a'} F_{a'}]^sigma) dt/t.
/// sigma(t^{a'} F_{a'}(t)) = c^{a'} t^{l} * F_{a'}(c t^p) * t^{a}, so the bracket is
/// a plain series after factoring out t^a.
inline std::pair<TruncSeries, TruncSeries> hat_series(const HGParams& params, const FrobeniusSpec& frob,
                                                      std::size_t M, int N) {
  const std::uint32_t p = params.p;
  const int W = N + detail::max_divisor_valuation(p, M, params.a);
  HGSplitTable a(params.tuple(0), p), a1(params.tuple(1), p);
  TruncSeries F = detail::series_from(a, p, M, W);
  TruncSeries F1 = detail::series_from(a1, p, M == 0 ? 0 : (M - 1) / p + 1, W);
  const PadicApprox twist = c_power(frob.effective_c(p, W), params.dwork_prime(), W);
  TruncSeries frob_part = frobenius_substitute(F1, frob, M).shifted(static_cast<std::size_t>(params.l())).scaled(twist);
  TruncSeries integrand = params.hat_sign() > 0 ? F - frob_part : F + frob_part;
  return {log_integral(integrand, params.a).with_prec(N), F.with_prec(N)};
}

/// The logarithmic-type function G/F to order M.
inline TruncSeries log_type_function(const HGParams& params, const FrobeniusSpec& frob, std::size_t M, int N) {
  auto [G, F] = log_type_series(params, frob, M, N);
  return G * F.inverse();
}

/// Ghat/F to order M.
inline TruncSeries hat_function(const HGParams& params, const FrobeniusSpec& frob, std::size_t M, int N) {
  auto [G, F] = hat_series(params, frob, M, N);
  return G * F.inverse();
}

/// h(t) = prod_{i<r} [F_{a^(i)}]_{<p} over one period of the Dwork chain.
inline TruncSeries compute_h(const HGParams& params, int N) {
  if (!params.chain.period) {
    throw Error(ErrorKind::NoPeriod, "Dwork chain of " + params.a.to_string() + " has no period");
  }
  const std::uint32_t p = params.p;
  LaurentPoly h = LaurentPoly::monomial(p, N, 0, PadicApprox::one(p, N));
  for (int i = 0; i < *params.chain.period; ++i) {
    auto tuple = params.tuple(static_cast<std::size_t>(i));
    h = h * LaurentPoly(p, N, 0, hg_coefficients(tuple, p, p, N));
  }
  return TruncSeries(p, h.coeffs());
}

/// P = [F_a]_{<p^n} and Q = [F_{a'}]_{<p^{n-1}}; F^Dw == P(t)/Q(t^p) mod p^n.
inline std::pair<TruncSeries, TruncSeries> dwork_truncation_pair(const HGParams& params, int n, int N) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be at least 1");
  const std::size_t pn = detail::pow_p(params.p, n);
  return {hg_series(params, pn, N, 0), hg_series(params, pn / params.p, N, 1)};
}

/// F^Dw = [F_a]_{<p^n} / [F_{a'}]_{<p^{n-1}}(t^p) modulo p^n, to order M.
inline TruncSeries dwork_function(const HGParams& params, int n, std::size_t M) {
  auto [P, Q] = dwork_truncation_pair(params, n, n);
  const std::uint32_t p = params.p;
  std::vector<PadicApprox> qc = Q.coeffs();
  qc.resize(std::max<std::size_t>(qc.size(), M == 0 ? 0 : (M - 1) / p + 1), PadicApprox::zero(p, n));
  std::vector<PadicApprox> pc = P.coeffs();
  pc.resize(std::max(pc.size(), M), PadicApprox::zero(p, n));
  TruncSeries num = TruncSeries(p, std::move(pc)).with_order(M);
  TruncSeries den = frobenius_substitute(TruncSeries(p, std::move(qc)), FrobeniusSpec{}, M);
  return num * den.inverse();
}

}  // namespace padic_hg
