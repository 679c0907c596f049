#pragma once

#include <cassert>
#include <cstdint>

#include "padic_hg/hyper.hpp"

namespace padic_hg {

struct InterpPoint {
  Rational lambda;
  std::uint64_t witness = 0;
  PadicApprox value;
};

/// The smallest positive integer k with k == lambda mod p^n.
inline std::uint64_t witness(const Rational& lambda, std::uint32_t p, int n) {
  if (lambda.denominator() % static_cast<std::int64_t>(p) == 0) {
    throw Error(ErrorKind::DenominatorDivisibleByP, lambda.to_string() + " at p=" + std::to_string(p));
  }
  const std::uint64_t r = embed_rational(lambda, p, n).residue();
  return r == 0 ? detail::pow_p(p, n) : r;
}

/// beta_lambda mod p^n: B_k/A_k (or Bhat_k/A_k when hat) at a positive witness k == lambda mod p^n.
inline InterpPoint beta_at(CoefficientEngine& eng, const Rational& lambda, int n, bool hat) {
  const std::uint32_t p = eng.params().p;
  const std::uint64_t k = witness(lambda, p, n);
  PadicApprox v = eng.ratio(k, n, hat);
#ifndef NDEBUG
  {
    PadicApprox other = eng.ratio(k + detail::pow_p(p, n), n, hat);
    assert(v.congruent(other, n) && "interpolation value depends on the witness");
  }
#endif
  return InterpPoint{lambda, k, v};
}

inline InterpPoint beta_at(const HGParams& params, const FrobeniusSpec& frob, const Rational& lambda, int n,
                           bool hat = false) {
  CoefficientEngine eng(params, frob);
  return beta_at(eng, lambda, n, hat);
}

struct RatioIdentity {
  std::uint64_t x = 0;
  PadicApprox lhs;
  PadicApprox rhs;
  bool holds = false;
};

/// A1_{floor(x/p)} {a}_x^s kappa^s against A_x {1}_x^s, where kappa = 1 when
/// x mod p <= l and kappa = a + l + p floor(x/p) otherwise.
inline RatioIdentity ratio_identity_check(const HGParams& params, std::uint64_t x, int N) {
  const std::uint32_t p = params.p;
  const std::uint64_t xq = x / p;
  const auto s = static_cast<std::uint64_t>(params.s);
  HGSplitTable a(params.tuple(0), p), a1(params.tuple(1), p);
  UnitSplit left = a1.at(xq);
  UnitSplit right = a.at(x);
  UnitSplit ba = UnitSplit::of(Rational(1), p, detail::max_precision(p));
  UnitSplit b1 = ba;
  for (std::uint64_t i = 1; i <= x; ++i) {
    const Rational fa = params.a + Rational(static_cast<std::int64_t>(i) - 1);
    if (!fa.is_zero() && valuation(fa, p) == 0) ba *= fa;
    if (i % p != 0) b1 *= Rational(static_cast<std::int64_t>(i));
  }
  left *= ba.pow(static_cast<unsigned>(s));
  if (x % p > static_cast<std::uint64_t>(params.l())) {
    const Rational kappa = params.a + Rational(params.l()) + Rational(static_cast<std::int64_t>(p * xq));
    UnitSplit k = UnitSplit::of(kappa, p, detail::max_precision(p));
    left *= k.pow(static_cast<unsigned>(s));
  }
  right *= b1.pow(static_cast<unsigned>(s));
  RatioIdentity r{x, left.to_padic(N), right.to_padic(N), false};
  r.holds = r.lhs == r.rhs;
  return r;
}

}  // namespace padic_hg
