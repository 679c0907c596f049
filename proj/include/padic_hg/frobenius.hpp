#pragma once

#include <cstdint>

#include "padic_hg/dwork_chain.hpp"
#include "padic_hg/padic.hpp"

namespace padic_hg {

enum class FrobeniusDirection { sigma, sigma_hat };

/// The Frobenius lift t -> c t^p (sigma) or t -> c^{-1} t^p (sigma_hat).
/// c is kept as an exact rational so it can be embedded at any precision.
struct FrobeniusSpec {
  Rational c{1};
  FrobeniusDirection direction = FrobeniusDirection::sigma;

  static FrobeniusSpec sigma(const Rational& c) { return {c, FrobeniusDirection::sigma}; }
  static FrobeniusSpec sigma_hat(const Rational& c) { return {c, FrobeniusDirection::sigma_hat}; }

  FrobeniusSpec flipped() const {
    return {c, direction == FrobeniusDirection::sigma ? FrobeniusDirection::sigma_hat : FrobeniusDirection::sigma};
  }

  /// v_p(c - 1), or a large sentinel when c == 1.
  int depth(std::uint32_t p) const {
    Rational x = c - Rational(1);
    if (x.is_zero()) return 1 << 20;
    return valuation(x, p);
  }

  /// c in 1 + pW always; with require_q also c in 1 + qW.
  void validate(std::uint32_t p, bool require_q) const {
    if (c.denominator() % static_cast<std::int64_t>(p) == 0) {
      throw Error(ErrorKind::CNotOneModP, "c=" + c.to_string() + " is not a p-adic integer");
    }
    const int need = (require_q && p == 2) ? 2 : 1;
    if (depth(p) < need) {
      throw Error(require_q && depth(p) >= 1 ? ErrorKind::PreconditionViolated : ErrorKind::CNotOneModP,
                  "c=" + c.to_string() + " is not in 1+" + std::to_string(need == 2 ? 4 : p) + "W");
    }
  }

  bool in_one_plus_q(std::uint32_t p) const { return depth(p) >= (p == 2 ? 2 : 1); }

  /// c or c^{-1} modulo p^N, whichever the map multiplies by.
  PadicApprox effective_c(std::uint32_t p, int N) const {
    validate(p, false);
    PadicApprox v = embed_rational(c, p, N);
    return direction == FrobeniusDirection::sigma ? v : v.inverse();
  }
};

}  // namespace padic_hg
