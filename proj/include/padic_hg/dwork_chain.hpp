#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "padic_hg/padic.hpp"

namespace padic_hg {

/// The l in [0, modulus) with a + l == 0 mod modulus (modulus is p or q).
inline int dwork_digit(const Rational& a, std::uint32_t p, std::uint32_t modulus) {
  if (a.denominator() % static_cast<std::int64_t>(p) == 0) {
    throw Error(ErrorKind::DenominatorDivisibleByP, a.to_string() + " at p=" + std::to_string(p));
  }
  const std::uint64_t m = modulus;
  std::uint64_t num = detail::reduce(a.numerator(), m);
  std::uint64_t inv = detail::inv_mod(static_cast<std::uint64_t>(a.denominator()) % m, m);
  std::uint64_t r = detail::mul_mod(num, inv, m);
  return static_cast<int>(r == 0 ? 0 : m - r);
}

/// a' = (a + l)/p.
inline Rational dwork_prime(const Rational& a, std::uint32_t p) {
  return (a + Rational(dwork_digit(a, p, p))) / Rational(p);
}

inline std::uint32_t q_of(std::uint32_t p) { return p == 2 ? 4 : p; }

struct DworkChain {
  Rational a;
  std::uint32_t p = 0;
  int l = 0;
  int l_prime = 0;
  int q = 0;
  int e = 0;
  // a^(0), a^(1), ...; when a period r is found this holds exactly r entries.
  std::vector<Rational> chain;
  // l_i for each chain entry.
  std::vector<int> digits;
  std::optional<int> period;

  /// a^(i) for any i, continuing past the stored prefix if needed.
  Rational at(std::size_t i) const {
    if (period) return chain[i % static_cast<std::size_t>(*period)];
    if (i < chain.size()) return chain[i];
    Rational x = chain.back();
    for (std::size_t j = chain.size() - 1; j < i; ++j) x = dwork_prime(x, p);
    return x;
  }
};

inline DworkChain dwork_chain(const Rational& a, std::uint32_t p, int max_steps = 64) {
  detail::require_prime(p);
  DworkChain c;
  c.a = a;
  c.p = p;
  c.q = static_cast<int>(q_of(p));
  c.l = dwork_digit(a, p, p);
  c.l_prime = dwork_digit(a, p, q_of(p));
  c.e = c.l_prime - c.l_prime / static_cast<int>(p);
  c.chain.push_back(a);
  c.digits.push_back(c.l);
  for (int step = 1; step <= max_steps; ++step) {
    Rational next = dwork_prime(c.chain.back(), p);
    if (next == a) {
      c.period = step;
      break;
    }
    c.chain.push_back(next);
    c.digits.push_back(dwork_digit(next, p, p));
  }
  return c;
}

}  // namespace padic_hg
