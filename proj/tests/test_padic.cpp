#include <gtest/gtest.h>

#include "oracle.hpp"
#include "padic_hg/dwork_chain.hpp"
#include "padic_hg/padic.hpp"

using namespace padic_hg;

namespace {

PadicApprox E(std::int64_t n, std::int64_t d, std::uint32_t p, int N) { return embed_rational(Rational(n, d), p, N); }

void expect_kind(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(Rational, ParseAndNormalize) {
  EXPECT_EQ(Rational::parse("2/4"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-3"), Rational(-3));
  EXPECT_EQ(Rational::parse(" 6/-4 "), Rational(-3, 2));
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_LT(Rational(-1, 2), Rational(1, 3));
  EXPECT_TRUE(Rational(0).is_nonpositive_integer());
  EXPECT_FALSE(Rational(1, 2).is_nonpositive_integer());
  EXPECT_THROW(Rational::parse("1/0"), std::exception);
  EXPECT_THROW(Rational::parse("x"), std::exception);
}

TEST(Rational, OverflowIsAnError) {
  Rational big(std::int64_t{1} << 62);
  EXPECT_THROW(big * big, std::exception);
}

TEST(Embed, HandValues) {
  EXPECT_EQ(E(0, 1, 3, 2).residue(), 0u);
  EXPECT_EQ(E(0, 1, 3, 2).prec(), 2);
  EXPECT_EQ(E(1, 2, 3, 2).residue(), 5u);
  EXPECT_EQ(E(-1, 3, 5, 2).residue(), 8u);
  expect_kind(ErrorKind::DenominatorDivisibleByP, [] { E(1, 3, 3, 2); });
}

TEST(Embed, AgreesWithOracle) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::int64_t n = -20; n <= 20; ++n) {
      for (std::int64_t d = 1; d <= 12; ++d) {
        if (d % p == 0) continue;
        EXPECT_EQ(E(n, d, p, 6).residue(), oracle::reduce(oracle::q(n, d), p, 6)) << n << "/" << d << " p=" << p;
      }
    }
  }
}

TEST(PadicApprox, ArithmeticTakesMinPrecision) {
  PadicApprox x(3, 4, 10), y(3, 2, 5);
  EXPECT_EQ((x + y).prec(), 2);
  EXPECT_EQ((x + y).residue(), 15u % 9);
  EXPECT_EQ((x * y).residue(), 50u % 9);
  EXPECT_EQ((-x).residue(), 81u - 10);
  EXPECT_EQ(x.inverse() * x, PadicApprox::one(3, 4));
  expect_kind(ErrorKind::NotDivisible, [] { PadicApprox(3, 3, 6).inverse(); });
}

TEST(PadicApprox, ValuationAndDigits) {
  PadicApprox x(3, 4, 18);
  EXPECT_EQ(x.valuation().value, 2);
  EXPECT_FALSE(x.valuation().at_least);
  EXPECT_TRUE(PadicApprox::zero(3, 4).valuation().at_least);
  EXPECT_EQ(x.digits(), (std::vector<std::uint32_t>{0, 0, 2, 0}));
  EXPECT_EQ(PadicApprox(5, 2, 24).signed_residue(), -1);
  EXPECT_TRUE(PadicApprox(3, 3, 10).congruent(PadicApprox(3, 2, 1), 2));
  expect_kind(ErrorKind::PrecisionExhausted, [] { PadicApprox(3, 3, 10).congruent(PadicApprox(3, 2, 1), 3); });
}

TEST(PadicApprox, PrecisionCap) {
  EXPECT_EQ(detail::max_precision(2), 62);
  EXPECT_EQ(detail::max_precision(3), 39);
  expect_kind(ErrorKind::PrecisionExhausted, [] { PadicApprox::one(3, 40); });
  EXPECT_NO_THROW(PadicApprox::one(3, 39));
}

TEST(ExactDivide, HandValues) {
  auto r = exact_divide(PadicApprox(3, 3, 6), Rational(3));
  EXPECT_EQ(r.residue(), 2u);
  EXPECT_EQ(r.prec(), 2);
  auto z = exact_divide(PadicApprox(3, 3, 0), Rational(9));
  EXPECT_EQ(z.residue(), 0u);
  EXPECT_EQ(z.prec(), 1);
  EXPECT_EQ(exact_divide(E(3, 8, 3, 3), Rational(3)), E(1, 8, 3, 2));
  expect_kind(ErrorKind::NotDivisible, [] { exact_divide(PadicApprox(3, 3, 4), Rational(3)); });
  expect_kind(ErrorKind::PrecisionExhausted, [] { exact_divide(PadicApprox(3, 2, 0), Rational(9)); });
}

TEST(UnitSplit, TracksValuationExactly) {
  UnitSplit s(3, 10);
  s *= Rational(9, 2);
  s /= Rational(3);
  EXPECT_EQ(s.valuation(), 1);
  EXPECT_EQ(s.to_padic(4), E(3, 2, 3, 4));
  s /= Rational(27);
  EXPECT_EQ(s.valuation(), -2);
  expect_kind(ErrorKind::NotDivisible, [&] { s.to_padic(3); });
  EXPECT_EQ(s.inverse().valuation(), 2);
}

TEST(Binomial, HandValues) {
  EXPECT_EQ(pochhammer(Rational(1, 2), 2, 5, 4), E(3, 4, 5, 4));
  EXPECT_EQ(pochhammer(Rational(7, 3), 0, 5, 4), PadicApprox::one(5, 4));
  EXPECT_EQ(padic_binomial(Rational(1, 2), 2, 3, 4), E(-1, 8, 3, 4));
}

TEST(Binomial, AgreesWithOracle) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (auto [n, d] : {std::pair{1, 2}, {1, 3}, {-2, 5}, {7, 4}, {5, 1}}) {
      if (d % static_cast<int>(p) == 0) continue;
      oracle::Q alpha = oracle::q(n, d), bin = 1;
      for (int i = 0; i < 30; ++i) {
        EXPECT_EQ(padic_binomial(Rational(n, d), i, p, 5).residue(), oracle::reduce(bin, p, 5))
            << "binom(" << n << "/" << d << "," << i << ") p=" << p;
        EXPECT_EQ(pochhammer(Rational(n, d), i, p, 5).residue(), oracle::reduce(oracle::pochhammer(alpha, i), p, 5));
        bin = bin * (alpha - i) / (i + 1);
      }
    }
  }
}

TEST(CPower, HandValues) {
  const PadicApprox c = PadicApprox::from_integer(3, 5, 4);
  EXPECT_EQ(c_power(c, Rational(0), 5), PadicApprox::one(3, 5));
  EXPECT_EQ(c_power(c, Rational(1), 5), c);
  EXPECT_EQ(c_power(c, Rational(1, 2), 2).residue(), 7u);
  expect_kind(ErrorKind::CNotOneModP, [] { c_power(PadicApprox::from_integer(3, 4, 2), Rational(1, 2), 4); });
}

TEST(CPower, RootsRaiseBack) {
  // (c^{n/d})^d == c^n, checked against plain powering.
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (std::int64_t cv : {1 + static_cast<std::int64_t>(p), 1 + 2 * static_cast<std::int64_t>(p), 1 - static_cast<std::int64_t>(p)}) {
      const PadicApprox c = PadicApprox::from_integer(p, 8, cv);
      for (auto [n, d] : {std::pair{1, 2}, {2, 3}, {-1, 4}, {5, 2}}) {
        if (d % static_cast<int>(p) == 0) continue;
        PadicApprox root = c_power(c, Rational(n, d), 8);
        PadicApprox lhs = root.pow(static_cast<std::uint64_t>(d));
        PadicApprox rhs = n >= 0 ? c.pow(static_cast<std::uint64_t>(n)) : c.pow(static_cast<std::uint64_t>(-n)).inverse();
        EXPECT_EQ(lhs, rhs) << "p=" << p << " c=" << cv << " alpha=" << n << "/" << d;
        EXPECT_TRUE(root.congruent(PadicApprox::one(p, 8), 1));
      }
    }
  }
}

TEST(IwasawaLog, HandValues) {
  EXPECT_TRUE(iwasawa_log(PadicApprox::one(3, 4)).is_zero());
  EXPECT_EQ(iwasawa_log(PadicApprox::from_integer(3, 2, 4)).residue(), 3u);
  const PadicApprox c = PadicApprox::from_integer(5, 3, 6);
  EXPECT_EQ(iwasawa_log(c * c), iwasawa_log(c).scaled(2));
}

TEST(IwasawaLog, AgreesWithOracle) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const int N = 5;
    for (std::int64_t m = 1; m <= 6; ++m) {
      const std::int64_t step = p == 2 ? 4 : p;
      const std::int64_t cv = 1 + step * m;
      const oracle::Q expected = oracle::log1p(oracle::Q(cv - 1), 60);
      EXPECT_EQ(iwasawa_log(PadicApprox::from_integer(p, N, cv)).residue(), oracle::reduce(expected, p, N))
          << "p=" << p << " c=" << cv;
    }
  }
}

TEST(Braced, HandValues) {
  EXPECT_EQ(braced_product(Rational(2, 7), 0, 3, 4), PadicApprox::one(3, 4));
  EXPECT_EQ(braced_product(Rational(1), 5, 5, 3).residue(), 24u);
  EXPECT_EQ(braced_product(Rational(1, 2), 3, 3, 4), E(5, 4, 3, 4));
}

TEST(Braced, PrefixTableAgreesWithOracle) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (auto [n, d] : {std::pair{1, 2}, {1, 3}, {2, 3}, {1, 1}}) {
      if (d % static_cast<int>(p) == 0) continue;
      const auto table = braced_products(Rational(n, d), 40, p, 4);
      for (std::uint64_t k = 0; k <= 40; ++k) {
        EXPECT_TRUE(table[k].is_unit());
        EXPECT_EQ(table[k].residue(), oracle::reduce(oracle::braced(oracle::q(n, d), static_cast<long>(k), p), p, 4));
      }
    }
  }
}

TEST(DworkChain, HandValues) {
  auto c = dwork_chain(Rational(1), 2);
  EXPECT_EQ(c.l, 1);
  EXPECT_EQ(c.at(1), Rational(1));
  EXPECT_EQ(c.period, 1);
  EXPECT_EQ(c.l_prime, 3);
  EXPECT_EQ(c.e, 2);

  auto h = dwork_chain(Rational(1, 2), 3);
  EXPECT_EQ(h.l, 1);
  EXPECT_EQ(h.at(1), Rational(1, 2));
  EXPECT_EQ(h.period, 1);
  EXPECT_EQ(h.l_prime, 1);
  EXPECT_EQ(h.e, 1);

  auto t = dwork_chain(Rational(2, 3), 5);
  EXPECT_EQ(t.l, 1);
  EXPECT_EQ(t.at(1), Rational(1, 3));
  EXPECT_EQ(t.at(2), Rational(2, 3));
  EXPECT_EQ(t.period, 2);
}

TEST(DworkChain, PrimeAgreesWithOracle) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::int64_t n = -7; n <= 9; ++n) {
      for (std::int64_t d = 1; d <= 9; ++d) {
        if (d % p == 0) continue;
        const Rational a(n, d);
        const oracle::Q ap = oracle::dwork_prime(oracle::q(n, d), p);
        const Rational got = dwork_prime(a, p);
        EXPECT_EQ(oracle::Q(oracle::q(got.numerator(), got.denominator())), ap) << a << " p=" << p;
      }
    }
  }
}

TEST(DworkChain, NonPeriodicChain) {
  auto c = dwork_chain(Rational(2), 3);
  EXPECT_FALSE(c.period.has_value());
  EXPECT_EQ(c.at(1), Rational(1));
  EXPECT_EQ(c.at(5), Rational(1));
}
