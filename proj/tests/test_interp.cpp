#include <gtest/gtest.h>

#include "oracle.hpp"
#include "padic_hg/interp.hpp"

using namespace padic_hg;

TEST(Witness, SmallestPositiveRepresentative) {
  EXPECT_EQ(witness(Rational(0), 3, 2), 9u);
  EXPECT_EQ(witness(Rational(4), 3, 2), 4u);
  EXPECT_EQ(witness(Rational(13), 3, 2), 4u);
  EXPECT_EQ(witness(Rational(-1), 3, 2), 8u);
  EXPECT_EQ(witness(Rational(1, 2), 3, 2), 5u);
  EXPECT_THROW(witness(Rational(1, 3), 3, 2), Error);
}

TEST(Beta, ReciprocalAtPositiveIntegers) {
  // beta_b = 1/b and betahat_{-b-a} = -1/b when p does not divide b.
  for (std::uint32_t p : {3u, 5u}) {
    for (auto [n, d] : {std::pair{1, 2}, {2, 3}, {1, 1}}) {
      if (d % static_cast<int>(p) == 0) continue;
      const auto params = HGParams::make(Rational(n, d), 1, p);
      for (std::int64_t cv : {std::int64_t{1}, 1 + static_cast<std::int64_t>(p)}) {
        for (std::int64_t b : {1, 2, 4, 7}) {
          if (b % p == 0) continue;
          const auto beta = beta_at(params, FrobeniusSpec::sigma(Rational(cv)), Rational(b), 2);
          EXPECT_EQ(beta.value, embed_rational(Rational(1, b), p, 2)) << "p=" << p << " b=" << b;
          const auto hat = beta_at(params, FrobeniusSpec::sigma_hat(Rational(cv)), -Rational(b) - params.a, 2, true);
          EXPECT_EQ(hat.value, embed_rational(Rational(-1, b), p, 2)) << "p=" << p << " b=" << b;
        }
      }
    }
  }
}

TEST(Beta, ZeroForAOneAtCOne) {
  const auto params = HGParams::make(Rational(1), 1, 3);
  EXPECT_TRUE(beta_at(params, FrobeniusSpec::sigma(Rational(1)), Rational(0), 3).value.is_zero());
}

TEST(Beta, WitnessIndependent) {
  const auto params = HGParams::make(Rational(1, 2), 2, 3);
  CoefficientEngine eng(params, FrobeniusSpec::sigma(Rational(4)));
  const auto v = beta_at(eng, Rational(1, 2), 2, false);
  for (std::uint64_t k = v.witness; k < 80; k += 9) EXPECT_EQ(eng.ratio(k, 2, false), v.value) << k;
}

TEST(RatioIdentity, HandValue) {
  const auto params = HGParams::make(Rational(1, 2), 1, 3);
  const auto r = ratio_identity_check(params, 3, 4);
  EXPECT_TRUE(r.holds);
  // A1_1 / A_3 = 8/5 = {1}_3 / {1/2}_3
  CoefficientEngine eng(params, FrobeniusSpec::sigma(Rational(1)));
  const auto A3 = eng.A(3, 4), A1 = eng.A1(1, 4);
  EXPECT_EQ(A1 * A3.inverse(), embed_rational(Rational(8, 5), 3, 4));
  const auto ratio = braced_product(Rational(1), 3, 3, 4) * braced_product(Rational(1, 2), 3, 3, 4).inverse();
  EXPECT_EQ(ratio, embed_rational(Rational(8, 5), 3, 4));

  const auto sq = HGParams::make(Rational(1, 2), 2, 3);
  CoefficientEngine e2(sq, FrobeniusSpec::sigma(Rational(1)));
  EXPECT_EQ(e2.A1(1, 4) * e2.A(3, 4).inverse(), embed_rational(Rational(64, 25), 3, 4));
  EXPECT_TRUE(ratio_identity_check(sq, 3, 4).holds);
}

TEST(RatioIdentity, AOneIsTrivial) {
  const auto params = HGParams::make(Rational(1), 2, 5);
  for (std::uint64_t x = 0; x < 60; ++x) {
    const auto r = ratio_identity_check(params, x, 3);
    EXPECT_TRUE(r.holds) << x;
    EXPECT_EQ(r.lhs, r.rhs);
  }
}

TEST(RatioIdentity, AgreesWithOracle) {
  // Both sides recomputed with exact rationals.
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (auto [n, d] : {std::pair{1, 2}, {1, 3}, {2, 3}, {1, 5}}) {
      if (d % static_cast<int>(p) == 0) continue;
      const oracle::Q a = oracle::q(n, d);
      const long l = oracle::digit(a, p);
      for (int s : {1, 2}) {
        const auto params = HGParams::make(Rational(n, d), s, p);
        for (long x = 0; x < 40; ++x) {
          const long xq = x / p;
          oracle::Q lhs = oracle::A(oracle::dwork_prime(a, p), s, xq) * oracle::qpow(oracle::braced(a, x, p), s);
          if (x % static_cast<long>(p) > l) lhs *= oracle::qpow(a + l + static_cast<long>(p) * xq, s);
          const oracle::Q rhs = oracle::A(a, s, x) * oracle::qpow(oracle::braced(1, x, p), s);
          ASSERT_EQ(lhs, rhs) << "a=" << n << "/" << d << " p=" << p << " x=" << x;
          const auto r = ratio_identity_check(params, static_cast<std::uint64_t>(x), 4);
          EXPECT_TRUE(r.holds);
          EXPECT_EQ(r.rhs.residue(), oracle::reduce(rhs, p, 4));
        }
      }
    }
  }
}
