#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "padic_hg/error.hpp"
#include "padic_hg/rational.hpp"

namespace padic_hg {

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline void require_prime(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
}

// Largest N with p^N <= 2^62, so sums of two residues never overflow.
inline int max_precision(std::uint32_t p) {
  int n = 0;
  std::uint64_t m = 1;
  while (m <= (std::uint64_t{1} << 62) / p) {
    m *= p;
    ++n;
  }
  return n;
}

inline std::uint64_t pow_p(std::uint32_t p, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
  if (n > max_precision(p)) {
    throw Error(ErrorKind::PrecisionExhausted,
                std::to_string(p) + "^" + std::to_string(n) + " exceeds the 64-bit residue range");
  }
  std::uint64_t m = 1;
  for (int i = 0; i < n; ++i) m *= p;
  return m;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t reduce(__int128 x, std::uint64_t m) {
  __int128 r = x % static_cast<__int128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a modulo m via extended Euclid; a must be coprime to m.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  __int128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw Error(ErrorKind::NotDivisible, "value is not invertible modulo p^N");
  return reduce(old_s, m);
}

// Strips p from n and returns the exponent removed. n must be nonzero.
inline int strip_p(std::int64_t& n, std::uint32_t p) {
  int v = 0;
  while (n % static_cast<std::int64_t>(p) == 0) {
    n /= static_cast<std::int64_t>(p);
    ++v;
  }
  return v;
}

inline int vp_int(std::int64_t n, std::uint32_t p) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  return strip_p(n, p);
}

}  // namespace detail

struct Valuation {
  int value = 0;
  // Set when the residue is zero: the true valuation is only known to be >= value.
  bool at_least = false;

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

// p-adic valuation of a nonzero rational with p not dividing the denominator.
inline int valuation(const Rational& r, std::uint32_t p) {
  if (r.is_zero()) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  return detail::vp_int(r.numerator(), p) - detail::vp_int(r.denominator(), p);
}

/// An element of Z_p known modulo p^prec.
///
/// Arithmetic between two approximations keeps the smaller precision.
/// Residues are canonical in [0, p^prec).
class PadicApprox {
 public:
  PadicApprox() = default;

  PadicApprox(std::uint32_t p, int prec, std::uint64_t residue) {
    detail::require_prime(p);
    if (prec < 0) throw Error(ErrorKind::InvalidArgument, "negative precision");
    p_ = p;
    prec_ = prec;
    modulus_ = detail::pow_p(p, prec);
    if (residue >= modulus_) {
      throw Error(ErrorKind::InvalidArgument, "residue out of range for p^prec");
    }
    residue_ = residue;
  }

  static PadicApprox from_integer(std::uint32_t p, int prec, std::int64_t value) {
    PadicApprox z(p, prec, 0);
    z.residue_ = detail::reduce(value, z.modulus_);
    return z;
  }
  static PadicApprox zero(std::uint32_t p, int prec) { return PadicApprox(p, prec, 0); }
  static PadicApprox one(std::uint32_t p, int prec) { return from_integer(p, prec, 1); }

  std::uint32_t p() const { return p_; }
  int prec() const { return prec_; }
  std::uint64_t residue() const { return residue_; }
  std::uint64_t modulus() const { return modulus_; }

  // Residue in (-p^prec/2, p^prec/2], handy for printing small negatives.
  std::int64_t signed_residue() const {
    return residue_ > modulus_ / 2 ? static_cast<std::int64_t>(residue_) - static_cast<std::int64_t>(modulus_)
                                   : static_cast<std::int64_t>(residue_);
  }

  Valuation valuation() const {
    if (residue_ == 0) return {prec_, true};
    int v = 0;
    std::uint64_t r = residue_;
    while (r % p_ == 0) {
      r /= p_;
      ++v;
    }
    return {v, false};
  }

  bool is_zero() const { return residue_ == 0; }
  bool is_unit() const { return prec_ > 0 && residue_ % p_ != 0; }

  PadicApprox with_prec(int n) const {
    if (n > prec_) {
      throw Error(ErrorKind::PrecisionExhausted,
                  "cannot raise precision from " + std::to_string(prec_) + " to " + std::to_string(n));
    }
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative precision");
    std::uint64_t m = detail::pow_p(p_, n);
    return PadicApprox(unchecked{}, p_, n, m, residue_ % m);
  }

  PadicApprox operator-() const {
    return PadicApprox(unchecked{}, p_, prec_, modulus_, residue_ == 0 ? 0 : modulus_ - residue_);
  }

  friend PadicApprox operator+(const PadicApprox& x, const PadicApprox& y) {
    auto [prec, m] = common(x, y);
    std::uint64_t r = x.residue_ % m + y.residue_ % m;
    if (r >= m) r -= m;
    return PadicApprox(unchecked{}, x.p_, prec, m, r);
  }
  friend PadicApprox operator-(const PadicApprox& x, const PadicApprox& y) { return x + (-y); }
  friend PadicApprox operator*(const PadicApprox& x, const PadicApprox& y) {
    auto [prec, m] = common(x, y);
    return PadicApprox(unchecked{}, x.p_, prec, m, detail::mul_mod(x.residue_ % m, y.residue_ % m, m));
  }
  PadicApprox& operator+=(const PadicApprox& o) { return *this = *this + o; }
  PadicApprox& operator-=(const PadicApprox& o) { return *this = *this - o; }
  PadicApprox& operator*=(const PadicApprox& o) { return *this = *this * o; }

  PadicApprox scaled(std::int64_t k) const {
    return PadicApprox(unchecked{}, p_, prec_, modulus_, detail::mul_mod(residue_, detail::reduce(k, modulus_), modulus_));
  }

  PadicApprox pow(std::uint64_t e) const {
    return PadicApprox(unchecked{}, p_, prec_, modulus_, detail::pow_mod(residue_, e, modulus_));
  }

  PadicApprox inverse() const {
    if (!is_unit()) throw Error(ErrorKind::NotDivisible, "inverse of a non-unit " + to_string());
    return PadicApprox(unchecked{}, p_, prec_, modulus_, detail::inv_mod(residue_, modulus_));
  }

  // x == y mod p^n; only meaningful when both are known to at least n digits.
  bool congruent(const PadicApprox& other, int n) const {
    if (other.p_ != p_) throw Error(ErrorKind::InvalidArgument, "mismatched primes");
    if (n > prec_ || n > other.prec_) {
      throw Error(ErrorKind::PrecisionExhausted, "comparison modulus exceeds known precision");
    }
    std::uint64_t m = detail::pow_p(p_, n);
    return residue_ % m == other.residue_ % m;
  }

  // "r mod p^N"
  std::string to_string() const {
    return std::to_string(residue_) + " mod " + std::to_string(p_) + "^" + std::to_string(prec_);
  }

  // Base-p digits, least significant first, exactly prec of them.
  std::vector<std::uint32_t> digits() const {
    std::vector<std::uint32_t> out;
    out.reserve(prec_);
    std::uint64_t r = residue_;
    for (int i = 0; i < prec_; ++i) {
      out.push_back(static_cast<std::uint32_t>(r % p_));
      r /= p_;
    }
    return out;
  }

  friend bool operator==(const PadicApprox&, const PadicApprox&) = default;

 private:
  struct unchecked {};
  PadicApprox(unchecked, std::uint32_t p, int prec, std::uint64_t m, std::uint64_t r)
      : p_(p), prec_(prec), modulus_(m), residue_(r) {}

  static std::pair<int, std::uint64_t> common(const PadicApprox& x, const PadicApprox& y) {
    if (x.p_ != y.p_) throw Error(ErrorKind::InvalidArgument, "mismatched primes");
    return x.prec_ <= y.prec_ ? std::pair{x.prec_, x.modulus_} : std::pair{y.prec_, y.modulus_};
  }

  std::uint32_t p_ = 0;
  int prec_ = 0;
  std::uint64_t modulus_ = 1;
  std::uint64_t residue_ = 0;
};

/// Image of r in Z/p^N.
inline PadicApprox embed_rational(const Rational& r, std::uint32_t p, int N) {
  detail::require_prime(p);
  if (N < 0) throw Error(ErrorKind::InvalidArgument, "negative precision");
  if (r.denominator() % static_cast<std::int64_t>(p) == 0) {
    throw Error(ErrorKind::DenominatorDivisibleByP, r.to_string() + " at p=" + std::to_string(p));
  }
  std::uint64_t m = detail::pow_p(p, N);
  std::uint64_t num = detail::reduce(r.numerator(), m);
  std::uint64_t inv = detail::inv_mod(static_cast<std::uint64_t>(r.denominator()) % m, m);
  return PadicApprox(p, N, detail::mul_mod(num, inv, m));
}

inline Valuation valuation(const PadicApprox& x) { return x.valuation(); }

/// y with y*d == x, losing v_p(d) digits of precision.
inline PadicApprox exact_divide(const PadicApprox& x, const PadicApprox& d) {
  if (x.p() != d.p()) throw Error(ErrorKind::InvalidArgument, "mismatched primes");
  Valuation vd = d.valuation();
  if (vd.at_least) throw Error(ErrorKind::PrecisionExhausted, "divisor indistinguishable from zero");
  const int v = vd.value;
  const int prec = std::min(x.prec(), d.prec()) - v;
  if (prec <= 0) {
    throw Error(ErrorKind::PrecisionExhausted,
                "dividing " + x.to_string() + " by " + d.to_string() + " leaves no digits");
  }
  const std::uint64_t pv = detail::pow_p(x.p(), v);
  if (x.residue() % pv != 0) {
    throw Error(ErrorKind::NotDivisible, x.to_string() + " is not divisible by " + d.to_string());
  }
  const std::uint64_t m = detail::pow_p(x.p(), prec);
  const std::uint64_t unit = (d.residue() / pv) % m;
  return PadicApprox(x.p(), prec, detail::mul_mod((x.residue() / pv) % m, detail::inv_mod(unit, m), m));
}

inline PadicApprox exact_divide(const PadicApprox& x, const Rational& d) {
  if (d.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
  return exact_divide(x, embed_rational(d, x.p(), x.prec()));
}

/// Exact product of nonzero rationals (or exact zero) tracked as p^v * unit,
/// with the unit known modulo p^work_prec. Nothing is lost to division: the
/// valuation is bookkept exactly and only the unit is reduced.
class UnitSplit {
 public:
  UnitSplit(std::uint32_t p, int work_prec) : unit_(PadicApprox::one(p, work_prec)) {}

  static UnitSplit of(const Rational& r, std::uint32_t p, int work_prec) {
    UnitSplit s(p, work_prec);
    s *= r;
    return s;
  }

  std::uint32_t p() const { return unit_.p(); }
  int work_prec() const { return unit_.prec(); }
  bool is_zero() const { return zero_; }
  int valuation() const { return valuation_; }
  const PadicApprox& unit() const { return unit_; }

  UnitSplit& operator*=(const Rational& r) {
    if (r.is_zero()) {
      zero_ = true;
      return *this;
    }
    auto [v, u] = split(r);
    valuation_ += v;
    unit_ *= u;
    return *this;
  }

  UnitSplit& operator/=(const Rational& r) {
    if (r.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
    auto [v, u] = split(r);
    valuation_ -= v;
    unit_ *= u.inverse();
    return *this;
  }

  UnitSplit& operator*=(const UnitSplit& o) {
    zero_ = zero_ || o.zero_;
    valuation_ += o.valuation_;
    unit_ *= o.unit_;
    return *this;
  }

  UnitSplit pow(unsigned s) const {
    UnitSplit r = *this;
    r.valuation_ = valuation_ * static_cast<int>(s);
    r.unit_ = unit_.pow(s);
    r.zero_ = zero_ && s > 0;
    return r;
  }

  UnitSplit inverse() const {
    if (zero_) throw Error(ErrorKind::InvalidArgument, "inverse of zero");
    UnitSplit r = *this;
    r.valuation_ = -valuation_;
    r.unit_ = unit_.inverse();
    return r;
  }

  /// The value modulo p^N; needs valuation >= 0.
  PadicApprox to_padic(int N) const {
    const std::uint32_t p = unit_.p();
    if (zero_) return PadicApprox::zero(p, N);
    if (valuation_ < 0) {
      throw Error(ErrorKind::NotDivisible, "value has negative valuation " + std::to_string(valuation_));
    }
    if (valuation_ >= N) return PadicApprox::zero(p, N);
    if (unit_.prec() < N - valuation_) {
      throw Error(ErrorKind::PrecisionExhausted, "unit known to too few digits");
    }
    std::uint64_t m = detail::pow_p(p, N);
    std::uint64_t pv = detail::pow_p(p, valuation_);
    return PadicApprox(p, N, (unit_.residue() % (m / pv)) * pv);
  }

 private:
  std::pair<int, PadicApprox> split(const Rational& r) const {
    const std::uint32_t p = unit_.p();
    if (r.denominator() % static_cast<std::int64_t>(p) == 0) {
      throw Error(ErrorKind::DenominatorDivisibleByP, r.to_string() + " at p=" + std::to_string(p));
    }
    std::int64_t n = r.numerator();
    int v = detail::strip_p(n, p);
    return {v, embed_rational(Rational(n, r.denominator()), p, unit_.prec())};
  }

  PadicApprox unit_;
  int valuation_ = 0;
  bool zero_ = false;
};

enum class BinomialVariant { binomial, pochhammer };

/// binom(alpha, i) = alpha(alpha-1)...(alpha-i+1)/i!, or with the pochhammer
/// variant the rising factorial (alpha)_i = alpha(alpha+1)...(alpha+i-1).
/// Both are computed as exact splits so the result has the full N digits.
inline PadicApprox padic_binomial(const Rational& alpha, std::uint64_t i, std::uint32_t p, int N,
                                  BinomialVariant variant = BinomialVariant::binomial) {
  detail::require_prime(p);
  UnitSplit acc(p, std::max(N, 1));
  for (std::uint64_t j = 0; j < i; ++j) {
    if (variant == BinomialVariant::binomial) {
      acc *= alpha - Rational(static_cast<std::int64_t>(j));
      acc /= Rational(static_cast<std::int64_t>(j + 1));
    } else {
      acc *= alpha + Rational(static_cast<std::int64_t>(j));
    }
    if (acc.is_zero()) break;
  }
  return acc.to_padic(N);
}

inline PadicApprox pochhammer(const Rational& alpha, std::uint64_t k, std::uint32_t p, int N) {
  return padic_binomial(alpha, k, p, N, BinomialVariant::pochhammer);
}

/// c^alpha for c = 1 + p*u, as the binomial series sum binom(alpha,i)(c-1)^i.
/// Nonnegative integer exponents use plain powering.
inline PadicApprox c_power(const PadicApprox& c, const Rational& alpha, int N) {
  const std::uint32_t p = c.p();
  const int prec = std::min(N, c.prec());
  const PadicApprox one = PadicApprox::one(p, prec);
  const PadicApprox x = c.with_prec(prec) - one;
  const Valuation vx = x.valuation();
  if (prec > 0 && !vx.at_least && vx.value < 1) {
    throw Error(ErrorKind::CNotOneModP, c.to_string() + " is not 1 mod p");
  }
  if (alpha.is_integer() && alpha.numerator() >= 0) {
    return c.with_prec(prec).pow(static_cast<std::uint64_t>(alpha.numerator()));
  }
  if (vx.at_least) return one;
  PadicApprox sum = one;
  PadicApprox x_pow = one;
  UnitSplit binom(p, std::max(prec, 1));
  for (int i = 1; i * vx.value < prec; ++i) {
    binom *= alpha - Rational(i - 1);
    binom /= Rational(i);
    if (binom.is_zero()) break;
    x_pow *= x;
    sum += binom.to_padic(prec) * x_pow;
  }
  return sum;
}

/// Iwasawa logarithm on 1 + pZ_p (1 + 4Z_2 at p = 2), same precision as c.
inline PadicApprox iwasawa_log(const PadicApprox& c) {
  const std::uint32_t p = c.p();
  const int N = c.prec();
  const PadicApprox x = c - PadicApprox::one(p, N);
  const Valuation vx = x.valuation();
  const int need = p == 2 ? 2 : 1;
  if (!vx.at_least && vx.value < need) {
    throw Error(ErrorKind::CNotOneModP, c.to_string() + " is outside the log's domain");
  }
  if (vx.at_least) return PadicApprox::zero(p, N);
  const int v = vx.value;
  PadicApprox sum = PadicApprox::zero(p, N);
  // Term i has valuation i*v - v_p(i); x^i is lifted to N + v_p(i) digits so
  // the division by i leaves N. The truncation error of x is swamped by
  // p^{(i-1)v} >= p^{v_p(i)}.
  for (int i = 1; i <= 4 * N + 8; ++i) {
    const int vi = detail::vp_int(i, p);
    if (i * v - vi >= N) continue;
    const int lift = N + vi;
    const std::uint64_t m = detail::pow_p(p, lift);
    PadicApprox term(p, lift, detail::pow_mod(x.residue(), static_cast<std::uint64_t>(i), m));
    term = exact_divide(term, Rational(i));
    sum = (i % 2 == 1) ? sum + term : sum - term;
  }
  return sum;
}

/// {alpha}_n: product of alpha+i-1 over 1 <= i <= n, skipping factors divisible by p.
inline PadicApprox braced_product(const Rational& alpha, std::uint64_t n, std::uint32_t p, int N) {
  detail::require_prime(p);
  UnitSplit acc(p, std::max(N, 1));
  for (std::uint64_t i = 1; i <= n; ++i) {
    Rational f = alpha + Rational(static_cast<std::int64_t>(i) - 1);
    if (f.is_zero() || valuation(f, p) > 0) continue;
    acc *= f;
  }
  return acc.to_padic(N);
}

/// {alpha}_0 .. {alpha}_{n_max} as a prefix table.
inline std::vector<PadicApprox> braced_products(const Rational& alpha, std::uint64_t n_max, std::uint32_t p,
                                                int N) {
  detail::require_prime(p);
  std::vector<PadicApprox> out;
  out.reserve(n_max + 1);
  PadicApprox acc = PadicApprox::one(p, N);
  out.push_back(acc);
  for (std::uint64_t i = 1; i <= n_max; ++i) {
    Rational f = alpha + Rational(static_cast<std::int64_t>(i) - 1);
    if (!f.is_zero() && valuation(f, p) == 0) acc *= embed_rational(f, p, N);
    out.push_back(acc);
  }
  return out;
}

}  // namespace padic_hg
