#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "padic_hg/frobenius.hpp"
#include "padic_hg/padic.hpp"

namespace padic_hg {

/// A power series sum c_k t^k known up to O(t^order), coefficients in Z_p.
class TruncSeries {
 public:
  TruncSeries() = default;

  TruncSeries(std::uint32_t p, std::vector<PadicApprox> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) {
      if (c.p() != p_) throw Error(ErrorKind::InvalidArgument, "coefficient prime mismatch");
    }
  }

  friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

  static TruncSeries zero(std::uint32_t p, std::size_t order, int prec) {
    return TruncSeries(p, std::vector<PadicApprox>(order, PadicApprox::zero(p, prec)));
  }

  /// 1 + 0 t + ... to the given order.
  static TruncSeries one(std::uint32_t p, std::size_t order, int prec) {
    TruncSeries s = zero(p, order, prec);
    if (order > 0) s.coeffs_[0] = PadicApprox::one(p, prec);
    return s;
  }

  static TruncSeries from_rationals(std::uint32_t p, int prec, const std::vector<Rational>& values) {
    std::vector<PadicApprox> c;
    c.reserve(values.size());
    for (const auto& v : values) c.push_back(embed_rational(v, p, prec));
    return TruncSeries(p, std::move(c));
  }

  std::uint32_t p() const { return p_; }
  std::size_t order() const { return coeffs_.size(); }
  const std::vector<PadicApprox>& coeffs() const { return coeffs_; }
  const PadicApprox& operator[](std::size_t k) const { return coeffs_.at(k); }
  PadicApprox& operator[](std::size_t k) { return coeffs_.at(k); }

  /// Minimum coefficient precision (the cap for an empty series).
  int prec() const {
    int m = detail::max_precision(p_);
    for (const auto& c : coeffs_) m = std::min(m, c.prec());
    return m;
  }

  TruncSeries with_prec(int n) const {
    TruncSeries r = *this;
    for (auto& c : r.coeffs_) c = c.with_prec(n);
    return r;
  }

  /// Drops coefficients beyond the new order.
  TruncSeries with_order(std::size_t m) const {
    if (m > order()) throw Error(ErrorKind::PrecisionExhausted, "cannot extend a truncated series");
    return TruncSeries(p_, std::vector<PadicApprox>(coeffs_.begin(), coeffs_.begin() + m));
  }

  TruncSeries operator-() const {
    TruncSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend TruncSeries operator+(const TruncSeries& f, const TruncSeries& g) { return combine(f, g, false); }
  friend TruncSeries operator-(const TruncSeries& f, const TruncSeries& g) { return combine(f, g, true); }

  /// Schoolbook convolution to min(order f, order g).
  friend TruncSeries operator*(const TruncSeries& f, const TruncSeries& g) {
    check_same_p(f, g);
    const std::size_t m = std::min(f.order(), g.order());
    const int prec = std::min(f.prec(), g.prec());
    const std::uint64_t mod = detail::pow_p(f.p_, prec);
    std::vector<unsigned __int128> acc(m, 0);
    // Accumulate 128-bit partial sums and reduce only when they could overflow.
    for (std::size_t i = 0; i < m; ++i) {
      const std::uint64_t fi = f.coeffs_[i].residue() % mod;
      if (fi == 0) continue;
      for (std::size_t j = 0; i + j < m; ++j) {
        unsigned __int128& slot = acc[i + j];
        slot += static_cast<unsigned __int128>(fi) * (g.coeffs_[j].residue() % mod);
        if (slot >> 126) slot %= mod;
      }
    }
    std::vector<PadicApprox> out;
    out.reserve(m);
    for (auto v : acc) out.emplace_back(f.p_, prec, static_cast<std::uint64_t>(v % mod));
    return TruncSeries(f.p_, std::move(out));
  }

  TruncSeries scaled(const PadicApprox& s) const {
    TruncSeries r = *this;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }

  /// Multiplication by t^m, keeping the order.
  TruncSeries shifted(std::size_t m) const {
    TruncSeries r = zero(p_, order(), prec());
    for (std::size_t k = 0; k + m < order(); ++k) r.coeffs_[k + m] = coeffs_[k];
    return r;
  }

  /// Multiplicative inverse to the same order; the constant term must be a unit.
  TruncSeries inverse() const {
    if (order() == 0) return *this;
    if (!coeffs_[0].is_unit()) {
      throw Error(ErrorKind::NonUnitConstantTerm, "constant term " + coeffs_[0].to_string());
    }
    const int prec = this->prec();
    const PadicApprox c0_inv = coeffs_[0].with_prec(prec).inverse();
    std::vector<PadicApprox> inv(order(), PadicApprox::zero(p_, prec));
    inv[0] = c0_inv;
    for (std::size_t k = 1; k < order(); ++k) {
      PadicApprox s = PadicApprox::zero(p_, prec);
      for (std::size_t j = 1; j <= k; ++j) s += coeffs_[j] * inv[k - j];
      inv[k] = -(s * c0_inv);
    }
    return TruncSeries(p_, std::move(inv));
  }

 private:
  static void check_same_p(const TruncSeries& f, const TruncSeries& g) {
    if (f.p_ != g.p_) throw Error(ErrorKind::InvalidArgument, "series over different primes");
  }

  static TruncSeries combine(const TruncSeries& f, const TruncSeries& g, bool subtract) {
    check_same_p(f, g);
    const std::size_t m = std::min(f.order(), g.order());
    std::vector<PadicApprox> out;
    out.reserve(m);
    for (std::size_t k = 0; k < m; ++k) out.push_back(subtract ? f.coeffs_[k] - g.coeffs_[k] : f.coeffs_[k] + g.coeffs_[k]);
    return TruncSeries(f.p_, std::move(out));
  }

  std::uint32_t p_ = 2;
  std::vector<PadicApprox> coeffs_;
};

/// [f]_{<m}: coefficients at index >= m become exact zeros. The order is kept,
/// so known zeros are not confused with unknown tail coefficients.
inline TruncSeries truncate_below(const TruncSeries& f, std::size_t m) {
  TruncSeries r = f;
  for (std::size_t k = m; k < r.order(); ++k) r[k] = PadicApprox::zero(f.p(), f[k].prec());
  return r;
}

/// f(c t^p): a_i moves to index ip scaled by c^i, for the effective c of frob.
inline TruncSeries frobenius_substitute(const TruncSeries& f, const FrobeniusSpec& frob, std::size_t out_order) {
  const std::uint32_t p = f.p();
  const int prec = f.prec();
  const PadicApprox c = frob.effective_c(p, prec);
  // Output indices past p * order(f) would need unknown input coefficients.
  if (out_order > 0 && (out_order - 1) / p >= f.order()) {
    throw Error(ErrorKind::PrecisionExhausted, "input series too short for requested output order");
  }
  TruncSeries r = TruncSeries::zero(p, out_order, prec);
  PadicApprox c_pow = PadicApprox::one(p, prec);
  for (std::size_t i = 0; i < f.order() && i * p < out_order; ++i) {
    r[i * p] = f[i] * c_pow;
    c_pow *= c;
  }
  return r;
}

/// t d/dt.
inline TruncSeries theta_derivative(const TruncSeries& f) {
  TruncSeries r = f;
  for (std::size_t k = 0; k < r.order(); ++k) r[k] = f[k].scaled(static_cast<std::int64_t>(k));
  return r;
}

/// Untwisted: c_k -> c_k / k (the integral of f dt/t, constant term must vanish).
/// Twisted by a: c_k -> c_k / (k + a), i.e. t^{-a} integral of t^a f dt/t.
/// Each coefficient loses v_p of its divisor.
inline TruncSeries log_integral(const TruncSeries& f, const std::optional<Rational>& twist = std::nullopt) {
  const std::uint32_t p = f.p();
  std::vector<PadicApprox> out;
  out.reserve(f.order());
  for (std::size_t k = 0; k < f.order(); ++k) {
    const Rational divisor = Rational(static_cast<std::int64_t>(k)) + twist.value_or(Rational(0));
    if (divisor.is_zero()) {
      if (twist) throw Error(ErrorKind::InvalidArgument, "twist makes k + a vanish");
      if (!f[0].is_zero()) throw Error(ErrorKind::NonzeroConstantTerm, "constant term " + f[0].to_string());
      out.push_back(f[0]);
      continue;
    }
    out.push_back(exact_divide(f[k], divisor));
  }
  return TruncSeries(p, std::move(out));
}

/// A finite Laurent polynomial sum_{d} c_d t^d, d from min_deg upward.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(std::uint32_t p, int prec, std::int64_t min_deg, std::vector<PadicApprox> coeffs)
      : p_(p), prec_(prec), min_deg_(min_deg), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_) {
      if (c.p() != p_) throw Error(ErrorKind::InvalidArgument, "coefficient prime mismatch");
      prec_ = std::min(prec_, c.prec());
    }
  }

  /// The polynomial with the series' known coefficients.
  static LaurentPoly from_series(const TruncSeries& f) { return LaurentPoly(f.p(), f.prec(), 0, f.coeffs()); }

  static LaurentPoly monomial(std::uint32_t p, int prec, std::int64_t deg, const PadicApprox& c) {
    return LaurentPoly(p, prec, deg, {c});
  }

  std::uint32_t p() const { return p_; }
  int prec() const { return prec_; }
  std::int64_t min_deg() const { return min_deg_; }
  std::int64_t max_deg() const { return min_deg_ + static_cast<std::int64_t>(coeffs_.size()) - 1; }
  const std::vector<PadicApprox>& coeffs() const { return coeffs_; }

  PadicApprox coefficient(std::int64_t d) const {
    if (d < min_deg_ || d > max_deg()) return PadicApprox::zero(p_, prec_);
    return coeffs_[static_cast<std::size_t>(d - min_deg_)];
  }

  /// Lowest and highest degrees whose coefficients are nonzero residues.
  std::optional<std::pair<std::int64_t, std::int64_t>> support() const {
    std::optional<std::pair<std::int64_t, std::int64_t>> s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      const std::int64_t d = min_deg_ + static_cast<std::int64_t>(i);
      if (!s) s = std::pair{d, d};
      s->second = d;
    }
    return s;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend LaurentPoly operator+(const LaurentPoly& f, const LaurentPoly& g) { return combine(f, g, false); }
  friend LaurentPoly operator-(const LaurentPoly& f, const LaurentPoly& g) { return combine(f, g, true); }

  friend LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) {
    if (f.p_ != g.p_) throw Error(ErrorKind::InvalidArgument, "polynomials over different primes");
    const int prec = std::min(f.prec_, g.prec_);
    if (f.coeffs_.empty() || g.coeffs_.empty()) return LaurentPoly(f.p_, prec, 0, {});
    TruncSeries a(f.p_, f.coeffs_), b(g.p_, g.coeffs_);
    const std::size_t n = f.coeffs_.size() + g.coeffs_.size() - 1;
    // Pad to the full product length so the truncated convolution is exact.
    auto pad = [&](const TruncSeries& s) {
      std::vector<PadicApprox> c = s.coeffs();
      c.resize(n, PadicApprox::zero(f.p_, prec));
      return TruncSeries(f.p_, std::move(c));
    };
    TruncSeries prod = pad(a) * pad(b);
    return LaurentPoly(f.p_, prec, f.min_deg_ + g.min_deg_, prod.coeffs());
  }

  LaurentPoly scaled(const PadicApprox& s) const {
    LaurentPoly r = *this;
    for (auto& c : r.coeffs_) c *= s;
    r.prec_ = std::min(prec_, s.prec());
    return r;
  }

  /// t^m * f.
  LaurentPoly shifted(std::int64_t m) const {
    LaurentPoly r = *this;
    r.min_deg_ += m;
    return r;
  }

  /// f(t^{-1}).
  LaurentPoly reversed() const {
    std::vector<PadicApprox> c(coeffs_.rbegin(), coeffs_.rend());
    return LaurentPoly(p_, prec_, coeffs_.empty() ? 0 : -max_deg(), std::move(c));
  }

  /// f(t^k) for k >= 1.
  LaurentPoly substitute_power(std::int64_t k) const {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "substitution power must be positive");
    if (coeffs_.empty()) return *this;
    std::vector<PadicApprox> c(static_cast<std::size_t>((coeffs_.size() - 1) * k + 1), PadicApprox::zero(p_, prec_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i * static_cast<std::size_t>(k)] = coeffs_[i];
    return LaurentPoly(p_, prec_, min_deg_ * k, std::move(c));
  }

 private:
  static LaurentPoly combine(const LaurentPoly& f, const LaurentPoly& g, bool subtract) {
    if (f.p_ != g.p_) throw Error(ErrorKind::InvalidArgument, "polynomials over different primes");
    const int prec = std::min(f.prec_, g.prec_);
    if (f.coeffs_.empty()) return subtract ? -g : g;
    if (g.coeffs_.empty()) return f;
    const std::int64_t lo = std::min(f.min_deg_, g.min_deg_);
    const std::int64_t hi = std::max(f.max_deg(), g.max_deg());
    std::vector<PadicApprox> c;
    c.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t d = lo; d <= hi; ++d) {
      const PadicApprox x = f.coefficient(d).with_prec(prec);
      const PadicApprox y = g.coefficient(d).with_prec(prec);
      c.push_back(subtract ? x - y : x + y);
    }
    return LaurentPoly(f.p_, prec, lo, std::move(c));
  }

  std::uint32_t p_ = 2;
  int prec_ = 0;
  std::int64_t min_deg_ = 0;
  std::vector<PadicApprox> coeffs_;
};

inline LaurentPoly truncate_below(const LaurentPoly& f, std::int64_t m) {
  std::vector<PadicApprox> c;
  for (std::int64_t d = f.min_deg(); d <= f.max_deg() && d < m; ++d) c.push_back(f.coefficient(d));
  return LaurentPoly(f.p(), f.prec(), f.min_deg(), std::move(c));
}

inline LaurentPoly laurent_reverse(const LaurentPoly& f) { return f.reversed(); }
inline LaurentPoly laurent_reverse(const TruncSeries& f) { return LaurentPoly::from_series(f).reversed(); }

}  // namespace padic_hg
