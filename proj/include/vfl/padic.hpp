// Arithmetic in Q_p at finite precision.  A value is either exactly zero,
// a unit times p^val known to `prec` significant base-p digits, or
// "below precision": congruent to 0 modulo p^bound with nothing known
// beyond.  Every operation propagates the weakest honest claim.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vfl/error.hpp"
#include "vfl/fq.hpp"
#include "vfl/rational.hpp"

namespace vfl {

inline int max_precision_digits(long long p) {
  int k = 0;
  unsigned long long acc = 1;
  while (acc < (1ULL << 62) / static_cast<unsigned long long>(p)) { acc *= static_cast<unsigned long long>(p); ++k; }
  return k;
}

inline int default_precision_digits(long long p) {
  int cap = max_precision_digits(p);
  return cap < 48 ? cap : 48;
}

class PadicNumber {
 public:
  static PadicNumber zero(long long p) { return PadicNumber(p); }

  static PadicNumber from_integer(long long p, long long n, int prec = -1) {
    return from_rational(p, Rat(n), prec);
  }

  static PadicNumber from_rational(long long p, const Rat& r, int prec = -1) {
    if (prec < 0) prec = default_precision_digits(p);
    if (r.is_zero()) return PadicNumber(p);
    long long num = r.num, den = r.den, val = 0;
    while (num % p == 0) { num /= p; ++val; }
    while (den % p == 0) { den /= p; --val; }
    prec = clamp_prec(p, prec);
    unsigned long long md = power(p, prec);
    long long m = mod_mul(mod_norm(num, static_cast<long long>(md)),
                          mod_inv(den, static_cast<long long>(md)), static_cast<long long>(md));
    return PadicNumber(p, val, static_cast<unsigned long long>(m), prec);
  }

  static PadicNumber unit(long long p, long long mant, long long val, int prec = -1) {
    if (prec < 0) prec = default_precision_digits(p);
    prec = clamp_prec(p, prec);
    unsigned long long md = power(p, prec);
    long long m = mod_norm(mant, static_cast<long long>(md));
    if (m == 0) throw Error("unit mantissa reduces to zero");
    if (m % p == 0) throw Error("unit mantissa divisible by p");
    return PadicNumber(p, val, static_cast<unsigned long long>(m), prec);
  }

  static PadicNumber uniformizer(long long p, int prec = -1) { return unit(p, 1, 1, prec); }

  // a value known only to vanish modulo p^bound
  static PadicNumber below_precision(long long p, long long bound) {
    PadicNumber x(p);
    x.st_ = State::Below;
    x.val_ = bound;
    return x;
  }

  long long p() const { return p_; }
  bool is_exact_zero() const { return st_ == State::ExactZero; }
  bool is_below_precision() const { return st_ == State::Below; }
  bool is_regular() const { return st_ == State::Regular; }
  bool provably_nonzero() const { return st_ == State::Regular; }

  // valuation; nullopt encodes +infinity (exact zero)
  std::optional<long long> valuation() const {
    if (st_ == State::ExactZero) return std::nullopt;
    if (st_ == State::Below)
      throw PrecisionExhausted("valuation unknown: zero to precision p^" + std::to_string(val_));
    return val_;
  }
  // Below state: the proven-vanishing bound; Regular: exact valuation
  long long valuation_lower_bound() const {
    if (st_ == State::ExactZero) return kInfinitePrecision;
    return val_;
  }
  long long absolute_precision() const {
    switch (st_) {
      case State::ExactZero: return kInfinitePrecision;
      case State::Below: return val_;
      case State::Regular: return val_ + prec_;
    }
    return 0;
  }
  int relative_precision() const { return st_ == State::Regular ? prec_ : 0; }
  unsigned long long mantissa() const {
    if (st_ != State::Regular) throw Error("no mantissa for a zero value");
    return mant_;
  }

  long long residue() const {
    if (st_ == State::ExactZero) return 0;
    if (st_ == State::Below) {
      if (val_ >= 1) return 0;
      throw PrecisionExhausted("residue unknown at this precision");
    }
    if (val_ < 0) throw NotIntegral("residue of an element with valuation " + std::to_string(val_));
    return val_ > 0 ? 0 : static_cast<long long>(mant_ % static_cast<unsigned long long>(p_));
  }

  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
    a.require_same(b);
    if (a.st_ == State::ExactZero) return b;
    if (b.st_ == State::ExactZero) return a;
    if (a.st_ == State::Below && b.st_ == State::Below)
      return below_precision(a.p_, std::min(a.val_, b.val_));
    if (a.st_ == State::Below) return add_below(b, a.val_);
    if (b.st_ == State::Below) return add_below(a, b.val_);
    const PadicNumber& lo = a.val_ <= b.val_ ? a : b;
    const PadicNumber& hi = a.val_ <= b.val_ ? b : a;
    long long d = hi.val_ - lo.val_;
    if (d >= lo.prec_) return lo;  // the higher term sits below known digits
    int k = static_cast<int>(std::min<long long>(lo.prec_, d + hi.prec_));
    unsigned long long md = power(a.p_, k);
    unsigned long long m = (lo.mant_ % md + mul_mod(hi.mant_ % md, power(a.p_, static_cast<int>(d)) % md, md)) % md;
    return normalized(a.p_, lo.val_, m, k);
  }

  PadicNumber operator-() const {
    if (st_ != State::Regular) return *this;
    unsigned long long md = power(p_, prec_);
    return PadicNumber(p_, val_, md - mant_, prec_);
  }
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
    a.require_same(b);
    if (a.st_ == State::ExactZero || b.st_ == State::ExactZero) return zero(a.p_);
    if (a.st_ == State::Below || b.st_ == State::Below)
      return below_precision(a.p_, a.valuation_lower_bound() + b.valuation_lower_bound());
    int k = std::min(a.prec_, b.prec_);
    unsigned long long md = power(a.p_, k);
    return PadicNumber(a.p_, a.val_ + b.val_, mul_mod(a.mant_ % md, b.mant_ % md, md), k);
  }

  PadicNumber inverse() const {
    if (st_ == State::ExactZero) throw DivisionByZero("inverse of exact zero");
    if (st_ == State::Below) throw PrecisionExhausted("divisor indistinguishable from zero");
    unsigned long long md = power(p_, prec_);
    return PadicNumber(p_, -val_,
                       static_cast<unsigned long long>(mod_inv(static_cast<long long>(mant_), static_cast<long long>(md))),
                       prec_);
  }
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return a * b.inverse(); }

  PadicNumber pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    PadicNumber r = unit(p_, 1, 0, st_ == State::Regular ? prec_ : default_precision_digits(p_));
    PadicNumber b = *this;
    if (e == 0) return r;
    while (e > 0) {
      if (e & 1) r = r * b;
      if (e >>= 1) b = b * b;
    }
    return r;
  }

  // shift by a power of the uniformizer
  PadicNumber shift(long long k) const {
    PadicNumber r = *this;
    if (r.st_ != State::ExactZero) r.val_ += k;
    return r;
  }

  PadicNumber truncated(int prec) const {
    if (st_ != State::Regular || prec >= prec_) return *this;
    if (prec <= 0) return below_precision(p_, val_);
    return normalized(p_, val_, mant_ % power(p_, prec), prec);
  }

  // provably congruent modulo p^k
  friend bool congruent(const PadicNumber& a, const PadicNumber& b, long long k) {
    PadicNumber d = a - b;
    return d.valuation_lower_bound() >= k &&
           (d.st_ != State::Below || d.val_ >= k);
  }

  // base-p digits of the mantissa starting at the valuation
  std::vector<long long> digits(int count) const {
    std::vector<long long> out;
    unsigned long long m = st_ == State::Regular ? mant_ : 0;
    for (int i = 0; i < count; ++i) {
      out.push_back(static_cast<long long>(m % static_cast<unsigned long long>(p_)));
      m /= static_cast<unsigned long long>(p_);
    }
    return out;
  }

  std::string str() const {
    if (st_ == State::ExactZero) return "0";
    if (st_ == State::Below) return "O(" + std::to_string(p_) + "^" + std::to_string(val_) + ")";
    std::string s = std::to_string(static_cast<long long>(mant_));
    if (val_ != 0) s += "*" + std::to_string(p_) + "^" + std::to_string(val_);
    return s + " + O(" + std::to_string(p_) + "^" + std::to_string(val_ + prec_) + ")";
  }

  static constexpr long long kInfinitePrecision = 1LL << 50;

 private:
  enum class State { ExactZero, Regular, Below };

  explicit PadicNumber(long long p) : p_(p), st_(State::ExactZero), val_(0), mant_(0), prec_(0) {}
  PadicNumber(long long p, long long val, unsigned long long mant, int prec)
      : p_(p), st_(State::Regular), val_(val), mant_(mant), prec_(prec) {}

  static int clamp_prec(long long p, int prec) {
    int cap = max_precision_digits(p);
    return prec > cap ? cap : (prec < 1 ? 1 : prec);
  }
  static unsigned long long power(long long p, int k) {
    unsigned long long r = 1;
    for (int i = 0; i < k; ++i) r *= static_cast<unsigned long long>(p);
    return r;
  }
  static unsigned long long mul_mod(unsigned long long a, unsigned long long b, unsigned long long m) {
    return static_cast<unsigned long long>(static_cast<unsigned __int128>(a) * b % m);
  }
  // strip p-factors the addition may have produced
  static PadicNumber normalized(long long p, long long val, unsigned long long mant, int prec) {
    if (mant == 0) return below_precision(p, val + prec);
    while (mant % static_cast<unsigned long long>(p) == 0) {
      mant /= static_cast<unsigned long long>(p);
      ++val;
      --prec;
    }
    if (prec <= 0) return below_precision(p, val);
    return PadicNumber(p, val, mant, prec);
  }
  static PadicNumber add_below(const PadicNumber& x, long long bound) {
    if (x.val_ >= bound) return below_precision(x.p_, bound);
    int k = static_cast<int>(std::min<long long>(x.prec_, bound - x.val_));
    return PadicNumber(x.p_, x.val_, x.mant_ % power(x.p_, k), k);
  }
  void require_same(const PadicNumber& o) const {
    if (p_ != o.p_) throw FieldMismatch("mixed primes " + std::to_string(p_) + " and " + std::to_string(o.p_));
  }

  long long p_;
  State st_;
  long long val_;            // Regular: valuation; Below: proven-vanishing bound
  unsigned long long mant_;  // Regular: unit in [1, p^prec), coprime to p
  int prec_;                 // Regular: significant digit count
};

}  // namespace vfl
