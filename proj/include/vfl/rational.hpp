#pragma once
// Exact rationals on 64-bit numerator/denominator. The group windows in
// this library are tiny (magnitudes of a few hundred, denominators up to
// p^4), so 64 bits with 128-bit intermediates is plenty; overflow here
// would be a programming error, not an input condition.

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "error.hpp"

namespace vfl {

struct Rat {
  long long num = 0;
  long long den = 1;  // invariant: den > 0 and gcd(|num|, den) = 1

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  // true iff den == p^k for some k >= 0
  bool den_is_power_of(long long p) const {
    long long d = den;
    while (d % p == 0) d /= p;
    return d == 1;
  }

  long long floor() const {
    long long q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rat operator-(const Rat& a) { return Rat(-a.num, a.den); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(a.num * b.num, a.den * b.den);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw DivisionByZero("rational division by zero");
    return Rat(a.num * b.den, a.den * b.num);
  }

  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    __int128 l = static_cast<__int128>(a.num) * b.den;
    __int128 r = static_cast<__int128>(b.num) * a.den;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
};

}  // namespace vfl
