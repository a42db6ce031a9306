// Finite fields F_{p^m} with a deterministic modulus convention: the
// modulus is the lexicographically smallest monic irreducible, ordering
// monic polynomials by their coefficient tuple (a_{m-1},...,a_0) read as
// a base-p number.  Residue maps elsewhere rely on this being stable.

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vfl/error.hpp"

namespace vfl {

inline long long mod_norm(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline long long mod_mul(long long a, long long b, long long m) {
  return static_cast<long long>(static_cast<__int128>(a) * b % m);
}

inline long long mod_pow(long long b, long long e, long long m) {
  if (m == 1) return 0;
  long long r = 1;
  b = mod_norm(b, m);
  while (e > 0) {
    if (e & 1) r = mod_mul(r, b, m);
    b = mod_mul(b, b, m);
    e >>= 1;
  }
  return r;
}

inline long long mod_inv(long long a, long long m) {
  long long t = 0, nt = 1, r = m, nr = mod_norm(a, m);
  while (nr != 0) {
    long long q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  if (r != 1) throw DivisionByZero("no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
  return mod_norm(t, m);
}

// dense polynomial over Z/p, little-endian coefficients, always trimmed
class FpPoly {
 public:
  FpPoly(long long p, std::vector<long long> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& x : c_) x = mod_norm(x, p_);
    trim();
  }
  static FpPoly zero(long long p) { return FpPoly(p, {}); }
  static FpPoly constant(long long p, long long a) { return FpPoly(p, {a}); }
  static FpPoly x(long long p) { return FpPoly(p, {0, 1}); }

  long long p() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  long long coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : 0;
  }
  const std::vector<long long>& coeffs() const { return c_; }

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    std::vector<long long> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = mod_norm(a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i)), a.p_);
    return FpPoly(a.p_, std::move(r));
  }
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    std::vector<long long> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = mod_norm(a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i)), a.p_);
    return FpPoly(a.p_, std::move(r));
  }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return zero(a.p_);
    std::vector<long long> r(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j)
        r[i + j] = mod_norm(r[i + j] + a.c_[i] * b.c_[j], a.p_);
    return FpPoly(a.p_, std::move(r));
  }

  // remainder of *this by a monic divisor
  FpPoly rem(const FpPoly& m) const {
    std::vector<long long> r = c_;
    int dm = m.degree();
    for (int i = static_cast<int>(r.size()) - 1; i >= dm; --i) {
      long long lead = r[static_cast<size_t>(i)];
      if (lead == 0) continue;
      for (int j = 0; j <= dm; ++j)
        r[static_cast<size_t>(i - dm + j)] = mod_norm(r[static_cast<size_t>(i - dm + j)] - lead * m.coeff(j), p_);
    }
    r.resize(static_cast<size_t>(std::max(dm, 0)));
    return FpPoly(p_, std::move(r));
  }

  long long eval(long long v) const {
    long long acc = 0;
    for (int i = degree(); i >= 0; --i) acc = mod_norm(acc * v + coeff(i), p_);
    return acc;
  }

  bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (coeff(i) == 0) continue;
      if (!s.empty()) s += " + ";
      if (i == 0 || coeff(i) != 1) s += std::to_string(coeff(i));
      if (i > 0) {
        if (coeff(i) != 1) s += "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  long long p_;
  std::vector<long long> c_;
};

// trial division by every monic polynomial of degree <= deg(f)/2
inline bool is_irreducible(const FpPoly& f) {
  int d = f.degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  long long p = f.p();
  for (int dd = 1; dd <= d / 2; ++dd) {
    // enumerate monic candidates of degree dd by counter
    long long total = 1;
    for (int i = 0; i < dd; ++i) total *= p;
    for (long long idx = 0; idx < total; ++idx) {
      std::vector<long long> c(static_cast<size_t>(dd) + 1, 0);
      long long t = idx;
      for (int i = 0; i < dd; ++i) { c[static_cast<size_t>(i)] = t % p; t /= p; }
      c[static_cast<size_t>(dd)] = 1;
      if (f.rem(FpPoly(p, std::move(c))).is_zero()) return false;
    }
  }
  return true;
}

inline FpPoly lex_smallest_irreducible(long long p, int m) {
  if (m == 1) return FpPoly::x(p);
  long long total = 1;
  for (int i = 0; i < m; ++i) total *= p;
  // tuple (a_{m-1},...,a_0) as a base-p number, ascending
  for (long long idx = 0; idx < total; ++idx) {
    std::vector<long long> c(static_cast<size_t>(m) + 1, 0);
    long long t = idx;
    for (int i = 0; i < m; ++i) { c[static_cast<size_t>(i)] = t % p; t /= p; }
    c[static_cast<size_t>(m)] = 1;
    FpPoly f(p, std::move(c));
    if (is_irreducible(f)) return f;
  }
  throw Error("no irreducible polynomial found");  // unreachable for prime p
}

class FqField;
using FqFieldPtr = std::shared_ptr<const FqField>;

// element of F_{p^m}, stored as a residue polynomial of degree < m
class Fq {
 public:
  Fq() = default;
  Fq(FqFieldPtr fld, FpPoly rep);

  const FqFieldPtr& field() const { return fld_; }
  const FpPoly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  long long as_int() const {
    if (rep_.degree() > 0) throw Error("residue element is not a prime-field scalar: " + rep_.str());
    return rep_.coeff(0);
  }
  // rep coefficients read as a base-p number; gives a stable ordering
  long long index() const;

  Fq operator+(const Fq& o) const;
  Fq operator-(const Fq& o) const;
  Fq operator*(const Fq& o) const;
  Fq operator-() const;
  Fq inverse() const;
  Fq pow(long long e) const;
  Fq frobenius() const;  // x -> x^p
  bool operator==(const Fq& o) const { return rep_ == o.rep_; }
  std::string str() const { return rep_.str(); }

 private:
  FqFieldPtr fld_;
  FpPoly rep_ = FpPoly::zero(2);
};

class FqField : public std::enable_shared_from_this<FqField> {
 public:
  static FqFieldPtr make(long long p, int m) {
    return std::shared_ptr<const FqField>(new FqField(p, m, lex_smallest_irreducible(p, m)));
  }

  long long p() const { return p_; }
  int degree() const { return m_; }
  long long order() const { return q_; }
  const FpPoly& modulus() const { return mod_; }

  Fq zero() const { return element(FpPoly::zero(p_)); }
  Fq one() const { return element(FpPoly::constant(p_, 1)); }
  Fq from_int(long long a) const { return element(FpPoly::constant(p_, mod_norm(a, p_))); }
  Fq gen() const { return element(FpPoly::x(p_)); }  // class of x; the prime field itself has gen 0
  Fq element(FpPoly rep) const {
    return Fq(shared_from_this(), rep.rem(mod_));
  }
  Fq from_index(long long idx) const {
    std::vector<long long> c(static_cast<size_t>(m_), 0);
    for (int i = 0; i < m_; ++i) { c[static_cast<size_t>(i)] = idx % p_; idx /= p_; }
    return element(FpPoly(p_, std::move(c)));
  }
  std::vector<Fq> all_elements() const {
    std::vector<Fq> out;
    out.reserve(static_cast<size_t>(q_));
    for (long long i = 0; i < q_; ++i) out.push_back(from_index(i));
    return out;
  }
  // trace to the prime field
  Fq trace(const Fq& a) const {
    Fq acc = a, pw = a;
    for (int i = 1; i < m_; ++i) { pw = pw.frobenius(); acc = acc + pw; }
    return acc;
  }

 private:
  FqField(long long p, int m, FpPoly mod) : p_(p), m_(m), mod_(std::move(mod)) {
    q_ = 1;
    for (int i = 0; i < m_; ++i) q_ *= p_;
  }
  long long p_;
  int m_;
  long long q_;
  FpPoly mod_;
};

inline Fq::Fq(FqFieldPtr fld, FpPoly rep) : fld_(std::move(fld)), rep_(std::move(rep)) {}

inline long long Fq::index() const {
  long long idx = 0;
  for (int i = fld_->degree() - 1; i >= 0; --i) idx = idx * fld_->p() + rep_.coeff(i);
  return idx;
}

inline Fq Fq::operator+(const Fq& o) const { return fld_->element(rep_ + o.rep_); }
inline Fq Fq::operator-(const Fq& o) const { return fld_->element(rep_ - o.rep_); }
inline Fq Fq::operator*(const Fq& o) const { return fld_->element(rep_ * o.rep_); }
inline Fq Fq::operator-() const { return fld_->element(FpPoly::zero(fld_->p()) - rep_); }

inline Fq Fq::pow(long long e) const {
  if (is_zero()) {
    if (e < 0) throw DivisionByZero("0 has no negative power");
    return e == 0 ? fld_->one() : *this;
  }
  long long ord = fld_->order() - 1;
  e %= ord;
  if (e < 0) e += ord;
  Fq r = fld_->one(), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

inline Fq Fq::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of 0 in F_q");
  return pow(fld_->order() - 2);
}

inline Fq Fq::frobenius() const { return pow(fld_->p()); }

// smallest-index generator of the cyclic group of units
inline Fq multiplicative_generator(const FqFieldPtr& k) {
  long long n = k->order() - 1;
  for (long long idx = 1; idx <= n; ++idx) {
    Fq g = k->from_index(idx);
    if (g.is_zero()) continue;
    long long ord = 1;
    Fq t = g;
    while (!(t == k->one())) { t = t * g; ++ord; }
    if (ord == n) return g;
  }
  throw Error("unit group has no generator");  // unreachable
}

}  // namespace vfl
