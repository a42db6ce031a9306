#pragma once
// Finite-depth tilting for the totally ramified tower Q_p(p^{1/p^N}).
//
// The valuation ring of F = Q_p(p^{1/p^N}) collapses mod p to the truncated
// polynomial ring F_p[s]/(s^e) with e = p^N, sending the uniformizer to s.
// On that ring the Frobenius x -> x^p is additive, and a depth-D compatible
// chain (x_0, ..., x_D) with x_i^p = x_{i-1} is determined by its top entry.
// This file provides the ring, the chains, the multiplicative sharp lift
// back into F (trusted to (D+1)*e pi-digits), and an exhaustive check that
// reduction modulo the canonical pseudo-uniformizer t matches the bottom
// projection once the depth clears the ramification budget (p^D >= e).

#include <algorithm>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "localfield.hpp"
#include "nt.hpp"

namespace vfl {

class TruncatedRing;
using TruncatedRingPtr = std::shared_ptr<const TruncatedRing>;

class TruncatedRing {
 public:
  // F_p[s]/(s^e) with e = p^N; local, maximal ideal (s), s^e = 0
  static TruncatedRingPtr make(long long p, int N) {
    if (!detail::small_prime(p)) throw PreconditionFailed("characteristic must be prime");
    if (N < 1) throw PreconditionFailed("exponent N must be >= 1");
    long long e = 1;
    for (int i = 0; i < N; ++i) {
      e *= p;
      if (e > 64) throw SizeLimit("nilpotency degree p^N exceeds 64");
    }
    auto R = std::shared_ptr<TruncatedRing>(new TruncatedRing());
    R->p_ = p;
    R->N_ = N;
    R->e_ = e;
    R->name_ = "F" + std::to_string(p) + "[s]/(s^" + std::to_string(e) + ")";
    return R;
  }

  long long p() const { return p_; }
  int N() const { return N_; }
  long long e() const { return e_; }
  const std::string& name() const { return name_; }

  // number of elements p^e; guarded because it is only needed for enumeration
  long long size() const {
    long long n = 1;
    for (long long i = 0; i < e_; ++i) {
      if (n > (1LL << 40) / p_) throw SizeLimit("ring too large to enumerate");
      n *= p_;
    }
    return n;
  }

 private:
  TruncatedRing() = default;
  long long p_ = 0;
  int N_ = 0;
  long long e_ = 0;
  std::string name_;
};

class TruncElt {
 public:
  static TruncElt zero(const TruncatedRingPtr& R) { return TruncElt(R); }
  static TruncElt one(const TruncatedRingPtr& R) { return monomial(R, 1, 0); }
  static TruncElt s(const TruncatedRingPtr& R) { return monomial(R, 1, 1); }

  static TruncElt monomial(const TruncatedRingPtr& R, long long c, long long k) {
    if (k < 0) throw PreconditionFailed("monomial exponent must be >= 0");
    TruncElt x(R);
    if (k < R->e()) x.c_[static_cast<size_t>(k)] = mod_p(R, c);
    return x;
  }

  // digits[k] is the coefficient of s^k; entries beyond s^{e-1} are rejected
  static TruncElt from_digits(const TruncatedRingPtr& R, const std::vector<long long>& digits) {
    if (static_cast<long long>(digits.size()) > R->e())
      throw PreconditionFailed("digit vector longer than the nilpotency degree");
    TruncElt x(R);
    for (size_t k = 0; k < digits.size(); ++k) x.c_[k] = mod_p(R, digits[k]);
    return x;
  }

  // base-p expansion of idx, least significant digit at s^0; order-stable
  static TruncElt from_index(const TruncatedRingPtr& R, long long idx) {
    if (idx < 0) throw PreconditionFailed("element index must be >= 0");
    TruncElt x(R);
    for (long long k = 0; k < R->e() && idx > 0; ++k, idx /= R->p())
      x.c_[static_cast<size_t>(k)] = static_cast<unsigned char>(idx % R->p());
    if (idx > 0) throw PreconditionFailed("element index out of range");
    return x;
  }

  const TruncatedRingPtr& ring() const { return R_; }
  long long coeff(long long k) const {
    return k >= 0 && k < R_->e() ? c_[static_cast<size_t>(k)] : 0;
  }

  long long index() const {
    long long idx = 0;
    for (long long k = R_->e() - 1; k >= 0; --k) idx = idx * R_->p() + c_[static_cast<size_t>(k)];
    return idx;
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](unsigned char d) { return d == 0; });
  }

  // s-adic order; e when zero
  long long s_order() const {
    for (long long k = 0; k < R_->e(); ++k)
      if (c_[static_cast<size_t>(k)] != 0) return k;
    return R_->e();
  }

  TruncElt operator+(const TruncElt& o) const {
    require_same(o);
    TruncElt r(R_);
    for (size_t k = 0; k < c_.size(); ++k)
      r.c_[k] = static_cast<unsigned char>((c_[k] + o.c_[k]) % R_->p());
    return r;
  }

  TruncElt operator-() const {
    TruncElt r(R_);
    for (size_t k = 0; k < c_.size(); ++k)
      r.c_[k] = static_cast<unsigned char>((R_->p() - c_[k]) % R_->p());
    return r;
  }

  TruncElt operator-(const TruncElt& o) const { return *this + (-o); }

  TruncElt operator*(const TruncElt& o) const {
    require_same(o);
    TruncElt r(R_);
    long long e = R_->e();
    for (long long i = 0; i < e; ++i) {
      if (c_[static_cast<size_t>(i)] == 0) continue;
      for (long long j = 0; i + j < e; ++j) {
        long long acc = r.c_[static_cast<size_t>(i + j)] +
                        static_cast<long long>(c_[static_cast<size_t>(i)]) * o.c_[static_cast<size_t>(j)];
        r.c_[static_cast<size_t>(i + j)] = static_cast<unsigned char>(acc % R_->p());
      }
    }
    return r;
  }

  TruncElt pow(long long m) const {
    if (m < 0) throw PreconditionFailed("negative power in a non-invertible ring");
    TruncElt acc = one(R_), base = *this;
    for (; m > 0; m /= 2) {
      if (m % 2) acc = acc * base;
      base = base * base;
    }
    return acc;
  }

  TruncElt frobenius() const { return pow(R_->p()); }

  bool operator==(const TruncElt& o) const { return R_ == o.R_ && c_ == o.c_; }
  bool operator!=(const TruncElt& o) const { return !(*this == o); }

  std::string str() const {
    std::string out;
    for (long long k = 0; k < R_->e(); ++k) {
      long long d = c_[static_cast<size_t>(k)];
      if (d == 0) continue;
      if (!out.empty()) out += " + ";
      if (k == 0) out += std::to_string(d);
      else {
        if (d != 1) out += std::to_string(d) + "*";
        out += k == 1 ? "s" : "s^" + std::to_string(k);
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  explicit TruncElt(const TruncatedRingPtr& R)
      : R_(R), c_(static_cast<size_t>(R->e()), 0) {}

  static unsigned char mod_p(const TruncatedRingPtr& R, long long c) {
    long long p = R->p();
    return static_cast<unsigned char>(((c % p) + p) % p);
  }

  void require_same(const TruncElt& o) const {
    if (R_ != o.R_) throw FieldMismatch("truncated-ring elements from different rings");
  }

  TruncatedRingPtr R_;
  std::vector<unsigned char> c_;
};

// Frobenius-compatible chain (x_0, ..., x_D): x_i^p = x_{i-1}. Deeper index
// means more p-th roots have been peeled; the top entry determines the rest.
class TiltElement {
 public:
  static TiltElement from_top(const TruncElt& top, int depth) {
    if (depth < 0) throw PreconditionFailed("chain depth must be >= 0");
    std::vector<TruncElt> seq(static_cast<size_t>(depth) + 1, top);
    for (int i = depth - 1; i >= 0; --i)
      seq[static_cast<size_t>(i)] = seq[static_cast<size_t>(i) + 1].frobenius();
    return TiltElement(top.ring(), std::move(seq));
  }

  static TiltElement one(const TruncatedRingPtr& R, int depth) {
    return from_top(TruncElt::one(R), depth);
  }
  static TiltElement zero(const TruncatedRingPtr& R, int depth) {
    return from_top(TruncElt::zero(R), depth);
  }

  const TruncatedRingPtr& ring() const { return R_; }
  int depth() const { return static_cast<int>(seq_.size()) - 1; }
  const TruncElt& at(int i) const { return seq_.at(static_cast<size_t>(i)); }
  const TruncElt& bottom() const { return seq_.front(); }
  const TruncElt& top() const { return seq_.back(); }

  bool frobenius_compatible() const {
    for (size_t i = 1; i < seq_.size(); ++i)
      if (seq_[i].frobenius() != seq_[i - 1]) return false;
    return true;
  }

  TiltElement operator*(const TiltElement& o) const {
    require_same(o);
    std::vector<TruncElt> seq;
    seq.reserve(seq_.size());
    for (size_t i = 0; i < seq_.size(); ++i) seq.push_back(seq_[i] * o.seq_[i]);
    return checked(TiltElement(R_, std::move(seq)));
  }

  // component i is (x_{i+k} + y_{i+k})^{p^k} with k the full headroom D - i;
  // the Frobenius on the ring is additive, so no depth is actually lost
  TiltElement operator+(const TiltElement& o) const {
    require_same(o);
    int D = depth();
    std::vector<TruncElt> seq;
    seq.reserve(seq_.size());
    for (int i = 0; i <= D; ++i) {
      TruncElt z = seq_[static_cast<size_t>(D)] + o.seq_[static_cast<size_t>(D)];
      for (int k = D - i; k > 0; --k) z = z.frobenius();
      seq.push_back(z);
    }
    return checked(TiltElement(R_, std::move(seq)));
  }

  TiltElement operator-() const {
    std::vector<TruncElt> seq;
    seq.reserve(seq_.size());
    for (const TruncElt& x : seq_) seq.push_back(-x);
    return checked(TiltElement(R_, std::move(seq)));
  }

  TiltElement operator-(const TiltElement& o) const { return *this + (-o); }

  bool operator==(const TiltElement& o) const { return R_ == o.R_ && seq_ == o.seq_; }
  bool operator!=(const TiltElement& o) const { return !(*this == o); }

  std::string str() const {
    std::string out = "(";
    for (size_t i = 0; i < seq_.size(); ++i) {
      if (i) out += ", ";
      out += seq_[i].str();
    }
    return out + ")";
  }

 private:
  TiltElement(const TruncatedRingPtr& R, std::vector<TruncElt> seq)
      : R_(R), seq_(std::move(seq)) {}

  void require_same(const TiltElement& o) const {
    if (R_ != o.R_) throw FieldMismatch("tilt elements over different rings");
    if (seq_.size() != o.seq_.size()) throw PreconditionFailed("tilt elements of different depths");
  }

  static TiltElement checked(TiltElement x) {
    if (!x.frobenius_compatible()) throw Error("frobenius compatibility lost");
    return x;
  }

  TruncatedRingPtr R_;
  std::vector<TruncElt> seq_;
};

// the pseudo-uniformizer chain topped by s itself: t_i = s^{p^{D-i}},
// collapsing to 0 once the exponent clears the nilpotency degree
inline TiltElement canonical_t(const TruncatedRingPtr& R, int depth) {
  return TiltElement::from_top(TruncElt::s(R), depth);
}

// all y with y^p = a, ascending by index; empty when a has a digit at an
// exponent not divisible by p. Digits at positions j with jp >= e are free.
inline std::vector<TruncElt> frobenius_roots(const TruncElt& a) {
  const TruncatedRingPtr& R = a.ring();
  long long p = R->p(), e = R->e();
  for (long long i = 0; i < e; ++i)
    if (a.coeff(i) != 0 && i % p != 0) return {};

  long long pinned = (e + p - 1) / p;  // positions j with jp < e
  long long free_count = e - pinned;
  if (free_count > 20) throw SizeLimit("too many free digits to enumerate roots");
  long long total = 1;
  for (long long i = 0; i < free_count; ++i) total *= p;

  std::vector<TruncElt> roots;
  roots.reserve(static_cast<size_t>(total));
  for (long long mask = 0; mask < total; ++mask) {
    std::vector<long long> digits(static_cast<size_t>(e), 0);
    for (long long j = 0; j < pinned; ++j) digits[static_cast<size_t>(j)] = a.coeff(j * p);
    long long m = mask;
    for (long long j = pinned; j < e; ++j, m /= p) digits[static_cast<size_t>(j)] = m % p;
    roots.push_back(TruncElt::from_digits(R, digits));
  }
  return roots;
}

// chain above a prescribed bottom entry, taking the minimal (all free digits
// zero) p-th root at every level
inline TiltElement tilt_chain(const TruncatedRingPtr& R, const TruncElt& x0, int depth) {
  if (x0.ring() != R) throw FieldMismatch("bottom entry from a different ring");
  if (depth < 0) throw PreconditionFailed("chain depth must be >= 0");
  long long p = R->p(), e = R->e();
  std::vector<TruncElt> seq{x0};
  for (int i = 1; i <= depth; ++i) {
    const TruncElt& a = seq.back();
    for (long long k = 0; k < e; ++k)
      if (a.coeff(k) != 0 && k % p != 0)
        throw NoCompatibleRoot("no p-th root at level " + std::to_string(i) + ": digit at s^" +
                               std::to_string(k) + " of " + a.str() + " blocks the chain");
    std::vector<long long> digits(static_cast<size_t>(e), 0);
    for (long long j = 0; j * p < e; ++j) digits[static_cast<size_t>(j)] = a.coeff(j * p);
    seq.push_back(TruncElt::from_digits(R, digits));
  }
  TiltElement out = TiltElement::from_top(seq.back(), depth);
  for (int i = 0; i <= depth; ++i)
    if (out.at(i) != seq[static_cast<size_t>(i)]) throw Error("chain reconstruction mismatch");
  return out;
}

// every depth-D chain, one per top entry, ascending by top index
inline std::vector<TiltElement> tilt_enumerate(const TruncatedRingPtr& R, int depth,
                                               long long cap = 1LL << 20) {
  long long n = R->size();
  if (n > cap) throw SizeLimit("tilt enumeration beyond cap " + std::to_string(cap));
  std::vector<TiltElement> out;
  out.reserve(static_cast<size_t>(n));
  for (long long idx = 0; idx < n; ++idx)
    out.push_back(TiltElement::from_top(TruncElt::from_index(R, idx), depth));
  return out;
}

// F = Q_p(p^{1/p^N}) together with both directions of O_F/(p) = F_p[s]/(s^e):
// lift substitutes Teichmuller digits for powers of s, reduce peels them off
struct TruncatedQuotient {
  TruncatedRingPtr ring;
  LocalFieldPtr field;

  LFElt lift(const TruncElt& x) const {
    if (x.ring() != ring) throw FieldMismatch("lift of an element from a different ring");
    LFElt acc = LFElt::zero(field);
    for (long long k = 0; k < ring->e(); ++k) {
      long long d = x.coeff(k);
      if (d == 0) continue;
      acc = acc + teichmuller_lift(field, field->residue_field()->from_int(d)).shift_pi(k);
    }
    return acc;
  }

  TruncElt reduce(const LFElt& x) const {
    if (x.field() != field) throw FieldMismatch("reduction of an element from a different field");
    if (x.valuation_lower_bound_pi() < 0) throw NotIntegral("reduction needs an integral element");
    LFElt y = x;
    std::vector<long long> digits(static_cast<size_t>(ring->e()), 0);
    for (long long k = 0; k < ring->e(); ++k) {
      if (y.valuation_lower_bound_pi() >= ring->e()) break;
      Fq r = y.shift_pi(-k).residue();
      if (r.is_zero()) continue;
      digits[static_cast<size_t>(k)] = r.as_int();
      y = y - teichmuller_lift(field, r).shift_pi(k);
    }
    return TruncElt::from_digits(ring, digits);
  }
};

inline TruncatedQuotient truncated_quotient_ring(int N, long long p, int prec_digits = -1) {
  TruncatedRingPtr R = TruncatedRing::make(p, N);
  LocalFieldPtr Qp = LocalField::ground(p, prec_digits);
  std::vector<LFElt> low(static_cast<size_t>(R->e()), LFElt::zero(Qp));
  low[0] = LFElt::from_int(Qp, -p);
  LocalFieldPtr F = LocalField::eisenstein(
      Qp, std::move(low), "[" + std::to_string(p) + "^(1/" + std::to_string(R->e()) + ")]");
  return TruncatedQuotient{R, F};
}

struct RingIsoReport {
  long long elements = 0;
  long long pairs_checked = 0;
  bool round_trip_ok = false;
  bool additive_ok = false;
  bool multiplicative_ok = false;
  bool uniformizer_to_s = false;
  bool p_to_zero = false;

  bool all() const {
    return round_trip_ok && additive_ok && multiplicative_ok && uniformizer_to_s && p_to_zero;
  }
};

// checks that lift/reduce implement a ring isomorphism: full addition and
// multiplication tables when the ring is small, a sampled table otherwise
inline RingIsoReport verify_truncated_quotient(const TruncatedQuotient& Q,
                                               long long pair_cap = 1024,
                                               unsigned long long seed = 2026) {
  const TruncatedRingPtr& R = Q.ring;
  long long n = R->size(), e = R->e();
  RingIsoReport rep;
  rep.elements = n;

  rep.round_trip_ok = true;
  for (long long i = 0; i < n; ++i) {
    TruncElt x = TruncElt::from_index(R, i);
    if (Q.reduce(Q.lift(x)) != x) rep.round_trip_ok = false;
  }

  std::vector<std::pair<long long, long long>> pairs;
  if (n * n <= pair_cap) {
    for (long long i = 0; i < n; ++i)
      for (long long j = 0; j < n; ++j) pairs.emplace_back(i, j);
  } else {
    std::mt19937_64 rng(seed);
    for (long long k = 0; k < pair_cap; ++k)
      pairs.emplace_back(static_cast<long long>(rng() % static_cast<unsigned long long>(n)),
                         static_cast<long long>(rng() % static_cast<unsigned long long>(n)));
  }

  rep.additive_ok = rep.multiplicative_ok = true;
  for (const auto& [i, j] : pairs) {
    TruncElt x = TruncElt::from_index(R, i), y = TruncElt::from_index(R, j);
    LFElt lx = Q.lift(x), ly = Q.lift(y);
    if (Q.reduce(lx + ly) != x + y) rep.additive_ok = false;
    if (Q.reduce(lx * ly) != x * y) rep.multiplicative_ok = false;
    ++rep.pairs_checked;
  }

  rep.uniformizer_to_s = Q.reduce(LFElt::uniformizer(Q.field)) == TruncElt::s(R);
  rep.p_to_zero = Q.reduce(LFElt::from_int(Q.field, R->p())).is_zero() &&
                  Q.reduce(LFElt::uniformizer(Q.field).pow(e)).is_zero();
  return rep;
}

// pi-digits to which a depth-D sharp value is trustworthy: consecutive
// approximants (lift x_n)^{p^n} agree mod p^{n+1}, so depth D pins (D+1)*e
inline long long sharp_precision_cap(const TruncatedQuotient& Q, int depth) {
  return (static_cast<long long>(depth) + 1) * Q.ring->e();
}

// multiplicative lift: (Teichmuller lift of the top entry)^{p^D}, the last
// and sharpest member of the approximant chain
inline LFElt sharp_map(const TruncatedQuotient& Q, const TiltElement& x, long long target_pi = -1) {
  if (x.ring() != Q.ring) throw FieldMismatch("tilt element over a different ring");
  long long cap = sharp_precision_cap(Q, x.depth());
  if (target_pi < 0) target_pi = cap;
  if (target_pi > cap)
    throw DepthExhausted("sharp value trusted to pi^" + std::to_string(cap) +
                         " at depth " + std::to_string(x.depth()) + "; requested pi^" +
                         std::to_string(target_pi));
  long long pD = 1;
  for (int i = 0; i < x.depth(); ++i) pD *= Q.ring->p();
  return Q.lift(x.top()).pow(pD);
}

struct ModTIsoReport {
  long long p = 0;
  long long e = 0;
  int depth = 0;
  long long tilt_elements = 0;
  long long t_classes = 0;         // cosets of the ideal generated by t
  long long reachable = 0;         // image of the D-fold Frobenius on the ring
  bool injective = false;
  bool surjective_onto_reachable = false;
  bool zero_to_zero = false;
  bool sharp_matches_bottom = false;

  bool bijective_at_truncation() const {
    return injective && surjective_onto_reachable && zero_to_zero && sharp_matches_bottom;
  }
};

// exhaustive check that x mod (t) |-> bottom entry = (sharp x reduced mod p)
// is well defined and bijective onto the depth-reachable part of the ring;
// depths below the ramification budget leave t with a nonzero bottom and are
// rejected
inline ModTIsoReport tilt_mod_t_iso_check(const TruncatedQuotient& Q, int depth,
                                          long long cap = 4096) {
  const TruncatedRingPtr& R = Q.ring;
  if (depth < 1) throw PreconditionFailed("mod-t check needs depth >= 1");
  TiltElement t = canonical_t(R, depth);
  if (!t.bottom().is_zero())
    throw TooShallowDepth("canonical t has nonzero bottom " + t.bottom().str() +
                          " at depth " + std::to_string(depth) + "; need p^depth >= " +
                          std::to_string(R->e()));
  long long n = R->size();
  if (n > cap) throw SizeLimit("mod-t check beyond cap " + std::to_string(cap));

  ModTIsoReport rep;
  rep.p = R->p();
  rep.e = R->e();
  rep.depth = depth;
  rep.tilt_elements = n;

  // ideal (t): every multiple t*y has top s*(top of y); cosets are walked
  // exhaustively and named by their minimal top index
  std::set<long long> ideal_tops;
  for (long long idx = 0; idx < n; ++idx)
    ideal_tops.insert((TruncElt::s(R) * TruncElt::from_index(R, idx)).index());
  std::vector<TiltElement> ideal_chains;
  for (long long w : ideal_tops)
    ideal_chains.push_back(TiltElement::from_top(TruncElt::from_index(R, w), depth));

  std::set<long long> coset_reps;
  rep.injective = true;
  std::set<long long> images;
  for (long long idx = 0; idx < n; ++idx) {
    TiltElement x = TiltElement::from_top(TruncElt::from_index(R, idx), depth);
    long long canon = idx;
    for (const TiltElement& w : ideal_chains) {
      TiltElement shifted = x + w;
      canon = std::min(canon, shifted.top().index());
      if (shifted.bottom() != x.bottom()) rep.injective = false;  // bottom constant on the coset
    }
    if (coset_reps.insert(canon).second) {
      // first visit of this coset; a repeated image would break injectivity
      if (!images.insert(x.bottom().index()).second) rep.injective = false;
    }
  }
  rep.t_classes = static_cast<long long>(coset_reps.size());

  std::set<long long> frob_image;
  long long pD = 1;
  for (int i = 0; i < depth; ++i) pD *= R->p();
  for (long long idx = 0; idx < n; ++idx)
    frob_image.insert(TruncElt::from_index(R, idx).pow(pD).index());
  rep.reachable = static_cast<long long>(frob_image.size());
  rep.surjective_onto_reachable = images == frob_image;

  rep.zero_to_zero = TiltElement::zero(R, depth).bottom().is_zero();

  rep.sharp_matches_bottom = true;
  for (long long idx = 0; idx < n; ++idx) {
    TiltElement x = TiltElement::from_top(TruncElt::from_index(R, idx), depth);
    if (Q.reduce(sharp_map(Q, x)) != x.bottom()) rep.sharp_matches_bottom = false;
  }
  return rep;
}

}  // namespace vfl
