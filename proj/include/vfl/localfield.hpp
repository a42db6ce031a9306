// Finite extensions of Q_p as explicit towers: a ground layer carrying
// PadicNumber scalars, extended by Eisenstein or unramified layers in
// power-basis representation.  Valuations are normalized to pi-units,
// v(pi) = 1, so v(p) = e_abs throughout.

#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vfl/error.hpp"
#include "vfl/fq.hpp"
#include "vfl/nt.hpp"
#include "vfl/padic.hpp"
#include "vfl/rational.hpp"

namespace vfl {

class LocalField;
class LFElt;
using LocalFieldPtr = std::shared_ptr<const LocalField>;

class LFElt {
 public:
  LFElt() = default;

  static LFElt from_leaf(LocalFieldPtr F, PadicNumber x);
  static LFElt from_coeffs(LocalFieldPtr F, std::vector<LFElt> coeffs);
  static LFElt zero(const LocalFieldPtr& F);
  static LFElt one(const LocalFieldPtr& F);
  static LFElt from_int(const LocalFieldPtr& F, long long n);
  static LFElt from_rational(const LocalFieldPtr& F, const Rat& r);
  static LFElt uniformizer(const LocalFieldPtr& F);
  static LFElt embed(const LocalFieldPtr& F, const LFElt& base_elt);  // base element into F

  const LocalFieldPtr& field() const { return F_; }
  bool valid() const { return F_ != nullptr; }
  const PadicNumber& leaf() const { return leaf_; }
  const std::vector<LFElt>& coeffs() const { return c_; }

  LFElt operator+(const LFElt& o) const;
  LFElt operator-(const LFElt& o) const;
  LFElt operator-() const;
  LFElt operator*(const LFElt& o) const;
  LFElt inverse() const;
  LFElt operator/(const LFElt& o) const { return *this * o.inverse(); }
  LFElt pow(long long e) const;
  LFElt shift_pi(long long k) const;  // multiply by pi^k

  // valuation in pi-units; nullopt is +infinity (exact zero)
  std::optional<long long> valuation_pi() const;
  // proven vanishing order (exact when valuation_pi succeeds)
  long long valuation_lower_bound_pi() const;
  // absolute precision in pi-digits
  long long pi_precision() const;

  Fq residue() const;
  std::string str() const;

  friend bool congruent_pi(const LFElt& a, const LFElt& b, long long k) {
    return (a - b).valuation_lower_bound_pi() >= k;
  }

 private:
  LocalFieldPtr F_;
  PadicNumber leaf_ = PadicNumber::zero(2);
  std::vector<LFElt> c_;
};

class LocalField : public std::enable_shared_from_this<LocalField> {
 public:
  enum class Layer { Ground, Eisenstein, Unramified };

  static LocalFieldPtr ground(long long p, int prec_digits = -1) {
    auto F = std::shared_ptr<LocalField>(new LocalField());
    F->layer_ = Layer::Ground;
    F->p_ = p;
    F->deg_ = 1;
    F->e_abs_ = 1;
    F->f_abs_ = 1;
    F->leaf_prec_ = prec_digits > 0 ? prec_digits : default_precision_digits(p);
    F->residue_field_ = FqField::make(p, 1);
    F->name_ = "Qp(" + std::to_string(p) + ")";
    F->has_zeta_p_ = (p == 2);
    return F;
  }

  // monic X^d + low[d-1] X^{d-1} + ... + low[0], Eisenstein over `base`
  static LocalFieldPtr eisenstein(const LocalFieldPtr& base, std::vector<LFElt> low,
                                  const std::string& suffix, bool zeta_layer = false);

  // unramified layer: lifts the deterministic degree-f residue modulus
  static LocalFieldPtr unramified(const LocalFieldPtr& base, int f, const std::string& suffix);

  // Q_p(zeta_p) with pi = zeta_p - 1: minimal polynomial sum_{k=1..p} C(p,k) X^{k-1}
  static LocalFieldPtr with_zeta_p(const LocalFieldPtr& base) {
    if (base->layer_ != Layer::Ground)
      throw PreconditionFailed("zeta_p layer must sit directly on the ground field");
    long long p = base->p_;
    if (p == 2) throw PreconditionFailed("zeta_2 = -1 is already in the ground field");
    std::vector<LFElt> low;
    for (long long k = 1; k <= p - 1; ++k) low.push_back(LFElt::from_int(base, binomial(p, k)));
    return eisenstein(base, std::move(low), "[zeta_p]", true);
  }

  Layer layer() const { return layer_; }
  bool is_ground() const { return layer_ == Layer::Ground; }
  long long p() const { return p_; }
  const LocalFieldPtr& base() const { return base_; }
  const std::vector<LFElt>& defining() const { return defining_; }
  int degree() const { return deg_; }
  long long e_abs() const { return e_abs_; }
  long long f_abs() const { return f_abs_; }
  long long abs_degree() const { return e_abs_ * f_abs_; }
  int leaf_precision() const { return leaf_prec_; }
  long long default_pi_precision() const { return e_abs_ * static_cast<long long>(leaf_prec_); }
  const FqFieldPtr& residue_field() const { return residue_field_; }
  long long residue_order() const { return residue_field_->order(); }
  const std::string& name() const { return name_; }

  bool has_zeta_p() const { return has_zeta_p_; }
  // ramification index over Q_p(zeta_p); only meaningful when has_zeta_p()
  long long e_over_zeta() const {
    if (!has_zeta_p_) throw PreconditionFailed("field has no zeta_p layer");
    return p_ == 2 ? e_abs_ : e_abs_ / (p_ - 1);
  }
  // true when this field's uniformizer is zeta_p - 1 (Q_2 included: zeta_2 - 1 = -2)
  bool pi_is_zeta_minus_one() const {
    return zeta_pi_ || (layer_ == Layer::Ground && p_ == 2);
  }

  bool same_as(const LocalField& o) const { return this == &o; }

 private:
  LocalField() = default;
  friend class LFElt;

  Layer layer_ = Layer::Ground;
  long long p_ = 2;
  LocalFieldPtr base_;
  std::vector<LFElt> defining_;  // non-leading coefficients c_0..c_{d-1}
  int deg_ = 1;
  long long e_abs_ = 1, f_abs_ = 1;
  int leaf_prec_ = 1;
  FqFieldPtr residue_field_;
  std::string name_;
  bool has_zeta_p_ = false;
  bool zeta_pi_ = false;
};

inline LFElt LFElt::from_leaf(LocalFieldPtr F, PadicNumber x) {
  if (!F->is_ground()) throw FieldMismatch("leaf element in a non-ground field");
  LFElt e;
  e.F_ = std::move(F);
  e.leaf_ = std::move(x);
  return e;
}

inline LFElt LFElt::from_coeffs(LocalFieldPtr F, std::vector<LFElt> coeffs) {
  if (F->is_ground()) throw FieldMismatch("coefficient vector in the ground field");
  if (static_cast<int>(coeffs.size()) != F->degree())
    throw FieldMismatch("coefficient count does not match field degree");
  for (const auto& c : coeffs)
    if (c.field() != F->base()) throw FieldMismatch("coefficient from the wrong base field");
  LFElt e;
  e.F_ = std::move(F);
  e.c_ = std::move(coeffs);
  return e;
}

inline LFElt LFElt::zero(const LocalFieldPtr& F) {
  if (F->is_ground()) return from_leaf(F, PadicNumber::zero(F->p()));
  return from_coeffs(F, std::vector<LFElt>(static_cast<size_t>(F->degree()), zero(F->base())));
}

inline LFElt LFElt::one(const LocalFieldPtr& F) { return from_int(F, 1); }

inline LFElt LFElt::from_int(const LocalFieldPtr& F, long long n) {
  return from_rational(F, Rat(n));
}

inline LFElt LFElt::from_rational(const LocalFieldPtr& F, const Rat& r) {
  if (F->is_ground()) return from_leaf(F, PadicNumber::from_rational(F->p(), r, F->leaf_precision()));
  LFElt e = zero(F);
  e.c_[0] = from_rational(F->base(), r);
  return e;
}

inline LFElt LFElt::embed(const LocalFieldPtr& F, const LFElt& base_elt) {
  if (base_elt.field() != F->base()) throw FieldMismatch("embed expects an element of the immediate base");
  LFElt e = zero(F);
  e.c_[0] = base_elt;
  return e;
}

inline LFElt LFElt::uniformizer(const LocalFieldPtr& F) {
  switch (F->layer()) {
    case LocalField::Layer::Ground:
      return from_leaf(F, PadicNumber::uniformizer(F->p(), F->leaf_precision()));
    case LocalField::Layer::Eisenstein: {
      LFElt e = zero(F);
      e.c_[1] = one(F->base());
      return e;  // the class of X
    }
    case LocalField::Layer::Unramified:
      return embed(F, uniformizer(F->base()));
  }
  throw Error("unreachable");
}

inline LFElt LFElt::operator+(const LFElt& o) const {
  if (F_ != o.F_) throw FieldMismatch("addition across fields");
  if (F_->is_ground()) return from_leaf(F_, leaf_ + o.leaf_);
  std::vector<LFElt> r = c_;
  for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + o.c_[i];
  return from_coeffs(F_, std::move(r));
}

inline LFElt LFElt::operator-() const {
  if (F_->is_ground()) return from_leaf(F_, -leaf_);
  std::vector<LFElt> r = c_;
  for (auto& x : r) x = -x;
  return from_coeffs(F_, std::move(r));
}

inline LFElt LFElt::operator-(const LFElt& o) const { return *this + (-o); }

inline LFElt LFElt::operator*(const LFElt& o) const {
  if (F_ != o.F_) throw FieldMismatch("multiplication across fields");
  if (F_->is_ground()) return from_leaf(F_, leaf_ * o.leaf_);
  int d = F_->degree();
  std::vector<LFElt> prod(static_cast<size_t>(2 * d - 1), zero(F_->base()));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      prod[static_cast<size_t>(i + j)] = prod[static_cast<size_t>(i + j)] + c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
  // reduce modulo the monic defining polynomial: X^d = -sum defining[j] X^j
  for (int i = 2 * d - 2; i >= d; --i) {
    LFElt lead = prod[static_cast<size_t>(i)];
    for (int j = 0; j < d; ++j)
      prod[static_cast<size_t>(i - d + j)] =
          prod[static_cast<size_t>(i - d + j)] - lead * F_->defining()[static_cast<size_t>(j)];
  }
  prod.resize(static_cast<size_t>(d));
  return from_coeffs(F_, std::move(prod));
}

inline LFElt LFElt::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  LFElt r = one(F_), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    if (e >>= 1) b = b * b;
  }
  return r;
}

inline LFElt LFElt::shift_pi(long long k) const {
  if (k == 0) return *this;
  LFElt pi = uniformizer(F_);
  return k > 0 ? *this * pi.pow(k) : *this * pi.inverse().pow(-k);
}

inline std::optional<long long> LFElt::valuation_pi() const {
  if (F_->is_ground()) {
    auto v = leaf_.valuation();  // may throw PrecisionExhausted
    if (!v) return std::nullopt;
    return *v;
  }
  int d = F_->degree();
  bool eis = F_->layer() == LocalField::Layer::Eisenstein;
  std::optional<long long> best;
  long long unknown_floor = PadicNumber::kInfinitePrecision;
  for (int i = 0; i < d; ++i) {
    const LFElt& ci = c_[static_cast<size_t>(i)];
    long long scale = eis ? d : 1, off = eis ? i : 0;
    try {
      auto v = ci.valuation_pi();
      if (!v) continue;  // exact zero coefficient
      long long contrib = scale * *v + off;
      if (!best || contrib < *best) best = contrib;
    } catch (const PrecisionExhausted&) {
      long long floor_i = scale * ci.valuation_lower_bound_pi() + off;
      if (floor_i < unknown_floor) unknown_floor = floor_i;
    }
  }
  if (!best) {
    if (unknown_floor == PadicNumber::kInfinitePrecision) return std::nullopt;  // exact zero
    throw PrecisionExhausted("valuation unknown beyond pi^" + std::to_string(unknown_floor));
  }
  // Eisenstein contributions are distinct mod d, so the minimum is exact;
  // unramified coordinates cannot cancel at the minimum either
  bool safe = eis ? (unknown_floor > *best) : (unknown_floor >= *best);
  if (!safe)
    throw PrecisionExhausted("imprecise coefficient could undercut valuation " + std::to_string(*best));
  return best;
}

inline long long LFElt::valuation_lower_bound_pi() const {
  if (F_->is_ground()) return leaf_.valuation_lower_bound();
  int d = F_->degree();
  bool eis = F_->layer() == LocalField::Layer::Eisenstein;
  long long lb = PadicNumber::kInfinitePrecision;
  for (int i = 0; i < d; ++i) {
    long long b = c_[static_cast<size_t>(i)].valuation_lower_bound_pi();
    if (b >= PadicNumber::kInfinitePrecision) continue;
    long long contrib = (eis ? d : 1) * b + (eis ? i : 0);
    lb = std::min(lb, contrib);
  }
  return lb;
}

inline long long LFElt::pi_precision() const {
  if (F_->is_ground()) return leaf_.absolute_precision();
  int d = F_->degree();
  bool eis = F_->layer() == LocalField::Layer::Eisenstein;
  long long prec = PadicNumber::kInfinitePrecision;
  for (int i = 0; i < d; ++i) {
    long long b = c_[static_cast<size_t>(i)].pi_precision();
    if (b >= PadicNumber::kInfinitePrecision) continue;
    prec = std::min(prec, (eis ? d : 1) * b + (eis ? i : 0));
  }
  return prec;
}

inline Fq LFElt::residue() const {
  const FqFieldPtr& k = F_->residue_field();
  if (F_->is_ground()) return k->from_int(leaf_.residue());
  if (valuation_lower_bound_pi() >= 1) return k->zero();  // provably in the maximal ideal
  auto v = valuation_pi();
  if (v && *v < 0) throw NotIntegral("residue of valuation " + std::to_string(*v));
  if (!v || *v > 0) return k->zero();
  if (F_->layer() == LocalField::Layer::Eisenstein)
    return c_[0].residue();  // same residue field object as the base
  // unramified: residue modulus is the reduced defining polynomial,
  // so the class of X maps to the residue-field generator
  Fq acc = k->zero(), g = k->gen(), gp = k->one();
  for (int i = 0; i < F_->degree(); ++i) {
    Fq ci = k->element(FpPoly::constant(F_->p(), c_[static_cast<size_t>(i)].residue().as_int()));
    acc = acc + ci * gp;
    gp = gp * g;
  }
  return acc;
}

inline std::string LFElt::str() const {
  if (F_->is_ground()) return leaf_.str();
  std::string s = "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ", ";
    s += c_[i].str();
  }
  return s + "]";
}

// ---- linear solving over a tower (used by inverse and norms) ----

// Gaussian elimination with exact-valuation pivoting; A is column-major
// in the call below but passed here as rows
inline std::vector<LFElt> solve_linear(std::vector<std::vector<LFElt>> A, std::vector<LFElt> b) {
  const size_t n = A.size();
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  for (size_t col = 0; col < n; ++col) {
    std::optional<size_t> pivot;
    long long best_v = 0;
    bool unknown = false;
    for (size_t r = col; r < n; ++r) {
      try {
        auto v = A[r][col].valuation_pi();
        if (!v) continue;
        if (!pivot || *v < best_v) { pivot = r; best_v = *v; }
      } catch (const PrecisionExhausted&) {
        unknown = true;
      }
    }
    if (!pivot) {
      if (unknown) throw PrecisionExhausted("pivot column indistinguishable from zero");
      throw DivisionByZero("singular multiplication matrix");
    }
    std::swap(A[col], A[*pivot]);
    std::swap(b[col], b[*pivot]);
    LFElt inv = A[col][col].inverse();
    for (size_t r = col + 1; r < n; ++r) {
      LFElt factor = A[r][col] * inv;
      for (size_t cc = col; cc < n; ++cc) A[r][cc] = A[r][cc] - factor * A[col][cc];
      b[r] = b[r] - factor * b[col];
    }
  }
  std::vector<LFElt> x(n, b[0]);
  for (size_t i = n; i-- > 0;) {
    LFElt acc = b[i];
    for (size_t j = i + 1; j < n; ++j) acc = acc - A[i][j] * x[j];
    x[i] = acc * A[i][i].inverse();
  }
  return x;
}

// columns of the multiplication-by-x operator in the power basis
inline std::vector<std::vector<LFElt>> multiplication_matrix(const LFElt& x) {
  const LocalFieldPtr& F = x.field();
  if (F->is_ground()) return {{x}};
  int d = F->degree();
  std::vector<std::vector<LFElt>> cols;
  LFElt cur = x;
  std::vector<LFElt> xc(static_cast<size_t>(d), LFElt::zero(F->base()));
  xc[1] = LFElt::one(F->base());
  LFElt X = LFElt::from_coeffs(F, std::move(xc));
  for (int j = 0; j < d; ++j) {
    cols.push_back(cur.coeffs());
    if (j + 1 < d) cur = cur * X;
  }
  return cols;
}

inline LFElt LFElt::inverse() const {
  if (F_->is_ground()) return from_leaf(F_, leaf_.inverse());
  int d = F_->degree();
  auto cols = multiplication_matrix(*this);
  // assemble rows: M[i][j] = coefficient i of x * X^j
  std::vector<std::vector<LFElt>> rows(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rows[static_cast<size_t>(i)].push_back(cols[static_cast<size_t>(j)][static_cast<size_t>(i)]);
  std::vector<LFElt> rhs(static_cast<size_t>(d), zero(F_->base()));
  rhs[0] = one(F_->base());
  return from_coeffs(F_, solve_linear(std::move(rows), std::move(rhs)));
}

// division-free determinant, for the small matrices norms produce
inline LFElt det_leibniz(const std::vector<std::vector<LFElt>>& rows, const LocalFieldPtr& base) {
  size_t n = rows.size();
  if (n > 6) throw SizeLimit("determinant degree above the supported bound");
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  LFElt acc = LFElt::zero(base);
  // iterate permutations with parity tracking
  std::function<void(size_t, int)> rec = [&](size_t k, int sign) {
    if (k == n) {
      LFElt term = LFElt::one(base);
      for (size_t i = 0; i < n; ++i) term = term * rows[i][idx[i]];
      acc = sign > 0 ? acc + term : acc - term;
      return;
    }
    for (size_t i = k; i < n; ++i) {
      std::swap(idx[k], idx[i]);
      rec(k + 1, i == k ? sign : -sign);
      std::swap(idx[k], idx[i]);
    }
  };
  rec(0, 1);
  return acc;
}

// ---- field construction ----

inline LocalFieldPtr LocalField::eisenstein(const LocalFieldPtr& base, std::vector<LFElt> low,
                                            const std::string& suffix, bool zeta_layer) {
  int d = static_cast<int>(low.size());
  if (d < 2) throw PreconditionFailed("extension degree must be at least 2");
  for (const auto& c : low)
    if (c.field() != base) throw FieldMismatch("defining coefficients must live in the base");
  for (int i = 0; i < d; ++i) {
    auto v = low[static_cast<size_t>(i)].valuation_pi();
    long long vv = v ? *v : PadicNumber::kInfinitePrecision;
    if (vv < 1) throw PreconditionFailed("coefficient " + std::to_string(i) + " is a unit; polynomial is not Eisenstein");
    if (i == 0 && vv != 1) throw PreconditionFailed("constant coefficient must have valuation exactly 1");
  }
  auto F = std::shared_ptr<LocalField>(new LocalField());
  F->layer_ = Layer::Eisenstein;
  F->p_ = base->p();
  F->base_ = base;
  F->defining_ = std::move(low);
  F->deg_ = d;
  F->e_abs_ = base->e_abs() * d;
  F->f_abs_ = base->f_abs();
  F->leaf_prec_ = base->leaf_precision();
  F->residue_field_ = base->residue_field();
  F->name_ = base->name() + suffix;
  F->has_zeta_p_ = base->has_zeta_p() || zeta_layer;
  F->zeta_pi_ = zeta_layer;
  if (F->has_zeta_p_ && F->p_ != 2 && F->e_abs_ % (F->p_ - 1) != 0)
    throw Error("inconsistent ramification for a field containing zeta_p");
  return F;
}

inline LocalFieldPtr LocalField::unramified(const LocalFieldPtr& base, int f, const std::string& suffix) {
  if (!base->is_ground())
    throw PreconditionFailed("unramified layers are supported over the ground field only");
  if (f < 2) throw PreconditionFailed("unramified degree must be at least 2");
  auto F = std::shared_ptr<LocalField>(new LocalField());
  F->layer_ = Layer::Unramified;
  F->p_ = base->p();
  F->base_ = base;
  F->deg_ = f;
  F->e_abs_ = base->e_abs();
  F->f_abs_ = base->f_abs() * f;
  F->leaf_prec_ = base->leaf_precision();
  F->residue_field_ = FqField::make(base->p(), static_cast<int>(F->f_abs_));
  F->name_ = base->name() + suffix;
  F->has_zeta_p_ = base->has_zeta_p();
  // non-leading coefficients: plain lifts of the residue modulus
  const FpPoly& m = F->residue_field_->modulus();
  std::vector<LFElt> low;
  for (int i = 0; i < f; ++i) low.push_back(LFElt::from_int(base, m.coeff(i)));
  F->defining_ = std::move(low);
  return F;
}

// digit lift of a residue element (no Teichmuller correction)
inline LFElt lift_residue(const LocalFieldPtr& F, const Fq& r) {
  if (r.field() != F->residue_field()) throw FieldMismatch("residue element from the wrong field");
  switch (F->layer()) {
    case LocalField::Layer::Ground:
      return LFElt::from_int(F, r.as_int());
    case LocalField::Layer::Eisenstein:
      return LFElt::embed(F, lift_residue(F->base(), r));
    case LocalField::Layer::Unramified: {
      std::vector<LFElt> c;
      for (int i = 0; i < F->degree(); ++i)
        c.push_back(LFElt::from_int(F->base(), r.rep().coeff(i)));
      return LFElt::from_coeffs(F, std::move(c));
    }
  }
  throw Error("unreachable");
}

// fixed point of x -> x^{p^f} over the digit lift; tau(0) = 0.
// Each iterate gains at least one pi-digit, so iteration count is bounded
// by the target precision.
inline LFElt teichmuller_lift(const LocalFieldPtr& F, const Fq& r, long long target_pi = -1) {
  if (target_pi < 0) target_pi = F->default_pi_precision();
  if (r.is_zero()) return LFElt::zero(F);
  long long q = F->residue_order();
  LFElt x = lift_residue(F, r);
  for (long long it = 0; it < 4 * target_pi + 16; ++it) {
    LFElt y = x.pow(q);
    if (congruent_pi(y, x, target_pi)) return y;
    x = y;
  }
  throw PrecisionExhausted("Teichmuller iteration did not stabilize at pi^" + std::to_string(target_pi));
}

// ---- Hensel lifting ----

// poly: coefficients c_0..c_n of f; returns a root refined from `seed`
// under the condition v(f(seed)) > 2 v(f'(seed)).
inline LFElt eval_poly(const std::vector<LFElt>& poly, const LFElt& a) {
  LFElt acc = LFElt::zero(a.field());
  for (size_t i = poly.size(); i-- > 0;) acc = acc * a + poly[i];
  return acc;
}

inline std::vector<LFElt> derivative_poly(const std::vector<LFElt>& poly) {
  std::vector<LFElt> d;
  for (size_t i = 1; i < poly.size(); ++i) {
    const LocalFieldPtr& F = poly[i].field();
    d.push_back(LFElt::from_int(F, static_cast<long long>(i)) * poly[i]);
  }
  return d;
}

inline LFElt hensel_lift(const std::vector<LFElt>& poly, LFElt seed, long long target_pi) {
  std::vector<LFElt> dpoly = derivative_poly(poly);
  bool checked = false;
  for (int iter = 0; iter < 200; ++iter) {
    LFElt fa = eval_poly(poly, seed);
    long long lb = fa.valuation_lower_bound_pi();
    if (lb >= target_pi) return seed;
    LFElt fpa = eval_poly(dpoly, seed);
    auto vfp = fpa.valuation_pi();  // PrecisionExhausted propagates
    if (!vfp) throw HenselConditionFailed("derivative vanishes at the seed");
    std::optional<long long> vfa;
    try {
      vfa = fa.valuation_pi();
    } catch (const PrecisionExhausted&) {
      throw PrecisionExhausted("residual known only above pi^" + std::to_string(lb) +
                               ", below the target " + std::to_string(target_pi));
    }
    if (!vfa) return seed;  // exact root
    if (!checked) {
      if (*vfa <= 2 * *vfp)
        throw HenselConditionFailed("v(f(a)) = " + std::to_string(*vfa) + " not above 2 v(f'(a)) = " +
                                    std::to_string(2 * *vfp));
      checked = true;
    }
    seed = seed - fa * fpa.inverse();
  }
  throw PrecisionExhausted("Newton iteration stalled before pi^" + std::to_string(target_pi));
}

// convenience for ground-field polynomials given as rationals
inline std::vector<LFElt> poly_from_rationals(const LocalFieldPtr& F, const std::vector<Rat>& coeffs) {
  std::vector<LFElt> out;
  for (const auto& c : coeffs) out.push_back(LFElt::from_rational(F, c));
  return out;
}

// ---- the definability predicate on Q_p ----

// For p odd: x integral iff 1 + p x^2 is a square.  For p = 2: iff
// 1 + 2 x^3 is a cube.  Decided by valuation parity plus a verified
// Hensel solve on the solvable side.
inline bool jr_integer_test(const PadicNumber& x) {
  long long p = x.p();
  auto F = LocalField::ground(p, std::max(16, x.relative_precision() + 8));
  auto vx = x.valuation();
  if (!vx) throw PreconditionFailed("predicate needs a nonzero argument");
  LFElt xe = LFElt::from_leaf(F, x);
  long long k = p == 2 ? 3 : 2;
  LFElt t = LFElt::one(F) + LFElt::from_int(F, p) * xe.pow(k);
  auto vt = t.valuation_pi();
  long long target = std::min<long long>(t.pi_precision(), F->default_pi_precision() / 2);
  if (*vx >= 0) {
    // t = 1 mod p: Hensel from seed 1 certifies the power
    std::vector<LFElt> f(static_cast<size_t>(k) + 1, LFElt::zero(F));
    f[0] = -t;
    f[static_cast<size_t>(k)] = LFElt::one(F);
    LFElt y = hensel_lift(f, LFElt::one(F), target);
    if (!congruent_pi(y.pow(k), t, target)) throw Error("verification of the lifted root failed");
    return true;
  }
  // negative valuation: v(t) = 1 + k v(x) is never divisible by k
  long long v = vt ? *vt : 0;
  if (mod_norm(v, k) != 0) return false;
  throw Error("unexpected valuation pattern in the integrality predicate");
}

// ---- square-root extensions (used by descriptors and Kummer machinery) ----

struct SqrtAdjunction {
  LocalFieldPtr ext;
  LFElt root;  // an element of ext with root^2 = d
};

inline Fq finite_field_sqrt(const Fq& a) {
  const auto& k = a.field();
  for (long long i = 0; i < k->order(); ++i) {
    Fq c = k->from_index(i);
    if (c * c == a) return c;
  }
  throw PreconditionFailed("no square root in the residue field");
}

inline SqrtAdjunction adjoin_sqrt(const LocalFieldPtr& K, const LFElt& d,
                                  const std::string& suffix = "[sqrt]") {
  if (d.field() != K) throw FieldMismatch("operand must live in the base field");
  auto vd = d.valuation_pi();
  if (!vd) throw PreconditionFailed("cannot adjoin a square root of zero");
  long long p = K->p(), v = *vd;
  if (v % 2 != 0) {
    // pull out pi^{v-1}: X^2 - d/pi^{v-1} is Eisenstein
    LFElt c0 = -(d.shift_pi(1 - v));
    auto E = LocalField::eisenstein(K, {c0, LFElt::zero(K)}, suffix);
    LFElt theta = LFElt::uniformizer(E);
    // scale by the base uniformizer, not by theta: theta^2 is d/pi^{v-1}
    LFElt scale = LFElt::embed(E, LFElt::uniformizer(K).pow((v - 1) / 2));
    return {E, theta * scale};
  }
  LFElt u = d.shift_pi(-v);  // unit part
  if (!K->is_ground())
    throw PreconditionFailed("even-valuation square roots are supported over the ground field only");
  long long target = 2 * K->leaf_precision() / 3 + 2;
  if (p != 2) {
    Fq r = u.residue();
    Fq s = [&] {
      try { return finite_field_sqrt(r); } catch (const PreconditionFailed&) { return Fq(); }
    }();
    if (s.field()) {
      throw PreconditionFailed("operand is already a square; the extension would be trivial");
    }
    auto E = LocalField::unramified(K, 2, suffix);
    LFElt ue = LFElt::embed(E, u);
    Fq se = finite_field_sqrt(ue.residue());
    std::vector<LFElt> f = {-ue, LFElt::zero(E), LFElt::one(E)};
    LFElt rt = hensel_lift(f, lift_residue(E, se), target);
    return {E, rt.shift_pi(v / 2)};
  }
  // p = 2: branch on the unit class modulo 8
  long long u8 = 0;
  {
    PadicNumber lu = u.leaf();
    auto digs = lu.digits(3);
    u8 = digs[0] + 2 * digs[1] + 4 * digs[2];
  }
  if (u8 == 1) {
    throw PreconditionFailed("operand is a square in Q_2; the extension would be trivial");
  }
  if (u8 == 5) {
    auto E = LocalField::unramified(K, 2, suffix);
    LFElt w = LFElt::from_coeffs(E, {LFElt::zero(K), LFElt::one(K)});
    LFElt seed = LFElt::one(E) + LFElt::from_int(E, 2) * w;  // seed^2 = u mod 8
    LFElt ue = LFElt::embed(E, u);
    std::vector<LFElt> f = {-ue, LFElt::zero(E), LFElt::one(E)};
    LFElt rt = hensel_lift(f, seed, target);
    return {E, rt.shift_pi(v / 2)};
  }
  // u = 3, 7 mod 8: theta = 1 + sqrt(u) satisfies X^2 - 2X + (1 - u), Eisenstein
  LFElt c0 = LFElt::one(K) - u, c1 = LFElt::from_int(K, -2);
  auto E = LocalField::eisenstein(K, {c0, c1}, suffix);
  LFElt rt = LFElt::uniformizer(E) - LFElt::one(E);
  return {E, rt * LFElt::embed(E, LFElt::from_int(K, 2).pow(v / 2))};
}

// ---- descriptors ----

// expression grammar for layer operands: integers, 'p', 'pi', + - * and
// parentheses, evaluated in the field under construction
namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && s[i] == ' ') ++i;
}

inline LFElt parse_expr(const std::string& s, size_t& i, const LocalFieldPtr& F);

inline LFElt parse_factor(const std::string& s, size_t& i, const LocalFieldPtr& F) {
  skip_ws(s, i);
  if (i >= s.size()) throw ParseError("expected an operand", i);
  if (s[i] == '(') {
    ++i;
    LFElt v = parse_expr(s, i, F);
    skip_ws(s, i);
    if (i >= s.size() || s[i] != ')') throw ParseError("expected ')'", i);
    ++i;
    return v;
  }
  if (s[i] == '-') {
    ++i;
    return -parse_factor(s, i, F);
  }
  if (s.compare(i, 2, "pi") == 0) {
    i += 2;
    return LFElt::uniformizer(F);
  }
  if (s[i] == 'p') {
    ++i;
    return LFElt::from_int(F, F->p());
  }
  if (std::isdigit(static_cast<unsigned char>(s[i]))) {
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    long long n = std::stoll(s.substr(i, j - i));
    i = j;
    return LFElt::from_int(F, n);
  }
  throw ParseError("unrecognized operand", i);
}

inline LFElt parse_term(const std::string& s, size_t& i, const LocalFieldPtr& F) {
  LFElt v = parse_factor(s, i, F);
  while (true) {
    skip_ws(s, i);
    if (i < s.size() && s[i] == '*') {
      ++i;
      v = v * parse_factor(s, i, F);
    } else {
      return v;
    }
  }
}

inline LFElt parse_expr(const std::string& s, size_t& i, const LocalFieldPtr& F) {
  LFElt v = parse_term(s, i, F);
  while (true) {
    skip_ws(s, i);
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      char op = s[i++];
      LFElt w = parse_term(s, i, F);
      v = op == '+' ? v + w : v - w;
    } else {
      return v;
    }
  }
}

}  // namespace detail

inline LFElt parse_element_expression(const std::string& s, const LocalFieldPtr& F) {
  size_t i = 0;
  LFElt v = detail::parse_expr(s, i, F);
  detail::skip_ws(s, i);
  if (i != s.size()) throw ParseError("trailing characters in element expression", i);
  return v;
}

// "Qp(5)", "Qp(3)[zeta_p]", "Qp(2)[sqrt,-2]", "Qp(2)[unram,2]",
// "Qp(3)[zeta_p][kummer,(1-p)*pi]"; `pos` advances past what was consumed
inline LocalFieldPtr parse_local_field(const std::string& s, size_t& pos, int prec_digits = -1) {
  detail::skip_ws(s, pos);
  if (s.compare(pos, 3, "Qp(") != 0) throw ParseError("expected 'Qp('", pos);
  pos += 3;
  size_t j = s.find(')', pos);
  if (j == std::string::npos) throw ParseError("expected ')'", pos);
  long long p = 0;
  try {
    size_t used = 0;
    p = std::stoll(s.substr(pos, j - pos), &used);
    if (used != j - pos) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ParseError("invalid prime", pos);
  }
  if (!detail::small_prime(p)) throw ParseError("invalid prime", pos);
  pos = j + 1;
  LocalFieldPtr F = LocalField::ground(p, prec_digits);
  while (pos < s.size() && s[pos] == '[') {
    size_t close = s.find(']', pos);
    if (close == std::string::npos) throw ParseError("expected ']'", pos);
    std::string body = s.substr(pos + 1, close - pos - 1);
    std::string layer_text = "[" + body + "]";
    size_t comma = body.find(',');
    std::string head = comma == std::string::npos ? body : body.substr(0, comma);
    std::string arg = comma == std::string::npos ? "" : body.substr(comma + 1);
    if (head == "zeta_p") {
      F = LocalField::with_zeta_p(F);
    } else if (head == "unram") {
      int f = 0;
      try {
        f = std::stoi(arg);
      } catch (const std::exception&) {
        throw ParseError("invalid unramified degree", pos + 1);
      }
      F = LocalField::unramified(F, f, layer_text);
    } else if (head == "sqrt") {
      LFElt d = parse_element_expression(arg, F);
      F = adjoin_sqrt(F, d, layer_text).ext;
    } else if (head == "kummer") {
      if (!F->has_zeta_p())
        throw PreconditionFailed("kummer layer requires zeta_p in the base");
      LFElt c = parse_element_expression(arg, F);
      auto vc = c.valuation_pi();
      if (!vc || *vc != 1)
        throw PreconditionFailed("kummer operand must have valuation 1");
      std::vector<LFElt> low(static_cast<size_t>(p), LFElt::zero(F));
      low[0] = -c;
      F = LocalField::eisenstein(F, std::move(low), layer_text);
    } else {
      throw ParseError("unknown layer '" + head + "'", pos + 1);
    }
    pos = close + 1;
  }
  return F;
}

inline LocalFieldPtr field_from_descriptor(const std::string& s, int prec_digits = -1) {
  size_t pos = 0;
  LocalFieldPtr F = parse_local_field(s, pos, prec_digits);
  detail::skip_ws(s, pos);
  if (pos != s.size()) throw ParseError("trailing characters in field descriptor", pos);
  return F;
}

}  // namespace vfl
