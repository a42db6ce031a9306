#pragma once
// Truncated Laurent/Puiseux series over a local field. The composite
// valuation v(sum a_i t^i) = (i0, v_pi(a_{i0})) takes values in a rank-2
// lex group (t-exponent first, coefficient valuation second); on top of
// the windowed arithmetic this header builds the three-stage place
// decomposition cut out by the convex subgroups attached to an element
// of the maximal ideal, coarsened-ring membership, a mod-varpi
// semiperfectness probe with explicit witnesses, and the axiom bundle
// (henselian spot checks, minimality of v(p), Z-group test, prime
// residue field).
//
// Window model: exponents are numerators over a fixed denominator d
// (d = 1 for Laurent) and live in [lo*d, hi*d]. Every element carries
// the highest exponent up to which its coefficients are trusted;
// arithmetic shrinks that bound conservatively and drops anything the
// window cannot hold above, while an underflow below the window is an
// error rather than a silent truncation (low terms decide valuations).

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "localfield.hpp"
#include "ordgroup.hpp"

namespace vfl {

class SeriesField;
using SeriesFieldPtr = std::shared_ptr<const SeriesField>;

class SeriesField {
 public:
  static SeriesFieldPtr laurent(LocalFieldPtr coeff, long long lo = -8, long long hi = 8) {
    return make(std::move(coeff), 1, lo, hi);
  }

  // exponents in (1/denom)Z; the window bounds stay in whole t-units
  static SeriesFieldPtr puiseux(LocalFieldPtr coeff, long long denom,
                                long long lo = -8, long long hi = 8) {
    if (denom < 2) throw PreconditionFailed("puiseux denominator must be at least 2");
    return make(std::move(coeff), denom, lo, hi);
  }

  const LocalFieldPtr& coefficients() const { return coeff_; }
  long long p() const { return coeff_->p(); }
  long long denom() const { return denom_; }
  long long window_lo_num() const { return lo_num_; }
  long long window_hi_num() const { return hi_num_; }

  // group the composite valuation lives in: Z x Z, or Q x Z for puiseux
  const LexGroup& value_group() const { return group_; }

  const std::string& name() const { return name_; }

 private:
  static SeriesFieldPtr make(LocalFieldPtr coeff, long long denom, long long lo, long long hi) {
    if (lo >= 0 || hi <= 0) throw PreconditionFailed("exponent window must contain 0 in its interior");
    if (hi - lo > 64) throw SizeLimit("exponent window wider than 64 t-units");
    auto K = std::shared_ptr<SeriesField>(new SeriesField());
    K->coeff_ = std::move(coeff);
    K->denom_ = denom;
    K->lo_num_ = lo * denom;
    K->hi_num_ = hi * denom;
    K->group_ = denom == 1 ? parse_lex_group("Z x Z") : parse_lex_group("Q x Z");
    K->name_ = denom == 1 ? K->coeff_->name() + "((t))"
                          : "Puiseux(" + K->coeff_->name() + ",d=" + std::to_string(denom) + ")";
    return K;
  }

  LocalFieldPtr coeff_;
  long long denom_ = 1;
  long long lo_num_ = -8, hi_num_ = 8;
  LexGroup group_;
  std::string name_;
};

class SeriesElement {
 public:
  // sentinel for "no unknown tail at all"
  static constexpr long long kExact = 1LL << 60;

  SeriesElement() = default;

  static SeriesElement zero(const SeriesFieldPtr& K) { return SeriesElement(K, {}, kExact); }

  static SeriesElement one(const SeriesFieldPtr& K) {
    return monomial(K, LFElt::one(K->coefficients()), 0);
  }

  static SeriesElement from_coeff(const SeriesFieldPtr& K, const LFElt& c) {
    return monomial(K, c, 0);
  }

  static SeriesElement from_int(const SeriesFieldPtr& K, long long n) {
    return monomial(K, LFElt::from_int(K->coefficients(), n), 0);
  }

  // c * t^{num/denom}
  static SeriesElement monomial(const SeriesFieldPtr& K, const LFElt& c, long long num) {
    if (c.field() != K->coefficients())
      throw FieldMismatch("coefficient lives in a different field");
    if (num < K->window_lo_num() || num > K->window_hi_num())
      throw WindowExhausted("monomial exponent " + std::to_string(num) +
                            " outside the window");
    std::map<long long, LFElt> ts;
    if (c.valuation_lower_bound_pi() < PadicNumber::kInfinitePrecision) ts.emplace(num, c);
    return SeriesElement(K, std::move(ts), kExact);
  }

  static SeriesElement t_power(const SeriesFieldPtr& K, long long num) {
    return monomial(K, LFElt::one(K->coefficients()), num);
  }

  static SeriesElement t(const SeriesFieldPtr& K) { return t_power(K, K->denom()); }

  const SeriesFieldPtr& field() const { return K_; }
  const std::map<long long, LFElt>& terms() const { return terms_; }

  // highest trusted exponent numerator, clamped to the window for display
  long long known_hi() const { return std::min(khi_, K_->window_hi_num()); }
  bool tail_exact() const { return khi_ >= kExact; }

  std::optional<long long> support_min() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }

  // coefficient at exponent numerator n; exact zero when absent and trusted
  LFElt coeff(long long n) const {
    auto it = terms_.find(n);
    if (it != terms_.end()) return it->second;
    return LFElt::zero(K_->coefficients());
  }

  SeriesElement with_known_hi(long long k) const {
    SeriesElement r = *this;
    r.khi_ = std::min(khi_, k);
    r.trim();
    return r;
  }

  friend SeriesElement operator+(const SeriesElement& a, const SeriesElement& b) {
    a.require_same(b);
    SeriesElement r(a.K_, a.terms_, std::min(a.khi_, b.khi_));
    for (const auto& [n, c] : b.terms_) {
      auto it = r.terms_.find(n);
      if (it == r.terms_.end())
        r.terms_.emplace(n, c);
      else
        it->second = it->second + c;
    }
    r.trim();
    return r;
  }

  friend SeriesElement operator-(const SeriesElement& a) {
    SeriesElement r = a;
    for (auto& [n, c] : r.terms_) c = -c;
    return r;
  }

  friend SeriesElement operator-(const SeriesElement& a, const SeriesElement& b) {
    return a + (-b);
  }

  friend SeriesElement operator*(const SeriesElement& a, const SeriesElement& b) {
    a.require_same(b);
    long long sa = a.terms_.empty() ? kExact : a.terms_.begin()->first;
    long long sb = b.terms_.empty() ? kExact : b.terms_.begin()->first;
    long long khi = std::min(sat_add(a.khi_, sb), sat_add(b.khi_, sa));
    if (sa < kExact && sb < kExact && sa + sb < a.K_->window_lo_num())
      throw WindowExhausted("product reaches t-exponent " + std::to_string(sa + sb) +
                            " below the window");
    SeriesElement r(a.K_, {}, khi);
    long long hi = a.K_->window_hi_num();
    long long cap = std::min(khi, hi);
    bool clipped = false;
    for (const auto& [n, c] : a.terms_)
      for (const auto& [m, e] : b.terms_) {
        if (n + m > hi) clipped = true;  // window truncation: tail no longer exact
        if (n + m > cap) continue;
        LFElt prod = c * e;
        auto it = r.terms_.find(n + m);
        if (it == r.terms_.end())
          r.terms_.emplace(n + m, prod);
        else
          it->second = it->second + prod;
      }
    if (clipped) r.khi_ = std::min(r.khi_, hi);
    r.trim();
    return r;
  }

  SeriesElement scaled(const LFElt& c) const {
    return *this * from_coeff(K_, c);
  }

  // valid when the leading coefficient has a decidable valuation
  SeriesElement inverse() const {
    if (terms_.empty()) throw DivisionByZero("inverse of a series with no visible term");
    long long i0 = terms_.begin()->first;
    const LFElt& a = terms_.begin()->second;
    if (-i0 < K_->window_lo_num() || -i0 > K_->window_hi_num())
      throw WindowExhausted("inverse leading exponent leaves the window");
    SeriesElement y0 = monomial(K_, a.inverse(), -i0);
    SeriesElement r = *this * y0 - one(K_);  // support strictly above 0
    SeriesElement acc = one(K_), term = one(K_);
    long long span = K_->window_hi_num() - K_->window_lo_num() + 2;
    for (long long m = 0; m < span; ++m) {
      term = term * (-r);
      if (term.terms_.empty()) break;
      acc = acc + term;
    }
    return y0 * acc;
  }

  friend SeriesElement operator/(const SeriesElement& a, const SeriesElement& b) {
    return a * b.inverse();
  }

  SeriesElement pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    SeriesElement r = one(K_), base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return r;
  }

  std::string str() const {
    std::string s;
    for (const auto& [n, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")*t^" + Rat(n, K_->denom()).str();
    }
    if (s.empty()) s = "0";
    if (khi_ < kExact)
      s += " + O(t^" + Rat(khi_ + 1, K_->denom()).str() + ")";
    return s;
  }

 private:
  SeriesElement(SeriesFieldPtr K, std::map<long long, LFElt> ts, long long khi)
      : K_(std::move(K)), terms_(std::move(ts)), khi_(khi) {
    trim();
  }

  static long long sat_add(long long a, long long b) {
    if (a >= kExact || b >= kExact) return kExact;
    return a + b;
  }

  void require_same(const SeriesElement& o) const {
    if (K_ != o.K_) throw FieldMismatch("series elements of different fields");
  }

  // drop provably-zero coefficients and anything beyond the trusted bound;
  // a key pushed past the window itself costs the exact-tail property
  void trim() {
    if (!K_) return;
    long long hi = K_->window_hi_num();
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->first > hi) {
        khi_ = std::min(khi_, hi);
        it = terms_.erase(it);
      } else if (it->first > khi_ ||
                 it->second.valuation_lower_bound_pi() >= it->second.pi_precision()) {
        // a coefficient whose proven vanishing order reaches its own absolute
        // precision is zero at coefficient resolution
        it = terms_.erase(it);
      } else {
        ++it;
      }
    }
  }

  SeriesFieldPtr K_;
  std::map<long long, LFElt> terms_;
  long long khi_ = kExact;

  friend class SeriesFieldAccess;
};

// ---------------------------------------------------------------------------
// composite valuation

// v(x) = (leading t-exponent, pi-valuation of the leading coefficient).
// WindowExhausted when no trusted coefficient is nonzero; PrecisionExhausted
// propagates when a potentially-leading coefficient is indistinct from zero.
inline LexGroupElement composite_valuation(const SeriesElement& x) {
  const SeriesFieldPtr& K = x.field();
  for (const auto& [n, c] : x.terms()) {
    auto v = c.valuation_pi();
    if (!v) continue;
    return LexGroupElement(K->value_group(), {Rat(n, K->denom()), Rat(*v)});
  }
  throw WindowExhausted("no nonzero coefficient in the known window of " + x.str());
}

// residue of the full composite place; zero above the maximal ideal,
// NotIntegral below the valuation ring
inline Fq composite_residue(const SeriesElement& x) {
  const FqFieldPtr& k = x.field()->coefficients()->residue_field();
  if (x.terms().empty()) return k->zero();
  LexGroupElement v = composite_valuation(x);
  LexGroupElement z = LexGroupElement::zero(v.group());
  if (v < z) throw NotIntegral("residue of an element with negative valuation " + v.str());
  if (v > z) return k->zero();
  return x.coeff(0).residue();
}

// ---------------------------------------------------------------------------
// stage decomposition

struct PlaceStage {
  std::string label;                 // "trivial", "t-adic" or "pi-adic"
  std::optional<LexGroup> group;     // value group; nullopt for rank 0
  int rank = 0;
  std::string residue;               // descriptor of the stage's residue field
  std::pair<long long, long long> characteristics{0, 0};

  bool trivial() const { return rank == 0; }
};

struct PlaceChain {
  SeriesFieldPtr domain;
  LexGroupElement pivot;            // v(varpi)
  ConvexSubgroup hull;              // smallest convex subgroup containing the pivot
  ConvexSubgroup infinitesimals;    // largest convex subgroup missing the pivot
  PlaceStage coarse, principal, fine;
  std::string core_field;           // field the rank-1 middle stage lives on

  std::vector<PlaceStage> stages() const { return {coarse, principal, fine}; }
};

inline PlaceChain standard_decompose(const SeriesFieldPtr& K, const SeriesElement& varpi) {
  if (varpi.field() != K) throw FieldMismatch("varpi lives in a different series field");
  LexGroupElement w = composite_valuation(varpi);
  if (!(w > LexGroupElement::zero(K->value_group())))
    throw NotInMaximalIdeal("decomposition needs v(varpi) > 0, got " + w.str());

  const LocalFieldPtr& C = K->coefficients();
  std::string fq_name = "F_" + std::to_string(C->residue_order());
  long long p = K->p();

  PlaceChain ch{K, w, conv_hull(w), infinitesimal_subgroup(w), {}, {}, {}, ""};
  int cut = ch.hull.tail_start;  // 0: Z*w cofinal; 1: w infinitesimal wrt t
  if (cut == 0) {
    ch.coarse = {"trivial", std::nullopt, 0, K->name(), {0, 0}};
    ch.principal = {"t-adic", LexGroup({K->value_group().coord(0)}), 1, C->name(), {0, 0}};
    ch.fine = {"pi-adic", LexGroup({K->value_group().coord(1)}), 1, fq_name, {0, p}};
    ch.core_field = K->name();
  } else {
    ch.coarse = {"t-adic", LexGroup({K->value_group().coord(0)}), 1, C->name(), {0, 0}};
    ch.principal = {"pi-adic", LexGroup({K->value_group().coord(1)}), 1, fq_name, {0, p}};
    ch.fine = {"trivial", std::nullopt, 0, fq_name, {p, p}};
    ch.core_field = C->name();
  }
  return ch;
}

// residue of x computed stage by stage along the chain
inline Fq residue_via_stages(const PlaceChain& ch, const SeriesElement& x) {
  const LocalFieldPtr& C = ch.domain->coefficients();
  // t-adic stage (coarse or principal): class of x in the coefficient field
  auto smin = x.support_min();
  LFElt a0 = LFElt::zero(C);
  if (smin) {
    if (*smin < 0) throw NotIntegral("negative t-exponent at the t-adic stage");
    if (*smin == 0) a0 = x.coeff(0);
  }
  // pi-adic stage on the coefficient field; trivial stages pass through
  Fq r = a0.residue();
  if (ch.fine.trivial() || ch.coarse.trivial()) return r;
  throw Error("unrecognized chain shape");
}

// ---------------------------------------------------------------------------
// coarsened-ring membership

struct CoarseningMembership {
  bool by_value_group;    // head of v(x) before Conv(v(varpi)) is >= 0
  bool by_localization;   // some varpi^k * x lands in the valuation ring
};

inline CoarseningMembership coarsening_ring_membership(const SeriesFieldPtr& K,
                                                       const SeriesElement& varpi,
                                                       const SeriesElement& x,
                                                       int k_max = 256) {
  if (varpi.field() != K || x.field() != K)
    throw FieldMismatch("membership arguments live in a different series field");
  LexGroupElement w = composite_valuation(varpi);
  if (!(w > LexGroupElement::zero(K->value_group())))
    throw NotInMaximalIdeal("membership is relative to v(varpi) > 0, got " + w.str());
  if (x.terms().empty()) return {true, true};

  LexGroupElement vx = composite_valuation(x);
  ConvexSubgroup hull = conv_hull(w);
  LexGroupElement head = project_mod(vx, hull);
  bool coarse = !(head < LexGroupElement::zero(K->value_group()));

  bool localized = false;
  SeriesElement y = x;
  for (int k = 0; k <= k_max; ++k) {
    try {
      if (!(composite_valuation(y) < LexGroupElement::zero(K->value_group()))) {
        localized = true;
        break;
      }
    } catch (const WindowExhausted&) {
      break;  // shifted out of sight; nothing more to test
    }
    y = y * varpi;
  }
  return {coarse, localized};
}

// ---------------------------------------------------------------------------
// semiperfectness mod varpi

namespace detail {

using ClassForm = std::vector<std::pair<std::pair<long long, long long>, long long>>;

// digit positions (t-exponent numerator, pi-valuation) representing
// O_v / varpi O_v up to the stated truncation caps
inline std::vector<std::pair<long long, long long>> class_positions(
    const SeriesFieldPtr& K, const LexGroupElement& w, long long t_cap, long long pi_depth) {
  std::vector<std::pair<long long, long long>> pos;
  long long d = K->denom();
  for (long long i = 0; i <= std::min(t_cap * d, K->window_hi_num()); ++i) {
    long long c_lo = i == 0 ? 0 : -pi_depth;
    for (long long c = c_lo; c <= pi_depth; ++c) {
      LexGroupElement g(K->value_group(), {Rat(i, d), Rat(c)});
      if (g < w) pos.push_back({i, c});
    }
  }
  return pos;
}

// canonical digits of x below w; positions outside the caps are recorded
// with digit -1 so truncated forms stay comparable
inline ClassForm class_form(const SeriesFieldPtr& K, SeriesElement x, const LexGroupElement& w,
                            long long t_cap, long long pi_depth) {
  const LocalFieldPtr& C = K->coefficients();
  ClassForm out;
  long long d = K->denom();
  int max_steps = static_cast<int>(4 * (t_cap * d + pi_depth) + 16);
  for (int step = 0; step < max_steps; ++step) {
    LexGroupElement v = LexGroupElement::zero(K->value_group());
    try {
      v = composite_valuation(x);
    } catch (const WindowExhausted&) {
      return out;
    }
    if (!(v < w)) return out;
    if (v < LexGroupElement::zero(K->value_group()))
      throw NotIntegral("class digits of a non-integral element");
    long long n = x.support_min().value();
    auto vc = x.coeff(n).valuation_pi();
    long long c = vc.value();
    if (n > t_cap * d || c > pi_depth || c < -pi_depth) {
      out.push_back({{n, c}, -1});
      return out;
    }
    Fq digit = x.coeff(n).shift_pi(-c).residue();
    out.push_back({{n, c}, digit.index()});
    LFElt lift = teichmuller_lift(C, digit).shift_pi(c);
    x = x - SeriesElement::monomial(K, lift, n);
  }
  throw SizeLimit("class reduction did not stabilize");
}

inline SeriesElement lift_class(const SeriesFieldPtr& K,
                                const std::vector<std::pair<long long, long long>>& pos,
                                const std::vector<long long>& digits) {
  const LocalFieldPtr& C = K->coefficients();
  SeriesElement x = SeriesElement::zero(K);
  for (size_t j = 0; j < pos.size(); ++j) {
    if (digits[j] == 0) continue;
    Fq dg = C->residue_field()->from_index(digits[j]);
    x = x + SeriesElement::monomial(K, teichmuller_lift(C, dg).shift_pi(pos[j].second),
                                    pos[j].first);
  }
  return x;
}

}  // namespace detail

struct SemiperfectReport {
  bool holds = false;
  long long classes_checked = 0;
  std::optional<SeriesElement> witness;  // class with no p-th root mod varpi
  std::string witness_str;
  bool lemma_applicable = false;  // v(varpi) = v(p) and v(p) not minimal positive
  bool hull_p_divisible = false;  // Conv(v(p)) p-divisible coordinate by coordinate
};

// Does every class of O_v / varpi O_v (up to the truncation caps) have a
// p-th root mod varpi? Frobenius descends to classes, so the probe raises
// every truncated class representative to the p-th power and compares
// canonical digit forms.
inline SemiperfectReport semiperfect_test(const SeriesFieldPtr& K, const SeriesElement& varpi,
                                          long long pi_depth, long long t_cap = 2,
                                          long long class_cap = 8192) {
  if (varpi.field() != K) throw FieldMismatch("varpi lives in a different series field");
  LexGroupElement w = composite_valuation(varpi);
  if (!(w > LexGroupElement::zero(K->value_group())))
    throw NotInMaximalIdeal("semiperfectness is relative to v(varpi) > 0, got " + w.str());

  auto pos = detail::class_positions(K, w, t_cap, pi_depth);
  long long q = K->coefficients()->residue_order();
  double size = 1;
  for (size_t j = 0; j < pos.size(); ++j) {
    size *= static_cast<double>(q);
    if (size > static_cast<double>(class_cap))
      throw SizeLimit("class space exceeds the cap of " + std::to_string(class_cap));
  }
  long long total = 1;
  for (size_t j = 0; j < pos.size(); ++j) total *= q;

  SemiperfectReport rep;
  rep.classes_checked = total;

  std::set<detail::ClassForm> image;
  std::vector<long long> digits(pos.size(), 0);
  for (long long idx = 0; idx < total; ++idx) {
    long long v = idx;
    for (size_t j = 0; j < pos.size(); ++j) {
      digits[j] = v % q;
      v /= q;
    }
    SeriesElement y = detail::lift_class(K, pos, digits);
    image.insert(detail::class_form(K, y.pow(K->p()), w, t_cap, pi_depth));
  }

  rep.holds = true;
  for (long long idx = 0; idx < total; ++idx) {
    long long v = idx;
    for (size_t j = 0; j < pos.size(); ++j) {
      digits[j] = v % q;
      v /= q;
    }
    SeriesElement x = detail::lift_class(K, pos, digits);
    if (image.find(detail::class_form(K, x, w, t_cap, pi_depth)) == image.end()) {
      rep.holds = false;
      rep.witness = x;
      rep.witness_str = x.str();
      break;
    }
  }

  LexGroupElement vp =
      composite_valuation(SeriesElement::from_int(K, K->p()));
  auto mp = minimal_positive_element(K->value_group());
  rep.lemma_applicable = (w == vp) && !(mp && *mp == vp);
  ConvexSubgroup hull = conv_hull(vp);
  rep.hull_p_divisible = true;
  for (int i = hull.tail_start; i < K->value_group().rank(); ++i)
    if (!K->value_group().coord(i).divisible_by(K->p())) rep.hull_p_divisible = false;
  return rep;
}

// ---------------------------------------------------------------------------
// iterated-root tower probe: K_0 = Q_p, K_{j+1} = K_j(pi_j^{1/p}).
// Classes of O_{K_depth}/p acquire p-th roots one level up, checked by
// matching Teichmuller digits along pi_{depth+1}^p = pi_depth.

struct RootTowerReport {
  long long p = 0;
  int depth = 0;
  long long samples_checked = 0;
  bool holds = false;
  bool limit_group_p_divisible = false;  // Z[1/p], the value group the tower approaches
  std::string tower_name;
};

inline RootTowerReport semiperfect_root_tower(long long p, int depth, int samples,
                                              unsigned long long seed) {
  if (depth < 0 || depth > 6) throw SizeLimit("tower depth must lie in [0, 6]");
  std::vector<LocalFieldPtr> K;
  K.push_back(LocalField::ground(p));
  for (int j = 0; j <= depth; ++j) {
    std::vector<LFElt> low(static_cast<size_t>(p), LFElt::zero(K.back()));
    low[0] = -LFElt::uniformizer(K.back());
    K.push_back(LocalField::eisenstein(K.back(), std::move(low), "[root]"));
  }
  const LocalFieldPtr& KN = K[static_cast<size_t>(depth)];
  const LocalFieldPtr& KT = K[static_cast<size_t>(depth) + 1];

  long long L = KN->e_abs();  // = v_{K_depth}(p) in pi-units
  std::mt19937_64 rng(seed);
  const FqFieldPtr& k = KN->residue_field();

  RootTowerReport rep{p, depth, 0, true, coord_zp(p).divisible_by(p), KT->name()};
  for (int s = 0; s < samples; ++s) {
    std::vector<Fq> dig(static_cast<size_t>(L));
    LFElt x = LFElt::zero(KN);
    for (long long c = 0; c < L; ++c) {
      dig[static_cast<size_t>(c)] = k->from_int(static_cast<long long>(rng() % static_cast<unsigned long long>(p)));
      x = x + teichmuller_lift(KN, dig[static_cast<size_t>(c)]).shift_pi(c);
    }
    LFElt y = LFElt::zero(KT);
    for (long long c = 0; c < L; ++c)
      y = y + teichmuller_lift(KT, dig[static_cast<size_t>(c)]).shift_pi(c);
    LFElt diff = y.pow(p) - LFElt::embed(KT, x);
    ++rep.samples_checked;
    if (diff.valuation_lower_bound_pi() < KT->e_abs()) {
      rep.holds = false;
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// axiom bundle for the composite place

struct ZAxiomsReport {
  bool henselian_mixed_char = false;  // char-0 field, residue char p, lift spot checks
  bool vp_minimal_positive = false;
  bool value_group_z = false;
  bool residue_prime_field = false;
  long long hensel_samples = 0;

  bool all() const {
    return henselian_mixed_char && vp_minimal_positive && value_group_z && residue_prime_field;
  }
};

namespace detail {

// one Newton lift of X^m - u from seed 1; success means the residual is
// invisible in the window or provably below the precision floor
inline bool hensel_spot_check(const SeriesFieldPtr& K, long long m, const SeriesElement& u) {
  SeriesElement x = SeriesElement::one(K);
  long long vanish = K->coefficients()->default_pi_precision() / 2;
  for (int it = 0; it < 40; ++it) {
    SeriesElement r = x.pow(m) - u;
    bool small = true;
    for (const auto& [n, c] : r.terms())
      if (c.valuation_lower_bound_pi() < vanish) small = false;
    if (small) return true;
    SeriesElement deriv = SeriesElement::from_int(K, m) * x.pow(m - 1);
    x = x - r * deriv.inverse();
  }
  return false;
}

}  // namespace detail

inline ZAxiomsReport z_axioms_check(const SeriesFieldPtr& K, int samples = 20,
                                    unsigned long long seed = 2026) {
  ZAxiomsReport rep;
  rep.hensel_samples = samples;
  long long p = K->p();
  const LocalFieldPtr& C = K->coefficients();

  std::mt19937_64 rng(seed);
  std::vector<long long> degrees;
  for (long long cand : {2, 3, 5, 7})
    if (cand % p != 0) degrees.push_back(cand);
  bool lifts = true;
  for (int s = 0; s < samples && lifts; ++s) {
    long long m = degrees[static_cast<size_t>(s) % degrees.size()];
    LFElt a = LFElt::from_int(C, 1 + static_cast<long long>(rng() % static_cast<unsigned long long>(p * p)));
    SeriesElement z = SeriesElement::zero(K);
    switch (s % 3) {
      case 0:
        z = SeriesElement::from_coeff(K, LFElt::from_int(C, p) * a);
        break;
      case 1:
        z = SeriesElement::monomial(K, a, 1 + static_cast<long long>(rng() % 2));
        break;
      default:
        z = SeriesElement::from_coeff(K, a.shift_pi(1));
        break;
    }
    lifts = detail::hensel_spot_check(K, m, SeriesElement::one(K) + z);
  }
  rep.henselian_mixed_char = lifts && C->residue_field()->p() == p;

  LexGroupElement vp = composite_valuation(SeriesElement::from_int(K, p));
  auto mp = minimal_positive_element(K->value_group());
  rep.vp_minimal_positive = mp.has_value() && *mp == vp;
  rep.value_group_z = is_z_group(K->value_group());
  rep.residue_prime_field = C->residue_field()->degree() == 1;
  return rep;
}

// ---------------------------------------------------------------------------
// descriptors: "Qp(3)((t))", "Qp(3)[zeta_p]((t))", "Puiseux(Qp(3),d=6)"

inline SeriesFieldPtr series_field_from_descriptor(const std::string& s, int prec_digits = -1) {
  size_t pos = 0;
  if (s.rfind("Puiseux(", 0) == 0) {
    pos = 8;
    LocalFieldPtr C = parse_local_field(s, pos, prec_digits);
    if (s.compare(pos, 3, ",d=") != 0) throw ParseError("expected ',d=' in Puiseux descriptor", pos);
    pos += 3;
    size_t start = pos;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw ParseError("expected denominator", pos);
    long long d = std::stoll(s.substr(start, pos - start));
    if (pos >= s.size() || s[pos] != ')') throw ParseError("unclosed Puiseux descriptor", pos);
    ++pos;
    if (pos != s.size()) throw ParseError("trailing characters in series descriptor", pos);
    return SeriesField::puiseux(C, d);
  }
  LocalFieldPtr C = parse_local_field(s, pos, prec_digits);
  if (s.compare(pos, 5, "((t))") != 0) throw ParseError("expected '((t))'", pos);
  pos += 5;
  if (pos != s.size()) throw ParseError("trailing characters in series descriptor", pos);
  return SeriesField::laurent(C);
}

}  // namespace vfl
