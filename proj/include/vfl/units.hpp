// Multiplicative structure of a local field: the higher unit filtration
// U^(0) >= U^(1) >= ..., canonical coset representatives, p-th power
// subgroups, and F_p-dimension counts for F^x / F^(xq).
#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "localfield.hpp"

namespace vfl {

// x = pi^a * zeta * u with zeta the Teichmuller lift of the leading
// residue and u a principal unit (u = 1 mod pi)
struct MultiplicativeParts {
  long long a;
  LFElt zeta;
  LFElt unit;
};

inline MultiplicativeParts multiplicative_decompose(const LFElt& x) {
  auto v = x.valuation_pi();  // may throw PrecisionExhausted
  if (!v) throw PreconditionFailed("cannot decompose zero");
  LFElt y = x.shift_pi(-*v);
  LFElt zeta = teichmuller_lift(x.field(), y.residue());
  return {*v, zeta, y * zeta.inverse()};
}

// Teichmuller lifts of every residue element, ordered by residue index,
// each stable to pi-precision `target`
inline std::vector<LFElt> residue_system(const LocalFieldPtr& F, long long target) {
  std::vector<LFElt> out;
  const auto& k = F->residue_field();
  out.reserve(static_cast<size_t>(k->order()));
  for (long long i = 0; i < k->order(); ++i)
    out.push_back(teichmuller_lift(F, k->from_index(i), target));
  return out;
}

// the complete set {1 + a_k pi^k + ... + a_{l-1} pi^{l-1}} of coset
// representatives of U^(k)/U^(l), digits running over the Teichmuller
// residue system (zero included); |residue field|^(l-k) elements
inline std::vector<LFElt> filtration_representatives(const LocalFieldPtr& F, long long k,
                                                     long long l, long long cap = 1000000) {
  if (k < 1 || l <= k) throw PreconditionFailed("levels must satisfy 1 <= k < l");
  long long q = F->residue_order();
  long long count = 1;
  for (long long j = k; j < l; ++j) {
    count *= q;
    if (count > cap) throw SizeLimit("U^(k)/U^(l) has more than " + std::to_string(cap) + " cosets");
  }
  std::vector<LFElt> digits = residue_system(F, l + 2);
  std::vector<LFElt> pi_pow(static_cast<size_t>(l));
  pi_pow[static_cast<size_t>(k)] = LFElt::uniformizer(F).pow(k);
  for (long long j = k + 1; j < l; ++j)
    pi_pow[static_cast<size_t>(j)] = pi_pow[static_cast<size_t>(j - 1)] * LFElt::uniformizer(F);

  std::vector<LFElt> out;
  out.reserve(static_cast<size_t>(count));
  std::vector<long long> idx(static_cast<size_t>(l - k), 0);
  for (long long n = 0; n < count; ++n) {
    LFElt u = LFElt::one(F);
    for (long long j = k; j < l; ++j) {
      long long d = idx[static_cast<size_t>(j - k)];
      if (d) u = u + digits[static_cast<size_t>(d)] * pi_pow[static_cast<size_t>(j)];
    }
    out.push_back(u);
    // odometer, lowest level most significant so output is ordered by leading digit
    for (long long j = l - k; j-- > 0;) {
      if (++idx[static_cast<size_t>(j)] < q) break;
      idx[static_cast<size_t>(j)] = 0;
    }
  }
  return out;
}

// multiplicative digits of a principal unit: u = prod_k (1 + tau(d_k) pi^k)
// mod U^(levels+1), one residue digit per level
inline std::vector<Fq> unit_digits(const LocalFieldPtr& F, LFElt u, long long levels) {
  std::vector<Fq> out;
  out.reserve(static_cast<size_t>(levels));
  LFElt pik = LFElt::uniformizer(F);
  for (long long k = 1; k <= levels; ++k) {
    LFElt r = u - LFElt::one(F);
    Fq d = F->residue_field()->zero();
    if (r.valuation_lower_bound_pi() <= k) d = r.shift_pi(-k).residue();
    out.push_back(d);
    if (!d.is_zero()) u = u / (LFElt::one(F) + teichmuller_lift(F, d, levels + 2) * pik);
    if (k < levels) pik = pik * LFElt::uniformizer(F);
  }
  return out;
}

namespace detail {

// group-theoretic row reduction inside U^(1)/U^(levels+1): pivots are
// (level, residue coordinate) pairs, lowest level first
class UnitReducer {
 public:
  UnitReducer(LocalFieldPtr F, long long levels)
      : F_(std::move(F)), levels_(levels), f_(F_->f_abs()),
        rows_(static_cast<size_t>(levels)) {}

  bool insert(LFElt u) {
    long long p = F_->p();
    for (;;) {
      auto dg = unit_digits(F_, u, levels_);
      long long lead = 0;
      while (lead < levels_ && dg[static_cast<size_t>(lead)].is_zero()) ++lead;
      if (lead == levels_) return false;  // trivial in the quotient
      std::vector<long long> co = coords(dg[static_cast<size_t>(lead)]);
      bool reduced = false;
      for (const Row& row : rows_[static_cast<size_t>(lead)]) {
        long long c = co[static_cast<size_t>(row.pivot)];
        if (c == 0) continue;
        u = u * row.elt.pow(-c);  // row pivot coordinate is normalized to 1
        reduced = true;
        break;
      }
      if (reduced) continue;
      int piv = 0;
      while (co[static_cast<size_t>(piv)] == 0) ++piv;
      u = u.pow(mod_inv(co[static_cast<size_t>(piv)], p));
      auto dg2 = unit_digits(F_, u, levels_);
      rows_[static_cast<size_t>(lead)].push_back(
          {piv, coords(dg2[static_cast<size_t>(lead)]), u});
      return true;
    }
  }

  long long rank() const {
    long long r = 0;
    for (const auto& lv : rows_) r += static_cast<long long>(lv.size());
    return r;
  }

 private:
  std::vector<long long> coords(const Fq& d) const {
    std::vector<long long> v(static_cast<size_t>(f_), 0);
    for (int i = 0; i < f_; ++i) v[static_cast<size_t>(i)] = d.rep().coeff(i);
    return v;
  }

  struct Row {
    int pivot;
    std::vector<long long> coords;
    LFElt elt;
  };
  LocalFieldPtr F_;
  long long levels_;
  int f_;
  std::vector<std::vector<Row>> rows_;
};

}  // namespace detail

// {1 + b_i pi^k : residue power-basis lifts b_i, 1 <= k <= ep}; together
// with pi these generate F^x modulo p-th powers
inline std::vector<LFElt> principal_unit_generators(const LocalFieldPtr& F) {
  if (!F->has_zeta_p()) throw ZetaPMissing("generators need zeta_p in the field");
  long long e = F->e_over_zeta(), L = e * F->p();
  int f = F->f_abs();
  Fq g = F->residue_field()->gen();
  std::vector<LFElt> lifts;
  Fq b = F->residue_field()->one();
  for (int i = 0; i < f; ++i) {
    lifts.push_back(teichmuller_lift(F, b, L + 2));
    b = b * g;
  }
  std::vector<LFElt> out;
  LFElt pik = LFElt::uniformizer(F);
  for (long long k = 1; k <= L; ++k) {
    for (int i = 0; i < f; ++i) out.push_back(LFElt::one(F) + lifts[static_cast<size_t>(i)] * pik);
    pik = pik * LFElt::uniformizer(F);
  }
  return out;
}

struct GeneratorSet {
  LocalFieldPtr field;
  std::vector<LFElt> elements;  // pi first, then the principal-unit generators
  bool is_basis;                // true exactly on the cyclotomic line (e = f = 1)
};

inline GeneratorSet generator_set(const LocalFieldPtr& F) {
  std::vector<LFElt> out = {LFElt::uniformizer(F)};
  auto gens = principal_unit_generators(F);
  out.insert(out.end(), gens.begin(), gens.end());
  bool basis = F->e_over_zeta() == 1 && F->f_abs() == 1;
  return {F, std::move(out), basis};
}

// F_q-dimension of F^x / F^(xq) with an explicit basis of classes
struct PowerClassSpace {
  LocalFieldPtr field;
  long long q;
  std::vector<LFElt> basis;
  long long dim;
};

inline PowerClassSpace p_rank(const LocalFieldPtr& F, long long q) {
  if (!detail::small_prime(q)) throw PreconditionFailed("exponent must be prime");
  long long p = F->p();
  if (q != p) {
    // prime-to-p powers are open: only pi^Z and the roots of unity contribute
    std::vector<LFElt> basis = {LFElt::uniformizer(F)};
    if ((F->residue_order() - 1) % q == 0)
      basis.push_back(teichmuller_lift(F, multiplicative_generator(F->residue_field())));
    long long dim = static_cast<long long>(basis.size());
    return {F, q, std::move(basis), dim};
  }
  if (!F->has_zeta_p())
    throw ZetaPMissing("the q = p dimension count requires zeta_p in the field");
  long long L = F->e_over_zeta() * p;
  detail::UnitReducer red(F, L);
  auto gens = principal_unit_generators(F);
  for (const LFElt& g : gens) red.insert(g.pow(p));  // span of the p-th power image
  std::vector<LFElt> basis = {LFElt::uniformizer(F)};
  for (const LFElt& g : gens)
    if (red.insert(g)) basis.push_back(g);
  long long dim = static_cast<long long>(basis.size());
  return {F, p, std::move(basis), dim};
}

// solve (1 + pi^k X)^p = t by Hensel refinement; t must lie in U^(m+1)
// where m = min(e_abs + k, k*p) is the level of the leading terms
inline LFElt open_pth_power(const LocalFieldPtr& F, const LFElt& t, long long k,
                            long long target = 12) {
  long long p = F->p();
  long long m = std::min(F->e_abs() + k, k * p);
  std::vector<LFElt> h;
  h.push_back((LFElt::one(F) - t).shift_pi(-m));
  for (long long j = 1; j <= p; ++j)
    h.push_back(LFElt::from_int(F, binomial(p, j)).shift_pi(k * j - m));
  LFElt x = hensel_lift(h, LFElt::zero(F), target);
  return LFElt::one(F) + x.shift_pi(k);
}

struct PowerSubgroupReport {
  LocalFieldPtr field;
  long long e;  // ramification index over Q_p(zeta_p)
  bool inclusion_holds;     // U^(ep+1) inside (U^(e))^p, certified by solving
  bool equality_checked;    // the two-sided comparison runs on the cyclotomic line only
  bool equality_holds;      // U^(p+1) = (U^(1))^p
  long long targets_solved;
  std::vector<std::string> counterexamples;
};

inline PowerSubgroupReport pth_power_subgroup_check(const LocalFieldPtr& F,
                                                    int deeper_samples = 100,
                                                    unsigned long long seed = 1,
                                                    long long cap = 1000000) {
  if (!F->has_zeta_p()) throw ZetaPMissing("the power subgroup comparison requires zeta_p");
  long long p = F->p(), q = F->residue_order();
  if (q > cap) throw SizeLimit("residue field too large to enumerate");
  long long e = F->e_over_zeta(), m = e * p;
  PowerSubgroupReport rep{F, e, true, false, false, 0, {}};

  auto lifts = residue_system(F, m + 10);
  LFElt pi = LFElt::uniformizer(F);
  std::mt19937_64 rng(seed);

  auto check_target = [&](const LFElt& t) {
    LFElt u = open_pth_power(F, t, e);
    bool ok = u.valuation_lower_bound_pi() == 0 &&
              (u - LFElt::one(F)).valuation_lower_bound_pi() >= e &&
              congruent_pi(u.pow(p), t, m + 8);
    ++rep.targets_solved;
    if (!ok) {
      rep.inclusion_holds = false;
      rep.counterexamples.push_back("target " + t.str());
    }
  };

  // every class of U^(ep+1)/U^(ep+2), then random deeper targets
  for (long long d = 0; d < q; ++d)
    check_target(LFElt::one(F) + lifts[static_cast<size_t>(d)] * pi.pow(m + 1));
  for (int s = 0; s < deeper_samples; ++s) {
    LFElt t = LFElt::one(F);
    for (long long j = m + 1; j <= m + 5; ++j)
      t = t + lifts[static_cast<size_t>(rng() % q)] * pi.pow(j);
    check_target(t);
  }

  if (e == 1 && F->f_abs() == 1) {
    rep.equality_checked = true;
    rep.equality_holds = true;
    // u^p mod U^(p+2) only depends on u mod U^(3)
    auto reps = filtration_representatives(F, 1, 3);
    std::vector<LFElt> images;
    std::vector<bool> hit(static_cast<size_t>(p), false);
    for (const LFElt& u : reps) {
      LFElt w = u.pow(p);
      LFElt r = w - LFElt::one(F);
      if (r.valuation_lower_bound_pi() <= p) {  // must land in U^(p+1)
        rep.equality_holds = false;
        rep.counterexamples.push_back("power escapes U^(p+1): " + u.str());
        continue;
      }
      Fq cls = F->residue_field()->zero();
      if (r.valuation_lower_bound_pi() <= p + 1) cls = r.shift_pi(-(p + 1)).residue();
      hit[static_cast<size_t>(cls.index())] = true;
      images.push_back(w);
    }
    for (long long c = 0; c < p; ++c)
      if (!hit[static_cast<size_t>(c)]) {
        rep.equality_holds = false;
        rep.counterexamples.push_back("class " + std::to_string(c) + " of U^(p+1)/U^(p+2) unreached");
      }
    // close the argument: open each class representative constructively
    if (rep.equality_holds) {
      for (long long c = 0; c < p; ++c) {
        LFElt t = LFElt::one(F) + lifts[static_cast<size_t>(c)] * pi.pow(p + 1);
        bool opened = false;
        for (size_t i = 0; i < reps.size() && !opened; ++i) {
          LFElt s = t / images[i];
          if ((s - LFElt::one(F)).valuation_lower_bound_pi() < p + 2) continue;
          LFElt w = open_pth_power(F, s, 2);
          LFElt root = reps[i] * w;
          opened = congruent_pi(root.pow(p), t, p + 8) &&
                   (root - LFElt::one(F)).valuation_lower_bound_pi() >= 1;
          ++rep.targets_solved;
        }
        if (!opened) {
          rep.equality_holds = false;
          rep.counterexamples.push_back("no principal-unit p-th root for class " + std::to_string(c));
        }
      }
    }
  }
  return rep;
}

// residue of p / pi^(p-1) on the cyclotomic line; the contract is -1
inline Fq residue_of_p_over_uniformizer(const LocalFieldPtr& F) {
  if (!F->pi_is_zeta_minus_one())
    throw PreconditionFailed("field must have uniformizer zeta_p - 1");
  long long p = F->p();
  return LFElt::from_int(F, p).shift_pi(-(p - 1)).residue();
}

}  // namespace vfl
