// Cyclic-extension machinery: relative norms as multiplication-matrix
// determinants, norm images inside F^x mod p-th powers, the embedding
// criterion for degree-p extensions into degree-p^2 cyclic ones, and
// the finite-field side: Hilbert 90 solvers and the Artin-Schreier
// tower construction.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "units.hpp"

namespace vfl {

// ---- relative finite-field extensions ----

// F_{p^(m*r)} over F_{p^m}; beta is the image of the base generator
struct FqExtension {
  FqFieldPtr base;
  FqFieldPtr top;
  Fq beta;
  int rel_deg;
};

inline FqExtension make_fq_extension(long long p, int m, int r) {
  if (m < 1 || r < 2) throw PreconditionFailed("need m >= 1 and relative degree >= 2");
  FqFieldPtr base = FqField::make(p, m);
  FqFieldPtr top = FqField::make(p, m * r);
  // the base modulus splits in the top field; pick its smallest root
  Fq beta = top->zero();
  bool found = false;
  for (long long i = 0; i < top->order() && !found; ++i) {
    Fq cand = top->from_index(i);
    Fq acc = top->zero();
    for (int j = base->modulus().degree(); j >= 0; --j)
      acc = acc * cand + top->from_int(base->modulus().coeff(j));
    if (acc.is_zero()) { beta = cand; found = true; }
  }
  if (!found) throw Error("base modulus has no root in the top field");
  return {std::move(base), std::move(top), beta, r};
}

inline Fq fq_embed(const FqExtension& E, const Fq& b) {
  Fq acc = E.top->zero();
  for (int j = b.rep().degree(); j >= 0; --j)
    acc = acc * E.beta + E.top->from_int(b.rep().coeff(j));
  return acc;
}

// sigma = relative Frobenius, the canonical generator of the automorphism group
inline Fq frobenius_rel(const FqExtension& E, const Fq& x) { return x.pow(E.base->order()); }

inline Fq trace_rel(const FqExtension& E, const Fq& x) {
  Fq acc = x, t = x;
  for (int i = 1; i < E.rel_deg; ++i) { t = frobenius_rel(E, t); acc = acc + t; }
  return acc;
}

namespace detail {

// solve M v = rhs over F_p (consistent systems; free variables set to 0)
inline std::vector<long long> solve_fp(std::vector<std::vector<long long>> M,
                                       std::vector<long long> rhs, long long p) {
  size_t n = M.size();
  std::vector<size_t> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < n && row < n; ++col) {
    size_t sel = row;
    while (sel < n && M[sel][col] % p == 0) ++sel;
    if (sel == n) continue;
    std::swap(M[sel], M[row]);
    std::swap(rhs[sel], rhs[row]);
    long long inv = mod_inv(M[row][col], p);
    for (size_t j = 0; j < n; ++j) M[row][j] = mod_norm(M[row][j] * inv, p);
    rhs[row] = mod_norm(rhs[row] * inv, p);
    for (size_t i = 0; i < n; ++i) {
      if (i == row || M[i][col] % p == 0) continue;
      long long f = M[i][col];
      for (size_t j = 0; j < n; ++j) M[i][j] = mod_norm(M[i][j] - f * M[row][j], p);
      rhs[i] = mod_norm(rhs[i] - f * rhs[row], p);
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (size_t i = row; i < n; ++i)
    if (rhs[i] % p != 0) throw PreconditionFailed("linear system is inconsistent");
  std::vector<long long> v(n, 0);
  for (size_t i = 0; i < row; ++i) v[pivot_col[i]] = rhs[i];
  return v;
}

inline std::vector<long long> fp_rep(const Fq& x, int n) {
  std::vector<long long> v(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = x.rep().coeff(i);
  return v;
}

}  // namespace detail

// coordinates of x in the power basis {g^i : i < rel_deg} of top over base,
// g the canonical generator of the top field
inline std::vector<Fq> rel_coords(const FqExtension& E, const Fq& x) {
  int n = E.top->degree(), m = E.base->degree(), r = E.rel_deg;
  long long p = E.top->p();
  // columns indexed by (i, j): g^i * beta^j
  std::vector<std::vector<long long>> M(static_cast<size_t>(n),
                                        std::vector<long long>(static_cast<size_t>(n), 0));
  Fq gi = E.top->one();
  for (int i = 0; i < r; ++i) {
    Fq gb = gi;
    for (int j = 0; j < m; ++j) {
      auto col = detail::fp_rep(gb, n);
      for (int t = 0; t < n; ++t) M[static_cast<size_t>(t)][static_cast<size_t>(i * m + j)] = col[static_cast<size_t>(t)];
      gb = gb * E.beta;
    }
    gi = gi * E.top->gen();
  }
  auto v = detail::solve_fp(std::move(M), detail::fp_rep(x, n), p);
  std::vector<Fq> out;
  for (int i = 0; i < r; ++i) {
    std::vector<long long> c(static_cast<size_t>(m), 0);
    for (int j = 0; j < m; ++j) c[static_cast<size_t>(j)] = v[static_cast<size_t>(i * m + j)];
    out.push_back(E.base->element(FpPoly(p, std::move(c))));
  }
  return out;
}

// determinant over one Fq field by Gaussian elimination (exact)
inline Fq fq_det(std::vector<std::vector<Fq>> a, const FqFieldPtr& k) {
  size_t n = a.size();
  Fq det = k->one();
  for (size_t col = 0; col < n; ++col) {
    size_t sel = col;
    while (sel < n && a[sel][col].is_zero()) ++sel;
    if (sel == n) return k->zero();
    if (sel != col) { std::swap(a[sel], a[col]); det = -det; }
    det = det * a[col][col];
    Fq inv = a[col][col].inverse();
    for (size_t i = col + 1; i < n; ++i) {
      Fq f = a[i][col] * inv;
      if (f.is_zero()) continue;
      for (size_t j = col; j < n; ++j) a[i][j] = a[i][j] - f * a[col][j];
    }
  }
  return det;
}

// ---- cyclic extensions ----

struct CyclicExtension {
  enum class Kind { Kummer, Quadratic, Finite };
  Kind kind;
  long long degree;
  std::string generator_action;

  // local-field case
  LocalFieldPtr base_field;  // K
  LocalFieldPtr ext_field;   // E, built as a single tower layer over K
  LFElt operand;             // Kummer c with theta^p = c, or the quadratic d
  LFElt root;                // theta

  // finite case
  std::optional<FqExtension> finite;

  // theta^p = c with v(c) = 1, so c is automatically not a p-th power
  static CyclicExtension kummer(const LocalFieldPtr& K, const LFElt& c) {
    if (!K->has_zeta_p()) throw ZetaPMissing("Kummer extensions need zeta_p in the base");
    long long p = K->p();
    if (p == 2) return quadratic(K, c);
    auto vc = c.valuation_pi();
    if (!vc || *vc != 1)
      throw PreconditionFailed("only Kummer operands of valuation 1 are supported");
    std::vector<LFElt> low(static_cast<size_t>(p), LFElt::zero(K));
    low[0] = -c;
    auto E = LocalField::eisenstein(K, std::move(low), "[kummer]");
    return {Kind::Kummer, p, "theta -> zeta_p * theta", K, E,
            c, LFElt::uniformizer(E), std::nullopt};
  }

  static CyclicExtension quadratic(const LocalFieldPtr& K, const LFElt& d) {
    if (K->p() != 2)
      throw PreconditionFailed("a quadratic extension is cyclic of degree p only when p = 2");
    auto adj = adjoin_sqrt(K, d);  // PreconditionFailed when d is a square
    return {Kind::Quadratic, 2, "theta -> -theta", K, adj.ext, d, adj.root, std::nullopt};
  }

  static CyclicExtension finite_ext(long long p, int m, int r) {
    auto E = make_fq_extension(p, m, r);
    CyclicExtension out{Kind::Finite, r, "x -> x^" + std::to_string(E.base->order()),
                        nullptr, nullptr, LFElt(), LFElt(), std::move(E)};
    return out;
  }
};

inline LFElt relative_norm(const CyclicExtension& E, const LFElt& x) {
  if (E.kind == CyclicExtension::Kind::Finite)
    throw PreconditionFailed("element does not match the extension kind");
  if (x.field() != E.ext_field) throw FieldMismatch("norm argument must live in the extension");
  return det_leibniz(multiplication_matrix(x), E.base_field);
}

inline Fq relative_norm(const CyclicExtension& E, const Fq& x) {
  if (E.kind != CyclicExtension::Kind::Finite)
    throw PreconditionFailed("element does not match the extension kind");
  const FqExtension& T = *E.finite;
  int r = T.rel_deg;
  std::vector<std::vector<Fq>> mat(static_cast<size_t>(r),
                                   std::vector<Fq>(static_cast<size_t>(r), T.base->zero()));
  Fq cur = x;
  for (int j = 0; j < r; ++j) {
    auto col = rel_coords(T, cur);
    for (int i = 0; i < r; ++i) mat[static_cast<size_t>(i)][static_cast<size_t>(j)] = col[static_cast<size_t>(i)];
    if (j + 1 < r) cur = cur * T.top->gen();
  }
  return fq_det(std::move(mat), T.base);
}

// ---- classes of K^x modulo p-th powers, with coordinates ----

// the p_rank basis together with a reduction that expresses any element's
// class as an exponent vector over that basis; built by the same two-phase
// insertion as p_rank, with each surviving row remembering its own class
class ClassSpace {
 public:
  explicit ClassSpace(const LocalFieldPtr& K)
      : K_(K), L_(K->e_over_zeta() * K->p()), rows_(static_cast<size_t>(L_)) {
    long long p = K_->p();
    auto gens = principal_unit_generators(K_);
    n_gens_ = static_cast<long long>(gens.size());
    std::vector<long long> tag0(static_cast<size_t>(n_gens_), 0);
    for (const LFElt& g : gens) insert(g.pow(p), tag0);  // p-th powers carry no class
    std::vector<LFElt> basis = {LFElt::uniformizer(K_)};
    basis_of_gen_.assign(static_cast<size_t>(n_gens_), -1);
    for (long long i = 0; i < n_gens_; ++i) {
      auto tag = tag0;
      tag[static_cast<size_t>(i)] = 1;
      if (insert(gens[static_cast<size_t>(i)], std::move(tag))) {
        basis_of_gen_[static_cast<size_t>(i)] = static_cast<long long>(basis.size());
        basis.push_back(gens[static_cast<size_t>(i)]);
      }
    }
    long long dim = static_cast<long long>(basis.size());
    space_ = {K_, p, std::move(basis), dim};
  }

  const PowerClassSpace& space() const { return space_; }

  // exponents of y over the basis (pi first), each in [0, p)
  std::vector<long long> coordinates(const LFElt& y) const {
    long long p = K_->p();
    auto v = y.valuation_pi();
    if (!v) throw PreconditionFailed("zero has no class");
    std::vector<long long> out(static_cast<size_t>(space_.dim), 0);
    out[0] = mod_norm(*v, p);
    LFElt u = multiplicative_decompose(y.shift_pi(-*v)).unit;
    // roots of unity of prime-to-p order are themselves p-th powers, so
    // only the principal-unit part carries class data
    std::vector<long long> acc(static_cast<size_t>(n_gens_), 0);
    if (!reduce(u, &acc)) throw Error("class escapes the spanned quotient");
    for (long long i = 0; i < n_gens_; ++i) {
      if (acc[static_cast<size_t>(i)] == 0) continue;
      long long b = basis_of_gen_[static_cast<size_t>(i)];
      if (b < 0) throw Error("tag references a collapsed generator");
      out[static_cast<size_t>(b)] = acc[static_cast<size_t>(i)];
    }
    return out;
  }

 private:
  // tags are exponent vectors over the generator list; reductions keep each
  // row's tag equal to the class of its stored element
  struct Row {
    int pivot;
    LFElt elt;
    std::vector<long long> tag;
  };

  // echelon walk shared by construction and coordinates(); returns true when
  // u reduces to the trivial class, accumulating row tags into *acc
  bool reduce(LFElt& u, std::vector<long long>* acc) const {
    long long p = K_->p();
    int f = K_->f_abs();
    for (;;) {
      auto dg = unit_digits(K_, u, L_);
      long long lead = 0;
      while (lead < L_ && dg[static_cast<size_t>(lead)].is_zero()) ++lead;
      if (lead == L_) return true;
      std::vector<long long> co(static_cast<size_t>(f), 0);
      for (int i = 0; i < f; ++i) co[static_cast<size_t>(i)] = dg[static_cast<size_t>(lead)].rep().coeff(i);
      bool hit = false;
      for (const Row& row : rows_[static_cast<size_t>(lead)]) {
        long long c = co[static_cast<size_t>(row.pivot)];
        if (c == 0) continue;
        u = u * row.elt.pow(-c);
        if (acc)
          for (size_t i = 0; i < acc->size(); ++i)
            (*acc)[i] = mod_norm((*acc)[i] + c * row.tag[i], p);
        hit = true;
        break;
      }
      if (!hit) return false;  // a fresh pivot would be needed
    }
  }

  bool insert(LFElt u, std::vector<long long> tag) {
    long long p = K_->p();
    int f = K_->f_abs();
    std::vector<long long> acc(static_cast<size_t>(n_gens_), 0);
    if (reduce(u, &acc)) return false;
    // what was divided off folds back into this row's class
    for (size_t i = 0; i < tag.size(); ++i) tag[i] = mod_norm(tag[i] - acc[i], p);
    auto dg = unit_digits(K_, u, L_);
    long long lead = 0;
    while (dg[static_cast<size_t>(lead)].is_zero()) ++lead;
    std::vector<long long> co(static_cast<size_t>(f), 0);
    for (int i = 0; i < f; ++i) co[static_cast<size_t>(i)] = dg[static_cast<size_t>(lead)].rep().coeff(i);
    int piv = 0;
    while (co[static_cast<size_t>(piv)] == 0) ++piv;
    long long s = mod_inv(co[static_cast<size_t>(piv)], p);
    u = u.pow(s);
    for (auto& t : tag) t = mod_norm(t * s, p);
    rows_[static_cast<size_t>(lead)].push_back({piv, std::move(u), std::move(tag)});
    return true;
  }

  LocalFieldPtr K_;
  long long L_;
  long long n_gens_ = 0;
  PowerClassSpace space_;
  std::vector<long long> basis_of_gen_;
  std::vector<std::vector<Row>> rows_;
};

// ---- norm image and the embedding criterion ----

struct NormImage {
  PowerClassSpace space;                                // ambient basis over K
  std::vector<std::vector<long long>> generator_coords; // class of each norm generator
  std::vector<std::vector<long long>> reduced;          // F_p echelon basis of the span
  long long rank;
  long long index;  // [K^x/K^(xp) : image] = p^(dim - rank)
};

namespace detail {

// reduce v against echelon rows (pivot = first nonzero entry, scaled to 1)
inline std::vector<long long> fp_reduce(std::vector<long long> v,
                                        const std::vector<std::vector<long long>>& rows,
                                        long long p) {
  for (const auto& r : rows) {
    size_t piv = 0;
    while (piv < r.size() && r[piv] == 0) ++piv;
    if (piv == r.size() || v[piv] == 0) continue;
    long long c = v[piv];
    for (size_t j = 0; j < v.size(); ++j) v[j] = mod_norm(v[j] - c * r[j], p);
  }
  return v;
}

inline bool fp_insert(std::vector<long long> v, std::vector<std::vector<long long>>& rows,
                      long long p) {
  v = fp_reduce(std::move(v), rows, p);
  size_t piv = 0;
  while (piv < v.size() && v[piv] == 0) ++piv;
  if (piv == v.size()) return false;
  long long inv = mod_inv(v[piv], p);
  for (auto& x : v) x = mod_norm(x * inv, p);
  rows.push_back(std::move(v));
  return true;
}

}  // namespace detail

namespace detail {

inline NormImage norm_image_with(const CyclicExtension& E, const ClassSpace& cls) {
  long long p = E.base_field->p();
  NormImage out{cls.space(), {}, {}, 0, 0};
  for (const LFElt& g : generator_set(E.ext_field).elements) {
    auto co = cls.coordinates(relative_norm(E, g));
    fp_insert(co, out.reduced, p);
    out.generator_coords.push_back(std::move(co));
  }
  out.rank = static_cast<long long>(out.reduced.size());
  out.index = 1;
  for (long long i = out.rank; i < out.space.dim; ++i) out.index *= p;
  return out;
}

}  // namespace detail

inline NormImage norm_image_mod_pth_powers(const CyclicExtension& E) {
  if (E.kind == CyclicExtension::Kind::Finite)
    throw PreconditionFailed("norm image requires a local-field extension");
  ClassSpace cls(E.base_field);
  return detail::norm_image_with(E, cls);
}

// the p-th root of unity as an element of K
inline LFElt zeta_p_element(const LocalFieldPtr& K) {
  if (K->p() == 2) return LFElt::from_int(K, -1);
  if (!K->has_zeta_p()) throw ZetaPMissing("field has no primitive p-th root of unity");
  if (K->pi_is_zeta_minus_one()) return LFElt::one(K) + LFElt::uniformizer(K);
  return LFElt::embed(K, zeta_p_element(K->base()));
}

// a degree-p cyclic extension sits inside a cyclic degree-p^2 one exactly
// when zeta_p is a norm from it
inline bool embeds_in_cyclic_p2(const CyclicExtension& E) {
  if (E.kind == CyclicExtension::Kind::Finite)
    throw PreconditionFailed("the embedding criterion applies to local-field extensions");
  const LocalFieldPtr& K = E.base_field;
  ClassSpace cls(K);
  NormImage img = detail::norm_image_with(E, cls);
  auto co = detail::fp_reduce(cls.coordinates(zeta_p_element(K)), img.reduced, K->p());
  return std::all_of(co.begin(), co.end(), [](long long x) { return x == 0; });
}

// ---- Hilbert 90 over finite fields ----

enum class H90Mode { Additive, Multiplicative };

inline Fq hilbert90_solve(const FqExtension& E, const Fq& a, H90Mode mode) {
  long long p = E.top->p();
  int n = E.top->degree();
  if (mode == H90Mode::Additive) {
    if (!trace_rel(E, a).is_zero())
      throw PreconditionFailed("additive Hilbert 90 needs trace zero");
    // (sigma - id) b = a as an F_p-linear system
    std::vector<std::vector<long long>> M(static_cast<size_t>(n),
                                          std::vector<long long>(static_cast<size_t>(n), 0));
    for (int j = 0; j < n; ++j) {
      std::vector<long long> e(static_cast<size_t>(n), 0);
      e[static_cast<size_t>(j)] = 1;
      Fq bj = E.top->element(FpPoly(p, std::move(e)));
      auto col = detail::fp_rep(frobenius_rel(E, bj) - bj, n);
      for (int i = 0; i < n; ++i) M[static_cast<size_t>(i)][static_cast<size_t>(j)] = col[static_cast<size_t>(i)];
    }
    auto v = detail::solve_fp(std::move(M), detail::fp_rep(a, n), p);
    return E.top->element(FpPoly(p, std::move(v)));
  }
  // multiplicative: need N(a) = 1; search for b with sigma(b) = a b
  Fq nm = a;
  Fq t = a;
  for (int i = 1; i < E.rel_deg; ++i) { t = frobenius_rel(E, t); nm = nm * t; }
  if (!(nm == E.top->one()))
    throw PreconditionFailed("multiplicative Hilbert 90 needs norm one");
  for (long long i = 1; i < E.top->order(); ++i) {
    Fq b = E.top->from_index(i);
    if (frobenius_rel(E, b) == a * b) return b;
  }
  throw Error("no Hilbert 90 witness found");  // unreachable when N(a) = 1
}

// ---- the Artin-Schreier tower construction ----

struct ArtinSchreierEmbedding {
  Fq alpha;            // root of X^p - X - a in k(alpha)
  Fq b;                // -alpha^(p-1), of absolute trace 1
  Fq c;                // X^p - X - c cuts out the degree-p^2 tower
  bool trace_b_is_one;
  bool top_irreducible;  // X^p - X - c has no root in k(alpha)
};

// k must be the prime field; a must make X^p - X - a irreducible over k
inline ArtinSchreierEmbedding artin_schreier_embed(const FqFieldPtr& k, const Fq& a) {
  if (k->degree() != 1) throw PreconditionFailed("base of the construction is the prime field");
  long long p = k->p();
  if (k->trace(a).is_zero())
    throw Reducible("X^p - X - a splits: the operand has trace zero");
  FqExtension E = make_fq_extension(p, 1, static_cast<int>(p));
  Fq aa = fq_embed(E, a);
  Fq alpha = E.top->zero();
  bool found = false;
  for (long long i = 0; i < E.top->order() && !found; ++i) {
    Fq cand = E.top->from_index(i);
    if ((cand.pow(p) - cand - aa).is_zero()) { alpha = cand; found = true; }
  }
  if (!found) throw Error("Artin-Schreier polynomial has no root in the degree-p field");
  Fq b = -(alpha.pow(p - 1));
  bool tr1 = E.top->trace(b) == E.top->one();
  Fq rhs = b.frobenius() - b;  // sigma(c) - c = b^p - b
  Fq c = hilbert90_solve(E, rhs, H90Mode::Additive);
  bool irred = true;
  for (long long i = 0; i < E.top->order() && irred; ++i) {
    Fq x = E.top->from_index(i);
    if ((x.pow(p) - x - c).is_zero()) irred = false;
  }
  return {alpha, b, c, tr1, irred};
}

// ---- cyclotomic data and roots of unity ----

struct CyclotomicData {
  long long degree, e, f;
};

// ramification of the n-th cyclotomic extension of Q_p
inline CyclotomicData cyclotomic_data(long long n, long long p) {
  if (n < 2 || !detail::small_prime(p)) throw PreconditionFailed("need n >= 2 and p prime");
  long long r = 0, m = n;
  while (m % p == 0) { m /= p; ++r; }
  long long e = 1;
  if (r >= 1) {
    e = p - 1;
    for (long long i = 1; i < r; ++i) e *= p;
  }
  long long f = 1;
  if (m > 1) {
    long long t = p % m;
    f = 1;
    while (t != 1) { t = (t * p) % m; ++f; }
  }
  return {e * f, e, f};
}

// zeta_{q^r} lies in F exactly when q^r divides p^f - 1 (prime q != p)
inline bool roots_of_unity_predicate(const LocalFieldPtr& F, long long q, long long r) {
  if (!detail::small_prime(q)) throw PreconditionFailed("q must be prime");
  if (r < 1) throw PreconditionFailed("need r >= 1");
  if (q == F->p()) throw QEqualsP("p-power roots of unity are tracked by construction only");
  long long qr = 1;
  for (long long i = 0; i < r; ++i) {
    if (qr > (F->residue_order() - 1)) return false;
    qr *= q;
  }
  return (F->residue_order() - 1) % qr == 0;
}

}  // namespace vfl
