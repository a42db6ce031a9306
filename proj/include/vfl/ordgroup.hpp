#pragma once
// Finite-rank lexicographically ordered abelian groups.
//
// A group is an ordered product G = C_0 x C_1 x ... x C_{r-1} with each
// coordinate group one of Z, Z[1/p], Q and the order read left to right
// (earlier coordinates dominate). Every convex subgroup of such a product
// is a tail {x : x_0 = ... = x_{k-1} = 0}, so convex subgroups are stored
// as the single index k. This covers every value group the rest of the
// library produces (Z, Z^2 lex, Q x Z lex, (1/d)Z, Z[1/p]) while keeping
// all predicates exactly decidable.
//
// Conventions: rank is capped at 8; elements carry their group by value
// and validate denominator admissibility at construction.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "nt.hpp"
#include "rational.hpp"

namespace vfl {

enum class CoordKind { Integers, PLocalized, Rationals };

struct Coordinate {
  CoordKind kind = CoordKind::Integers;
  long long p = 0;  // the inverted prime, meaningful only for PLocalized

  friend bool operator==(const Coordinate& a, const Coordinate& b) {
    if (a.kind != b.kind) return false;
    return a.kind != CoordKind::PLocalized || a.p == b.p;
  }

  std::string descriptor() const {
    switch (kind) {
      case CoordKind::Integers: return "Z";
      case CoordKind::Rationals: return "Q";
      case CoordKind::PLocalized: return "Z[1/" + std::to_string(p) + "]";
    }
    return "?";
  }

  bool admits(const Rat& x) const {
    switch (kind) {
      case CoordKind::Integers: return x.is_integer();
      case CoordKind::Rationals: return true;
      case CoordKind::PLocalized: return x.den_is_power_of(p);
    }
    return false;
  }

  // n-divisibility of the coordinate group
  bool divisible_by(long long n) const {
    switch (kind) {
      case CoordKind::Integers: return n == 1;
      case CoordKind::Rationals: return true;
      case CoordKind::PLocalized: {
        while (n % p == 0) n /= p;
        return n == 1;
      }
    }
    return false;
  }
};

inline Coordinate coord_z() { return {CoordKind::Integers, 0}; }
inline Coordinate coord_q() { return {CoordKind::Rationals, 0}; }
inline Coordinate coord_zp(long long p) { return {CoordKind::PLocalized, p}; }

class LexGroup {
 public:
  static constexpr int max_rank = 8;

  LexGroup() = default;
  explicit LexGroup(std::vector<Coordinate> cs) : coords_(std::move(cs)) {
    if (coords_.empty() || static_cast<int>(coords_.size()) > max_rank)
      throw RankLimit("lex group rank must be between 1 and 8");
  }

  int rank() const { return static_cast<int>(coords_.size()); }
  const Coordinate& coord(int i) const { return coords_[static_cast<size_t>(i)]; }

  std::string descriptor() const {
    std::string s;
    for (size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += " x ";
      s += coords_[i].descriptor();
    }
    return s;
  }

  friend bool operator==(const LexGroup& a, const LexGroup& b) {
    return a.coords_ == b.coords_;
  }

 private:
  std::vector<Coordinate> coords_;
};

// Descriptor grammar: "Z", "Q", "Z[1/3]", factors joined by "x",
// whitespace around factors ignored. Example: "Q x Z".
inline LexGroup parse_lex_group(const std::string& text) {
  std::vector<Coordinate> cs;
  size_t i = 0, n = text.size();
  auto skip_ws = [&] { while (i < n && text[i] == ' ') ++i; };
  while (true) {
    skip_ws();
    if (i >= n) throw ParseError("expected coordinate group", i);
    if (text[i] == 'Q') {
      cs.push_back(coord_q());
      ++i;
    } else if (text[i] == 'Z') {
      ++i;
      if (i < n && text[i] == '[') {
        size_t open = i;
        ++i;
        if (text.compare(i, 2, "1/") != 0) throw ParseError("expected '1/' in Z[1/p]", i);
        i += 2;
        size_t start = i;
        while (i < n && isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) throw ParseError("expected prime in Z[1/p]", i);
        long long p = std::stoll(text.substr(start, i - start));
        if (!detail::small_prime(p)) throw ParseError("Z[1/p] needs a prime", start);
        if (i >= n || text[i] != ']') throw ParseError("unclosed '['", open);
        ++i;
        cs.push_back(coord_zp(p));
      } else {
        cs.push_back(coord_z());
      }
    } else {
      throw ParseError("expected 'Z' or 'Q'", i);
    }
    skip_ws();
    if (i >= n) break;
    if (text[i] != 'x') throw ParseError("expected 'x' between coordinates", i);
    ++i;
  }
  return LexGroup(cs);
}

class LexGroupElement {
 public:
  LexGroupElement(LexGroup g, std::vector<Rat> entries)
      : g_(std::move(g)), e_(std::move(entries)) {
    if (static_cast<int>(e_.size()) != g_.rank())
      throw InadmissibleEntry("entry count does not match group rank");
    for (int i = 0; i < g_.rank(); ++i)
      if (!g_.coord(i).admits(e_[static_cast<size_t>(i)]))
        throw InadmissibleEntry("entry " + e_[static_cast<size_t>(i)].str() +
                                " not admissible for " + g_.coord(i).descriptor());
  }

  static LexGroupElement zero(const LexGroup& g) {
    return LexGroupElement(g, std::vector<Rat>(static_cast<size_t>(g.rank())));
  }

  const LexGroup& group() const { return g_; }
  const Rat& entry(int i) const { return e_[static_cast<size_t>(i)]; }
  int rank() const { return g_.rank(); }

  bool is_zero() const {
    for (const Rat& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

  // index of the first nonzero entry; rank for the zero element
  int first_nonzero() const {
    for (int i = 0; i < rank(); ++i)
      if (!e_[static_cast<size_t>(i)].is_zero()) return i;
    return rank();
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < rank(); ++i) {
      if (i) s += ", ";
      s += e_[static_cast<size_t>(i)].str();
    }
    return s + ")";
  }

  friend LexGroupElement operator+(const LexGroupElement& a, const LexGroupElement& b) {
    a.require_same_group(b);
    std::vector<Rat> e(a.e_.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = a.e_[i] + b.e_[i];
    return LexGroupElement(a.g_, std::move(e));
  }
  friend LexGroupElement operator-(const LexGroupElement& a, const LexGroupElement& b) {
    a.require_same_group(b);
    std::vector<Rat> e(a.e_.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = a.e_[i] - b.e_[i];
    return LexGroupElement(a.g_, std::move(e));
  }
  friend LexGroupElement operator-(const LexGroupElement& a) {
    std::vector<Rat> e(a.e_.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = -a.e_[i];
    return LexGroupElement(a.g_, std::move(e));
  }
  friend LexGroupElement operator*(long long n, const LexGroupElement& a) {
    std::vector<Rat> e(a.e_.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = Rat(n) * a.e_[i];
    return LexGroupElement(a.g_, std::move(e));
  }

  friend std::strong_ordering operator<=>(const LexGroupElement& a, const LexGroupElement& b) {
    a.require_same_group(b);
    for (size_t i = 0; i < a.e_.size(); ++i) {
      auto c = a.e_[i] <=> b.e_[i];
      if (c != std::strong_ordering::equal) return c;
    }
    return std::strong_ordering::equal;
  }
  friend bool operator==(const LexGroupElement& a, const LexGroupElement& b) {
    a.require_same_group(b);
    return a.e_ == b.e_;
  }

 private:
  void require_same_group(const LexGroupElement& o) const {
    if (!(g_ == o.g_)) throw GroupMismatch("elements of different lex groups");
  }

  LexGroup g_;
  std::vector<Rat> e_;
};

struct ConvexSubgroup {
  LexGroup group;
  int tail_start;  // subgroup = {x : entries 0..tail_start-1 all zero}

  bool is_trivial() const { return tail_start == group.rank(); }
  bool is_whole() const { return tail_start == 0; }

  bool contains(const LexGroupElement& x) const {
    if (!(x.group() == group)) throw GroupMismatch("element of a different group");
    return x.first_nonzero() >= tail_start;
  }
};

inline ConvexSubgroup conv_hull(const LexGroupElement& g) {
  return {g.group(), g.first_nonzero()};
}

// Maximal convex subgroup not containing g; defined for g > 0 only.
inline ConvexSubgroup infinitesimal_subgroup(const LexGroupElement& g) {
  if (!(g > LexGroupElement::zero(g.group())))
    throw NonPositiveElement("infinitesimal subgroup needs g > 0, got " + g.str());
  return {g.group(), g.first_nonzero() + 1};
}

// G/Conv(g) is n-divisible iff every coordinate before the tail is.
inline bool is_regular_above(const LexGroup& G, const LexGroupElement& g, long long n) {
  if (!(G == g.group())) throw GroupMismatch("g lives in a different group");
  if (!(g > LexGroupElement::zero(G)))
    throw NonPositiveElement("regularity is relative to g > 0, got " + g.str());
  int tail = conv_hull(g).tail_start;
  for (int i = 0; i < tail; ++i)
    if (!G.coord(i).divisible_by(n)) return false;
  return true;
}

// [G : nG]; finite for every admitted coordinate kind.
inline long long index_mod_n(const LexGroup& G, long long n) {
  if (n < 1) throw Error("index_mod_n needs n >= 1");
  __int128 idx = 1;
  for (int i = 0; i < G.rank(); ++i) {
    const Coordinate& c = G.coord(i);
    long long part = 1;
    switch (c.kind) {
      case CoordKind::Integers: part = n; break;
      case CoordKind::Rationals: part = 1; break;
      case CoordKind::PLocalized: {
        part = n;
        while (part % c.p == 0) part /= c.p;
        break;
      }
    }
    idx *= part;
    if (idx > (static_cast<__int128>(1) << 62)) throw Error("index overflow");
  }
  return static_cast<long long>(idx);
}

// (0,...,0,1) is minimal positive iff the last coordinate group is Z.
inline std::optional<LexGroupElement> minimal_positive_element(const LexGroup& G) {
  if (G.coord(G.rank() - 1).kind != CoordKind::Integers) return std::nullopt;
  std::vector<Rat> e(static_cast<size_t>(G.rank()));
  e.back() = Rat(1);
  return LexGroupElement(G, std::move(e));
}

// Z-group test: minimal positive element with Conv isomorphic to Z and a
// divisible quotient. Structurally: last coordinate Z, all earlier ones Q.
inline bool is_z_group(const LexGroup& G) {
  if (G.coord(G.rank() - 1).kind != CoordKind::Integers) return false;
  for (int i = 0; i + 1 < G.rank(); ++i)
    if (G.coord(i).kind != CoordKind::Rationals) return false;
  return true;
}

// Representative of the class of x in G / (tail subgroup): tail entries zeroed.
inline LexGroupElement project_mod(const LexGroupElement& x, const ConvexSubgroup& H) {
  if (!(x.group() == H.group)) throw GroupMismatch("element of a different group");
  std::vector<Rat> e(static_cast<size_t>(x.rank()));
  for (int i = 0; i < H.tail_start; ++i) e[static_cast<size_t>(i)] = x.entry(i);
  return LexGroupElement(x.group(), std::move(e));
}

// x/n when that is again an element of G (every entry admissible), else nothing.
inline std::optional<LexGroupElement> divide_exact(const LexGroupElement& x, long long n) {
  std::vector<Rat> e(static_cast<size_t>(x.rank()));
  for (int i = 0; i < x.rank(); ++i) {
    Rat q = x.entry(i) / Rat(n);
    if (!x.group().coord(i).admits(q)) return std::nullopt;
    e[static_cast<size_t>(i)] = q;
  }
  return LexGroupElement(x.group(), std::move(e));
}

}  // namespace vfl
