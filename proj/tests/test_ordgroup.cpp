// Ordered-group module: examples pinned by hand, properties checked
// against brute-force oracles that only use the order and the group
// operations (never the decision procedures under test).

#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <random>
#include <set>
#include <vector>

#include "vfl/ordgroup.hpp"

using namespace vfl;

namespace {

LexGroupElement el(const LexGroup& g, std::vector<Rat> xs) {
  return LexGroupElement(g, std::move(xs));
}

Rat random_admissible(std::mt19937_64& rng, const Coordinate& c, long long mag) {
  switch (c.kind) {
    case CoordKind::Integers:
      return Rat(static_cast<long long>(rng() % (2 * mag + 1)) - mag);
    case CoordKind::PLocalized: {
      long long a = static_cast<long long>(rng() % 3);  // denominator p^a, a <= 2
      long long den = 1;
      for (long long k = 0; k < a; ++k) den *= c.p;
      long long span = 2 * mag * den + 1;
      return Rat(static_cast<long long>(rng() % span) - mag * den, den);
    }
    case CoordKind::Rationals: {
      long long den = 1 + static_cast<long long>(rng() % 4);
      long long span = 2 * mag * den + 1;
      return Rat(static_cast<long long>(rng() % span) - mag * den, den);
    }
  }
  return Rat(0);
}

LexGroupElement random_element(std::mt19937_64& rng, const LexGroup& g, long long mag) {
  std::vector<Rat> e(static_cast<size_t>(g.rank()));
  for (int i = 0; i < g.rank(); ++i) e[static_cast<size_t>(i)] = random_admissible(rng, g.coord(i), mag);
  return el(g, std::move(e));
}

// Candidate denominators a brute-force search is allowed to touch for a
// given coordinate kind. Small on purpose: the windows below are tuned so
// that genuine witnesses always fit, per the divisibility analysis.
std::vector<long long> search_dens(const Coordinate& c) {
  switch (c.kind) {
    case CoordKind::Integers: return {1};
    case CoordKind::PLocalized: return {1, c.p, c.p * c.p, c.p * c.p * c.p};
    case CoordKind::Rationals: return {1, 2, 3};
  }
  return {1};
}

// Witness search for the regularity scheme: does every sampled x > n*g
// decompose as x = n*y + z with 0 <= z < n*g and y in the group?  z is
// enumerated over a grid: zero on the head, [0, n*g_j] on the pivot
// coordinate j, and offsets x_i + k*n/d on the tail so that y stays
// admissible whenever a decomposition exists at all.
bool regular_above_witness_search(const LexGroup& G, const LexGroupElement& g, long long n,
                                  uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  const int j = g.first_nonzero();
  const LexGroupElement zero = LexGroupElement::zero(G);
  const LexGroupElement ng = n * g;

  // per-coordinate candidate lists for z
  std::vector<std::vector<Rat>> cand(static_cast<size_t>(G.rank()));
  for (int i = 0; i < j; ++i) cand[static_cast<size_t>(i)] = {Rat(0)};
  {
    std::set<Rat> pivot;
    Rat top = ng.entry(j);
    for (long long d : search_dens(G.coord(j))) {
      for (long long num = 0; Rat(num, d) <= top; ++num) pivot.insert(Rat(num, d));
      if (pivot.size() > 4000) break;
    }
    cand[static_cast<size_t>(j)].assign(pivot.begin(), pivot.end());
  }

  for (int s = 0; s < samples; ++s) {
    LexGroupElement d = random_element(rng, G, 4);
    if (d < zero) d = -d;
    if (d.is_zero()) d = g;
    LexGroupElement x = ng + d;  // x > n*g

    // tail candidates anchored at x
    std::vector<std::vector<Rat>> zc = cand;
    for (int i = j + 1; i < G.rank(); ++i) {
      std::set<Rat> vals;
      for (long long den : search_dens(G.coord(i)))
        for (long long k = -2; k <= 2; ++k) vals.insert(x.entry(i) + Rat(k * n, den));
      zc[static_cast<size_t>(i)].assign(vals.begin(), vals.end());
    }

    bool found = false;
    std::vector<size_t> idx(static_cast<size_t>(G.rank()), 0);
    while (!found) {
      std::vector<Rat> ze(static_cast<size_t>(G.rank()));
      for (int i = 0; i < G.rank(); ++i) ze[static_cast<size_t>(i)] = zc[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
      bool admissible = true;
      for (int i = 0; i < G.rank(); ++i)
        if (!G.coord(i).admits(ze[static_cast<size_t>(i)])) { admissible = false; break; }
      if (admissible) {
        LexGroupElement z = el(G, ze);
        if (zero <= z && z < ng) {
          if (auto y = divide_exact(x - z, n)) {
            REQUIRE(n * *y + z == x);  // the witness identity, checked exactly
            found = true;
          }
        }
      }
      // advance the product counter
      int i = G.rank() - 1;
      while (i >= 0) {
        if (++idx[static_cast<size_t>(i)] < zc[static_cast<size_t>(i)].size()) break;
        idx[static_cast<size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
    }
    if (!found) return false;
  }
  return true;
}

// Coset counting within a window: greedy list of representatives under
// x ~ y iff (x - y)/n stays in the group.
long long index_coset_oracle(const LexGroup& G, long long n) {
  std::vector<std::vector<Rat>> grid(static_cast<size_t>(G.rank()));
  for (int i = 0; i < G.rank(); ++i) {
    std::set<Rat> vals;
    for (long long v = 0; v < n + 2; ++v) vals.insert(Rat(v));
    if (G.coord(i).kind == CoordKind::PLocalized) {
      long long p = G.coord(i).p;
      for (long long num = 1; num <= 4; ++num) { vals.insert(Rat(num, p)); vals.insert(Rat(num, p * p)); }
    }
    if (G.coord(i).kind == CoordKind::Rationals)
      for (long long den = 2; den <= 4; ++den) vals.insert(Rat(1, den));
    grid[static_cast<size_t>(i)].assign(vals.begin(), vals.end());
  }

  std::vector<LexGroupElement> reps;
  std::vector<size_t> idx(static_cast<size_t>(G.rank()), 0);
  while (true) {
    std::vector<Rat> e(static_cast<size_t>(G.rank()));
    for (int i = 0; i < G.rank(); ++i) e[static_cast<size_t>(i)] = grid[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
    LexGroupElement x = el(G, e);
    bool matched = false;
    for (const auto& r : reps)
      if (divide_exact(x - r, n)) { matched = true; break; }
    if (!matched) reps.push_back(x);

    int i = G.rank() - 1;
    while (i >= 0) {
      if (++idx[static_cast<size_t>(i)] < grid[static_cast<size_t>(i)].size()) break;
      idx[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return static_cast<long long>(reps.size());
}

}  // namespace

TEST_CASE("convex hull is the tail at the first nonzero coordinate") {
  LexGroup z3 = parse_lex_group("Z x Z x Z");
  CHECK(conv_hull(el(z3, {Rat(0), Rat(1), Rat(0)})).tail_start == 1);
  CHECK(conv_hull(el(z3, {Rat(0), Rat(0), Rat(0)})).tail_start == 3);
  CHECK(conv_hull(el(z3, {Rat(0), Rat(0), Rat(0)})).is_trivial());

  LexGroup z2 = parse_lex_group("Z x Z");
  CHECK(conv_hull(el(z2, {Rat(2), Rat(-5)})).is_whole());

  // minimality: every strictly smaller tail excludes g
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    LexGroupElement g = random_element(rng, z3, 5);
    ConvexSubgroup h = conv_hull(g);
    CHECK(h.contains(g));
    for (int k = h.tail_start + 1; k <= z3.rank(); ++k)
      CHECK_FALSE(ConvexSubgroup{z3, k}.contains(g));
  }
}

TEST_CASE("infinitesimal subgroup sits one past the leading coordinate") {
  LexGroup z2 = parse_lex_group("Z x Z");
  CHECK(infinitesimal_subgroup(el(z2, {Rat(1), Rat(0)})).tail_start == 1);
  CHECK(infinitesimal_subgroup(el(z2, {Rat(0), Rat(1)})).is_trivial());

  LexGroup qz = parse_lex_group("Q x Z");
  LexGroupElement g = el(qz, {Rat(0), Rat(3)});
  // oracle: an element x would be infinitesimal iff n|x| < g for all n <= 10;
  // every nonzero candidate (0, k) already fails at n = 3|k|>=3
  for (long long k = -8; k <= 8; ++k) {
    if (k == 0) continue;
    LexGroupElement x = el(qz, {Rat(0), Rat(k)});
    LexGroupElement ax = x < LexGroupElement::zero(qz) ? -x : x;
    bool infinitesimal = true;
    for (long long n = 1; n <= 10; ++n)
      if (!(n * ax < g)) { infinitesimal = false; break; }
    CHECK_FALSE(infinitesimal);
  }
  CHECK(infinitesimal_subgroup(g).is_trivial());

  CHECK_THROWS_AS(infinitesimal_subgroup(LexGroupElement::zero(qz)), NonPositiveElement);
  CHECK_THROWS_AS(infinitesimal_subgroup(el(qz, {Rat(-1, 2), Rat(7)})), NonPositiveElement);

  // strict containment in the convex hull for positive g
  std::mt19937_64 rng(12);
  LexGroup z3 = parse_lex_group("Z x Z x Z");
  int seen = 0;
  while (seen < 100) {
    LexGroupElement g2 = random_element(rng, z3, 5);
    if (!(g2 > LexGroupElement::zero(z3))) continue;
    ++seen;
    CHECK(infinitesimal_subgroup(g2).tail_start == conv_hull(g2).tail_start + 1);
  }
}

TEST_CASE("regularity above g matches the witness search") {
  LexGroup qz = parse_lex_group("Q x Z");
  LexGroup z2 = parse_lex_group("Z x Z");
  LexGroup z1 = parse_lex_group("Z");

  LexGroupElement g_qz = el(qz, {Rat(0), Rat(1)});
  CHECK(is_regular_above(qz, g_qz, 2));
  CHECK(regular_above_witness_search(qz, g_qz, 2, 101, 50));

  LexGroupElement g_z2 = el(z2, {Rat(0), Rat(1)});
  CHECK_FALSE(is_regular_above(z2, g_z2, 2));
  CHECK_FALSE(regular_above_witness_search(z2, g_z2, 2, 102, 50));
  // the searched counterexample shape: x = (odd, anything) has no y with 2y = x - z
  CHECK(divide_exact(el(z2, {Rat(1), Rat(0)}) - LexGroupElement::zero(z2), 2) == std::nullopt);

  CHECK(is_regular_above(z1, el(z1, {Rat(1)}), 3));  // quotient is the zero group

  CHECK_THROWS_AS(is_regular_above(z2, LexGroupElement::zero(z2), 2), NonPositiveElement);

  // family sweep, rank <= 3, n in {2,3,4,5}
  struct Inst { const char* group; std::vector<Rat> g; };
  std::vector<Inst> family = {
      {"Z", {Rat(1)}},
      {"Z", {Rat(2)}},
      {"Q", {Rat(1, 2)}},
      {"Z[1/2]", {Rat(3, 2)}},
      {"Z[1/3]", {Rat(1, 3)}},
      {"Z x Z", {Rat(0), Rat(1)}},
      {"Z x Z", {Rat(1), Rat(-2)}},
      {"Q x Z", {Rat(0), Rat(2)}},
      {"Q x Z", {Rat(1, 2), Rat(0)}},
      {"Z[1/2] x Z", {Rat(0), Rat(1)}},
      {"Z[1/3] x Z", {Rat(0), Rat(2)}},
      {"Z x Q", {Rat(0), Rat(1, 2)}},
      {"Q x Q x Z", {Rat(0), Rat(0), Rat(1)}},
      {"Q x Z x Z", {Rat(0), Rat(1), Rat(0)}},
      {"Z x Z x Z", {Rat(0), Rat(0), Rat(2)}},
      {"Z[1/2] x Q x Z", {Rat(0), Rat(0), Rat(1)}},
  };
  uint64_t seed = 9000;
  for (const auto& inst : family) {
    LexGroup G = parse_lex_group(inst.group);
    LexGroupElement g = el(G, inst.g);
    if (!(g > LexGroupElement::zero(G))) g = -g;
    for (long long n = 2; n <= 5; ++n) {
      bool fast = is_regular_above(G, g, n);
      bool slow = regular_above_witness_search(G, g, n, ++seed, 30);
      INFO(inst.group << " g=" << g.str() << " n=" << n);
      CHECK(fast == slow);
    }
  }
}

TEST_CASE("index of nG multiplies over coordinates") {
  CHECK(index_mod_n(parse_lex_group("Z x Z"), 2) == 4);
  CHECK(index_mod_n(parse_lex_group("Z[1/3]"), 3) == 1);
  CHECK(index_mod_n(parse_lex_group("Q x Z"), 5) == 5);
  CHECK(index_mod_n(parse_lex_group("Z[1/3] x Z"), 6) == 12);
  CHECK(index_mod_n(parse_lex_group("Q"), 7) == 1);

  // coset-counting oracle within a window
  CHECK(index_coset_oracle(parse_lex_group("Q x Z"), 5) == 5);
  CHECK(index_coset_oracle(parse_lex_group("Z x Z"), 2) == 4);
  CHECK(index_coset_oracle(parse_lex_group("Z[1/3]"), 3) == 1);
  CHECK(index_coset_oracle(parse_lex_group("Z[1/3] x Z"), 6) == 12);
  CHECK(index_coset_oracle(parse_lex_group("Z[1/2]"), 6) == 3);
  CHECK(index_mod_n(parse_lex_group("Z[1/2]"), 6) == 3);
}

TEST_CASE("Z-group recognition and its consequences") {
  CHECK(is_z_group(parse_lex_group("Z")));
  CHECK(is_z_group(parse_lex_group("Q x Z")));
  CHECK(is_z_group(parse_lex_group("Q x Q x Z")));
  CHECK_FALSE(is_z_group(parse_lex_group("Z x Z")));
  CHECK_FALSE(is_z_group(parse_lex_group("Q")));
  CHECK_FALSE(is_z_group(parse_lex_group("Z[1/3] x Z")));
  CHECK_FALSE(is_z_group(parse_lex_group("Z x Q")));

  // witnesses for the Z x Z failure: index at n = 2 is 4, not 2
  CHECK(index_mod_n(parse_lex_group("Z x Z"), 2) == 4);

  std::mt19937_64 rng(13);
  for (const char* d : {"Z", "Q x Z", "Q x Q x Z"}) {
    LexGroup G = parse_lex_group(d);
    for (long long n = 2; n <= 12; ++n) CHECK(index_mod_n(G, n) == n);
    auto mp = minimal_positive_element(G);
    REQUIRE(mp.has_value());
    CHECK(*mp > LexGroupElement::zero(G));
    // no sampled positive element lies below it
    for (int t = 0; t < 300; ++t) {
      LexGroupElement x = random_element(rng, G, 6);
      if (x > LexGroupElement::zero(G)) CHECK(x >= *mp);
    }
  }
  CHECK(minimal_positive_element(parse_lex_group("Q")) == std::nullopt);
}

TEST_CASE("lex order is a translation-invariant total order") {
  std::mt19937_64 rng(14);
  std::vector<LexGroup> groups = {parse_lex_group("Z x Z"), parse_lex_group("Q x Z"),
                                  parse_lex_group("Z[1/2] x Q x Z")};
  for (int t = 0; t < 1000; ++t) {
    const LexGroup& G = groups[t % groups.size()];
    LexGroupElement a = random_element(rng, G, 8);
    LexGroupElement b = random_element(rng, G, 8);
    LexGroupElement c = random_element(rng, G, 8);
    int rel = (a < b ? 1 : 0) + (a == b ? 1 : 0) + (a > b ? 1 : 0);
    CHECK(rel == 1);  // trichotomy
    if (a < b) {
      CHECK(b > a);
      CHECK(a + c < b + c);  // translation invariance
    }
    // transitivity via a sorted chain
    if (a <= b && b <= c) CHECK(a <= c);
  }
}

TEST_CASE("quotient order is well-defined on classes") {
  std::mt19937_64 rng(15);
  LexGroup G = parse_lex_group("Z x Q x Z");
  for (int t = 0; t < 400; ++t) {
    LexGroupElement a = random_element(rng, G, 6);
    LexGroupElement b = random_element(rng, G, 6);
    if (b < a) std::swap(a, b);
    for (int k = 0; k <= G.rank(); ++k) {
      ConvexSubgroup H{G, k};
      CHECK(project_mod(a, H) <= project_mod(b, H));
    }
  }
}

TEST_CASE("group descriptors parse and reject junk") {
  CHECK(parse_lex_group("Z").descriptor() == "Z");
  CHECK(parse_lex_group("Q x Z").descriptor() == "Q x Z");
  CHECK(parse_lex_group("Z[1/3]").descriptor() == "Z[1/3]");
  CHECK(parse_lex_group(" Z[1/2] x Q ").descriptor() == "Z[1/2] x Q");
  CHECK_THROWS_AS(parse_lex_group("Z[1/4]"), ParseError);
  CHECK_THROWS_AS(parse_lex_group("R"), ParseError);
  CHECK_THROWS_AS(parse_lex_group("Z x"), ParseError);
  CHECK_THROWS_AS(parse_lex_group("Z Z"), ParseError);
  CHECK_THROWS_AS(parse_lex_group("Z x Z x Z x Z x Z x Z x Z x Z x Z"), RankLimit);
}

TEST_CASE("inadmissible entries are rejected at construction") {
  LexGroup G = parse_lex_group("Z x Z[1/3]");
  CHECK_THROWS_AS(el(G, {Rat(1, 2), Rat(0)}), InadmissibleEntry);
  CHECK_THROWS_AS(el(G, {Rat(1), Rat(1, 2)}), InadmissibleEntry);
  CHECK_NOTHROW(el(G, {Rat(4), Rat(5, 9)}));
}
