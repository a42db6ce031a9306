// Finite-depth tilting: truncated quotient rings, Frobenius-compatible
// chains, the sharp lift back to characteristic zero, and the mod-t
// bijection onto the depth-reachable part of the ring.

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "vfl/series.hpp"
#include "vfl/tilt.hpp"

using namespace vfl;

namespace {

TruncElt elt(const TruncatedRingPtr& R, std::initializer_list<long long> digits) {
  return TruncElt::from_digits(R, std::vector<long long>(digits));
}

}  // namespace

TEST_CASE("truncated ring arithmetic pins") {
  auto R = TruncatedRing::make(2, 2);
  CHECK(R->p() == 2);
  CHECK(R->e() == 4);
  CHECK(R->size() == 16);
  CHECK(R->name() == "F2[s]/(s^4)");
  CHECK(TruncatedRing::make(3, 1)->size() == 27);

  TruncElt s = TruncElt::s(R);
  CHECK(s.pow(3).s_order() == 3);
  CHECK(s.pow(4).is_zero());  // nilpotency horizon
  CHECK(s.pow(4).s_order() == 4);

  CHECK(TruncElt::zero(R).str() == "0");
  CHECK(TruncElt::one(R).str() == "1");
  CHECK(s.str() == "s");
  CHECK(elt(R, {1, 0, 1}).str() == "1 + s^2");
  CHECK(elt(R, {0, 0, 2}).str() == "0");  // digit 2 collapses mod 2

  for (long long idx = 0; idx < 16; ++idx)
    CHECK(TruncElt::from_index(R, idx).index() == idx);

  // the p-th power map is additive on the whole ring
  auto R3 = TruncatedRing::make(3, 1);
  for (const auto& ring : {R, R3}) {
    long long n = ring->size();
    for (long long i = 0; i < n; ++i)
      for (long long j = 0; j < n; ++j) {
        TruncElt a = TruncElt::from_index(ring, i), b = TruncElt::from_index(ring, j);
        CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
      }
  }

  CHECK_THROWS_AS(TruncatedRing::make(2, 7), SizeLimit);        // 2^7 > 64
  CHECK_THROWS_AS(TruncatedRing::make(4, 1), PreconditionFailed);
  CHECK_THROWS_AS(TruncatedRing::make(2, 0), PreconditionFailed);
  auto R2 = TruncatedRing::make(2, 2);
  CHECK_THROWS_AS(TruncElt::s(R) + TruncElt::s(R2), FieldMismatch);
}

TEST_CASE("frobenius roots and compatible chains") {
  auto R = TruncatedRing::make(2, 2);
  TruncElt s = TruncElt::s(R);

  auto roots = frobenius_roots(s * s);
  REQUIRE(roots.size() == 4);  // digits above s^1 are free
  for (const TruncElt& r : roots) CHECK(r.frobenius() == s * s);
  CHECK(roots.front() == s);  // minimal choice comes first
  CHECK(frobenius_roots(s).empty());
  CHECK(frobenius_roots(TruncElt::one(R)).size() == 4);

  CHECK(tilt_chain(R, TruncElt::one(R), 3) == TiltElement::one(R, 3));
  CHECK(tilt_chain(R, s * s, 1).top() == s);
  CHECK_THROWS_AS(tilt_chain(R, s, 1), NoCompatibleRoot);
  CHECK_THROWS_AS(tilt_chain(R, elt(R, {1, 1}), 1), NoCompatibleRoot);

  // depth-2 chains are exactly the 16 top entries; cross-check the count by
  // filtering every triple of ring elements for compatibility
  auto chains = tilt_enumerate(R, 2);
  CHECK(chains.size() == 16);
  long long brute = 0;
  for (long long a = 0; a < 16; ++a)
    for (long long b = 0; b < 16; ++b)
      for (long long c = 0; c < 16; ++c) {
        TruncElt x0 = TruncElt::from_index(R, a), x1 = TruncElt::from_index(R, b),
                 x2 = TruncElt::from_index(R, c);
        if (x1.frobenius() == x0 && x2.frobenius() == x1) ++brute;
      }
  CHECK(brute == 16);
  std::set<long long> tops;
  for (const TiltElement& x : chains) {
    CHECK(x.frobenius_compatible());
    tops.insert(x.top().index());
  }
  CHECK(tops.size() == 16);

  CHECK(canonical_t(R, 2).str() == "(0, s^2, s)");
  CHECK(canonical_t(R, 1).str() == "(s^2, s)");
  CHECK(canonical_t(TruncatedRing::make(3, 1), 2).str() == "(0, 0, s)");  // s^3 = 0 already
}

TEST_CASE("tilt addition via the headroom rule stays componentwise") {
  // Frobenius is additive in characteristic p, so the inverse-limit addition
  // collapses to componentwise addition and no depth is lost
  for (auto [p, N, D] : {std::tuple<long long, int, int>{2, 2, 3}, {3, 1, 2}}) {
    auto R = TruncatedRing::make(p, N);
    long long n = R->size();
    std::mt19937_64 rng(40 * p + D);
    for (int trial = 0; trial < 60; ++trial) {
      auto pick = [&] {
        return TiltElement::from_top(
            TruncElt::from_index(R, static_cast<long long>(rng() % static_cast<unsigned long long>(n))), D);
      };
      TiltElement x = pick(), y = pick(), z = pick();
      TiltElement sum = x + y, prod = x * y;
      CHECK(sum.frobenius_compatible());
      CHECK(prod.frobenius_compatible());
      for (int i = 0; i <= D; ++i) {
        CHECK(sum.at(i) == x.at(i) + y.at(i));
        CHECK(prod.at(i) == x.at(i) * y.at(i));
      }
      CHECK(x * (y + z) == x * y + x * z);
      CHECK((x - x) == TiltElement::zero(R, D));
    }
  }
}

TEST_CASE("mod-p quotient of the ramified tower matches the truncated ring") {
  auto Q = truncated_quotient_ring(2, 2);
  CHECK(Q.field->e_abs() == 4);
  CHECK(Q.field->residue_order() == 2);
  auto rep = verify_truncated_quotient(Q);
  CHECK(rep.elements == 16);
  CHECK(rep.pairs_checked == 256);  // full tables
  CHECK(rep.round_trip_ok);
  CHECK(rep.additive_ok);
  CHECK(rep.multiplicative_ok);
  CHECK(rep.uniformizer_to_s);
  CHECK(rep.p_to_zero);
  CHECK(rep.all());

  auto Q3 = truncated_quotient_ring(1, 3);
  CHECK(Q3.field->e_abs() == 3);
  auto rep3 = verify_truncated_quotient(Q3);
  CHECK(rep3.elements == 27);
  CHECK(rep3.pairs_checked == 729);
  CHECK(rep3.all());

  // p = pi^e lands on zero, as does any multiple of pi^e
  CHECK(Q.reduce(LFElt::from_int(Q.field, 2)).is_zero());
  CHECK(Q.reduce(LFElt::uniformizer(Q.field).pow(4)).is_zero());
  CHECK(Q.reduce(LFElt::uniformizer(Q.field).pow(5)).is_zero());
  CHECK(Q.reduce(LFElt::uniformizer(Q.field).pow(3)) == TruncElt::monomial(Q.ring, 1, 3));
  CHECK_THROWS_AS(Q.reduce(LFElt::uniformizer(Q.field).pow(2).inverse()), NotIntegral);
  CHECK_THROWS_AS(Q.lift(TruncElt::s(Q3.ring)), FieldMismatch);
}

TEST_CASE("sharp map pins and depth bookkeeping") {
  auto Q = truncated_quotient_ring(2, 2);
  auto R = Q.ring;

  // canonical t at matching depth lifts to p itself: pi^4 = 2 on the nose
  LFElt sharp_t = sharp_map(Q, canonical_t(R, 2));
  CHECK(congruent_pi(sharp_t, LFElt::from_int(Q.field, 2), sharp_precision_cap(Q, 2)));
  REQUIRE(sharp_t.valuation_pi().has_value());
  CHECK(*sharp_t.valuation_pi() == 4);
  CHECK(*LFElt::from_int(Q.field, 2).valuation_pi() == 4);

  // depth off the ramification budget shifts the valuation away from v(p)
  CHECK(*sharp_map(Q, canonical_t(R, 1)).valuation_pi() == 2);
  CHECK(*sharp_map(Q, canonical_t(R, 3)).valuation_pi() == 8);

  for (int D : {1, 2, 3}) {
    LFElt one = sharp_map(Q, TiltElement::one(R, D));
    CHECK(congruent_pi(one, LFElt::from_int(Q.field, 1), Q.field->default_pi_precision() / 2));
  }
  CHECK(sharp_map(Q, TiltElement::zero(R, 2)).valuation_lower_bound_pi() >=
        sharp_precision_cap(Q, 2));

  CHECK(sharp_precision_cap(Q, 2) == 12);
  CHECK_NOTHROW(sharp_map(Q, canonical_t(R, 2), 12));
  try {
    sharp_map(Q, canonical_t(R, 2), 13);
    FAIL("expected DepthExhausted");
  } catch (const DepthExhausted& ex) {
    CHECK(std::string(ex.what()).find("pi^12") != std::string::npos);
  }
}

TEST_CASE("sharp is multiplicative and tracks valuations") {
  auto Q2 = truncated_quotient_ring(2, 2);
  auto Q3 = truncated_quotient_ring(1, 3);
  std::mt19937_64 rng(99);

  for (const auto& [Q, D] : {std::pair<const TruncatedQuotient&, int>{Q2, 2}, {Q3, 1}}) {
    long long n = Q.ring->size(), cap = sharp_precision_cap(Q, D);
    for (int trial = 0; trial < 50; ++trial) {
      TiltElement x = TiltElement::from_top(
          TruncElt::from_index(Q.ring, static_cast<long long>(rng() % static_cast<unsigned long long>(n))), D);
      TiltElement y = TiltElement::from_top(
          TruncElt::from_index(Q.ring, static_cast<long long>(rng() % static_cast<unsigned long long>(n))), D);
      CHECK(congruent_pi(sharp_map(Q, x * y), sharp_map(Q, x) * sharp_map(Q, y), cap));
    }
  }

  // v(sharp) is the top's s-order amplified by p^D, which is the s-order of
  // the bottom entry whenever that entry survives the nilpotency horizon
  auto R = Q2.ring;
  for (long long idx = 1; idx < 16; ++idx) {
    TiltElement x = TiltElement::from_top(TruncElt::from_index(R, idx), 1);
    long long expect = 2 * x.top().s_order();
    CHECK(*sharp_map(Q2, x).valuation_pi() == expect);
    if (!x.bottom().is_zero()) CHECK(x.bottom().s_order() == expect);
  }
}

TEST_CASE("mod-t reduction is a bijection at sufficient depth") {
  auto Q = truncated_quotient_ring(2, 2);
  auto rep = tilt_mod_t_iso_check(Q, 3);
  CHECK(rep.tilt_elements == 16);
  CHECK(rep.t_classes == 2);
  CHECK(rep.reachable == 2);
  CHECK(rep.injective);
  CHECK(rep.surjective_onto_reachable);
  CHECK(rep.zero_to_zero);
  CHECK(rep.sharp_matches_bottom);
  CHECK(rep.bijective_at_truncation());

  // depth exactly at the budget p^D = e works too
  CHECK(tilt_mod_t_iso_check(Q, 2).bijective_at_truncation());

  auto Q3 = truncated_quotient_ring(1, 3);
  auto rep3 = tilt_mod_t_iso_check(Q3, 2);
  CHECK(rep3.tilt_elements == 27);
  CHECK(rep3.t_classes == 3);
  CHECK(rep3.reachable == 3);
  CHECK(rep3.bijective_at_truncation());
  CHECK(tilt_mod_t_iso_check(Q3, 1).bijective_at_truncation());  // 3^1 = e

  CHECK_THROWS_AS(tilt_mod_t_iso_check(Q, 1), TooShallowDepth);  // 2^1 < 4
  CHECK_THROWS_AS(tilt_mod_t_iso_check(Q, 0), PreconditionFailed);
  CHECK_THROWS_AS(tilt_mod_t_iso_check(Q, 2, 10), SizeLimit);
}

TEST_CASE("ambient family stays semiperfect") {
  auto rep = semiperfect_root_tower(2, 2, 6, 7);
  CHECK(rep.holds);
  CHECK(rep.limit_group_p_divisible);
}
