// Finite-depth tilting over Q_2(2^(1/4)): the truncated quotient ring,
// Frobenius-compatible chains, and the multiplicative sharp lift.

#include <iostream>

#include "vfl/tilt.hpp"

using namespace vfl;

int main() {
  const long long p = 2;
  const int N = 2, depth = 2;
  TruncatedQuotient Q = truncated_quotient_ring(N, p);
  std::cout << "field " << Q.field->name() << ", O/(p) = " << Q.ring->name() << "\n";

  RingIsoReport iso = verify_truncated_quotient(Q);
  std::cout << "quotient tables: " << iso.elements << " elements, " << iso.pairs_checked
            << " pairs, iso " << (iso.all() ? "verified" : "BROKEN") << "\n\n";

  // a chain is (x_0, ..., x_D) with x_i^p = x_{i-1}; the top entry rules
  TruncElt s = TruncElt::s(Q.ring);
  TiltElement x = TiltElement::from_top(TruncElt::one(Q.ring) + s, depth);
  std::cout << "chain topped by 1 + s: " << x.str() << "\n";
  std::cout << "compatible: " << (x.frobenius_compatible() ? "yes" : "no") << "\n";

  // not every bottom extends: s itself has no square root in F_2[s]/(s^4)
  std::cout << "square roots of s in " << Q.ring->name() << ": "
            << frobenius_roots(s).size() << "\n";
  try {
    tilt_chain(Q.ring, s, 1);
  } catch (const NoCompatibleRoot& e) {
    std::cout << "chain above s: " << e.what() << "\n";
  }

  // the canonical pseudo-uniformizer needs p^depth >= e to vanish mod (t)
  TiltElement t = canonical_t(Q.ring, depth);
  std::cout << "\ncanonical t at depth " << depth << ": " << t.str() << "\n";
  ModTIsoReport mt = tilt_mod_t_iso_check(Q, depth);
  std::cout << "mod-t map: " << mt.t_classes << " classes onto " << mt.reachable
            << " reachable bottoms, bijective "
            << (mt.bijective_at_truncation() ? "yes" : "no") << "\n";

  // sharp is multiplicative and sends t to an element of valuation v(p)
  LFElt st = sharp_map(Q, t);
  std::cout << "\nsharp t = " << st.str() << "\n";
  std::cout << "v_pi(sharp t) = " << *st.valuation_pi() << ", v_pi(p) = "
            << *LFElt::from_int(Q.field, p).valuation_pi() << "\n";

  TiltElement y = TiltElement::from_top(TruncElt::from_index(Q.ring, 11), depth);
  LFElt lhs = sharp_map(Q, x * y), rhs = sharp_map(Q, x) * sharp_map(Q, y);
  std::cout << "sharp(x*y) == sharp(x)*sharp(y) mod pi^" << sharp_precision_cap(Q, depth)
            << ": " << (congruent_pi(lhs, rhs, sharp_precision_cap(Q, depth)) ? "yes" : "no")
            << "\n";
  return 0;
}
