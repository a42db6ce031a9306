// Rank-2 valuations on Laurent series over a p-adic field: the composite
// valuation, its three-stage place decomposition, coarsened-ring membership,
// and the mod-p semiperfectness probe.

#include <iostream>

#include "vfl/series.hpp"

using namespace vfl;

int main() {
  auto K = series_field_from_descriptor("Qp(3)((t))");
  std::cout << "field: " << K->name() << ", value group " << K->value_group().descriptor()
            << "\n\n";

  // v(sum a_i t^i) = (leading t-exponent, v_pi of its coefficient)
  SeriesElement x = SeriesElement::monomial(K, LFElt::from_int(K->coefficients(), 6), 2) +
                    SeriesElement::t_power(K, 5);
  std::cout << "x = " << x.str() << "\n";
  std::cout << "v(x) = " << composite_valuation(x).str() << "\n\n";

  // picking varpi in the maximal ideal cuts the place into three stages
  for (SeriesElement w : {SeriesElement::from_int(K, 3), SeriesElement::t(K)}) {
    PlaceChain ch = standard_decompose(K, w);
    std::cout << "varpi with v = " << ch.pivot.str() << ":\n";
    for (const PlaceStage& st : ch.stages())
      std::cout << "  " << st.label << " stage, rank " << st.rank << ", residue " << st.residue
                << "\n";
    std::cout << "  core field: " << ch.core_field << "\n";
  }

  // coarsening at p keeps t-integrality only
  SeriesElement y = SeriesElement::monomial(K, LFElt::from_int(K->coefficients(), 1).shift_pi(-2), 1);
  auto mem = coarsening_ring_membership(K, SeriesElement::from_int(K, 3), y);
  std::cout << "\ny = " << y.str() << " lies in the ring coarsened at 3: "
            << (mem.by_value_group ? "yes" : "no") << " (localization test agrees: "
            << (mem.by_localization == mem.by_value_group ? "yes" : "no") << ")\n";

  // p-th powers reach every class mod p here; adjoining zeta_3 breaks that
  auto probe = semiperfect_test(K, SeriesElement::from_int(K, 3), 4);
  std::cout << "O/(3) semiperfect: " << (probe.holds ? "yes" : "no") << " ("
            << probe.classes_checked << " classes checked)\n";
  auto KZ = series_field_from_descriptor("Qp(3)[zeta_p]((t))");
  auto probe2 = semiperfect_test(KZ, SeriesElement::from_int(KZ, 3), 4);
  std::cout << "same probe over " << KZ->name() << ": " << (probe2.holds ? "yes" : "no");
  if (probe2.witness) std::cout << ", witness class " << probe2.witness_str;
  std::cout << "\n";
  return 0;
}
