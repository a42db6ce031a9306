// A short tour of finite-precision local-field arithmetic: build towers by
// descriptor, read valuations and residues, and look at the unit filtration.

#include <iostream>

#include "vfl/localfield.hpp"
#include "vfl/units.hpp"

using namespace vfl;

int main() {
  // the 3-adic field with a primitive cube root of unity adjoined;
  // the uniformizer of the extension is zeta_3 - 1
  auto F = field_from_descriptor("Qp(3)[zeta_p]");
  std::cout << "field: " << F->name() << "  (e = " << F->e_abs() << ", f = " << F->f_abs()
            << ", residue order " << F->residue_order() << ")\n";

  LFElt pi = LFElt::uniformizer(F);
  LFElt three = LFElt::from_int(F, 3);
  std::cout << "v_pi(3) = " << *three.valuation_pi() << "\n";
  std::cout << "residue of 3 / pi^2 = " << (three.shift_pi(-2)).residue().str()
            << "  (the p = 3 case of the p/pi^(p-1) identity)\n";

  // classes of F^x modulo cubes: pi plus three principal-unit levels
  auto space = p_rank(F, 3);
  std::cout << "dim F^x/(F^x)^3 = " << space.dim << ", class representatives"
            << " as pi^v * tau(r) * prod (1 + tau(d_k) pi^k):\n";
  for (const LFElt& b : space.basis) {
    long long v = *b.valuation_pi();
    LFElt u = b.shift_pi(-v);
    Fq r0 = u.residue();
    std::cout << "  v = " << v << ", r = " << r0.str() << ", d =";
    for (const Fq& d : unit_digits(F, u / teichmuller_lift(F, r0), 3))
      std::cout << " " << d.str();
    std::cout << "\n";
  }

  // deep principal units are p-th powers; targets are solved one by one
  auto rep = pth_power_subgroup_check(F, 10, 1);
  std::cout << "U^(p+1) = (U^(1))^p: " << (rep.equality_holds ? "yes" : "no") << "  ("
            << rep.targets_solved << " root extractions)\n";

  // quadratic layers stack on top; precision tracks through the tower
  auto T = adjoin_sqrt(F, pi).ext;
  std::cout << "tower: " << T->name() << ", e = " << T->e_abs() << "\n";
  LFElt root = LFElt::uniformizer(T);
  std::cout << "v_pi(root^2 - pi_base) >= " << (root * root - LFElt::embed(T, pi)).valuation_lower_bound_pi()
            << " pi-digits (zero to working precision)\n";
  return 0;
}
