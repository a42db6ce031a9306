// Cyclic extensions: relative norms as determinants, norm images modulo
// p-th powers, the degree-p^2 embedding criterion, Hilbert 90 solvers,
// the Artin-Schreier tower step, and cyclotomic ramification data.

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "vfl/kummer.hpp"

using namespace vfl;

namespace {

LFElt random_unit(std::mt19937_64& rng, const LocalFieldPtr& F, long long depth) {
  auto lifts = residue_system(F, depth + 4);
  LFElt u = lifts[1 + rng() % (lifts.size() - 1)];
  LFElt pik = LFElt::uniformizer(F);
  for (long long k = 1; k <= depth; ++k) {
    u = u + lifts[rng() % lifts.size()] * pik;
    pik = pik * LFElt::uniformizer(F);
  }
  return u;
}

using Vec = std::vector<long long>;
using Mat = std::vector<std::vector<long long>>;

}  // namespace

TEST_CASE("quadratic norms over Q2 take pinned integer values") {
  auto Q2 = LocalField::ground(2);
  auto E = CyclicExtension::quadratic(Q2, LFElt::from_int(Q2, -2));
  REQUIRE(E.kind == CyclicExtension::Kind::Quadratic);
  CHECK(E.degree == 2);
  CHECK(E.generator_action == "theta -> -theta");
  CHECK(E.ext_field->e_abs() == 2);

  LFElt th = E.root;
  LFElt one = LFElt::one(E.ext_field);
  CHECK(congruent_pi(th * th, LFElt::from_int(E.ext_field, -2), 30));

  auto N = [&](const LFElt& x) { return relative_norm(E, x); };
  CHECK(congruent_pi(N(th), LFElt::from_int(Q2, 2), 20));
  CHECK(congruent_pi(N(one + th), LFElt::from_int(Q2, 3), 20));
  CHECK(congruent_pi(N(one + th.pow(2)), LFElt::one(Q2), 20));
  CHECK(congruent_pi(N(one + th.pow(3)), LFElt::from_int(Q2, 9), 20));
  CHECK(congruent_pi(N(one + th.pow(4)), LFElt::from_int(Q2, 25), 20));

  SECTION("N(a + b sqrt(-2)) = a^2 + 2 b^2") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 25; ++t) {
      long long a = static_cast<long long>(rng() % 101) - 50;
      long long b = static_cast<long long>(rng() % 101) - 50;
      if (a == 0 && b == 0) continue;
      LFElt x = LFElt::embed(E.ext_field, LFElt::from_int(Q2, a)) +
                LFElt::embed(E.ext_field, LFElt::from_int(Q2, b)) * th;
      CHECK(congruent_pi(N(x), LFElt::from_int(Q2, a * a + 2 * b * b), 18));
    }
  }

  SECTION("multiplicativity and the value on embedded elements") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 20; ++t) {
      LFElt x = random_unit(rng, E.ext_field, 6);
      LFElt y = random_unit(rng, E.ext_field, 6);
      CHECK(congruent_pi(N(x * y), N(x) * N(y), 14));
    }
    for (long long b : {3LL, -5LL, 7LL, 10LL}) {
      LFElt bb = LFElt::from_int(Q2, b);
      CHECK(congruent_pi(N(LFElt::embed(E.ext_field, bb)), bb * bb, 16));
    }
  }
}

TEST_CASE("norm valuation scales by the residue degree of the extension") {
  auto Q2 = LocalField::ground(2);
  std::mt19937_64 rng(13);

  // ramified: v(N(x)) = v(x); unramified: v(N(x)) = 2 v(x)
  auto ram = CyclicExtension::quadratic(Q2, LFElt::from_int(Q2, 2));
  auto ur = CyclicExtension::quadratic(Q2, LFElt::from_int(Q2, 5));
  REQUIRE(ram.ext_field->e_abs() == 2);
  REQUIRE(ur.ext_field->e_abs() == 1);
  REQUIRE(ur.ext_field->f_abs() == 2);
  CHECK(congruent_pi(ur.root * ur.root, LFElt::from_int(ur.ext_field, 5), 20));

  for (int t = 0; t < 12; ++t) {
    long long a = static_cast<long long>(rng() % 7) - 3;
    LFElt xr = random_unit(rng, ram.ext_field, 5).shift_pi(a);
    LFElt xu = random_unit(rng, ur.ext_field, 5).shift_pi(a);
    auto vr = relative_norm(ram, xr).valuation_pi();
    auto vu = relative_norm(ur, xu).valuation_pi();
    REQUIRE(vr);
    REQUIRE(vu);
    CHECK(*vr == a);
    CHECK(*vu == 2 * a);
  }
}

TEST_CASE("Kummer cube-root extension of the zeta_3 field") {
  auto K = LocalField::with_zeta_p(LocalField::ground(3));
  LFElt pi = LFElt::uniformizer(K);
  LFElt c = (LFElt::one(K) - LFElt::from_int(K, 3)) * pi;
  auto E = CyclicExtension::kummer(K, c);
  REQUIRE(E.kind == CyclicExtension::Kind::Kummer);
  CHECK(E.degree == 3);
  CHECK(E.ext_field->e_abs() == 6);
  CHECK(E.ext_field->has_zeta_p());

  LFElt th = E.root;
  CHECK(congruent_pi(th.pow(3), LFElt::embed(E.ext_field, c), 40));

  auto N = [&](const LFElt& x) { return relative_norm(E, x); };
  LFElt one = LFElt::one(E.ext_field);
  CHECK(congruent_pi(N(th), c, 25));
  // N(1 + theta^k) = 1 + c^k when 3 does not divide k
  CHECK(congruent_pi(N(one + th), LFElt::one(K) + c, 25));
  CHECK(congruent_pi(N(one + th.pow(2)), LFElt::one(K) + c.pow(2), 25));
  CHECK(congruent_pi(N(one + th.pow(4)), LFElt::one(K) + c.pow(4), 25));
  // 1 + theta^3 comes from the base, so its norm is a cube
  CHECK(congruent_pi(N(one + th.pow(3)), (LFElt::one(K) + c).pow(3), 25));

  SECTION("multiplicativity and valuation") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 10; ++t) {
      LFElt x = random_unit(rng, E.ext_field, 6);
      LFElt y = random_unit(rng, E.ext_field, 6);
      CHECK(congruent_pi(N(x * y), N(x) * N(y), 16));
      long long a = static_cast<long long>(rng() % 5) - 2;
      auto v = N(x.shift_pi(a)).valuation_pi();
      REQUIRE(v);
      CHECK(*v == a);  // totally ramified, so valuations pass through
    }
    LFElt b = LFElt::from_int(K, 5) + pi;
    CHECK(congruent_pi(N(LFElt::embed(E.ext_field, b)), b.pow(3), 20));
  }
}

TEST_CASE("class coordinates over the pinned Q2 basis") {
  auto Q2 = LocalField::ground(2);
  ClassSpace cls(Q2);
  REQUIRE(cls.space().dim == 3);
  CHECK(congruent_pi(cls.space().basis[0], LFElt::from_int(Q2, 2), 8));
  CHECK(congruent_pi(cls.space().basis[1], LFElt::from_int(Q2, 3), 8));
  CHECK(congruent_pi(cls.space().basis[2], LFElt::from_int(Q2, 5), 8));

  auto co = [&](long long n) { return cls.coordinates(LFElt::from_int(Q2, n)); };
  CHECK(co(2) == Vec{1, 0, 0});
  CHECK(co(3) == Vec{0, 1, 0});
  CHECK(co(5) == Vec{0, 0, 1});
  CHECK(co(7) == Vec{0, 1, 1});
  CHECK(co(-1) == Vec{0, 1, 1});
  CHECK(co(15) == Vec{0, 1, 1});
  CHECK(co(9) == Vec{0, 0, 0});
  CHECK(co(-8) == Vec{1, 1, 1});
  CHECK(co(48) == Vec{0, 1, 0});  // 48 = 16 * 3
  CHECK(cls.coordinates(LFElt::one(Q2) / LFElt::from_int(Q2, 3)) == Vec{0, 1, 0});
  CHECK_THROWS_AS(cls.coordinates(LFElt::zero(Q2)), PreconditionFailed);
}

TEST_CASE("class coordinates invert explicit products") {
  std::mt19937_64 rng(15);
  std::vector<LocalFieldPtr> fields = {
      LocalField::ground(2),
      LocalField::with_zeta_p(LocalField::ground(3)),
      LocalField::with_zeta_p(LocalField::ground(5)),
  };
  for (const auto& F : fields) {
    ClassSpace cls(F);
    long long p = F->p();
    const auto& basis = cls.space().basis;
    int samples = p == 5 ? 10 : 30;
    for (int t = 0; t < samples; ++t) {
      long long a = static_cast<long long>(rng() % 9) - 4;
      Vec want(static_cast<size_t>(cls.space().dim), 0);
      want[0] = mod_norm(a, p);
      LFElt y = LFElt::uniformizer(F).pow(a);
      for (size_t i = 1; i < basis.size(); ++i) {
        long long e = static_cast<long long>(rng() % static_cast<unsigned long long>(p));
        want[i] = e;
        if (e) y = y * basis[i].pow(e);
      }
      y = y * random_unit(rng, F, 6).pow(p);  // p-th powers vanish in the quotient
      CHECK(cls.coordinates(y) == want);
    }
  }
}

TEST_CASE("norm images of the ramified quadratics of Q2") {
  auto Q2 = LocalField::ground(2);

  SECTION("sqrt(-2): the image is generated by 2 and 3") {
    auto E = CyclicExtension::quadratic(Q2, LFElt::from_int(Q2, -2));
    NormImage img = norm_image_mod_pth_powers(E);
    CHECK(img.space.dim == 3);
    CHECK(img.rank == 2);
    CHECK(img.index == 2);
    CHECK(img.reduced == Mat{{1, 0, 0}, {0, 1, 0}});
    CHECK(img.generator_coords.size() == 5);
    CHECK(img.generator_coords[0] == Vec{1, 0, 0});  // N(theta) = 2
    CHECK(img.generator_coords[1] == Vec{0, 1, 0});  // N(1 + theta) = 3
    CHECK(!embeds_in_cyclic_p2(E));  // -1 is not a norm
  }

  SECTION("sqrt(2): -1 is a norm, so the tower extends") {
    auto E = CyclicExtension::quadratic(Q2, LFElt::from_int(Q2, 2));
    NormImage img = norm_image_mod_pth_powers(E);
    CHECK(img.rank == 2);
    CHECK(img.index == 2);
    CHECK(img.reduced == Mat{{1, 1, 1}, {0, 1, 1}});
    // the witness: N(1 + sqrt(2)) = (1 + sqrt(2))(1 - sqrt(2)) = -1
    CHECK(congruent_pi(relative_norm(E, LFElt::one(E.ext_field) + E.root),
                       LFElt::from_int(Q2, -1), 20));
    CHECK(embeds_in_cyclic_p2(E));
  }

  SECTION("sqrt(-1): index two again, but -1 stays outside") {
    auto E = CyclicExtension::quadratic(Q2, LFElt::from_int(Q2, -1));
    NormImage img = norm_image_mod_pth_powers(E);
    CHECK(img.rank == 2);
    CHECK(img.index == 2);
    CHECK(img.generator_coords[1] == Vec{0, 0, 1});  // N(1 + pi) = 5
    CHECK(!embeds_in_cyclic_p2(E));
  }
}

TEST_CASE("norm image of the Kummer cube-root extension has index three") {
  auto K = LocalField::with_zeta_p(LocalField::ground(3));
  LFElt pi = LFElt::uniformizer(K);
  LFElt c = (LFElt::one(K) - LFElt::from_int(K, 3)) * pi;
  auto E = CyclicExtension::kummer(K, c);

  NormImage img = norm_image_mod_pth_powers(E);
  CHECK(img.space.dim == 4);
  CHECK(img.rank == 3);
  CHECK(img.index == 3);
  CHECK(img.generator_coords.size() == 10);  // theta plus nine filtration generators
  CHECK(!embeds_in_cyclic_p2(E));

  SECTION("the answer is stable under rescaling the operand by cubes") {
    std::mt19937_64 rng(16);
    for (int t = 0; t < 20; ++t) {
      LFElt u = random_unit(rng, K, 5);
      auto Er = CyclicExtension::kummer(K, c * u.pow(3));
      NormImage ir = norm_image_mod_pth_powers(Er);
      CHECK(ir.index == 3);
      CHECK(!embeds_in_cyclic_p2(Er));
    }
  }
}

TEST_CASE("finite relative norms agree with Galois-conjugate products") {
  SECTION("F_9 over F_3") {
    auto E = CyclicExtension::finite_ext(3, 1, 2);
    REQUIRE(E.kind == CyclicExtension::Kind::Finite);
    CHECK(E.degree == 2);
    const FqExtension& T = *E.finite;
    std::set<long long> values;
    for (const Fq& x : T.top->all_elements()) {
      Fq prod = x * frobenius_rel(T, x);  // lives in the embedded copy of the base
      CHECK(fq_embed(T, relative_norm(E, x)) == prod);
      values.insert(relative_norm(E, x).index());
    }
    CHECK(values.size() == 3);  // the norm is onto the base field
    for (const Fq& b : T.base->all_elements())
      CHECK(relative_norm(E, fq_embed(T, b)) == b * b);
  }

  SECTION("F_16 over F_4") {
    auto E = CyclicExtension::finite_ext(2, 2, 2);
    const FqExtension& T = *E.finite;
    CHECK(T.base->order() == 4);
    CHECK(T.top->order() == 16);
    for (const Fq& x : T.top->all_elements())
      CHECK(fq_embed(T, relative_norm(E, x)) == x * frobenius_rel(T, x));
  }

  SECTION("F_8 over F_2: every unit has norm one") {
    auto E = CyclicExtension::finite_ext(2, 1, 3);
    const FqExtension& T = *E.finite;
    for (const Fq& x : T.top->all_elements()) {
      Fq n = relative_norm(E, x);
      CHECK(n == (x.is_zero() ? T.base->zero() : T.base->one()));
    }
  }
}

TEST_CASE("additive Hilbert 90 solves the coboundary equation") {
  auto check_all = [](long long p, int m, int r) {
    FqExtension E = make_fq_extension(p, m, r);
    long long solved = 0;
    for (const Fq& a : E.top->all_elements()) {
      if (trace_rel(E, a).is_zero()) {
        Fq b = hilbert90_solve(E, a, H90Mode::Additive);
        CHECK(frobenius_rel(E, b) - b == a);
        ++solved;
      } else {
        CHECK_THROWS_AS(hilbert90_solve(E, a, H90Mode::Additive), PreconditionFailed);
      }
    }
    return solved;
  };
  CHECK(check_all(3, 1, 2) == 3);   // trace-zero subspace of F_9
  CHECK(check_all(3, 1, 3) == 9);   // F_27
  CHECK(check_all(2, 2, 2) == 4);   // F_16 over F_4
}

TEST_CASE("multiplicative Hilbert 90 finds cocycle witnesses") {
  SECTION("F_4 over F_2 with a = x") {
    FqExtension E = make_fq_extension(2, 1, 2);
    Fq a = E.top->gen();
    Fq b = hilbert90_solve(E, a, H90Mode::Multiplicative);
    CHECK(b == E.top->gen());
    CHECK(frobenius_rel(E, b) == a * b);
  }

  SECTION("F_9 over F_3: the norm-one kernel has four elements") {
    FqExtension E = make_fq_extension(3, 1, 2);
    long long solved = 0;
    for (const Fq& a : E.top->all_elements()) {
      if (a.is_zero()) continue;
      if (a * frobenius_rel(E, a) == E.top->one()) {
        Fq b = hilbert90_solve(E, a, H90Mode::Multiplicative);
        CHECK(!b.is_zero());
        CHECK(frobenius_rel(E, b) == a * b);
        ++solved;
      } else {
        CHECK_THROWS_AS(hilbert90_solve(E, a, H90Mode::Multiplicative), PreconditionFailed);
      }
    }
    CHECK(solved == 4);
  }
}

TEST_CASE("Artin-Schreier step embeds the degree-p field in a degree-p^2 tower") {
  auto run = [](long long p, long long a_int) {
    auto k = FqField::make(p, 1);
    auto emb = artin_schreier_embed(k, k->from_int(a_int));
    CHECK(emb.trace_b_is_one);
    CHECK(emb.top_irreducible);
    const auto& E = emb.alpha.field();
    CHECK(E->order() == [&] { long long q = 1; for (long long i = 0; i < p; ++i) q *= p; return q; }());
    // alpha really solves X^p - X = a
    CHECK(emb.alpha.pow(p) - emb.alpha == fq_embed(make_fq_extension(p, 1, static_cast<int>(p)), k->from_int(a_int)));
    CHECK(emb.b == -(emb.alpha.pow(p - 1)));
    CHECK(E->trace(emb.b) == E->one());
    // the defining equation of c, and irreducibility re-checked directly
    CHECK(emb.c.frobenius() - emb.c == emb.b.pow(p) - emb.b);
    bool rootless = true;
    for (const Fq& x : E->all_elements())
      if ((x.pow(p) - x - emb.c).is_zero()) rootless = false;
    CHECK(rootless);
    CHECK(!E->trace(emb.c).is_zero());
  };
  run(2, 1);
  run(3, 1);
  run(3, 2);
  run(5, 1);

  SECTION("the F_2 instance lands on a generator") {
    auto k2 = FqField::make(2, 1);
    auto emb = artin_schreier_embed(k2, k2->one());
    CHECK(emb.alpha == emb.alpha.field()->gen());  // w^2 + w + 1 = 0
    CHECK(emb.b == emb.alpha);
    CHECK(emb.c.rep().degree() == 1);  // c is w or w + 1
  }

  SECTION("trace-zero operands are rejected") {
    auto k2 = FqField::make(2, 1);
    auto k3 = FqField::make(3, 1);
    CHECK_THROWS_AS(artin_schreier_embed(k2, k2->zero()), Reducible);
    CHECK_THROWS_AS(artin_schreier_embed(k3, k3->zero()), Reducible);
    CHECK_THROWS_AS(artin_schreier_embed(FqField::make(2, 2), FqField::make(2, 2)->one()),
                    PreconditionFailed);
  }
}

TEST_CASE("cyclotomic layer data matches a direct computation") {
  auto d53 = cyclotomic_data(5, 3);
  CHECK(d53.degree == 4);
  CHECK(d53.e == 1);
  CHECK(d53.f == 4);
  auto d93 = cyclotomic_data(9, 3);
  CHECK(d93.degree == 6);
  CHECK(d93.e == 6);
  CHECK(d93.f == 1);
  auto d85 = cyclotomic_data(8, 5);
  CHECK(d85.degree == 2);
  CHECK(d85.e == 1);
  CHECK(d85.f == 2);
  CHECK(cyclotomic_data(2, 2).degree == 1);
  CHECK(cyclotomic_data(4, 2).e == 2);
  CHECK(cyclotomic_data(50, 5).e == 20);

  SECTION("brute-force oracle over n <= 50") {
    for (long long p : {2LL, 3LL, 5LL, 7LL}) {
      for (long long n = 2; n <= 50; ++n) {
        long long m = n, r = 0;
        while (m % p == 0) { m /= p; ++r; }
        long long pr = 1;
        for (long long i = 0; i < r; ++i) pr *= p;
        long long e = 0;  // Euler phi of p^r by direct count
        for (long long x = 1; x <= pr; ++x) {
          long long g = x, h = pr;
          while (h) { long long t = g % h; g = h; h = t; }
          if (g == 1) ++e;
        }
        long long f = 1;
        if (m > 1) {
          long long t = p % m;
          while (t != 1) { t = (t * p) % m; ++f; }
        }
        auto d = cyclotomic_data(n, p);
        CHECK(d.e == e);
        CHECK(d.f == f);
        CHECK(d.degree == e * f);
      }
    }
  }

  CHECK_THROWS_AS(cyclotomic_data(1, 3), PreconditionFailed);
  CHECK_THROWS_AS(cyclotomic_data(10, 6), PreconditionFailed);
}

TEST_CASE("prime-to-p roots of unity are read off the residue field") {
  auto Q5 = LocalField::ground(5);
  CHECK(roots_of_unity_predicate(Q5, 2, 1));
  CHECK(roots_of_unity_predicate(Q5, 2, 2));
  CHECK(!roots_of_unity_predicate(Q5, 2, 3));
  CHECK(!roots_of_unity_predicate(Q5, 3, 1));

  auto U4 = LocalField::unramified(LocalField::ground(2), 2, "[unram,2]");
  CHECK(roots_of_unity_predicate(U4, 3, 1));
  CHECK(!roots_of_unity_predicate(U4, 3, 2));
  CHECK(!roots_of_unity_predicate(U4, 7, 1));
  CHECK(!roots_of_unity_predicate(LocalField::ground(2), 3, 1));

  CHECK_THROWS_AS(roots_of_unity_predicate(Q5, 5, 1), QEqualsP);
  CHECK_THROWS_AS(roots_of_unity_predicate(Q5, 4, 1), PreconditionFailed);
  CHECK_THROWS_AS(roots_of_unity_predicate(Q5, 2, 0), PreconditionFailed);

  SECTION("agreement with element orders in the residue field") {
    std::vector<LocalFieldPtr> fields = {
        Q5, U4, LocalField::unramified(LocalField::ground(3), 2, "[unram,2]")};
    for (const auto& F : fields) {
      for (long long q : {2LL, 3LL, 7LL}) {
        if (q == F->p()) continue;
        for (long long r = 1; r <= 4; ++r) {
          long long qr = 1;
          for (long long i = 0; i < r; ++i) qr *= q;
          bool found = false;  // an element of exact order q^r
          for (const Fq& x : F->residue_field()->all_elements()) {
            if (x.is_zero()) continue;
            long long ord = 1;
            Fq t = x;
            while (!(t == F->residue_field()->one())) { t = t * x; ++ord; }
            if (ord == qr) found = true;
          }
          CHECK(roots_of_unity_predicate(F, q, r) == found);
        }
      }
    }
  }
}

TEST_CASE("zeta_p elements of the supported fields") {
  auto Q2 = LocalField::ground(2);
  CHECK(congruent_pi(zeta_p_element(Q2), LFElt::from_int(Q2, -1), 20));

  auto Z3 = LocalField::with_zeta_p(LocalField::ground(3));
  LFElt z = zeta_p_element(Z3);
  CHECK(congruent_pi(z, LFElt::one(Z3) + LFElt::uniformizer(Z3), 10));
  CHECK(congruent_pi(z.pow(3), LFElt::one(Z3), 40));

  auto T = field_from_descriptor("Qp(3)[zeta_p][sqrt,pi]");
  LFElt zt = zeta_p_element(T);
  CHECK(congruent_pi(zt.pow(3), LFElt::one(T), 40));
  auto v = (zt - LFElt::one(T)).valuation_pi();
  REQUIRE(v);
  CHECK(*v == 2);  // zeta - 1 generates the same ideal as the base uniformizer

  CHECK_THROWS_AS(zeta_p_element(LocalField::ground(5)), ZetaPMissing);
}

TEST_CASE("cyclic extension constructors reject bad operands") {
  auto Z3 = LocalField::with_zeta_p(LocalField::ground(3));
  LFElt pi = LFElt::uniformizer(Z3);
  CHECK_THROWS_AS(CyclicExtension::kummer(Z3, LFElt::from_int(Z3, 2)), PreconditionFailed);
  CHECK_THROWS_AS(CyclicExtension::kummer(Z3, pi.pow(2)), PreconditionFailed);
  CHECK_THROWS_AS(CyclicExtension::kummer(LocalField::ground(5), LFElt::from_int(LocalField::ground(5), 5)),
                  ZetaPMissing);
  CHECK_THROWS_AS(CyclicExtension::quadratic(LocalField::ground(3), LFElt::from_int(LocalField::ground(3), 3)),
                  PreconditionFailed);

  // p = 2 Kummer operands route through the quadratic construction
  auto Q2 = LocalField::ground(2);
  auto E2 = CyclicExtension::kummer(Q2, LFElt::from_int(Q2, 2));
  CHECK(E2.kind == CyclicExtension::Kind::Quadratic);
  CHECK(E2.degree == 2);

  auto EQ = CyclicExtension::quadratic(Q2, LFElt::from_int(Q2, -2));
  auto EF = CyclicExtension::finite_ext(3, 1, 2);
  CHECK_THROWS_AS(relative_norm(EF, LFElt::one(Q2)), PreconditionFailed);
  CHECK_THROWS_AS(relative_norm(EQ, EF.finite->top->one()), PreconditionFailed);
  CHECK_THROWS_AS(relative_norm(EQ, LFElt::one(Q2)), FieldMismatch);
  CHECK_THROWS_AS(norm_image_mod_pth_powers(EF), PreconditionFailed);
  CHECK_THROWS_AS(embeds_in_cyclic_p2(EF), PreconditionFailed);
}
