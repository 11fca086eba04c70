#include <catch2/catch_amalgamated.hpp>

#include "egl/coset.hpp"
#include "egl/engel.hpp"
#include "egl/quotient.hpp"
#include "egl/subgroup.hpp"
#include "oracles.hpp"

using namespace egl;

namespace {

GroupPtr from_text(const char* text) {
  return materialize(parse_presentation(text));
}

GroupPtr q8() {
  return from_text(
      "group q8\norder 8\ngen a b\nrel a^4\nrel a^2 = b^2\nrel b^-1 a b = "
      "a^-1\n");
}
GroupPtr d8() {
  return from_text(
      "group d8\norder 8\ngen r s\nrel r^4\nrel s^2\nrel s^-1 r s = r^-1\n");
}
GroupPtr d16() {
  return from_text(
      "group d16\norder 16\ngen r s\nrel r^8\nrel s^2\nrel s^-1 r s = "
      "r^-1\n");
}
GroupPtr c12() { return from_text("group c12\ngen x\nrel x^12\n"); }

oracle::ElemSet as_set(const Subgroup& S) {
  auto v = S.elements();
  return oracle::ElemSet(v.begin(), v.end());
}

}  // namespace

TEST_CASE("closure basics") {
  auto G = q8();
  CHECK(closure(G, {}).order() == 1);
  elem a = G->generators()[0].element;
  auto A = closure(G, {a});
  CHECK(A.order() == 4);
  CHECK(A.contains(G->pow(a, 3)));
  CHECK(full_subgroup(G).order() == 8);

  // closure invariants: closed under mul and inverse, contains identity
  auto S = closure(G, {G->generators()[1].element});
  CHECK(S.contains(CayleyGroup::identity));
  for (elem x : S.elements()) {
    CHECK(S.contains(G->inv(x)));
    for (elem y : S.elements()) CHECK(S.contains(G->mul(x, y)));
  }
  CHECK(G->order() % S.order() == 0);
}

TEST_CASE("center") {
  auto G = q8();
  auto Z = center(G);
  CHECK(Z.order() == 2);
  elem a = G->generators()[0].element;
  CHECK(Z.contains(G->pow(a, 2)));
  CHECK(as_set(Z) == oracle::center(*G));

  auto C = c12();
  CHECK(center(C).order() == 12);
}

TEST_CASE("centralizer") {
  auto G = d8();
  elem r = G->generators()[0].element;
  auto Cr = centralizer(G, closure(G, {r}));
  CHECK(Cr.order() == 4);  // <r> is self-centralizing in D8
  CHECK(Cr.contains(r));
}

TEST_CASE("derived subgroup and gamma3") {
  auto G = q8();
  auto D = derived(G);
  CHECK(D.order() == 2);
  CHECK(as_set(D) == oracle::derived(*G));
  CHECK(as_set(D) == as_set(center(G)));
  CHECK(gamma3(G).order() == 1);

  auto C = c12();
  CHECK(derived(C).order() == 1);

  // two routes to the derived subgroup agree
  auto D2 = commutator_subgroup(G, full_subgroup(G), full_subgroup(G));
  CHECK(as_set(D) == as_set(D2));
  auto H = d16();
  CHECK(as_set(derived(H)) ==
        as_set(commutator_subgroup(H, full_subgroup(H), full_subgroup(H))));
  CHECK(as_set(derived(H)) == oracle::derived(*H));
}

TEST_CASE("lower central series and class") {
  CHECK(nilpotency_class(q8()) == 2);
  CHECK(nilpotency_class(d16()) == 3);
  CHECK(nilpotency_class(c12()) == 1);
  CHECK(nilpotency_class(trivial_group()) == 0);

  auto S3 = from_text("group s3\ngen a b\nrel a^2\nrel b^2\nrel (a b)^3\n");
  auto rep = lower_central_series(S3);
  CHECK(!rep.nilpotency_class.has_value());
  CHECK(rep.lower_central.back().order() == 3);  // stabilizes at A3

  // strictly decreasing until trivial
  auto repd = lower_central_series(d16());
  for (std::size_t i = 1; i < repd.lower_central.size(); ++i)
    CHECK(repd.lower_central[i].order() < repd.lower_central[i - 1].order());
}

TEST_CASE("second center") {
  auto G = d16();
  auto Z = center(G);
  auto Z2 = second_center(G);
  CHECK(Z.order() == 2);
  CHECK(Z2.order() == 4);
  CHECK(G->order() / Z2.order() == 4);  // |G : Z2| = 4
  CHECK(Z2.contains_all(Z));

  // |G' : G' cap Z| = 2 for D16, the hypothesis of the class-3 index lemma
  auto D = derived(G);
  std::uint32_t inter = 0;
  for (elem x : D.elements())
    if (Z.contains(x)) ++inter;
  CHECK(D.order() / inter == 2);

  // abelian: Z2 = G
  CHECK(second_center(c12()).order() == 12);
}

TEST_CASE("power subgroups") {
  auto G = q8();
  CHECK(power_subgroup(G, 1).order() == 8);
  auto Sq = power_subgroup(G, 2);
  CHECK(Sq.order() == 2);
  CHECK(as_set(Sq) == as_set(center(G)));
  CHECK(power_subgroup(G, 4).order() == 1);

  // inside-a-subgroup variant
  auto Z2 = second_center(d16());
  auto P = power_subgroup(d16(), Z2, 2);
  CHECK(P.order() <= Z2.order());
}

TEST_CASE("omega") {
  auto G = q8();
  CHECK(as_set(omega(G, 2, 1)) == as_set(center(G)));
  CHECK(omega(G, 2, 1).order() == 2);
  CHECK(omega(G, 2, 5).order() == 8);
  CHECK(omega(G, 2, 0).order() == 1);
  CHECK(as_set(omega(G, 2, 1)) == oracle::omega(*G, 2, 1));

  // D8 has non-central involutions
  auto H = d8();
  auto O = omega(H, 2, 1);
  auto Z = center(H);
  CHECK(!Z.contains_all(O));
  CHECK(as_set(O) == oracle::omega(*H, 2, 1));

  CHECK_THROWS_AS(omega(c12(), 2, 1), NotPGroup);
}

TEST_CASE("frattini") {
  auto G = q8();
  auto F = frattini(G);
  CHECK(F.order() == 2);
  CHECK(as_set(F) == as_set(center(G)));
  CHECK(G->order() / F.order() == 4);
  CHECK(as_set(F) == oracle::frattini(*G));

  auto E = from_text("group v4\ngen a b\nrel a^2\nrel b^2\nrel [a,b]\n");
  CHECK(frattini(E).order() == 1);

  // derived(G) <= frattini(G) for p-groups
  for (auto Gp : {q8(), d8(), d16()}) {
    CHECK(frattini(Gp).contains_all(derived(Gp)));
    CHECK(as_set(frattini(Gp)) == oracle::frattini(*Gp));
  }
}

TEST_CASE("exponent and minimal generators") {
  CHECK(exponent(c12()) == 12);
  CHECK(exponent(q8()) == 4);
  CHECK(exponent(d16()) == 8);
  CHECK(exponent(center(q8())) == 2);
  CHECK(min_generators(q8()) == 2);
  CHECK(min_generators(d16()) == 2);
  CHECK(min_generators(trivial_group()) == 0);
  CHECK_THROWS_AS(min_generators(c12()), NotPGroup);
}

TEST_CASE("2-engel predicate") {
  CHECK(is_2_engel(c12()).holds);
  CHECK(is_2_engel(q8()).holds);  // class 2

  auto H = d16();
  auto v = is_2_engel(H);
  REQUIRE(!v.holds);
  REQUIRE(v.witness.size() == 2);
  CHECK(H->comm3(v.witness[0], v.witness[1], v.witness[1]) !=
        CayleyGroup::identity);
}

TEST_CASE("2-engel implies class at most 3 on catalog groups") {
  for (auto G : {q8(), d8(), d16(), c12()}) {
    auto v = is_2_engel(G);
    if (v.holds) CHECK(nilpotency_class(G) <= 3);
  }
}

TEST_CASE("regular power identity") {
  auto C9 = from_text("group c9\nprime 3\ngen x\nrel x^9\n");
  for (unsigned m : {1u, 2u, 3u})
    CHECK(regular_power_identity(C9, 3, m, 100).holds);

  auto H27 = from_text(
      "group h27\nprime 3\norder 27\ngen a b\nrel a^3\nrel b^3\n"
      "rel [a,b,a]\nrel [a,b,b]\nrel [a,b]^3\n");
  REQUIRE(H27->order() == 27);
  CHECK(is_2_engel(H27).holds);
  CHECK(regular_power_identity(H27, 3, 1, 1000).holds);
  CHECK(regular_power_identity(H27, 3, 2, 1000).holds);

  CHECK_THROWS_AS(regular_power_identity(q8(), 2, 1, 10),
                  PreconditionViolated);
  CHECK_THROWS_AS(regular_power_identity(c12(), 3, 1, 10), NotPGroup);
  CHECK_THROWS_AS(regular_power_identity(d16(), 2, 1, 10),
                  PreconditionViolated);
}

TEST_CASE("quotients") {
  auto G = q8();
  auto Z = center(G);
  auto [Q, proj] = quotient(G, Z);
  CHECK(Q->order() == 4);
  CHECK(exponent(Q) == 2);  // Klein four-group
  CHECK(is_homomorphism(proj));
  CHECK(proj.table.size() == 8);

  auto [T, tproj] = quotient(G, full_subgroup(G));
  CHECK(T->order() == 1);

  // quotient by derived subgroup is abelian
  for (auto Gp : {q8(), d8(), d16()}) {
    auto [A, p2] = quotient(Gp, derived(Gp));
    CHECK(derived(A).order() == 1);
    CHECK(A->order() * derived(Gp).order() == Gp->order());  // Lagrange
  }

  // non-normal subgroup rejected with a checkable witness
  auto H = d8();
  elem s = H->generators()[1].element;
  auto S = closure(H, {s});
  try {
    quotient(H, S);
    FAIL("expected NotNormal");
  } catch (const NotNormal& e) {
    CHECK(S.contains(e.member));
    CHECK(!S.contains(H->conj(e.member, e.conjugator)));
  }
}

TEST_CASE("subgroup lattice oracle agrees on small groups") {
  for (auto G : {q8(), d8()}) {
    auto subs = oracle::all_subgroups(*G);
    // every library-computed subgroup shows up in the full lattice
    for (const Subgroup& S :
         {center(G), derived(G), frattini(G), omega(G, 2, 1)}) {
      auto set = as_set(S);
      CHECK(std::find(subs.begin(), subs.end(), set) != subs.end());
    }
  }
  // Q8: known lattice sizes -- 1 trivial, 1 order-2, 3 order-4, 1 order-8
  auto subs = oracle::all_subgroups(*q8());
  CHECK(subs.size() == 6);
}
