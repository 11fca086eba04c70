#include <catch2/catch_amalgamated.hpp>

#include "egl/catalog.hpp"
#include "egl/morphisms.hpp"

using namespace egl;

namespace {
Catalog cat() { return Catalog(EGL_CATALOG_DIR); }
}  // namespace

TEST_CASE("every catalog entry materializes to its declared order") {
  Catalog c = cat();
  for (const auto& key : c.keys()) {
    auto entry = c.named(key);
    auto G = c.build(key);
    auto want = entry.expected_int("order");
    REQUIRE(want.has_value());
    CHECK(G->order() == *want);
    CHECK(check_axioms(*G));
  }
}

TEST_CASE("catalog round-trips through the printer") {
  Catalog c = cat();
  for (const auto& key : c.keys()) {
    auto entry = c.named(key);
    if (!entry.presentation) continue;
    auto again = parse_presentation(to_text(*entry.presentation));
    CHECK(again == *entry.presentation);
  }
}

TEST_CASE("unknown keys are rejected, cyclic keys are synthesized") {
  Catalog c = cat();
  CHECK_THROWS_AS(c.named("nope"), UnknownKey);
  CHECK_THROWS_AS(c.named("cyclic_zero"), UnknownKey);
  auto entry = c.named("cyclic_12");
  REQUIRE(entry.presentation.has_value());
  auto G = c.build(entry);
  CHECK(G->order() == 12);
  CHECK(G->element_order(G->generators()[0].element) == 12);
}

TEST_CASE("constructed entries build as products and aliases") {
  Catalog c = cat();
  auto lep5_2 = c.build("lep5_2");
  CHECK(lep5_2->order() == 16);
  CHECK(lep5_2->generators().size() == 3);
  auto lep5_3 = c.build("lep5_3");
  CHECK(lep5_3->order() == 32);
  auto lep5_1 = c.build("lep5_1");
  CHECK(lep5_1->order() == 8);

  // the alias is the quaternion group
  Budget b;
  CHECK(are_isomorphic(lep5_1, c.build("q8"), b).isomorphic);
}

TEST_CASE("faudree presentations") {
  auto p3 = faudree_presentation(3);
  CHECK(p3.generators.size() == 4);
  CHECK(p3.order_hint == 6561);
  CHECK(p3.prime_hint == 3);
  // 4 power relations + 24 bracket relations + 6 pair relations
  CHECK(p3.relations.size() == 34);
  CHECK_THROWS_AS(faudree_presentation(4), PreconditionViolated);

  auto G2 = faudree_group(2);
  CHECK(G2->order() == 256);
  CHECK(exponent(G2) == 4);
}

TEST_CASE("threegen parameter validation") {
  ThreeGenParams good{3, 1, 1, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
  ThreeGenParams singular{3, 1, 1, {{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}}};
  ThreeGenParams scaled{3, 1, 1, {{{3, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
  ThreeGenParams bad_t{3, 1, 2, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
  ThreeGenParams even{2, 1, 1, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
  ThreeGenParams huge{3, 2, 2, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};

  CHECK(threegen_group(good)->order() == 729);
  CHECK_THROWS_AS(threegen_group(singular), InvalidMatrix);
  // 3*I is 0 over Z_3, so the determinant is no unit
  CHECK_THROWS_AS(threegen_group(scaled), InvalidMatrix);
  CHECK_THROWS_AS(threegen_group(bad_t), PreconditionViolated);
  CHECK_THROWS_AS(threegen_group(even), PreconditionViolated);
  CHECK_THROWS_AS(threegen_group(huge), OrderLimitExceeded);
}

TEST_CASE("threegen formula group satisfies its presentation") {
  ThreeGenParams prm{3, 1, 1, {{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}}};
  auto G = threegen_group(prm);
  REQUIRE(G->order() == 729);
  REQUIRE(G->source().has_value());
  CHECK(G->source()->generators == std::vector<std::string>{"x", "y", "z"});
  std::vector<elem> imgs;
  for (const auto& g : G->generators()) imgs.push_back(g.element);
  CHECK(satisfies_relators(G, G, imgs));
  CHECK(check_axioms_randomized(*G, 20000));

  // generator orders are p^(r+t) = 9
  for (const auto& g : G->generators())
    CHECK(G->element_order(g.element) == 9);
  CHECK(exponent(G) == 9);
}

TEST_CASE("threegen presentation materializes to the same group") {
  ThreeGenParams prm{3, 1, 1, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
  auto F = threegen_group(prm);
  auto P = materialize(threegen_presentation(prm));
  REQUIRE(P->order() == F->order());
  Budget b;
  CHECK(are_isomorphic(P, F, b).isomorphic);
}
