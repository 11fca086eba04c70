#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "egl/analysis.hpp"
#include "egl/catalog.hpp"
#include "egl/engel.hpp"
#include "egl/morphisms.hpp"
#include "egl/quotient.hpp"

namespace egl {

struct ClaimResult {
  enum class Status { pass, fail, inconclusive };
  Status status = Status::pass;
  std::string detail;
  double ms = 0;
};

struct Claim {
  std::string id;
  std::string description;
  bool extended = false;     // only runs in the extended suite
  bool record_only = false;  // outcome is reported, never counted as failure
  std::function<ClaimResult(Budget&)> run;
};

namespace detail {

// Caches built groups so several claims about one group share the table.
// The large parametric groups are deliberately not cached.
class ClaimContext {
 public:
  explicit ClaimContext(Catalog cat) : cat_(std::move(cat)) {}

  const Catalog& catalog() const { return cat_; }

  GroupPtr group(const std::string& key) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    GroupPtr G = cat_.build(key);
    cache_[key] = G;
    return G;
  }

  GroupPtr faudree(unsigned p) {
    std::string key = "faudree_p" + std::to_string(p);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    GroupPtr G = faudree_group(p);
    cache_[key] = G;
    return G;
  }

  void drop(const std::string& key) { cache_.erase(key); }

 private:
  Catalog cat_;
  std::map<std::string, GroupPtr> cache_;
};

using Ctx = std::shared_ptr<ClaimContext>;

inline ClaimResult ok() { return {}; }

inline ClaimResult failed(std::string detail) {
  return {ClaimResult::Status::fail, std::move(detail), 0};
}

inline ClaimResult check(bool cond, const std::string& detail) {
  return cond ? ok() : failed(detail);
}

template <typename F>
Claim make_claim(std::string id, std::string description, F&& f,
                 bool extended = false, bool record_only = false) {
  Claim c;
  c.id = std::move(id);
  c.description = std::move(description);
  c.extended = extended;
  c.record_only = record_only;
  c.run = std::forward<F>(f);
  return c;
}

inline std::set<elem> subgroup_set(const Subgroup& S) {
  auto v = S.elements();
  return std::set<elem>(v.begin(), v.end());
}

// Z(G) = G' = G^2 = Omega_1(G) = {g^2 : g in G}, the last one as a raw
// element set.
inline ClaimResult check_center_structure(const GroupPtr& G) {
  auto Z = subgroup_set(center(G));
  auto D = subgroup_set(derived(G));
  auto P = subgroup_set(power_subgroup(G, 2));
  auto O = subgroup_set(omega(G, 2, 1));
  auto raw_omega_v = omega_set(G, 2, 1);
  std::set<elem> raw_omega(raw_omega_v.begin(), raw_omega_v.end());
  std::set<elem> squares;
  for (elem x = 0; x < G->order(); ++x) squares.insert(G->pow(x, 2));
  if (Z != D) return failed("Z(G) != G'");
  if (Z != P) return failed("Z(G) != G^2");
  if (Z != O) return failed("Z(G) != Omega_1(G)");
  if (Z != squares) return failed("Z(G) != {g^2}");
  if (raw_omega != squares)
    return failed("order-2 element set != square set");
  return ok();
}

// exp(G') = exp(G/Z(G)) and exp(G) = p^r exp(G') with p^r = exp(G/G').
inline ClaimResult check_exponent_relations(const GroupPtr& G, unsigned p) {
  auto Z = center(G);
  auto D = derived(G);
  std::uint64_t expD = D.order() == 1 ? 1 : exponent(D);
  std::uint64_t expGZ = exponent(quotient(G, Z).group);
  if (expD != expGZ)
    return failed("exp(G') = " + std::to_string(expD) +
                  " but exp(G/Z) = " + std::to_string(expGZ));
  std::uint64_t pr = exponent(quotient(G, D).group);
  if (exponent(G) != pr * expD)
    return failed("exp(G) != exp(G/G') * exp(G')");
  return ok();
}

// Z_2(G)^(p^r) = Z(G) meet G^(p^r), comparing element sets.
inline ClaimResult check_second_center_power(const GroupPtr& G, unsigned p) {
  auto D = derived(G);
  std::uint64_t pr = exponent(quotient(G, D).group);
  auto Z2 = second_center(G);
  auto lhs = subgroup_set(power_subgroup(G, Z2, pr));
  auto Z = center(G);
  auto P = subgroup_set(power_subgroup(G, pr));
  std::set<elem> rhs;
  for (elem x : P)
    if (Z.contains(x)) rhs.insert(x);
  return check(lhs == rhs, "Z2(G)^(p^r) != Z(G) meet G^(p^r)");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The claim registry. Core claims back `verify core` and the acceptance
// suite; extended claims add the long searches.

inline std::vector<Claim> build_claims(const Catalog& catalog) {
  using namespace detail;
  auto ctx = std::make_shared<ClaimContext>(catalog);
  std::vector<Claim> claims;

  const std::vector<std::string> keys = {
      "q8",     "d8",     "d16",    "remark22", "lep5_1",  "lep5_2",
      "lep5_3", "lep5_4", "lep5_5", "e128_1",   "e128_2",  "e128_3"};

  for (const std::string& key : keys) {
    CatalogEntry entry = catalog.named(key);

    claims.push_back(make_claim(
        key + ".profile", "order, exponent, class and rank match the catalog",
        [ctx, entry, key](Budget&) {
          GroupPtr G = ctx->group(key);
          if (auto want = entry.expected_int("order"); want && G->order() != *want)
            return failed("order " + std::to_string(G->order()));
          if (entry.expected_bool("nonabelian") && derived(G).order() == 1)
            return failed("unexpected abelian group");
          if (auto want = entry.expected_int("exponent");
              want && exponent(G) != *want)
            return failed("exponent " + std::to_string(exponent(G)));
          if (auto want = entry.expected_int("class");
              want && nilpotency_class(G) != *want)
            return failed("class " + std::to_string(nilpotency_class(G)));
          if (auto want = entry.expected_int("d");
              want && min_generators(G) != *want)
            return failed("d " + std::to_string(min_generators(G)));
          if (!check_axioms(*G)) return failed("table fails group axioms");
          return ok();
        }));

    if (entry.expected.count("is_2_engel"))
      claims.push_back(make_claim(
          key + ".two_engel", "2-Engel identity scan over all pairs",
          [ctx, entry, key](Budget&) {
            auto v = is_2_engel(ctx->group(key));
            return check(v.holds == entry.expected_bool("is_2_engel"),
                         v.holds ? "unexpectedly holds" : "fails at witness");
          }));

    if (entry.expected.count("is_p_epsilon"))
      claims.push_back(make_claim(
          key + ".p_epsilon",
          "2-Engel plus Omega_r inside the center, r from exp(G/G')",
          [ctx, entry, key](Budget&) {
            GroupPtr G = ctx->group(key);
            auto rep = is_p_epsilon(G, p_group_prime(G));
            bool want = entry.expected_bool("is_p_epsilon");
            if (rep.holds != want)
              return failed(rep.holds ? "unexpectedly holds"
                                      : "fails " + rep.failed_clause);
            if (auto r = entry.expected_int("p_epsilon_r");
                r && rep.r != *r)
              return failed("r = " + std::to_string(rep.r));
            if (!rep.holds && !rep.witness.empty() &&
                rep.failed_clause == "omega") {
              elem w = rep.witness[0];
              unsigned p = p_group_prime(G);
              if (G->pow(w, (long long)ipow(p, rep.r)) !=
                      CayleyGroup::identity ||
                  center(G).contains(w))
                return failed("omega witness does not re-verify");
            }
            return ok();
          }));

    if (entry.expected.count("is_e_group"))
      claims.push_back(make_claim(
          key + ".e_group",
          "endomorphism enumeration: elements commute with their images",
          [ctx, entry, key](Budget& budget) {
            GroupPtr G = ctx->group(key);
            auto v = is_e_group(G, budget);
            bool want = entry.expected_bool("is_e_group");
            if (v.holds != want)
              return failed(v.holds ? "unexpectedly an E-group"
                                    : "unexpected witness found");
            if (v.holds && !v.exhausted)
              return failed("holds but search not exhausted");
            if (!v.holds) {
              const auto& f = *v.witness_map;
              if (!satisfies_relators(G, G, f.gen_images))
                return failed("witness map is not an endomorphism");
              if (G->comm(v.witness_element, f(v.witness_element)) ==
                  CayleyGroup::identity)
                return failed("witness does not re-verify");
            }
            return ok();
          }));

    if (entry.expected.count("aut_abelian"))
      claims.push_back(make_claim(
          key + ".aut_abelian", "pairwise commutation of the automorphisms",
          [ctx, entry, key](Budget& budget) {
            auto v = aut_is_abelian(ctx->group(key), budget);
            return check(v.holds == entry.expected_bool("aut_abelian"),
                         v.holds ? "unexpectedly abelian" : "non-commuting pair");
          }));

    if (entry.expected.count("all_autos_central"))
      claims.push_back(make_claim(
          key + ".all_autos_central",
          "every automorphism moves elements within their center coset",
          [ctx, key](Budget& budget) {
            GroupPtr G = ctx->group(key);
            auto auts = automorphisms(G, budget);
            if (!auts.exhausted) throw BudgetExceeded(budget.used());
            Subgroup Z = center(G);
            for (const auto& f : auts.maps)
              if (!is_central_auto(G, f, Z))
                return failed("non-central automorphism found");
            return ok();
          }));

    if (entry.expected.count("non_auto_endos_central"))
      claims.push_back(make_claim(
          key + ".non_auto_endos_central",
          "non-bijective endomorphisms map into the center",
          [ctx, entry, key](Budget& budget) {
            auto v = non_auto_endos_land_in_center(ctx->group(key), budget);
            return check(v.holds == entry.expected_bool("non_auto_endos_central"),
                         v.holds ? "unexpectedly holds" : "escaping image");
          }));

    if (entry.expected.count("center_is_squares"))
      claims.push_back(make_claim(
          key + ".center_structure",
          "Z(G) = G' = G^2 = Omega_1(G) = {g^2} as element sets",
          [ctx, key](Budget&) { return check_center_structure(ctx->group(key)); }));
  }

  // ---- pairwise non-isomorphism of the three order-128 groups
  claims.push_back(make_claim(
      "e128.pairwise_not_isomorphic",
      "generator-image search finds no bijective homomorphism",
      [ctx](Budget& budget) {
        const char* ks[] = {"e128_1", "e128_2", "e128_3"};
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j) {
            auto rep =
                are_isomorphic(ctx->group(ks[i]), ctx->group(ks[j]), budget);
            if (rep.isomorphic)
              return failed(std::string(ks[i]) + " ~ " + ks[j]);
          }
        return ok();
      }));

  // ---- the p = 2 counterexample to the 4-generator family
  claims.push_back(make_claim(
      "faudree_p2.witness_endo",
      "the explicit map extends to an endomorphism and moves a3 past a4",
      [ctx](Budget&) {
        GroupPtr G = ctx->faudree(2);
        if (G->order() != 256) return failed("order");
        auto f = map_from_words(
            G, {parse_word("a1^-1 a2 a4"), parse_word("a3"), parse_word("a4"),
                parse_word("a1 a4")});
        if (!satisfies_relators(G, G, f.gen_images))
          return failed("map does not satisfy the relators");
        if (!is_homomorphism(f)) return failed("map is not a homomorphism");
        elem a3 = G->generators()[2].element;
        if (G->comm(f(a3), a3) == CayleyGroup::identity)
          return failed("[f(a3), a3] = 1");
        return ok();
      }));

  claims.push_back(make_claim(
      "faudree_p2.not_e_group", "fail-fast search finds a violating pair",
      [ctx](Budget& budget) {
        GroupPtr G = ctx->faudree(2);
        auto v = is_e_group(G, budget);
        if (v.holds) return failed("unexpectedly an E-group");
        const auto& f = *v.witness_map;
        if (G->comm(v.witness_element, f(v.witness_element)) ==
            CayleyGroup::identity)
          return failed("witness does not re-verify");
        return ok();
      }));

  // ---- structural suite for the odd-prime 4-generator group
  claims.push_back(make_claim(
      "faudree_p3.structure", "order 3^8, class 2, 2-Engel, epsilon with r=1",
      [ctx](Budget&) {
        GroupPtr G = ctx->faudree(3);
        if (G->order() != 6561) return failed("order");
        if (nilpotency_class(G) != 2) return failed("class");
        if (!is_2_engel(G).holds) return failed("not 2-Engel");
        auto rep = is_p_epsilon(G, 3);
        if (!rep.holds || rep.r != 1) return failed("epsilon predicate");
        if (exponent(G) != 9) return failed("exponent");
        if (min_generators(G) != 4) return failed("d(G)");
        return ok();
      }));

  claims.push_back(make_claim(
      "faudree_p3.regular_power",
      "a^q b^q = (ab)^q [a,b]^(q(q-1)/2) on 1000 random pairs, q = 3, 9",
      [ctx](Budget&) {
        GroupPtr G = ctx->faudree(3);
        for (unsigned m : {1u, 2u}) {
          auto v = regular_power_identity(G, 3, m, 1000);
          if (!v.holds) return failed("fails at m=" + std::to_string(m));
        }
        return ok();
      }));

  claims.push_back(make_claim(
      "faudree_p3.exponent_relations",
      "exp(G') = exp(G/Z) and exp(G) = exp(G/G') exp(G')",
      [ctx](Budget&) { return check_exponent_relations(ctx->faudree(3), 3); }));

  claims.push_back(make_claim(
      "faudree_p3.second_center_power", "Z2(G)^(p^r) = Z(G) meet G^(p^r)",
      [ctx](Budget&) { return check_second_center_power(ctx->faudree(3), 3); }));

  // ---- the 3-generator parametric grid
  struct GridPoint {
    unsigned r, t;
    std::array<std::array<long long, 3>, 3> T;
    const char* tag;
  };
  const std::array<std::array<long long, 3>, 3> I = {
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  const std::array<std::array<long long, 3>, 3> U = {
      {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}};
  const GridPoint grid[] = {
      {1, 1, I, "r1_t1_I"}, {1, 1, U, "r1_t1_U"},
      {2, 1, I, "r2_t1_I"}, {2, 1, U, "r2_t1_U"}};

  for (const GridPoint& gp : grid) {
    ThreeGenParams prm{3, gp.r, gp.t, gp.T};
    claims.push_back(make_claim(
        std::string("threegen_") + gp.tag + ".checks",
        "order, class exactly 2, epsilon predicate, subgroup identities",
        [prm](Budget&) {
          GroupPtr G = threegen_group(prm);
          std::uint64_t want = ipow(prm.p, 3 * (prm.r + prm.t));
          if (G->order() != want) return failed("order");
          if (nilpotency_class(G) != 2) return failed("class");
          auto rep = is_p_epsilon(G, prm.p);
          if (!rep.holds) return failed("epsilon predicate: " + rep.failed_clause);
          if (rep.r != prm.r)
            return failed("r = " + std::to_string(rep.r));
          auto Z = subgroup_set(center(G));
          auto Om_r = subgroup_set(omega(G, prm.p, prm.r));
          auto Pt = subgroup_set(power_subgroup(G, ipow(prm.p, prm.t)));
          if (Z != Om_r || Z != Pt)
            return failed("Z(G) = Omega_r(G) = G^(p^t) fails");
          auto Dg = derived(G);
          auto D = subgroup_set(Dg);
          auto Om_t = subgroup_set(omega(G, prm.p, prm.t));
          auto Pr = subgroup_set(power_subgroup(G, ipow(prm.p, prm.r)));
          if (D != Om_t || D != Pr)
            return failed("G' = Omega_t(G) = G^(p^r) fails");
          if (exponent(Dg) != ipow(prm.p, prm.t))
            return failed("exp(G') != p^t");
          if (exponent(G) != ipow(prm.p, prm.r + prm.t))
            return failed("exp(G) != p^(r+t)");
          return ok();
        }));
    if (gp.r == 1 && gp.t == 1) {
      claims.push_back(make_claim(
          std::string("threegen_") + gp.tag + ".presentation_route",
          "materializing the presentation gives an isomorphic group",
          [prm](Budget& budget) {
            GroupPtr F = threegen_group(prm);
            GroupPtr P = materialize(threegen_presentation(prm));
            if (P->order() != F->order()) return failed("orders differ");
            auto rep = are_isomorphic(P, F, budget);
            return check(rep.isomorphic, "no isomorphism found: " + rep.reason);
          }));
      claims.push_back(make_claim(
          std::string("threegen_") + gp.tag + ".not_e_group",
          "fail-fast endomorphism search finds a violating pair",
          [prm](Budget& budget) {
            GroupPtr G = threegen_group(prm);
            auto v = is_e_group(G, budget);
            if (v.holds) return failed("unexpectedly an E-group");
            const auto& f = *v.witness_map;
            if (G->comm(v.witness_element, f(v.witness_element)) ==
                CayleyGroup::identity)
              return failed("witness does not re-verify");
            return ok();
          }));
    }
  }

  // ---- invariant suites over the cataloged groups
  claims.push_back(make_claim(
      "invariants.exponent_relations",
      "exponent identities on every cataloged epsilon-group",
      [ctx, keys](Budget&) {
        for (const auto& key : keys) {
          auto entry = ctx->catalog().named(key);
          if (!entry.expected_bool("is_p_epsilon")) continue;
          GroupPtr G = ctx->group(key);
          auto r = check_exponent_relations(G, p_group_prime(G));
          if (r.status != ClaimResult::Status::pass)
            return failed(key + ": " + r.detail);
        }
        return ok();
      }));

  claims.push_back(make_claim(
      "invariants.second_center_power",
      "second-center power identity on every cataloged epsilon-group",
      [ctx, keys](Budget&) {
        for (const auto& key : keys) {
          auto entry = ctx->catalog().named(key);
          if (!entry.expected_bool("is_p_epsilon")) continue;
          GroupPtr G = ctx->group(key);
          auto r = check_second_center_power(G, p_group_prime(G));
          if (r.status != ClaimResult::Status::pass)
            return failed(key + ": " + r.detail);
        }
        return ok();
      }));

  claims.push_back(make_claim(
      "invariants.engel_closure",
      "2-Engel groups: class <= 3, gamma3 exponent divides 3, G^3 G' <= Z2",
      [ctx, keys](Budget&) {
        for (const auto& key : keys) {
          GroupPtr G = ctx->group(key);
          if (!is_2_engel(G).holds) continue;
          if (nilpotency_class(G) > 3) return failed(key + ": class > 3");
          auto g3 = gamma3(G);
          std::uint64_t e3 = g3.order() == 1 ? 1 : exponent(g3);
          if (3 % e3 != 0)
            return failed(key + ": gamma3 exponent does not divide 3");
          auto Z2 = second_center(G);
          auto P3 = power_subgroup(G, 3);
          auto D = derived(G);
          std::vector<elem> seeds = P3.gens();
          for (elem e : D.gens()) seeds.push_back(e);
          if (!Z2.contains_all(closure(G, seeds)))
            return failed(key + ": G^3 G' escapes Z2");
        }
        return ok();
      }));

  claims.push_back(make_claim(
      "invariants.two_generator_quotient",
      "2-Engel with 2-generator G/Z2 forces class <= 2",
      [ctx, keys](Budget&) {
        for (const auto& key : keys) {
          GroupPtr G = ctx->group(key);
          if (!is_2_engel(G).holds) continue;
          auto Z2 = second_center(G);
          auto q = quotient(G, Z2);
          if (q.group->order() == 1 || min_generators(q.group) <= 2)
            if (nilpotency_class(G) > 2)
              return failed(key + ": class exceeds 2");
        }
        return ok();
      }));

  claims.push_back(make_claim(
      "invariants.omega_in_frattini",
      "central omega_1 without abelian direct factor lies in the Frattini "
      "subgroup",
      [ctx, keys](Budget&) {
        for (const auto& key : keys) {
          auto entry = ctx->catalog().named(key);
          if (!entry.expected.count("has_abelian_direct_factor")) continue;
          if (entry.expected_bool("has_abelian_direct_factor")) continue;
          GroupPtr G = ctx->group(key);
          unsigned p = p_group_prime(G);
          auto O = omega(G, p, 1);
          if (!center(G).contains_all(O)) continue;  // hypothesis fails
          if (!frattini(G).contains_all(O))
            return failed(key + ": omega_1 escapes Phi");
        }
        return ok();
      }));

  claims.push_back(make_claim(
      "invariants.class3_second_center_index",
      "class-3 check on the order-16 dihedral group: |G : Z2| = 4",
      [ctx](Budget&) {
        GroupPtr G = ctx->group("d16");
        auto D = derived(G);
        auto Z = center(G);
        std::uint32_t inter = 0;
        for (elem x : D.elements())
          if (Z.contains(x)) ++inter;
        if (D.order() / inter != 2) return failed("|G' : G' meet Z| != 2");
        if (G->order() / second_center(G).order() != 4)
          return failed("|G : Z2| != 4");
        return ok();
      }));

  claims.push_back(make_claim(
      "invariants.e_implies_engel_epsilon",
      "cataloged E-groups are 2-Engel and epsilon-groups",
      [ctx, keys](Budget&) {
        for (const auto& key : keys) {
          auto entry = ctx->catalog().named(key);
          if (!entry.expected_bool("is_e_group")) continue;
          GroupPtr G = ctx->group(key);
          if (!is_2_engel(G).holds) return failed(key + ": not 2-Engel");
          if (!is_p_epsilon(G, p_group_prime(G)).holds)
            return failed(key + ": not an epsilon-group");
        }
        return ok();
      }));

  // ---- extended suite
  claims.push_back(make_claim(
      "faudree_p3.e_group",
      "full endomorphism enumeration of the order-6561 group",
      [ctx](Budget& budget) {
        GroupPtr G = ctx->faudree(3);
        auto v = is_e_group(G, budget);
        if (!v.holds) return failed("counterexample found");
        if (!v.exhausted) return failed("not exhausted");
        return ok();
      },
      /*extended=*/true));

  claims.push_back(make_claim(
      "threegen_r2_t1_I.e_group_record",
      "E-group status of the order-3^9 grid point (recorded, not asserted)",
      [](Budget&) {
        // The image space of this search dwarfs any practical budget, so the
        // record caps its own node count and reports how far it got.
        ThreeGenParams prm{3, 2, 1, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
        GroupPtr G = threegen_group(prm);
        Budget local(2000000000ULL);
        ClaimResult r;
        try {
          auto v = is_e_group(G, local);
          r.detail = v.holds ? "holds (exhausted)"
                             : "fails with witness element " +
                                   std::to_string(v.witness_element);
        } catch (const BudgetExceeded&) {
          r.detail = "inconclusive: no counterexample within " +
                     std::to_string(local.used()) + " nodes";
        }
        return r;
      },
      /*extended=*/true, /*record_only=*/true));

  return claims;
}

// Runs one claim against a shared budget, folding budget exhaustion into the
// inconclusive status.
inline ClaimResult run_claim(const Claim& c, Budget& budget) {
  auto t0 = std::chrono::steady_clock::now();
  ClaimResult r;
  try {
    r = c.run(budget);
  } catch (const BudgetExceeded& e) {
    r.status = ClaimResult::Status::inconclusive;
    r.detail = e.what();
  } catch (const Error& e) {
    r.status = ClaimResult::Status::fail;
    r.detail = e.what();
  }
  r.ms = std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
             .count();
  return r;
}

}  // namespace egl
