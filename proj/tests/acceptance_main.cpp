// Acceptance suite: one pass/fail line per criterion. Each criterion runs a
// set of registered claims (or a bespoke check) under its stated node budget
// and wall-clock limit; any claim failure, inconclusive verdict, or blown
// time limit fails the criterion. Exit code is the number of failed
// criteria.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "egl/claims.hpp"
#include "egl/cli.hpp"
#include "oracles.hpp"

using namespace egl;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_s;
  std::uint64_t budget;
  std::vector<std::string> claim_prefixes;
  std::function<std::vector<std::string>()> custom;  // extra failures
};

std::string g_catalog_dir = "catalog";

// ---- criterion 8: brute-force oracle equivalence on order <= 16 ----------

std::vector<std::string> oracle_equivalence() {
  std::vector<std::string> failures;
  Catalog cat(g_catalog_dir);

  auto set_of = [](const Subgroup& S) {
    auto v = S.elements();
    return std::set<elem>(v.begin(), v.end());
  };

  std::vector<std::string> keys = {"q8",       "d8",       "lep5_1",
                                   "lep5_2",   "cyclic_2", "cyclic_3",
                                   "cyclic_4", "cyclic_6", "cyclic_12"};
  std::map<std::string, GroupPtr> built;
  for (const auto& key : keys) {
    GroupPtr G = cat.build(key);
    built[key] = G;
    if (G->order() > 16) {
      failures.push_back(key + ": order above the oracle window");
      continue;
    }
    if (set_of(center(G)) != oracle::center(*G))
      failures.push_back(key + ": center mismatch");
    if (set_of(derived(G)) != oracle::derived(*G))
      failures.push_back(key + ": derived mismatch");
    if (prime_power_base(G->order()) != 0) {
      unsigned p = p_group_prime(G);
      for (unsigned n = 0; n <= 2; ++n)
        if (set_of(omega(G, p, n)) != oracle::omega(*G, p, n))
          failures.push_back(key + ": omega_" + std::to_string(n) +
                             " mismatch");
      if (set_of(frattini(G)) != oracle::frattini(*G))
        failures.push_back(key + ": frattini mismatch");
    }
  }

  const std::pair<const char*, const char*> hom_pairs[] = {
      {"q8", "q8"},      {"q8", "d8"},       {"d8", "q8"},
      {"d8", "d8"},      {"lep5_2", "cyclic_2"}, {"cyclic_12", "cyclic_6"},
      {"cyclic_2", "q8"}};
  for (const auto& [ka, kb] : hom_pairs) {
    GroupPtr A = built[ka], B = built[kb];
    Budget budget;
    auto hl = homomorphisms(A, B, budget);
    if (!hl.exhausted) {
      failures.push_back(std::string(ka) + "->" + kb + ": not exhausted");
      continue;
    }
    std::vector<std::vector<elem>> mine;
    for (const auto& m : hl.maps)
      mine.emplace_back(m.table.begin(), m.table.end());
    std::sort(mine.begin(), mine.end());
    if (mine != oracle::homomorphisms(*A, *B))
      failures.push_back(std::string(ka) + "->" + kb +
                         ": homomorphism sets differ");
  }
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--catalog") && i + 1 < argc)
      g_catalog_dir = argv[++i];
    else if (!std::strcmp(argv[i], "--threads") && i + 1 < argc)
      config::threads.store(unsigned(std::atoi(argv[++i])));
  }

  Catalog catalog(g_catalog_dir);
  auto claims = build_claims(catalog);
  std::map<std::string, const Claim*> by_id;
  for (const auto& c : claims) by_id[c.id] = &c;

  std::vector<Criterion> criteria = {
      {"A1",
       "quaternion group: order, 2-Engel, epsilon with r=1, E fails with "
       "witness, Aut non-abelian",
       1.0,
       kDefaultBudget,
       {"q8.profile", "q8.two_engel", "q8.p_epsilon", "q8.e_group",
        "q8.aut_abelian"},
       {}},
      {"A2",
       "order-8 dihedral group: epsilon predicate fails with a non-central "
       "involution",
       1.0,
       kDefaultBudget,
       {"d8.p_epsilon"},
       {}},
      {"A3",
       "the five small non-abelian epsilon groups materialize and fail the "
       "E-group check",
       30.0,
       kDefaultBudget,
       {"lep5_1.", "lep5_2.", "lep5_3.", "lep5_4.", "lep5_5."},
       {}},
      {"A4",
       "three order-128 E-groups: center structure, exhaustive E check, "
       "abelian Aut, central non-autos, pairwise distinct",
       600.0,
       kDefaultBudget,  // 10^9 nodes
       {"e128_1.", "e128_2.", "e128_3.", "e128.pairwise_not_isomorphic"},
       {}},
      {"A5",
       "order-3^8 four-generator group: structure, power identities, "
       "exponent and second-center relations",
       300.0,
       kDefaultBudget,
       {"faudree_p3.structure", "faudree_p3.regular_power",
        "faudree_p3.exponent_relations", "faudree_p3.second_center_power"},
       {}},
      {"A6",
       "p=2 counterexample: explicit endomorphism accepted and E check "
       "fails fast",
       300.0,
       kDefaultBudget,
       {"faudree_p2.witness_endo", "faudree_p2.not_e_group"},
       {}},
      {"A7",
       "parametric 3-generator grid: order, class 2, epsilon, subgroup "
       "identities, presentation route, E fails at (1,1)",
       600.0,
       kDefaultBudget,
       {"threegen_r1_t1_I.", "threegen_r1_t1_U.", "threegen_r2_t1_I.checks",
        "threegen_r2_t1_U.checks"},
       {}},
      {"A8",
       "subgroup and homomorphism computations match brute-force oracles on "
       "all order-<=16 catalog groups",
       60.0,
       kDefaultBudget,
       {},
       oracle_equivalence},
      {"A9",
       "invariant suites across the catalog, including the class-3 "
       "second-center index check",
       120.0,
       kDefaultBudget,
       {"invariants.", "d16.", "remark22."},
       {}},
  };

  int failed_criteria = 0;
  for (const auto& cr : criteria) {
    auto t0 = Clock::now();
    std::vector<std::string> failures;
    Budget budget(cr.budget);
    for (const auto& prefix : cr.claim_prefixes) {
      bool matched = false;
      for (const auto& c : claims) {
        if (c.extended) continue;
        if (c.id.rfind(prefix, 0) != 0) continue;
        matched = true;
        ClaimResult r = run_claim(c, budget);
        if (r.status == ClaimResult::Status::fail)
          failures.push_back(c.id + ": " + r.detail);
        else if (r.status == ClaimResult::Status::inconclusive)
          failures.push_back(c.id + ": inconclusive (" + r.detail + ")");
      }
      if (!matched) failures.push_back("no claim matches prefix " + prefix);
    }
    if (cr.custom) {
      auto extra = cr.custom();
      failures.insert(failures.end(), extra.begin(), extra.end());
    }
    double secs =
        std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs > cr.time_limit_s)
      failures.push_back("time limit exceeded: " + std::to_string(secs) +
                         " s > " + std::to_string(cr.time_limit_s) + " s");
    bool pass = failures.empty();
    if (!pass) ++failed_criteria;
    std::printf("[%s] %s %s (%.1f s, limit %.0f s, %llu nodes)\n",
                pass ? "PASS" : "FAIL", cr.id.c_str(), cr.title.c_str(), secs,
                cr.time_limit_s, (unsigned long long)budget.used());
    for (const auto& f : failures) std::printf("       - %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed_criteria,
              criteria.size());
  return failed_criteria;
}
