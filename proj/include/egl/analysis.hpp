#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "egl/base.hpp"
#include "egl/catalog.hpp"
#include "egl/engel.hpp"
#include "egl/morphisms.hpp"
#include "egl/quotient.hpp"
#include "egl/subgroup.hpp"

namespace egl {

// Everything cmd_analyze reports about one group. Wall-clock timing is kept
// out of the JSON rendering so that reruns are byte-identical; the text
// rendering shows it.
struct AnalysisReport {
  std::string name;
  std::uint64_t order = 0;
  std::uint64_t exponent_ = 0;
  std::optional<unsigned> nilpotency;
  bool is_abelian = false;
  std::optional<unsigned> prime;     // set when the order is a prime power
  std::optional<unsigned> dmin;

  std::uint32_t z_order = 0, z2_order = 0, derived_order = 0,
                gamma3_order = 0;
  std::optional<std::uint32_t> frattini_order;
  std::vector<std::uint32_t> omega_orders;          // Omega_1 .. Omega_r
  std::optional<std::uint32_t> power_p_order;       // G^p
  std::optional<std::uint32_t> power_pr_order;      // G^(p^r)

  VerdictReport engel;
  std::optional<PEpsilonReport> p_epsilon;

  enum class SearchState { done, inconclusive, skipped };
  SearchState e_state = SearchState::skipped;
  std::optional<EGroupVerdict> e_group;

  SearchState aut_state = SearchState::skipped;
  std::uint64_t aut_count = 0;
  bool aut_abelian_ = false;
  bool all_autos_central = false;

  std::uint64_t nodes_used = 0;
  std::uint64_t budget_limit = 0;
  double elapsed_ms = 0.0;
};

struct AnalysisOptions {
  std::uint64_t budget = kDefaultBudget;
  bool run_searches = true;  // endomorphism/automorphism enumeration
};

inline AnalysisReport analyze(const GroupPtr& G, const AnalysisOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  AnalysisReport rep;
  rep.budget_limit = opt.budget;
  rep.name = G->source() ? G->source()->name : "constructed";
  rep.order = G->order();
  rep.exponent_ = exponent(G);

  auto Z = center(G);
  auto D = derived(G);
  rep.is_abelian = D.order() == 1;
  rep.z_order = Z.order();
  rep.derived_order = D.order();
  rep.gamma3_order = gamma3(G).order();
  rep.z2_order = second_center(G).order();
  auto series = lower_central_series(G);
  rep.nilpotency = series.nilpotency_class;
  rep.engel = is_2_engel(G);

  auto base = prime_power_base(G->order());
  if (base != 0 || G->order() == 1) {
    unsigned p = base == 0 ? 2 : unsigned(base);
    rep.prime = p;
    rep.dmin = min_generators(G);
    rep.frattini_order = frattini(G).order();
    rep.p_epsilon = is_p_epsilon(G, p);
    rep.power_p_order = power_subgroup(G, p).order();
    std::uint64_t pr = ipow(p, rep.p_epsilon->r);
    rep.power_pr_order = power_subgroup(G, pr).order();
    for (unsigned k = 1; k <= rep.p_epsilon->r; ++k)
      rep.omega_orders.push_back(omega(G, p, k).order());
  }

  Budget budget(opt.budget);
  if (opt.run_searches && G->source()) {
    try {
      rep.e_group = is_e_group(G, budget);
      rep.e_state = AnalysisReport::SearchState::done;
    } catch (const BudgetExceeded&) {
      rep.e_state = AnalysisReport::SearchState::inconclusive;
    }
    try {
      if (rep.e_state == AnalysisReport::SearchState::done) {
        auto auts = automorphisms(G, budget);
        if (!auts.exhausted) throw BudgetExceeded(budget.used());
        rep.aut_count = auts.maps.size();
        Budget pair_budget(opt.budget);
        rep.aut_abelian_ = aut_is_abelian(G, pair_budget).holds;
        rep.all_autos_central = true;
        for (const auto& f : auts.maps)
          if (!is_central_auto(G, f, Z)) {
            rep.all_autos_central = false;
            break;
          }
        rep.aut_state = AnalysisReport::SearchState::done;
      }
    } catch (const BudgetExceeded&) {
      rep.aut_state = AnalysisReport::SearchState::inconclusive;
    }
  }
  rep.nodes_used = budget.used();
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return rep;
}

// ---------------------------------------------------------------------------

inline nlohmann::ordered_json to_json(const AnalysisReport& r) {
  using json = nlohmann::ordered_json;
  json j;
  j["schema"] = 1;
  j["name"] = r.name;
  j["order"] = r.order;
  j["exponent"] = r.exponent_;
  if (r.nilpotency)
    j["class"] = *r.nilpotency;
  else
    j["class"] = nullptr;
  j["abelian"] = r.is_abelian;
  if (r.prime) j["prime"] = *r.prime;
  if (r.dmin) j["d"] = *r.dmin;

  json sub;
  sub["center"] = r.z_order;
  sub["second_center"] = r.z2_order;
  sub["derived"] = r.derived_order;
  sub["gamma3"] = r.gamma3_order;
  if (r.frattini_order) sub["frattini"] = *r.frattini_order;
  if (!r.omega_orders.empty()) sub["omega"] = r.omega_orders;
  if (r.power_p_order) sub["power_p"] = *r.power_p_order;
  if (r.power_pr_order) sub["power_p_r"] = *r.power_pr_order;
  j["subgroup_orders"] = sub;

  json engel;
  engel["holds"] = r.engel.holds;
  if (!r.engel.holds) engel["witness"] = r.engel.witness;
  j["two_engel"] = engel;

  if (r.p_epsilon) {
    json pe;
    pe["holds"] = r.p_epsilon->holds;
    pe["r"] = r.p_epsilon->r;
    if (!r.p_epsilon->holds) {
      pe["failed_clause"] = r.p_epsilon->failed_clause;
      pe["witness"] = r.p_epsilon->witness;
    }
    j["p_epsilon"] = pe;
  }

  json e;
  switch (r.e_state) {
    case AnalysisReport::SearchState::skipped:
      e["state"] = "skipped";
      break;
    case AnalysisReport::SearchState::inconclusive:
      e["state"] = "inconclusive";
      e["exhausted"] = false;
      break;
    case AnalysisReport::SearchState::done: {
      e["state"] = "done";
      e["holds"] = r.e_group->holds;
      e["exhausted"] = r.e_group->exhausted;
      e["endomorphisms"] = r.e_group->endo_count;
      if (!r.e_group->holds) {
        e["witness_images"] = r.e_group->witness_map->gen_images;
        e["witness_element"] = r.e_group->witness_element;
      }
      break;
    }
  }
  j["e_group"] = e;

  json a;
  switch (r.aut_state) {
    case AnalysisReport::SearchState::skipped:
      a["state"] = "skipped";
      break;
    case AnalysisReport::SearchState::inconclusive:
      a["state"] = "inconclusive";
      break;
    case AnalysisReport::SearchState::done:
      a["state"] = "done";
      a["count"] = r.aut_count;
      a["abelian"] = r.aut_abelian_;
      a["all_central"] = r.all_autos_central;
      break;
  }
  j["aut"] = a;
  j["nodes"] = r.nodes_used;
  j["budget"] = r.budget_limit;
  return j;
}

inline std::string to_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "group " << r.name << "\n";
  os << "  order      " << r.order << "\n";
  os << "  exponent   " << r.exponent_ << "\n";
  if (r.nilpotency)
    os << "  class      " << *r.nilpotency << "\n";
  else
    os << "  class      not nilpotent\n";
  os << "  abelian    " << (r.is_abelian ? "yes" : "no") << "\n";
  if (r.dmin) os << "  d(G)       " << *r.dmin << "\n";
  os << "  |Z|=" << r.z_order << " |Z2|=" << r.z2_order
     << " |G'|=" << r.derived_order << " |gamma3|=" << r.gamma3_order;
  if (r.frattini_order) os << " |Phi|=" << *r.frattini_order;
  os << "\n";
  if (!r.omega_orders.empty()) {
    os << "  |Omega_k|  ";
    for (auto v : r.omega_orders) os << v << ' ';
    os << "\n";
  }
  if (r.power_p_order)
    os << "  |G^p|=" << *r.power_p_order << " |G^(p^r)|=" << *r.power_pr_order
       << "\n";
  os << "  2-engel    " << (r.engel.holds ? "holds" : "fails") << "\n";
  if (r.p_epsilon)
    os << "  p-epsilon  "
       << (r.p_epsilon->holds ? "holds" : "fails (" +
                                              r.p_epsilon->failed_clause + ")")
       << " r=" << r.p_epsilon->r << "\n";
  switch (r.e_state) {
    case AnalysisReport::SearchState::skipped:
      os << "  E-group    skipped\n";
      break;
    case AnalysisReport::SearchState::inconclusive:
      os << "  E-group    inconclusive (budget exceeded)\n";
      break;
    case AnalysisReport::SearchState::done:
      os << "  E-group    " << (r.e_group->holds ? "holds" : "fails")
         << " (endomorphisms=" << r.e_group->endo_count
         << ", exhausted=" << (r.e_group->exhausted ? "yes" : "no") << ")\n";
      if (!r.e_group->holds)
        os << "             witness element " << r.e_group->witness_element
           << "\n";
      break;
  }
  if (r.aut_state == AnalysisReport::SearchState::done)
    os << "  Aut        count=" << r.aut_count
       << " abelian=" << (r.aut_abelian_ ? "yes" : "no")
       << " all-central=" << (r.all_autos_central ? "yes" : "no") << "\n";
  else if (r.aut_state == AnalysisReport::SearchState::inconclusive)
    os << "  Aut        inconclusive (budget exceeded)\n";
  os << "  nodes      " << r.nodes_used << " / " << r.budget_limit << "\n";
  os << "  time       " << r.elapsed_ms << " ms\n";
  return os.str();
}

}  // namespace egl
