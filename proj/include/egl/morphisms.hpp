#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <vector>

#include "egl/base.hpp"
#include "egl/engel.hpp"
#include "egl/group.hpp"
#include "egl/maps.hpp"
#include "egl/quotient.hpp"
#include "egl/subgroup.hpp"

namespace egl {

// ---------------------------------------------------------------------------
// Homomorphism enumeration: backtracking over generator images in declaration
// order. A relator is checked as soon as all its symbols are assigned;
// relators are bucketed by their last-assigned symbol and short ones are
// checked first. Enumeration order is lexicographic in the image tuples.
// In parallel mode the first generator's image space is partitioned and
// results are merged in candidate order, so outputs match the serial run.

namespace detail {

struct HomProblem {
  const CayleyGroup* G;
  const CayleyGroup* H;
  unsigned ngens;
  std::vector<std::vector<std::vector<int>>> buckets;  // per level
  std::vector<std::vector<elem>> candidates;           // per level

  HomProblem(const GroupPtr& Gp, const GroupPtr& Hp,
             std::vector<std::vector<elem>> cands)
      : G(Gp.get()), H(Hp.get()) {
    if (!Gp->source())
      throw PreconditionViolated(
          "homomorphism enumeration needs the domain's presentation");
    const Presentation& p = *Gp->source();
    ngens = unsigned(p.generators.size());
    buckets.resize(ngens);
    for (std::size_t i = 0; i < p.relations.size(); ++i) {
      std::vector<int> letters = p.relator_letters(i);
      if (letters.empty()) continue;
      int mx = 0;
      for (int l : letters) mx = std::max(mx, l > 0 ? l : -l);
      buckets[mx - 1].push_back(std::move(letters));
    }
    for (auto& b : buckets)
      std::stable_sort(b.begin(), b.end(),
                       [](const auto& a, const auto& c) {
                         return a.size() < c.size();
                       });
    candidates = std::move(cands);
    if (candidates.empty()) {
      std::vector<elem> all(H->order());
      for (elem x = 0; x < H->order(); ++x) all[x] = x;
      candidates.assign(ngens, all);
    }
  }

  bool relators_ok(unsigned level, const std::vector<elem>& images) const {
    const std::uint16_t* mul = H->mul_table().data();
    const std::uint16_t* inv = H->inv_table().data();
    const std::uint32_t n = H->order();
    for (const auto& letters : buckets[level]) {
      elem acc = CayleyGroup::identity;
      for (int l : letters) {
        elem img = l > 0 ? images[l - 1] : inv[images[-l - 1]];
        acc = mul[std::size_t(acc) * n + img];
      }
      if (acc != CayleyGroup::identity) return false;
    }
    return true;
  }
};

// Visit returns false to stop the whole enumeration (deterministically: in
// parallel mode candidates after the stopping one are discarded, earlier
// ones still complete).
template <typename Visit>
bool run_hom_search(const HomProblem& prob, Budget& budget, Visit&& visit) {
  const unsigned k = prob.ngens;
  std::atomic<std::uint32_t> stop_at{~0u};  // first level-0 index that stopped
  std::atomic<bool> budget_hit{false};

  if (k == 0) {
    // no generators: the only map sends everything to the identity
    std::vector<elem> none;
    visit(none);
    return true;
  }

  auto subtree = [&](std::uint32_t c0_index) -> bool {
    // returns false if visit requested a stop inside this subtree
    std::vector<elem> images(k, 0);
    images[0] = prob.candidates[0][c0_index];
    budget.charge(1);
    if (!prob.relators_ok(0, images)) return true;
    if (k == 1) return visit(images);

    std::vector<std::uint32_t> idx(k, 0);
    unsigned level = 1;
    for (;;) {
      if (level == 0) return true;  // exhausted subtree
      if (stop_at.load(std::memory_order_relaxed) < c0_index) return true;
      if (idx[level] >= prob.candidates[level].size()) {
        idx[level] = 0;
        --level;
        if (level == 0) return true;
        ++idx[level];
        continue;
      }
      images[level] = prob.candidates[level][idx[level]];
      budget.charge(1);
      if (prob.relators_ok(level, images)) {
        if (level + 1 == k) {
          if (!visit(images)) return false;
          ++idx[level];
        } else {
          ++level;
          idx[level] = 0;
          continue;
        }
      } else {
        ++idx[level];
      }
    }
  };

  const std::uint32_t c0n = std::uint32_t(prob.candidates[0].size());
  unsigned nt = std::min<unsigned>(thread_count(), c0n ? c0n : 1);
  if (nt <= 1) {
    for (std::uint32_t i = 0; i < c0n; ++i)
      if (!subtree(i)) return false;
    return true;
  }

  std::atomic<std::uint32_t> next{0};
  std::exception_ptr first_error;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      try {
        for (;;) {
          std::uint32_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= c0n) return;
          if (stop_at.load(std::memory_order_relaxed) < i) return;
          if (!subtree(i)) {
            // record the stop; lower candidates keep running
            std::uint32_t cur = stop_at.load(std::memory_order_relaxed);
            while (i < cur &&
                   !stop_at.compare_exchange_weak(cur, i,
                                                  std::memory_order_relaxed)) {
            }
          }
        }
      } catch (const BudgetExceeded&) {
        budget_hit.store(true, std::memory_order_relaxed);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  if (budget_hit.load()) throw BudgetExceeded(budget.used());
  return stop_at.load() == ~0u;
}

}  // namespace detail

struct HomList {
  std::vector<GroupMap> maps;
  bool exhausted = true;
  std::uint64_t nodes = 0;
};

// All homomorphisms G -> H, in lexicographic image order. On budget
// exhaustion the partial list is flagged non-exhausted.
inline HomList homomorphisms(const GroupPtr& G, const GroupPtr& H,
                             Budget& budget) {
  detail::HomProblem prob(G, H, {});
  HomList out;
  std::mutex mu;
  // buffered per level-0 candidate, merged in candidate order
  std::map<elem, std::vector<GroupMap>> buffers;
  try {
    out.exhausted = detail::run_hom_search(
        prob, budget, [&](const std::vector<elem>& images) {
          budget.charge(G->order());
          GroupMap f = induce_map(G, H, images);
          std::lock_guard<std::mutex> lk(mu);
          buffers[images.empty() ? 0 : images[0]].push_back(std::move(f));
          return true;
       });
  } catch (const BudgetExceeded&) {
    out.exhausted = false;
  }
  for (auto& [c0, maps] : buffers)
    for (auto& m : maps) out.maps.push_back(std::move(m));
  out.nodes = budget.used();
  return out;
}

inline HomList endomorphisms(const GroupPtr& G, Budget& budget) {
  return homomorphisms(G, G, budget);
}

inline HomList automorphisms(const GroupPtr& G, Budget& budget) {
  HomList all = endomorphisms(G, budget);
  HomList out;
  out.exhausted = all.exhausted;
  out.nodes = all.nodes;
  for (auto& m : all.maps)
    if (m.bijective) out.maps.push_back(std::move(m));
  return out;
}

// ---------------------------------------------------------------------------
// E-group check: every endomorphism image commutes with its argument.

struct EGroupVerdict {
  bool holds = true;
  std::optional<GroupMap> witness_map;  // phi with [x, phi(x)] != 1
  elem witness_element = 0;
  std::uint64_t endo_count = 0;
  bool exhausted = true;
  std::uint64_t nodes = 0;
};

// Enumerates every endomorphism and tests [x, phi(x)] = 1 for all x. Stops
// at the lexicographically first violating (phi, x). Throws BudgetExceeded
// if the budget dies before a verdict is reached.
//
// Endomorphisms whose generator images all lie in the center have central
// image, so they cannot violate the property and are dismissed in O(1).
inline EGroupVerdict is_e_group(const GroupPtr& G, Budget& budget) {
  detail::HomProblem prob(G, G, {});
  Subgroup Z = center(G);
  EGroupVerdict out;
  std::mutex mu;
  std::atomic<std::uint64_t> endos{0};
  bool have_witness = false;
  std::vector<elem> best_images;
  elem best_x = 0;

  bool exhausted = false;
  try {
    exhausted = detail::run_hom_search(
        prob, budget, [&](const std::vector<elem>& images) {
          endos.fetch_add(1, std::memory_order_relaxed);
          bool central = true;
          for (elem img : images)
            if (!Z.contains(img)) {
              central = false;
              break;
            }
          if (central) {
            budget.charge(1);
            return true;
          }
          budget.charge(2 * G->order());
          GroupMap f = induce_map(G, G, images);
          for (elem x = 0; x < G->order(); ++x) {
            if (G->comm(x, f.table[x]) != CayleyGroup::identity) {
              std::lock_guard<std::mutex> lk(mu);
              if (!have_witness || images < best_images) {
                have_witness = true;
                best_images = images;
                best_x = x;
              }
              return false;
            }
          }
          return true;
        });
  } catch (const BudgetExceeded&) {
    if (!have_witness) throw;
    exhausted = false;
  }

  out.endo_count = endos.load();
  out.exhausted = exhausted;
  out.nodes = budget.used();
  if (have_witness) {
    out.holds = false;
    out.witness_map = induce_map(G, G, best_images);
    out.witness_element = best_x;
  }
  return out;
}

// ---------------------------------------------------------------------------

inline bool is_central_auto(const GroupPtr& G, const GroupMap& f,
                            const Subgroup& Z) {
  for (elem x = 0; x < G->order(); ++x)
    if (!Z.contains(G->mul(G->inv(x), f.table[x]))) return false;
  return true;
}

inline bool is_central_auto(const GroupPtr& G, const GroupMap& f) {
  return is_central_auto(G, f, center(G));
}

// Pairwise commutation of Aut(G); agreement on generators suffices.
inline VerdictReport aut_is_abelian(const GroupPtr& G, Budget& budget) {
  HomList auts = automorphisms(G, budget);
  if (!auts.exhausted)
    throw BudgetExceeded(budget.used());
  VerdictReport out;
  const unsigned k = unsigned(G->generators().size());
  for (std::size_t i = 0; i < auts.maps.size(); ++i)
    for (std::size_t j = i + 1; j < auts.maps.size(); ++j) {
      budget.charge(k);
      const GroupMap& f = auts.maps[i];
      const GroupMap& g = auts.maps[j];
      for (unsigned t = 0; t < k; ++t)
        if (g.table[f.gen_images[t]] != f.table[g.gen_images[t]]) {
          out.holds = false;
          out.reason = "a pair of automorphisms does not commute";
          out.witness = {f.gen_images[t], g.gen_images[t]};
          return out;
        }
    }
  return out;
}

// Every non-bijective endomorphism has image inside the center.
inline VerdictReport non_auto_endos_land_in_center(const GroupPtr& G,
                                                   Budget& budget) {
  Subgroup Z = center(G);
  VerdictReport out;
  std::mutex mu;
  bool found = false;
  std::vector<elem> best_images;
  elem best_x = 0;

  detail::HomProblem prob(G, G, {});
  try {
    detail::run_hom_search(
        prob, budget, [&](const std::vector<elem>& images) {
          bool central = true;
          for (elem img : images)
            if (!Z.contains(img)) {
              central = false;
              break;
            }
          if (central) {  // image inside <images> <= Z, cannot escape
            budget.charge(1);
            return true;
          }
          budget.charge(2 * G->order());
          GroupMap f = induce_map(G, G, images);
          if (f.bijective) return true;
          for (elem x = 0; x < G->order(); ++x)
            if (!Z.contains(f.table[x])) {
              std::lock_guard<std::mutex> lk(mu);
              if (!found || images < best_images) {
                found = true;
                best_images = images;
                best_x = x;
              }
              return false;
            }
          return true;
        });
  } catch (const BudgetExceeded&) {
    if (!found) throw;
  }
  if (found) {
    out.holds = false;
    out.reason = "non-bijective endomorphism escapes the center";
    out.witness = best_images;
    out.witness.push_back(best_x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// p-epsilon predicate: 2-Engel, plus Omega_r(G) <= Z(G) where
// exp(G/G') = p^r.

struct PEpsilonReport {
  bool holds = true;
  unsigned r = 0;
  std::string failed_clause;  // "engel" or "omega"
  std::vector<elem> witness;
};

inline PEpsilonReport is_p_epsilon(const GroupPtr& G, unsigned p) {
  if (G->order() > 1) {
    auto base = prime_power_base(G->order());
    if (base == 0 || base != p) throw NotPGroup(G->order());
  }
  PEpsilonReport out;
  auto D = derived(G);
  std::uint64_t e = exponent(quotient(G, D).group);
  unsigned r = 0;
  while (e > 1) {
    e /= p;
    ++r;
  }
  out.r = r;

  auto engel = is_2_engel(G);
  if (!engel.holds) {
    out.holds = false;
    out.failed_clause = "engel";
    out.witness = engel.witness;
    return out;
  }
  Subgroup Z = center(G);
  for (elem x : omega_set(G, p, r))
    if (!Z.contains(x)) {
      out.holds = false;
      out.failed_clause = "omega";
      out.witness = {x};
      return out;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism testing: invariant fingerprint first, then backtracking over
// generator images restricted to order- and centralizer-size-compatible
// candidates.

struct IsoReport {
  bool isomorphic = false;
  std::optional<GroupMap> witness;
  std::string reason;  // rejecting invariant, when fingerprints differ
};

namespace detail {

struct Fingerprint {
  std::uint64_t order, exponent_;
  std::vector<std::pair<unsigned, std::uint32_t>> order_histogram;
  std::uint32_t center_order, derived_order;
  std::optional<unsigned> nilpotency;
  std::optional<unsigned> dmin;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

inline Fingerprint fingerprint(const GroupPtr& G) {
  Fingerprint f;
  f.order = G->order();
  f.exponent_ = exponent(G);
  std::map<unsigned, std::uint32_t> hist;
  for (elem x = 0; x < G->order(); ++x) ++hist[G->element_order(x)];
  f.order_histogram.assign(hist.begin(), hist.end());
  f.center_order = center(G).order();
  f.derived_order = derived(G).order();
  auto s = lower_central_series(G);
  f.nilpotency = s.nilpotency_class;
  if (prime_power_base(G->order()) != 0 || G->order() == 1)
    f.dmin = min_generators(G);
  return f;
}

inline std::vector<std::uint32_t> centralizer_orders(const GroupPtr& G) {
  std::vector<std::uint32_t> out(G->order(), 0);
  parallel_stripes(G->order(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t x = lo; x < hi; ++x) {
      std::uint32_t c = 0;
      for (elem y = 0; y < G->order(); ++y)
        if (G->mul(elem(x), y) == G->mul(y, elem(x))) ++c;
      out[x] = c;
    }
  });
  return out;
}

}  // namespace detail

inline IsoReport are_isomorphic(const GroupPtr& G, const GroupPtr& H,
                                Budget& budget) {
  IsoReport out;
  if (G->order() != H->order()) {
    out.reason = "orders differ";
    return out;
  }
  auto fg = detail::fingerprint(G), fh = detail::fingerprint(H);
  if (!(fg == fh)) {
    out.reason = "invariant fingerprints differ";
    if (fg.order_histogram != fh.order_histogram)
      out.reason = "element-order histograms differ";
    else if (fg.center_order != fh.center_order)
      out.reason = "center orders differ";
    else if (fg.derived_order != fh.derived_order)
      out.reason = "derived subgroup orders differ";
    else if (fg.exponent_ != fh.exponent_)
      out.reason = "exponents differ";
    return out;
  }

  GroupPtr dom = G, cod = H;
  if (!dom->source() && cod->source()) std::swap(dom, cod);

  auto cg = detail::centralizer_orders(dom);
  auto ch = detail::centralizer_orders(cod);
  std::vector<std::vector<elem>> candidates;
  for (const auto& g : dom->generators()) {
    unsigned o = dom->element_order(g.element);
    std::uint32_t c = cg[g.element];
    std::vector<elem> cand;
    for (elem h = 0; h < cod->order(); ++h)
      if (cod->element_order(h) == o && ch[h] == c) cand.push_back(h);
    candidates.push_back(std::move(cand));
  }

  detail::HomProblem prob(dom, cod, std::move(candidates));
  std::mutex mu;
  bool found = false;
  std::vector<elem> best;
  try {
    detail::run_hom_search(prob, budget,
                           [&](const std::vector<elem>& images) {
                             budget.charge(2 * dom->order());
                             GroupMap f = induce_map(dom, cod, images);
                             if (!f.bijective) return true;
                             std::lock_guard<std::mutex> lk(mu);
                             if (!found || images < best) {
                               found = true;
                               best = images;
                             }
                             return false;
                           });
  } catch (const BudgetExceeded&) {
    if (!found) throw;
  }
  if (found) {
    out.isomorphic = true;
    out.witness = induce_map(dom, cod, best);
  }
  return out;
}

}  // namespace egl
