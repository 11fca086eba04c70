#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "egl/base.hpp"
#include "egl/presentation.hpp"

namespace egl {

struct GeneratorRef {
  std::string symbol;
  elem element;
};

// A fully materialized finite group: an order-n multiplication table with
// identity 0, inverse table, a distinguished generating set, and for each
// element a definition "parent * generator" discovered by breadth-first
// search from the identity. The definition chains let generator images be
// extended to full maps in O(n).
class CayleyGroup {
 public:
  struct Def {
    elem parent;    // earlier element in BFS order
    unsigned gen;   // index into generators()
  };

  CayleyGroup(std::uint32_t order, std::vector<std::uint16_t> mul,
              std::vector<GeneratorRef> gens,
              std::optional<Presentation> source)
      : order_(order),
        mul_(std::move(mul)),
        generators_(std::move(gens)),
        source_(std::move(source)) {
    if (order_ == 0) throw Error("empty multiplication table");
    if (order_ > kElementCap) throw OrderLimitExceeded(order_, kElementCap);
    if (mul_.size() != std::size_t(order_) * order_)
      throw Error("multiplication table has wrong size");
    build_inverses();
    build_defs();
  }

  std::uint32_t order() const noexcept { return order_; }
  static constexpr elem identity = 0;

  elem mul(elem a, elem b) const { return mul_[std::size_t(a) * order_ + b]; }
  elem inv(elem a) const { return inv_[a]; }

  elem pow(elem x, long long k) const {
    if (k < 0) {
      x = inv(x);
      k = -k;
    }
    elem acc = identity;
    while (k) {
      if (k & 1) acc = mul(acc, x);
      x = mul(x, x);
      k >>= 1;
    }
    return acc;
  }

  // [a,b] = a^-1 b^-1 a b
  elem comm(elem a, elem b) const {
    return mul(mul(mul(inv(a), inv(b)), a), b);
  }

  // [a,b,c] = [[a,b],c]
  elem comm3(elem a, elem b, elem c) const { return comm(comm(a, b), c); }

  elem conj(elem x, elem g) const { return mul(mul(inv(g), x), g); }

  unsigned element_order(elem x) const {
    unsigned k = 1;
    elem y = x;
    while (y != identity) {
      y = mul(y, x);
      ++k;
    }
    return k;
  }

  const std::vector<GeneratorRef>& generators() const noexcept {
    return generators_;
  }
  const std::optional<Presentation>& source() const noexcept { return source_; }

  // Elements in BFS discovery order (identity first) and their definitions.
  const std::vector<elem>& bfs_order() const noexcept { return bfs_order_; }
  const std::vector<Def>& defs() const noexcept { return defs_; }

  const std::vector<std::uint16_t>& mul_table() const noexcept { return mul_; }
  const std::vector<std::uint16_t>& inv_table() const noexcept { return inv_; }

 private:
  void build_inverses() {
    inv_.assign(order_, 0);
    std::vector<bool> seen(order_, false);
    for (elem a = 0; a < order_; ++a) {
      if (mul(a, identity) != a || mul(identity, a) != a)
        throw Error("element 0 is not an identity of the table");
      bool found = false;
      for (elem b = 0; b < order_; ++b) {
        if (mul(a, b) == identity) {
          if (mul(b, a) != identity)
            throw Error("one-sided inverse in multiplication table");
          inv_[a] = std::uint16_t(b);
          found = true;
          break;
        }
      }
      if (!found) throw Error("element without inverse");
      if (seen[inv_[a]] && inv_[inv_[a]] != a)
        throw Error("inverse table inconsistent");
      seen[inv_[a]] = true;
    }
  }

  void build_defs() {
    defs_.assign(order_, Def{identity, 0});
    bfs_order_.clear();
    bfs_order_.reserve(order_);
    std::vector<bool> seen(order_, false);
    seen[identity] = true;
    bfs_order_.push_back(identity);
    for (std::size_t head = 0; head < bfs_order_.size(); ++head) {
      elem e = bfs_order_[head];
      for (unsigned gi = 0; gi < generators_.size(); ++gi) {
        elem nxt = mul(e, generators_[gi].element);
        if (!seen[nxt]) {
          seen[nxt] = true;
          defs_[nxt] = Def{e, gi};
          bfs_order_.push_back(nxt);
        }
      }
    }
    if (bfs_order_.size() != order_)
      throw Error("listed generators do not generate the group");
  }

  std::uint32_t order_;
  std::vector<std::uint16_t> mul_;
  std::vector<std::uint16_t> inv_;
  std::vector<GeneratorRef> generators_;
  std::optional<Presentation> source_;
  std::vector<elem> bfs_order_;
  std::vector<Def> defs_;
};

using GroupPtr = std::shared_ptr<const CayleyGroup>;

inline GroupPtr make_group(std::uint32_t order, std::vector<std::uint16_t> mul,
                           std::vector<GeneratorRef> gens,
                           std::optional<Presentation> source = std::nullopt) {
  auto g = std::make_shared<CayleyGroup>(order, std::move(mul),
                                         std::move(gens), std::move(source));
  if (g->source() && g->source()->order_hint &&
      *g->source()->order_hint != g->order())
    throw OrderMismatch(*g->source()->order_hint, g->order());
  return g;
}

// ---------------------------------------------------------------------------
// Word evaluation. Brackets evaluate left-normed; exponent 0 gives the
// identity.

inline elem eval_word(const CayleyGroup& G, const Word& w,
                      const std::map<std::string, elem>& assignment);

namespace detail {
inline elem eval_term(const CayleyGroup& G, const Term& t,
                      const std::map<std::string, elem>& assignment) {
  elem base;
  switch (t.kind) {
    case Term::Kind::generator: {
      auto it = assignment.find(t.symbol);
      if (it == assignment.end())
        throw Error("no assignment for symbol '" + t.symbol + "'");
      base = it->second;
      break;
    }
    case Term::Kind::bracket: {
      base = eval_word(G, t.args[0], assignment);
      for (std::size_t i = 1; i < t.args.size(); ++i)
        base = G.comm(base, eval_word(G, t.args[i], assignment));
      break;
    }
    case Term::Kind::subword:
      base = eval_word(G, t.args.front(), assignment);
      break;
  }
  return G.pow(base, t.exponent);
}
}  // namespace detail

inline elem eval_word(const CayleyGroup& G, const Word& w,
                      const std::map<std::string, elem>& assignment) {
  elem acc = CayleyGroup::identity;
  for (const Term& t : w) acc = G.mul(acc, detail::eval_term(G, t, assignment));
  return acc;
}

// Assignment of each presentation generator to the group element carrying its
// symbol.
inline std::map<std::string, elem> generator_assignment(const CayleyGroup& G) {
  std::map<std::string, elem> a;
  for (const auto& g : G.generators()) a[g.symbol] = g.element;
  return a;
}

// ---------------------------------------------------------------------------
// Table axiom checks (used by tests and post-construction sanity scans).

inline bool check_axioms_exhaustive(const CayleyGroup& G) {
  const auto n = G.order();
  for (elem a = 0; a < n; ++a)
    for (elem b = 0; b < n; ++b)
      for (elem c = 0; c < n; ++c)
        if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c))) return false;
  return true;
}

inline bool check_axioms_randomized(const CayleyGroup& G, std::size_t trials,
                                    std::uint64_t seed = 0x5eed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<elem> pick(0, G.order() - 1);
  for (std::size_t i = 0; i < trials; ++i) {
    elem a = pick(rng), b = pick(rng), c = pick(rng);
    if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c))) return false;
  }
  return true;
}

// Full scan below 256 elements, randomized triples above.
inline bool check_axioms(const CayleyGroup& G) {
  if (G.order() <= 256) return check_axioms_exhaustive(G);
  return check_axioms_randomized(G, 100000);
}

// ---------------------------------------------------------------------------
// Direct products. Element (x, y) has index x*|H| + y; the generator list is
// G's generators paired with the identity followed by the identity paired
// with H's. The attached presentation is the union of both presentations
// plus commuting relations between the factors, with symbols renamed on
// collision.

inline GroupPtr direct_product(const GroupPtr& G, const GroupPtr& H,
                               std::uint32_t cap = kElementCap) {
  std::uint64_t n64 = std::uint64_t(G->order()) * H->order();
  if (n64 > cap) throw OrderLimitExceeded(n64, cap);
  std::uint32_t n = std::uint32_t(n64);
  std::uint32_t hn = H->order();

  std::vector<std::uint16_t> mul(std::size_t(n) * n);
  for (elem x = 0; x < G->order(); ++x)
    for (elem y = 0; y < hn; ++y) {
      std::size_t row = std::size_t(x * hn + y) * n;
      for (elem u = 0; u < G->order(); ++u) {
        elem xu = G->mul(x, u);
        for (elem v = 0; v < hn; ++v)
          mul[row + u * hn + v] = std::uint16_t(xu * hn + H->mul(y, v));
      }
    }

  // Rename colliding generator symbols deterministically: x, x_2, x_3, ...
  std::map<std::string, int> used;
  auto unique_symbol = [&used](const std::string& s) {
    int k = ++used[s];
    return k == 1 ? s : s + "_" + std::to_string(k);
  };

  std::vector<GeneratorRef> gens;
  std::vector<std::string> gsyms, hsyms;
  for (const auto& g : G->generators()) {
    gsyms.push_back(unique_symbol(g.symbol));
    gens.push_back({gsyms.back(), g.element * hn});
  }
  for (const auto& h : H->generators()) {
    hsyms.push_back(unique_symbol(h.symbol));
    gens.push_back({hsyms.back(), h.element});
  }

  std::optional<Presentation> source;
  if (G->source() && H->source()) {
    Presentation p;
    p.name = G->source()->name + "_x_" + H->source()->name;
    p.order_hint = n;
    if (G->source()->prime_hint && H->source()->prime_hint &&
        *G->source()->prime_hint == *H->source()->prime_hint)
      p.prime_hint = G->source()->prime_hint;

    std::map<std::string, std::string> gmap, hmap;
    for (std::size_t i = 0; i < gsyms.size(); ++i)
      gmap[G->source()->generators[i]] = gsyms[i];
    for (std::size_t i = 0; i < hsyms.size(); ++i)
      hmap[H->source()->generators[i]] = hsyms[i];

    for (const auto& s : gsyms) p.generators.push_back(s);
    for (const auto& s : hsyms) p.generators.push_back(s);

    auto renamed = [](const Relation& r,
                      const std::map<std::string, std::string>& m) {
      Relation out = r;
      auto f = [&m](const std::string& s) { return m.at(s); };
      rename_symbols(out.lhs, f);
      rename_symbols(out.rhs, f);
      return out;
    };
    for (const Relation& r : G->source()->relations)
      p.relations.push_back(renamed(r, gmap));
    for (const Relation& r : H->source()->relations)
      p.relations.push_back(renamed(r, hmap));
    for (const auto& gs : gsyms)
      for (const auto& hs : hsyms) {
        Relation r;
        r.lhs.push_back(bracket_term({{gen_term(gs)}, {gen_term(hs)}}));
        p.relations.push_back(std::move(r));
      }
    source = std::move(p);
  }

  return make_group(n, std::move(mul), std::move(gens), std::move(source));
}

// The one-element group.
inline GroupPtr trivial_group() {
  Presentation p;
  p.name = "trivial";
  p.order_hint = 1;
  return make_group(1, {0}, {}, p);
}

}  // namespace egl
