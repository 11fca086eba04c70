#pragma once

#include <vector>

#include "egl/base.hpp"
#include "egl/group.hpp"

namespace egl {

// A homomorphism between materialized groups, stored as the images of the
// domain's generators plus the induced full element map.
struct GroupMap {
  GroupPtr domain;
  GroupPtr codomain;
  std::vector<elem> gen_images;      // one per domain generator
  std::vector<std::uint16_t> table;  // length |domain|
  bool bijective = false;

  elem operator()(elem x) const { return table[x]; }

  friend bool operator==(const GroupMap& f, const GroupMap& g) {
    return f.domain == g.domain && f.codomain == g.codomain &&
           f.table == g.table;
  }
};

// Extends generator images to the full element map along the domain's
// definition chains. O(|domain|); does not verify the homomorphism property.
inline GroupMap induce_map(const GroupPtr& domain, const GroupPtr& codomain,
                           std::vector<elem> gen_images) {
  GroupMap f;
  f.domain = domain;
  f.codomain = codomain;
  f.gen_images = std::move(gen_images);
  f.table.assign(domain->order(), 0);
  const auto& defs = domain->defs();
  for (elem x : domain->bfs_order()) {
    if (x == CayleyGroup::identity) continue;
    const auto& d = defs[x];
    f.table[x] = std::uint16_t(
        codomain->mul(f.table[d.parent], f.gen_images[d.gen]));
  }
  std::vector<bool> hit(codomain->order(), false);
  std::size_t distinct = 0;
  for (elem x = 0; x < domain->order(); ++x)
    if (!hit[f.table[x]]) {
      hit[f.table[x]] = true;
      ++distinct;
    }
  f.bijective =
      domain->order() == codomain->order() && distinct == codomain->order();
  return f;
}

// Full f(xy) = f(x)f(y) scan.
inline bool is_homomorphism(const GroupMap& f) {
  const auto& G = *f.domain;
  const auto& H = *f.codomain;
  for (elem x = 0; x < G.order(); ++x)
    for (elem y = 0; y < G.order(); ++y)
      if (f.table[G.mul(x, y)] != H.mul(f.table[x], f.table[y])) return false;
  return true;
}

// g after f; domains must line up.
inline GroupMap compose(const GroupMap& f, const GroupMap& g) {
  if (f.codomain != g.domain)
    throw PreconditionViolated("compose: codomain/domain mismatch");
  GroupMap h;
  h.domain = f.domain;
  h.codomain = g.codomain;
  for (elem img : f.gen_images) h.gen_images.push_back(g.table[img]);
  h.table.resize(f.table.size());
  for (std::size_t x = 0; x < f.table.size(); ++x)
    h.table[x] = g.table[f.table[x]];
  h.bijective = f.bijective && g.bijective;
  return h;
}

inline GroupMap identity_map(const GroupPtr& G) {
  std::vector<elem> imgs;
  for (const auto& g : G->generators()) imgs.push_back(g.element);
  return induce_map(G, G, std::move(imgs));
}

// Checks the images against every relator of the domain's presentation.
inline bool satisfies_relators(const GroupPtr& domain, const GroupPtr& codomain,
                               const std::vector<elem>& gen_images) {
  if (!domain->source()) throw PreconditionViolated("domain has no presentation");
  const Presentation& p = *domain->source();
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    elem acc = CayleyGroup::identity;
    for (int letter : p.relator_letters(i)) {
      elem g = letter > 0 ? gen_images[letter - 1]
                          : codomain->inv(gen_images[-letter - 1]);
      acc = codomain->mul(acc, g);
    }
    if (acc != CayleyGroup::identity) return false;
  }
  return true;
}

// Builds the map sending each domain generator to the element given by a
// word over the domain's own generators (used for explicitly given
// endomorphisms).
inline GroupMap map_from_words(const GroupPtr& G,
                               const std::vector<Word>& images) {
  auto assign = generator_assignment(*G);
  std::vector<elem> imgs;
  for (const Word& w : images) imgs.push_back(eval_word(*G, w, assign));
  return induce_map(G, G, std::move(imgs));
}

}  // namespace egl
