#pragma once

#include <utility>
#include <vector>

#include "egl/base.hpp"
#include "egl/group.hpp"
#include "egl/maps.hpp"
#include "egl/subgroup.hpp"

namespace egl {

struct QuotientResult {
  GroupPtr group;
  GroupMap projection;  // canonical G -> G/N
};

// G/N for a normal subgroup N. Cosets are numbered breadth-first from the
// identity coset along G's generators, mirroring the numbering discipline of
// materialization. Throws NotNormal with a conjugation witness.
inline QuotientResult quotient(const GroupPtr& G, const Subgroup& N) {
  if (N.parent() != G)
    throw PreconditionViolated("quotient: subgroup of a different group");
  std::vector<elem> members = N.elements();
  for (elem n : members)
    for (const auto& g : G->generators())
      if (!N.contains(G->conj(n, g.element))) throw NotNormal(n, g.element);

  const std::uint32_t n = G->order();
  const std::uint32_t qorder = n / N.order();
  constexpr std::uint32_t kUnset = 0xffffffff;
  std::vector<std::uint32_t> coset_of(n, kUnset);
  std::vector<elem> rep;
  rep.reserve(qorder);

  auto add_coset = [&](elem r) {
    std::uint32_t c = std::uint32_t(rep.size());
    rep.push_back(r);
    for (elem m : members) coset_of[G->mul(m, r)] = c;
    return c;
  };
  add_coset(CayleyGroup::identity);
  for (std::size_t head = 0; head < rep.size(); ++head) {
    elem r = rep[head];
    for (const auto& g : G->generators()) {
      elem s = G->mul(r, g.element);
      if (coset_of[s] == kUnset) add_coset(s);
    }
  }

  std::vector<std::uint16_t> mul(std::size_t(qorder) * qorder);
  for (std::uint32_t a = 0; a < qorder; ++a)
    for (std::uint32_t b = 0; b < qorder; ++b)
      mul[std::size_t(a) * qorder + b] =
          std::uint16_t(coset_of[G->mul(rep[a], rep[b])]);

  std::vector<GeneratorRef> gens;
  for (const auto& g : G->generators())
    gens.push_back({g.symbol, coset_of[g.element]});

  QuotientResult out;
  out.group = make_group(qorder, std::move(mul), std::move(gens));
  out.projection.domain = G;
  out.projection.codomain = out.group;
  for (const auto& g : G->generators())
    out.projection.gen_images.push_back(coset_of[g.element]);
  out.projection.table.assign(coset_of.begin(), coset_of.end());
  out.projection.bijective = N.order() == 1;
  return out;
}

// Second center: preimage of Z(G/Z(G)) under the canonical projection.
inline Subgroup second_center(const GroupPtr& G) {
  Subgroup Z = center(G);
  if (Z.order() == G->order()) return Z;
  auto q = quotient(G, Z);
  Subgroup ZQ = center(q.group);
  auto bits = detail::empty_bits(G->order());
  std::vector<elem> members;
  for (elem x = 0; x < G->order(); ++x)
    if (ZQ.contains(q.projection(x))) {
      detail::bit_set(bits, x);
      members.push_back(x);
    }
  return Subgroup(G, std::move(bits), std::move(members));
}

}  // namespace egl
