#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <vector>

#include "egl/base.hpp"
#include "egl/group.hpp"

namespace egl {

// A subgroup of a materialized group: a membership bitset plus a generating
// set (sorted by element index). Results of all structure computations.
class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<std::uint64_t> bits,
           std::vector<elem> gens)
      : parent_(std::move(parent)),
        bits_(std::move(bits)),
        gens_(std::move(gens)) {
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    size_ = 0;
    for (std::uint64_t w : bits_) size_ += std::uint32_t(std::popcount(w));
  }

  const GroupPtr& parent() const noexcept { return parent_; }
  std::uint32_t order() const noexcept { return size_; }

  bool contains(elem x) const { return (bits_[x >> 6] >> (x & 63)) & 1; }

  const std::vector<elem>& gens() const noexcept { return gens_; }

  std::vector<elem> elements() const {
    std::vector<elem> out;
    out.reserve(size_);
    for (elem x = 0; x < parent_->order(); ++x)
      if (contains(x)) out.push_back(x);
    return out;
  }

  bool contains_all(const Subgroup& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (other.bits_[i] & ~bits_[i]) return false;
    return true;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.bits_ == b.bits_;
  }

  const std::vector<std::uint64_t>& bits() const noexcept { return bits_; }

 private:
  GroupPtr parent_;
  std::vector<std::uint64_t> bits_;
  std::vector<elem> gens_;
  std::uint32_t size_;
};

namespace detail {

inline std::vector<std::uint64_t> empty_bits(std::uint32_t n) {
  return std::vector<std::uint64_t>((n + 63) / 64, 0);
}

inline void bit_set(std::vector<std::uint64_t>& b, elem x) {
  b[x >> 6] |= std::uint64_t(1) << (x & 63);
}

inline bool bit_get(const std::vector<std::uint64_t>& b, elem x) {
  return (b[x >> 6] >> (x & 63)) & 1;
}

}  // namespace detail

// Least subgroup containing `seed`: breadth-first closure under right
// multiplication by the seed elements (inverses are not needed in a finite
// group).
inline Subgroup closure(const GroupPtr& G, const std::vector<elem>& seed) {
  auto bits = detail::empty_bits(G->order());
  std::vector<elem> work;
  detail::bit_set(bits, CayleyGroup::identity);
  work.push_back(CayleyGroup::identity);
  std::vector<elem> gens;
  for (elem s : seed)
    if (!detail::bit_get(bits, s)) {
      detail::bit_set(bits, s);
      work.push_back(s);
      gens.push_back(s);
    }
  for (std::size_t head = 0; head < work.size(); ++head) {
    elem x = work[head];
    for (elem s : gens) {
      elem y = G->mul(x, s);
      if (!detail::bit_get(bits, y)) {
        detail::bit_set(bits, y);
        work.push_back(y);
      }
    }
  }
  return Subgroup(G, std::move(bits), std::move(gens));
}

inline Subgroup trivial_subgroup(const GroupPtr& G) { return closure(G, {}); }

inline Subgroup full_subgroup(const GroupPtr& G) {
  std::vector<elem> gens;
  for (const auto& g : G->generators()) gens.push_back(g.element);
  auto S = closure(G, gens);
  return S;
}

// Elements commuting with every element of `S` (it suffices to commute with
// the generators of a subgroup).
inline Subgroup centralizer(const GroupPtr& G, const Subgroup& S) {
  auto bits = detail::empty_bits(G->order());
  std::vector<elem> members;
  for (elem x = 0; x < G->order(); ++x) {
    bool ok = true;
    for (elem s : S.gens())
      if (G->mul(x, s) != G->mul(s, x)) {
        ok = false;
        break;
      }
    if (ok) {
      detail::bit_set(bits, x);
      members.push_back(x);
    }
  }
  return Subgroup(G, std::move(bits), std::move(members));
}

inline Subgroup center(const GroupPtr& G) {
  return centralizer(G, full_subgroup(G));
}

// <[a,b] : a in A, b in B>. The A = B = G case (the derived subgroup) has a
// dedicated fast path in derived().
inline Subgroup commutator_subgroup(const GroupPtr& G, const Subgroup& A,
                                    const Subgroup& B) {
  std::vector<elem> ea = A.elements(), eb = B.elements();
  auto seen = detail::empty_bits(G->order());
  std::mutex mu;
  std::vector<elem> seeds;
  parallel_stripes(ea.size(), [&](std::size_t lo, std::size_t hi) {
    auto local = detail::empty_bits(G->order());
    std::vector<elem> found;
    for (std::size_t i = lo; i < hi; ++i)
      for (elem b : eb) {
        elem c = G->comm(ea[i], b);
        if (!detail::bit_get(local, c)) {
          detail::bit_set(local, c);
          found.push_back(c);
        }
      }
    std::lock_guard<std::mutex> lk(mu);
    for (elem c : found)
      if (!detail::bit_get(seen, c)) {
        detail::bit_set(seen, c);
        seeds.push_back(c);
      }
  });
  std::sort(seeds.begin(), seeds.end());
  return closure(G, seeds);
}

// Derived subgroup as the normal closure of the generator commutators
// (conjugates of commutators are commutators, so this equals <[x,y]>).
inline Subgroup derived(const GroupPtr& G) {
  std::vector<elem> gens;
  for (const auto& g : G->generators()) gens.push_back(g.element);
  std::vector<elem> seeds;
  for (elem a : gens)
    for (elem b : gens) seeds.push_back(G->comm(a, b));
  for (;;) {
    Subgroup S = closure(G, seeds);
    std::vector<elem> extra;
    for (elem m : S.elements())
      for (elem g : gens) {
        elem c = G->conj(m, g);
        if (!S.contains(c)) extra.push_back(c);
      }
    if (extra.empty()) return S;
    seeds.insert(seeds.end(), extra.begin(), extra.end());
  }
}

// gamma_3(G) = [G', G]
inline Subgroup gamma3(const GroupPtr& G) {
  return commutator_subgroup(G, derived(G), full_subgroup(G));
}

struct SeriesReport {
  std::vector<Subgroup> lower_central;       // gamma_1 = G, gamma_2, ...
  std::optional<unsigned> nilpotency_class;  // empty if not nilpotent
};

inline SeriesReport lower_central_series(const GroupPtr& G) {
  SeriesReport r;
  r.lower_central.push_back(full_subgroup(G));
  for (;;) {
    const Subgroup& last = r.lower_central.back();
    if (last.order() == 1) {
      r.nilpotency_class = unsigned(r.lower_central.size()) - 1;
      return r;
    }
    Subgroup next = commutator_subgroup(G, last, r.lower_central.front());
    if (next.order() == last.order()) return r;  // stabilized, not nilpotent
    r.lower_central.push_back(std::move(next));
  }
}

inline unsigned nilpotency_class(const GroupPtr& G) {
  auto r = lower_central_series(G);
  if (!r.nilpotency_class) throw Error("group is not nilpotent");
  return *r.nilpotency_class;
}

// ---------------------------------------------------------------------------

inline std::uint64_t exponent(const GroupPtr& G) {
  std::uint64_t e = 1;
  for (elem x = 0; x < G->order(); ++x) e = lcm64(e, G->element_order(x));
  return e;
}

inline std::uint64_t exponent(const Subgroup& S) {
  const auto& G = *S.parent();
  std::uint64_t e = 1;
  for (elem x = 0; x < G.order(); ++x)
    if (S.contains(x)) e = lcm64(e, G.element_order(x));
  return e;
}

// The agemo G^n: subgroup generated by all n-th powers.
inline Subgroup power_subgroup(const GroupPtr& G, std::uint64_t n) {
  if (n == 0) throw PreconditionViolated("power subgroup needs n >= 1");
  auto seen = detail::empty_bits(G->order());
  std::vector<elem> seeds;
  for (elem x = 0; x < G->order(); ++x) {
    elem y = G->pow(x, (long long)n);
    if (!detail::bit_get(seen, y)) {
      detail::bit_set(seen, y);
      seeds.push_back(y);
    }
  }
  return closure(G, seeds);
}

// Subgroup generated by the n-th powers of the members of S (computed inside
// S, as a subgroup of the parent).
inline Subgroup power_subgroup(const GroupPtr& G, const Subgroup& S,
                               std::uint64_t n) {
  auto seen = detail::empty_bits(G->order());
  std::vector<elem> seeds;
  for (elem x : S.elements()) {
    elem y = G->pow(x, (long long)n);
    if (!detail::bit_get(seen, y)) {
      detail::bit_set(seen, y);
      seeds.push_back(y);
    }
  }
  return closure(G, seeds);
}

// Prime p with |G| = p^k, or throws NotPGroup.
inline unsigned p_group_prime(const GroupPtr& G) {
  auto p = prime_power_base(G->order());
  if (p == 0 && G->order() != 1) throw NotPGroup(G->order());
  return unsigned(p);
}

// Raw element set {x : x^(p^n) = 1}; need not be a subgroup.
inline std::vector<elem> omega_set(const GroupPtr& G, unsigned p, unsigned n) {
  std::uint64_t q = ipow(p, n);
  std::vector<elem> out;
  for (elem x = 0; x < G->order(); ++x)
    if (G->pow(x, (long long)q) == CayleyGroup::identity) out.push_back(x);
  return out;
}

// Omega_n(G): subgroup generated by elements of order dividing p^n.
inline Subgroup omega(const GroupPtr& G, unsigned p, unsigned n) {
  if (G->order() > 1) {
    auto base = prime_power_base(G->order());
    if (base == 0 || base != p) throw NotPGroup(G->order());
  }
  return closure(G, omega_set(G, p, n));
}

// Frattini subgroup of a p-group: G' G^p.
inline Subgroup frattini(const GroupPtr& G) {
  if (G->order() == 1) return trivial_subgroup(G);
  unsigned p = p_group_prime(G);
  auto D = derived(G);
  auto P = power_subgroup(G, p);
  std::vector<elem> seeds = D.gens();
  for (elem x : P.gens()) seeds.push_back(x);
  return closure(G, seeds);
}

// Burnside basis: d(G) = log_p |G : Phi(G)| for p-groups.
inline unsigned min_generators(const GroupPtr& G) {
  if (G->order() == 1) return 0;
  unsigned p = p_group_prime(G);
  std::uint64_t index = G->order() / frattini(G).order();
  unsigned d = 0;
  while (index > 1) {
    index /= p;
    ++d;
  }
  return d;
}

}  // namespace egl
