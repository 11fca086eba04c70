#pragma once

#include <random>
#include <vector>

#include "egl/base.hpp"
#include "egl/group.hpp"
#include "egl/subgroup.hpp"

namespace egl {

// [[x,y],y] = 1 for all x, y. Full double loop; stripes are scanned in
// parallel and the lexicographically first witness wins.
inline VerdictReport is_2_engel(const GroupPtr& G) {
  const std::uint32_t n = G->order();
  std::mutex mu;
  std::uint64_t best = ~0ULL;
  VerdictReport out;
  parallel_stripes(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t x = lo; x < hi; ++x) {
      {
        std::lock_guard<std::mutex> lk(mu);
        if (best < (std::uint64_t(x) << 32)) return;  // dominated stripe
      }
      elem ix = G->inv(elem(x));
      for (std::uint32_t y = 0; y < n; ++y) {
        elem c = G->mul(G->mul(G->mul(ix, G->inv(y)), elem(x)), y);  // [x,y]
        if (G->comm(c, y) != CayleyGroup::identity) {
          std::uint64_t key = (std::uint64_t(x) << 32) | y;
          std::lock_guard<std::mutex> lk(mu);
          if (key < best) {
            best = key;
            out.holds = false;
            out.witness = {elem(x), y};
            out.reason = "[x,y,y] != 1";
          }
          break;
        }
      }
    }
  });
  return out;
}

// The power identities of regular 2-Engel p-groups for odd p:
//   a^q b^q = (ab)^q [a,b]^(q(q-1)/2) = (a b [a,b]^((q-1)/2))^q,  q = p^m.
// Exhaustive below 10^6 pairs, otherwise `trials` seeded random pairs.
inline VerdictReport regular_power_identity(const GroupPtr& G, unsigned p,
                                            unsigned m, std::size_t trials,
                                            std::uint64_t seed = 0x2e27) {
  if (p == 2) throw PreconditionViolated("regular power identity needs p > 2");
  if (!is_prime(p)) throw PreconditionViolated("p must be prime");
  if (G->order() > 1 && prime_power_base(G->order()) != p)
    throw NotPGroup(G->order());
  {
    auto engel = is_2_engel(G);
    if (!engel.holds)
      throw PreconditionViolated("group is not 2-Engel");
  }

  // Work with q = p^m modulo 2*exp(G); powers only depend on exponents mod
  // exp(G), and q's parity survives reduction mod the even modulus.
  std::uint64_t E = exponent(G);
  std::uint64_t mod = 2 * E;
  std::uint64_t q = 1 % mod;
  for (unsigned i = 0; i < m; ++i) q = q * (p % mod) % mod;

  long long qe = (long long)q;
  long long half_qq1 = (long long)((q * (q - 1) / 2) % E);
  long long half_q1 = (long long)((q - 1) / 2);  // q odd

  auto check_pair = [&](elem a, elem b) -> bool {
    elem c = G->comm(a, b);
    elem lhs = G->mul(G->pow(a, qe), G->pow(b, qe));
    elem ab = G->mul(a, b);
    elem rhs1 = G->mul(G->pow(ab, qe), G->pow(c, half_qq1));
    if (lhs != rhs1) return false;
    elem rhs2 = G->pow(G->mul(ab, G->pow(c, half_q1)), qe);
    return lhs == rhs2;
  };

  VerdictReport out;
  const std::uint64_t n = G->order();
  if (n * n <= 1000000ULL) {
    for (elem a = 0; a < n; ++a)
      for (elem b = 0; b < n; ++b)
        if (!check_pair(a, b)) {
          out.holds = false;
          out.witness = {a, b};
          out.reason = "power identity fails";
          return out;
        }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<elem> pick(0, G->order() - 1);
  for (std::size_t i = 0; i < trials; ++i) {
    elem a = pick(rng), b = pick(rng);
    if (!check_pair(a, b)) {
      out.holds = false;
      out.witness = {a, b};
      out.reason = "power identity fails";
      return out;
    }
  }
  return out;
}

}  // namespace egl
