#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "egl/base.hpp"
#include "egl/group.hpp"
#include "egl/presentation.hpp"

namespace egl {

namespace detail {

// Todd-Coxeter coset enumeration over the trivial subgroup, HLT strategy
// with scan-and-fill, queue-based coincidence handling and one lookahead +
// compaction pass when the coset cap is hit. Cosets are numbered in
// definition order; reads resolve through a union-find so stale entries are
// harmless.
class CosetEnumerator {
 public:
  static constexpr std::uint32_t UNDEF =
      std::numeric_limits<std::uint32_t>::max();

  CosetEnumerator(const Presentation& p, std::size_t max_cosets)
      : pres_(p), max_cosets_(max_cosets), ncols_(2 * p.generators.size()) {
    for (std::size_t i = 0; i < p.relations.size(); ++i) {
      std::vector<int> letters = p.relator_letters(i);
      if (letters.empty()) continue;
      std::vector<int> cols;
      cols.reserve(letters.size());
      for (int l : letters)
        cols.push_back(l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1);
      relators_.push_back(std::move(cols));
    }
    new_coset();  // coset 0, the trivial-subgroup coset
  }

  void run() {
    std::size_t cursor = 0;
    while (cursor < ndefined_) {
      if (!alive(cursor)) {
        ++cursor;
        continue;
      }
      bool retry = true;
      while (retry) {
        retry = false;
        try {
          process_coset(std::uint32_t(cursor));
        } catch (const NeedSpace&) {
          std::size_t before = nlive_;
          lookahead();
          if (nlive_ == before) throw CosetLimitExceeded(max_cosets_);
          cursor = compact(cursor);
          retry = alive(cursor);
        }
      }
      ++cursor;
    }
    // Closing fixpoint: rows touched by coincidences after being scanned may
    // hold unverified entries, so rescan until a pass is clean.
    for (;;) {
      std::uint64_t before = work_counter_;
      try {
        for (std::size_t c = 0; c < ndefined_; ++c)
          if (alive(c)) process_coset(std::uint32_t(c));
      } catch (const NeedSpace&) {
        std::size_t live_before = nlive_;
        lookahead();
        if (nlive_ == live_before) throw CosetLimitExceeded(max_cosets_);
        compact(0);
        continue;
      }
      if (work_counter_ == before) break;
    }
    compact(0);
  }

  std::size_t size() const { return nlive_; }

  // Forward action of generator g on (compacted) coset c.
  std::uint32_t act(std::uint32_t c, unsigned g) const {
    return table_[std::size_t(c) * ncols_ + 2 * g];
  }

 private:
  struct NeedSpace {};

  bool alive(std::size_t c) const { return rep_[c] == c; }

  std::uint32_t find(std::uint32_t c) {
    std::uint32_t r = c;
    while (rep_[r] != r) r = rep_[r];
    while (rep_[c] != r) {
      std::uint32_t nxt = rep_[c];
      rep_[c] = r;
      c = nxt;
    }
    return r;
  }

  std::uint32_t& entry(std::uint32_t c, int col) {
    return table_[std::size_t(c) * ncols_ + col];
  }

  std::uint32_t get(std::uint32_t c, int col) {
    std::uint32_t d = entry(c, col);
    if (d == UNDEF) return UNDEF;
    std::uint32_t r = find(d);
    if (r != d) entry(c, col) = r;
    return r;
  }

  std::uint32_t new_coset() {
    if (ndefined_ >= max_cosets_) throw NeedSpace{};
    table_.resize(table_.size() + ncols_, UNDEF);
    rep_.push_back(std::uint32_t(ndefined_));
    ++ndefined_;
    ++nlive_;
    ++work_counter_;
    return std::uint32_t(ndefined_ - 1);
  }

  std::uint32_t define(std::uint32_t c, int col) {
    std::uint32_t d = new_coset();
    entry(c, col) = d;
    entry(d, col ^ 1) = c;
    return d;
  }

  void set_pair(std::uint32_t a, int col, std::uint32_t b) {
    std::uint32_t ex = get(a, col);
    if (ex != UNDEF) {
      if (ex != b) enqueue(ex, b);
      return;
    }
    entry(a, col) = b;
    std::uint32_t m = get(b, col ^ 1);
    if (m == UNDEF)
      entry(b, col ^ 1) = a;
    else if (m != a)
      enqueue(m, a);
  }

  void enqueue(std::uint32_t a, std::uint32_t b) { queue_.push_back({a, b}); }

  void coincide(std::uint32_t a, std::uint32_t b) {
    enqueue(a, b);
    drain();
  }

  void drain() {
    while (!queue_.empty()) {
      auto [x, y] = queue_.front();
      queue_.pop_front();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (x > y) std::swap(x, y);  // min index survives
      rep_[y] = x;
      --nlive_;
      ++work_counter_;
      for (int col = 0; col < int(ncols_); ++col) {
        std::uint32_t d = entry(y, col);
        if (d == UNDEF) continue;
        entry(y, col) = UNDEF;
        set_pair(find(x), col, find(d));
      }
    }
  }

  // Scans relator w at coset c, defining cosets to fill gaps when `fill`.
  void scan(std::uint32_t c, const std::vector<int>& w, bool fill) {
    std::uint32_t f = c, b = c;
    int i = 0, j = int(w.size()) - 1;
    for (;;) {
      while (i <= j) {
        std::uint32_t t = get(f, w[i]);
        if (t == UNDEF) break;
        f = t;
        ++i;
      }
      if (i > j) {
        if (f != b) {
          ++work_counter_;
          coincide(f, b);
        }
        return;
      }
      while (j >= i) {
        std::uint32_t t = get(b, w[j] ^ 1);
        if (t == UNDEF) break;
        b = t;
        --j;
      }
      if (j < i) {
        ++work_counter_;
        coincide(f, b);
        return;
      }
      if (j == i) {
        ++work_counter_;
        set_pair(f, w[i], b);
        drain();
        return;
      }
      if (!fill) return;
      define(f, w[i]);
    }
  }

  void process_coset(std::uint32_t c) {
    for (const auto& w : relators_) {
      scan(c, w, true);
      if (!alive(c)) return;
    }
    for (int col = 0; col < int(ncols_); ++col) {
      if (get(c, col) == UNDEF) define(c, col);
      if (!alive(c)) return;  // defensive; definitions cannot kill c
    }
  }

  // Coincidence-only pass over all live cosets; frees space when the table
  // is saturated.
  void lookahead() {
    for (std::size_t c = 0; c < ndefined_; ++c)
      if (alive(c)) {
        for (const auto& w : relators_) {
          scan(std::uint32_t(c), w, false);
          if (!alive(c)) break;
        }
      }
  }

  // Renumbers live cosets preserving order; returns the new index to resume
  // from (the old cursor's representative).
  std::size_t compact(std::size_t cursor) {
    std::vector<std::uint32_t> remap(ndefined_, UNDEF);
    std::uint32_t next = 0;
    for (std::size_t c = 0; c < ndefined_; ++c)
      if (alive(c)) remap[c] = next++;
    std::size_t new_cursor = remap[find(std::uint32_t(
        cursor < ndefined_ ? cursor : ndefined_ - 1))];
    std::vector<std::uint32_t> fresh(std::size_t(next) * ncols_, UNDEF);
    for (std::size_t c = 0; c < ndefined_; ++c) {
      if (!alive(c)) continue;
      for (int col = 0; col < int(ncols_); ++col) {
        std::uint32_t d = entry(std::uint32_t(c), col);
        if (d != UNDEF)
          fresh[std::size_t(remap[c]) * ncols_ + col] = remap[find(d)];
      }
    }
    table_ = std::move(fresh);
    ndefined_ = next;
    nlive_ = next;
    rep_.resize(next);
    for (std::uint32_t c = 0; c < next; ++c) rep_[c] = c;
    return new_cursor;
  }

  const Presentation& pres_;
  std::size_t max_cosets_;
  std::size_t ncols_;
  std::vector<std::vector<int>> relators_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> rep_;
  std::deque<std::pair<std::uint32_t, std::uint32_t>> queue_;
  std::size_t ndefined_ = 0;
  std::size_t nlive_ = 0;
  std::uint64_t work_counter_ = 0;
};

}  // namespace detail

// Materializes the group of a presentation as its regular representation.
// Element numbering follows coset definition order, identity is 0, and the
// result is deterministic for identical presentation text.
inline GroupPtr materialize(const Presentation& p,
                            std::size_t max_cosets = kDefaultMaxCosets) {
  detail::CosetEnumerator en(p, max_cosets);
  en.run();
  std::size_t n = en.size();
  if (n > kElementCap) throw OrderLimitExceeded(n, kElementCap);
  std::uint32_t order = std::uint32_t(n);
  unsigned ngens = unsigned(p.generators.size());

  // Definition chains over the coset action, BFS from the identity coset.
  struct Chain {
    std::uint32_t parent;
    unsigned gen;
  };
  std::vector<Chain> chain(order, {0, 0});
  std::vector<std::uint32_t> bfs;
  bfs.reserve(order);
  std::vector<bool> seen(order, false);
  seen[0] = true;
  bfs.push_back(0);
  for (std::size_t head = 0; head < bfs.size(); ++head) {
    std::uint32_t c = bfs[head];
    for (unsigned g = 0; g < ngens; ++g) {
      std::uint32_t d = en.act(c, g);
      if (d != detail::CosetEnumerator::UNDEF && !seen[d]) {
        seen[d] = true;
        chain[d] = {c, g};
        bfs.push_back(d);
      }
    }
  }
  if (bfs.size() != order)
    throw Error("coset table is not transitive");  // enumeration bug guard

  // mul(x, y): column for y = parent*g fills from column parent.
  std::vector<std::uint16_t> mul(std::size_t(order) * order);
  for (std::uint32_t x = 0; x < order; ++x) mul[std::size_t(x) * order] = std::uint16_t(x);
  for (std::size_t k = 1; k < bfs.size(); ++k) {
    std::uint32_t y = bfs[k];
    std::uint32_t par = chain[y].parent;
    unsigned g = chain[y].gen;
    for (std::uint32_t x = 0; x < order; ++x) {
      std::uint32_t xp = mul[std::size_t(x) * order + par];
      mul[std::size_t(x) * order + y] = std::uint16_t(en.act(xp, g));
    }
  }

  std::vector<GeneratorRef> gens;
  gens.reserve(ngens);
  for (unsigned g = 0; g < ngens; ++g)
    gens.push_back({p.generators[g], elem(en.act(0, g))});

  return make_group(order, std::move(mul), std::move(gens), p);
}

}  // namespace egl
