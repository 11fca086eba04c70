#pragma once

#include <cstring>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "egl/base.hpp"
#include "egl/group.hpp"

namespace egl {

// Binary cache of a materialized table. Layout, all little-endian:
//   "EGL1" | u32 order | mul table row-major | inv table | u32 ngens |
//   per generator: u16 element, u8 symbol length, symbol bytes
// Table entries are u16 when order <= 65536 (always, given the element cap).
// The cache is an optimization only; loading re-runs the usual table
// validation and BFS finalization.

namespace detail {

template <typename T>
void put(std::ofstream& out, T v) {
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i)
    buf[i] = (unsigned char)((std::uint64_t(v) >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
bool get(std::ifstream& in, T& v) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) return false;
  std::uint64_t acc = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) acc = (acc << 8) | buf[i];
  v = T(acc);
  return true;
}

}  // namespace detail

inline void save_table(const CayleyGroup& G, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write cache file " + path);
  out.write("EGL1", 4);
  detail::put<std::uint32_t>(out, G.order());
  for (std::uint16_t v : G.mul_table()) detail::put<std::uint16_t>(out, v);
  for (std::uint16_t v : G.inv_table()) detail::put<std::uint16_t>(out, v);
  detail::put<std::uint32_t>(out, std::uint32_t(G.generators().size()));
  for (const auto& g : G.generators()) {
    detail::put<std::uint16_t>(out, std::uint16_t(g.element));
    detail::put<std::uint8_t>(out, std::uint8_t(g.symbol.size()));
    out.write(g.symbol.data(), std::streamsize(g.symbol.size()));
  }
  if (!out) throw Error("short write to cache file " + path);
}

// Returns nothing if the file is missing or damaged; the caller falls back
// to enumeration.
inline std::optional<GroupPtr> load_table(
    const std::string& path, std::optional<Presentation> source = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "EGL1", 4) != 0)
    return std::nullopt;
  std::uint32_t order = 0;
  if (!detail::get(in, order) || order == 0 || order > kElementCap)
    return std::nullopt;
  std::vector<std::uint16_t> mul(std::size_t(order) * order);
  for (auto& v : mul)
    if (!detail::get(in, v) || v >= order) return std::nullopt;
  std::vector<std::uint16_t> inv(order);
  for (auto& v : inv)
    if (!detail::get(in, v) || v >= order) return std::nullopt;
  std::uint32_t ngens = 0;
  if (!detail::get(in, ngens) || ngens > order) return std::nullopt;
  std::vector<GeneratorRef> gens;
  for (std::uint32_t i = 0; i < ngens; ++i) {
    std::uint16_t el = 0;
    std::uint8_t len = 0;
    if (!detail::get(in, el) || el >= order || !detail::get(in, len))
      return std::nullopt;
    std::string sym(len, '\0');
    if (!in.read(sym.data(), len)) return std::nullopt;
    gens.push_back({std::move(sym), el});
  }
  try {
    auto G = make_group(order, std::move(mul), std::move(gens),
                        std::move(source));
    // the stored inverse table must agree with the rebuilt one
    if (G->inv_table() != inv) return std::nullopt;
    return G;
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Stable cache key for a presentation (used under EGL_CACHE_DIR).
inline std::string cache_key(const Presentation& p) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                (unsigned long long)fnv1a(to_text(p)));
  return std::string(buf);
}

}  // namespace egl
