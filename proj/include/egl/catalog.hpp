#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "egl/base.hpp"
#include "egl/coset.hpp"
#include "egl/group.hpp"
#include "egl/maps.hpp"

namespace egl {

// ---------------------------------------------------------------------------
// Faudree's 4-generator family: the smallest known non-abelian groups whose
// elements commute with all endomorphic images, one for each odd prime.
// For p = 2 the construction breaks down (there is an endomorphism moving
// a3 past a4), which is exactly what the counterexample demo exercises.
inline Presentation faudree_presentation(unsigned p) {
  if (!is_prime(p)) throw PreconditionViolated("faudree needs a prime");
  Presentation out;
  out.name = "faudree_p" + std::to_string(p);
  out.prime_hint = int(p);
  out.order_hint = ipow(p, 8);
  for (int i = 1; i <= 4; ++i)
    out.generators.push_back("a" + std::to_string(i));
  auto g = [&](int i) { return gen_term(out.generators[i - 1]); };
  auto gp = [&](int i, long long e) {
    return gen_term(out.generators[i - 1], e);
  };
  for (int i = 1; i <= 4; ++i)
    out.relations.push_back({{gp(i, (long long)p * p)}, {}});
  // commutators of generators are central (class <= 2)
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k)
        out.relations.push_back(
            {{bracket_term({{g(i)}, {g(j)}, {g(k)}})}, {}});
  auto pair = [&](int i, int j, int power_of) {
    Relation r;
    r.lhs = {bracket_term({{g(i)}, {g(j)}})};
    if (power_of) r.rhs = {gp(power_of, p)};
    out.relations.push_back(std::move(r));
  };
  pair(1, 2, 1);
  pair(1, 3, 3);
  pair(1, 4, 4);
  pair(2, 3, 2);
  pair(2, 4, 0);
  pair(3, 4, 3);
  return out;
}

inline GroupPtr faudree_group(unsigned p,
                              std::size_t max_cosets = kDefaultMaxCosets) {
  return materialize(faudree_presentation(p), max_cosets);
}

// ---------------------------------------------------------------------------
// The parametric 3-generator family: elements are triples over Z_(p^(r+t))
// multiplied by an explicit twisted formula driven by a matrix T invertible
// over Z_(p^t). Built directly from the formula, no enumeration.

struct ThreeGenParams {
  unsigned p;  // odd prime
  unsigned r;
  unsigned t;  // 1 <= t <= r
  std::array<std::array<long long, 3>, 3> T;
};

namespace detail {

inline void validate_threegen(const ThreeGenParams& prm) {
  if (!is_prime(prm.p) || prm.p == 2)
    throw PreconditionViolated("the 3-generator family needs an odd prime");
  if (prm.t < 1 || prm.t > prm.r)
    throw PreconditionViolated("need 1 <= t <= r");
  long long pt = (long long)ipow(prm.p, prm.t);
  auto m = prm.T;
  long long det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                  m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                  m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  det %= (long long)prm.p;
  if (det < 0) det += prm.p;
  if (det == 0)
    throw InvalidMatrix("matrix is not invertible over Z_" +
                        std::to_string(pt));
}

}  // namespace detail

inline std::string threegen_name(const ThreeGenParams& prm) {
  std::ostringstream os;
  os << "threegen_p" << prm.p << "_r" << prm.r << "_t" << prm.t << "_m";
  long long pt = (long long)ipow(prm.p, prm.t);
  for (const auto& row : prm.T)
    for (long long v : row) os << ((v % pt + pt) % pt);
  return os.str();
}

inline Presentation threegen_presentation(const ThreeGenParams& prm) {
  detail::validate_threegen(prm);
  long long q = (long long)ipow(prm.p, prm.r + prm.t);
  long long pt = (long long)ipow(prm.p, prm.t);
  long long pr = (long long)ipow(prm.p, prm.r);
  Presentation out;
  out.name = threegen_name(prm);
  out.prime_hint = int(prm.p);
  out.order_hint = ipow(prm.p, 3 * (prm.r + prm.t));
  out.generators = {"x", "y", "z"};
  const std::string syms[3] = {"x", "y", "z"};
  for (const auto& s : syms) out.relations.push_back({{gen_term(s, q)}, {}});
  // p^t-th powers are central
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      out.relations.push_back(
          {{bracket_term({{gen_term(syms[i], pt)}, {gen_term(syms[j])}})},
           {}});
    }
  // [x,y], [x,z], [y,z] written in the generators, exponents p^r * T[row]
  const std::pair<int, int> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
  for (int row = 0; row < 3; ++row) {
    Relation rel;
    rel.lhs = {bracket_term(
        {{gen_term(syms[pairs[row].first])}, {gen_term(syms[pairs[row].second])}})};
    for (int col = 0; col < 3; ++col) {
      long long e = (prm.T[row][col] % pt + pt) % pt * pr % q;
      if (e != 0) rel.rhs.push_back(gen_term(syms[col], e));
    }
    out.relations.push_back(std::move(rel));
  }
  return out;
}

inline GroupPtr threegen_group(const ThreeGenParams& prm,
                               std::uint32_t cap = kElementCap) {
  detail::validate_threegen(prm);
  const std::uint64_t q = ipow(prm.p, prm.r + prm.t);
  const std::uint64_t n64 = q * q * q;
  if (n64 > cap) throw OrderLimitExceeded(n64, cap);
  const std::uint32_t n = std::uint32_t(n64);
  const long long Q = (long long)q;
  long long pt = (long long)ipow(prm.p, prm.t);
  long long pr = (long long)ipow(prm.p, prm.r);

  long long c[3][3];  // c[row][col] = p^r * T[row][col] mod q
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 3; ++col)
      c[row][col] = (prm.T[row][col] % pt + pt) % pt * pr % Q;

  std::vector<std::uint16_t> mul(std::size_t(n) * n);
  parallel_stripes(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t a = lo; a < hi; ++a) {
      long long i = (long long)(a % q);
      long long j = (long long)(a / q % q);
      long long k = (long long)(a / (q * q));
      std::uint16_t* row = mul.data() + a * n;
      for (std::uint32_t b = 0; b < n; ++b) {
        long long i2 = (long long)(b % q);
        long long j2 = (long long)(b / q % q);
        long long k2 = (long long)(b / (q * q));
        long long u = i2 * j % Q, v = i2 * k % Q, w = j2 * k % Q;
        long long x = ((i + i2 - c[0][0] * u - c[1][0] * v - c[2][0] * w) % Q + Q) % Q;
        long long y = ((j + j2 - c[0][1] * u - c[1][1] * v - c[2][1] * w) % Q + Q) % Q;
        long long z = ((k + k2 - c[0][2] * u - c[1][2] * v - c[2][2] * w) % Q + Q) % Q;
        row[b] = std::uint16_t(x + y * Q + z * Q * Q);
      }
    }
  });

  std::vector<GeneratorRef> gens = {{"x", elem(1)},
                                    {"y", elem(q)},
                                    {"z", elem(q * q)}};
  auto G = make_group(n, std::move(mul), std::move(gens),
                      threegen_presentation(prm));
  if (!check_axioms_randomized(*G, 2000))
    throw Error("threegen table failed the associativity spot check");
  std::vector<elem> imgs;
  for (const auto& g : G->generators()) imgs.push_back(g.element);
  if (!satisfies_relators(G, G, imgs))
    throw Error("threegen table does not satisfy its own presentation");
  return G;
}

// ---------------------------------------------------------------------------
// Catalog: .grp presentations shipped as data with .props sidecars holding
// machine-checkable expected properties (key = value lines, # comments).
// Entries without a .grp file carry a `construct` directive instead.

struct CatalogEntry {
  std::string key;
  std::optional<Presentation> presentation;
  std::vector<std::string> construct;  // e.g. {"product", "q8", "cyclic_2"}
  std::map<std::string, std::string> expected;

  bool expected_bool(const std::string& k, bool dflt = false) const {
    auto it = expected.find(k);
    if (it == expected.end()) return dflt;
    return it->second == "true" || it->second == "1";
  }
  std::optional<std::uint64_t> expected_int(const std::string& k) const {
    auto it = expected.find(k);
    if (it == expected.end()) return std::nullopt;
    return std::stoull(it->second);
  }
};

inline Presentation cyclic_presentation(std::uint64_t n) {
  Presentation p;
  p.name = "cyclic_" + std::to_string(n);
  p.order_hint = n;
  p.generators = {"x"};
  p.relations.push_back({{gen_term("x", (long long)n)}, {}});
  return p;
}

class Catalog {
 public:
  explicit Catalog(std::string dir) : dir_(std::move(dir)) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir_))
      throw Error("catalog directory not found: " + dir_);
    for (const auto& e : fs::directory_iterator(dir_)) {
      if (e.path().extension() != ".props") continue;
      CatalogEntry entry;
      entry.key = e.path().stem().string();
      parse_props(e.path().string(), entry);
      auto grp = fs::path(dir_) / (entry.key + ".grp");
      if (fs::exists(grp)) entry.presentation = load_grp(grp.string());
      if (!entry.presentation && entry.construct.empty())
        throw Error("catalog entry '" + entry.key +
                    "' has neither a presentation nor a construct rule");
      entries_[entry.key] = std::move(entry);
    }
  }

  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
  }

  CatalogEntry named(const std::string& key) const {
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
    if (key.rfind("cyclic_", 0) == 0) {
      std::uint64_t n = 0;
      try {
        n = std::stoull(key.substr(7));
      } catch (const std::exception&) {
        throw UnknownKey(key);
      }
      if (n == 0 || n > kElementCap) throw UnknownKey(key);
      CatalogEntry entry;
      entry.key = key;
      entry.presentation = cyclic_presentation(n);
      entry.expected["order"] = std::to_string(n);
      return entry;
    }
    throw UnknownKey(key);
  }

  GroupPtr build(const std::string& key,
                 std::size_t max_cosets = kDefaultMaxCosets) const {
    return build(named(key), max_cosets);
  }

  GroupPtr build(const CatalogEntry& entry,
                 std::size_t max_cosets = kDefaultMaxCosets) const {
    if (entry.presentation) return materialize(*entry.presentation, max_cosets);
    const auto& c = entry.construct;
    if (c.empty()) throw Error("catalog entry cannot be built: " + entry.key);
    if (c[0] == "alias" && c.size() == 2) return build(c[1], max_cosets);
    if (c[0] == "product" && c.size() >= 3) {
      GroupPtr acc = build(c[1], max_cosets);
      for (std::size_t i = 2; i < c.size(); ++i)
        acc = direct_product(acc, build(c[i], max_cosets));
      return acc;
    }
    throw Error("unknown construct rule for catalog entry " + entry.key);
  }

  static Presentation load_grp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_presentation(ss.str());
  }

 private:
  static void parse_props(const std::string& path, CatalogEntry& entry) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        std::size_t e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      std::string k = trim(line.substr(0, eq));
      std::string v = trim(line.substr(eq + 1));
      if (k.empty()) continue;
      if (k == "construct") {
        std::istringstream ws(v);
        std::string tok;
        while (ws >> tok) entry.construct.push_back(tok);
      } else {
        entry.expected[k] = v;
      }
    }
  }

  std::string dir_;
  std::map<std::string, CatalogEntry> entries_;
};

}  // namespace egl
