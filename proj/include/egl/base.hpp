#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace egl {

// Element of a materialized group, by index into its tables.
using elem = std::uint32_t;

// Largest group order for which a full multiplication table is built.
inline constexpr std::uint32_t kElementCap = 20000;

// Default coset limit for Todd-Coxeter enumeration.
inline constexpr std::size_t kDefaultMaxCosets = 200000;

// Default node budget for backtracking searches (the "core" budget).
inline constexpr std::uint64_t kDefaultBudget = 1000000000ULL;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyntaxError : Error {
  int line = 0;
  int column = 0;
  SyntaxError(int ln, int col, const std::string& msg)
      : Error("syntax error at " + std::to_string(ln) + ":" +
              std::to_string(col) + ": " + msg),
        line(ln),
        column(col) {}
};

struct DuplicateGenerator : SyntaxError {
  std::string symbol;
  DuplicateGenerator(int ln, int col, const std::string& sym)
      : SyntaxError(ln, col, "duplicate generator '" + sym + "'"),
        symbol(sym) {}
};

struct UndeclaredSymbol : SyntaxError {
  std::string symbol;
  UndeclaredSymbol(int ln, int col, const std::string& sym)
      : SyntaxError(ln, col, "undeclared symbol '" + sym + "'"), symbol(sym) {}
};

struct CosetLimitExceeded : Error {
  std::size_t max_cosets;
  explicit CosetLimitExceeded(std::size_t limit)
      : Error("coset enumeration exceeded " + std::to_string(limit) +
              " cosets (group too large or infinite)"),
        max_cosets(limit) {}
};

struct OrderMismatch : Error {
  std::uint64_t expected, got;
  OrderMismatch(std::uint64_t want, std::uint64_t have)
      : Error("order hint " + std::to_string(want) +
              " does not match enumerated order " + std::to_string(have)),
        expected(want),
        got(have) {}
};

struct OrderLimitExceeded : Error {
  std::uint64_t requested, cap;
  OrderLimitExceeded(std::uint64_t req, std::uint64_t limit)
      : Error("group of order " + std::to_string(req) +
              " exceeds the element cap " + std::to_string(limit)),
        requested(req),
        cap(limit) {}
};

struct NotNormal : Error {
  elem member, conjugator;
  NotNormal(elem n, elem g)
      : Error("subgroup is not normal: conjugate of element " +
              std::to_string(n) + " by " + std::to_string(g) + " escapes"),
        member(n),
        conjugator(g) {}
};

struct NotPGroup : Error {
  std::uint64_t order;
  explicit NotPGroup(std::uint64_t n)
      : Error("group of order " + std::to_string(n) +
              " is not a p-group"),
        order(n) {}
};

struct BudgetExceeded : Error {
  std::uint64_t nodes;
  explicit BudgetExceeded(std::uint64_t used)
      : Error("search budget exceeded after " + std::to_string(used) +
              " nodes"),
        nodes(used) {}
};

struct PreconditionViolated : Error {
  using Error::Error;
};

struct InvalidMatrix : Error {
  using Error::Error;
};

struct UnknownKey : Error {
  std::string key;
  explicit UnknownKey(const std::string& k)
      : Error("unknown catalog key '" + k + "'"), key(k) {}
};

// ---------------------------------------------------------------------------
// Predicate outcome with a machine-checkable witness.
//
// The meaning of `witness` is operation-specific (e.g. the pair (x, y) with
// [x,y,y] != 1 for the 2-Engel check). `holds` implies `witness` is empty.

struct VerdictReport {
  bool holds = true;
  std::string reason;
  std::vector<elem> witness;
};

// ---------------------------------------------------------------------------
// Node budget shared across a search. Counts backtracking assignments plus
// per-element work while inducing and verifying candidate maps, so a budget
// bounds total work, not just tree size.

class Budget {
 public:
  explicit Budget(std::uint64_t limit = kDefaultBudget) : limit_(limit) {}

  Budget(const Budget&) = delete;
  Budget& operator=(const Budget&) = delete;

  std::uint64_t limit() const noexcept { return limit_; }
  std::uint64_t used() const noexcept { return used_.load(std::memory_order_relaxed); }

  // Charges `n` nodes; throws BudgetExceeded once the limit is crossed.
  void charge(std::uint64_t n) {
    std::uint64_t now = used_.fetch_add(n, std::memory_order_relaxed) + n;
    if (now > limit_) throw BudgetExceeded(now);
  }

  bool exhausted() const noexcept { return used() > limit_; }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
};

// ---------------------------------------------------------------------------
// Thread configuration. 0 means "use hardware concurrency".

namespace config {
inline std::atomic<unsigned> threads{0};
}

inline unsigned thread_count() {
  unsigned t = config::threads.load(std::memory_order_relaxed);
  if (t == 0) {
    t = std::thread::hardware_concurrency();
    if (t == 0) t = 1;
  }
  return t;
}

// Runs fn(begin, end) over stripes of [0, n). Falls back to a single call
// when only one thread is configured or the range is small.
template <typename Fn>
void parallel_stripes(std::size_t n, Fn&& fn, std::size_t min_grain = 4096) {
  unsigned nt = thread_count();
  if (nt <= 1 || n < 2 * min_grain) {
    fn(std::size_t{0}, n);
    return;
  }
  if (std::size_t(nt) > n / min_grain) nt = unsigned(n / min_grain);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::size_t chunk = (n + nt - 1) / nt;
  std::exception_ptr first_error;
  std::mutex err_mu;
  for (unsigned i = 0; i < nt; ++i) {
    std::size_t b = std::size_t(i) * chunk;
    std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, b, e] {
      try {
        fn(b, e);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------------------
// Small numeric helpers.

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Returns p with n = p^k (k >= 1), or 0 if n is not a prime power.
inline std::uint64_t prime_power_base(std::uint64_t n) {
  if (n < 2) return 0;
  std::uint64_t p = 2;
  while (p * p <= n && n % p != 0) ++p;
  if (n % p != 0) p = n;  // n itself prime
  while (n % p == 0) n /= p;
  return n == 1 ? p : 0;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

inline std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::uint64_t lcm64(std::uint64_t a, std::uint64_t b) {
  return a / gcd64(a, b) * b;
}

// FNV-1a, used for stable cache keys.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace egl
