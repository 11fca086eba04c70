#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "egl/analysis.hpp"
#include "egl/cache.hpp"
#include "egl/catalog.hpp"
#include "egl/claims.hpp"

namespace egl::cli {

// Exit codes: 0 ok, 1 syntax error, 2 materialization failure, 3 budget
// exceeded (partial report still emitted).
enum ExitCode { kOk = 0, kSyntax = 1, kMaterialize = 2, kBudget = 3 };

inline std::string default_catalog_dir() {
  if (const char* env = std::getenv("EGL_CATALOG_DIR")) return env;
  return "catalog";
}

struct AnalyzeOptions {
  std::string path;
  bool json = false;
  std::uint64_t budget = kDefaultBudget;
  std::size_t max_cosets = kDefaultMaxCosets;
  unsigned threads = 0;  // 0 = hardware
};

inline GroupPtr materialize_with_cache(const Presentation& p,
                                       std::size_t max_cosets) {
  const char* dir = std::getenv("EGL_CACHE_DIR");
  if (!dir) return materialize(p, max_cosets);
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::string path = (fs::path(dir) / (cache_key(p) + ".egl")).string();
  if (auto cached = load_table(path, p)) return *cached;
  GroupPtr G = materialize(p, max_cosets);
  save_table(*G, path);
  return G;
}

inline int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out,
                       std::ostream& err) {
  config::threads.store(opt.threads);
  Presentation pres;
  try {
    pres = Catalog::load_grp(opt.path);
  } catch (const SyntaxError& e) {
    err << opt.path << ": " << e.what() << "\n";
    return kSyntax;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kSyntax;
  }
  GroupPtr G;
  try {
    G = materialize_with_cache(pres, opt.max_cosets);
  } catch (const Error& e) {
    err << opt.path << ": " << e.what() << "\n";
    return kMaterialize;
  }
  AnalysisOptions aopt;
  aopt.budget = opt.budget;
  AnalysisReport rep = analyze(G, aopt);
  if (opt.json)
    out << to_json(rep).dump(2) << "\n";
  else
    out << to_text(rep);
  bool partial = rep.e_state == AnalysisReport::SearchState::inconclusive ||
                 rep.aut_state == AnalysisReport::SearchState::inconclusive;
  return partial ? kBudget : kOk;
}

struct ConstructOptions {
  std::string family;  // "faudree" or "threegen"
  unsigned p = 3;
  unsigned r = 1;
  unsigned t = 1;
  std::string matrix = "1,0,0,0,1,0,0,0,1";
  std::string out_path;  // default: <name>.grp
  bool verify = false;
  bool json = false;
  std::uint64_t budget = kDefaultBudget;
};

inline int cmd_construct(const ConstructOptions& opt, std::ostream& out,
                         std::ostream& err) {
  try {
    Presentation pres;
    GroupPtr built;  // verification route
    if (opt.family == "faudree") {
      pres = faudree_presentation(opt.p);
    } else if (opt.family == "threegen") {
      ThreeGenParams prm;
      prm.p = opt.p;
      prm.r = opt.r;
      prm.t = opt.t;
      std::istringstream ms(opt.matrix);
      std::string tok;
      std::vector<long long> vals;
      try {
        while (std::getline(ms, tok, ',')) vals.push_back(std::stoll(tok));
      } catch (const std::exception&) {
        err << "--matrix entries must be integers\n";
        return kSyntax;
      }
      if (vals.size() != 9) {
        err << "--matrix needs 9 comma-separated integers\n";
        return kSyntax;
      }
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) prm.T[i][j] = vals[i * 3 + j];
      pres = threegen_presentation(prm);
      if (opt.verify) built = threegen_group(prm);
    } else {
      err << "unknown family '" << opt.family
          << "' (expected faudree or threegen)\n";
      return kSyntax;
    }
    std::string path =
        opt.out_path.empty() ? pres.name + ".grp" : opt.out_path;
    std::ofstream f(path, std::ios::trunc);
    if (!f) {
      err << "cannot write " << path << "\n";
      return kMaterialize;
    }
    f << to_text(pres);
    f.close();
    out << "wrote " << path << " (order hint "
        << (pres.order_hint ? std::to_string(*pres.order_hint) : "none")
        << ")\n";
    if (opt.verify) {
      if (!built) built = materialize_with_cache(pres, kDefaultMaxCosets);
      AnalysisOptions aopt;
      aopt.budget = opt.budget;
      AnalysisReport rep = analyze(built, aopt);
      if (opt.json)
        out << to_json(rep).dump(2) << "\n";
      else
        out << to_text(rep);
      if (rep.e_state == AnalysisReport::SearchState::inconclusive ||
          rep.aut_state == AnalysisReport::SearchState::inconclusive)
        return kBudget;
    }
    return kOk;
  } catch (const InvalidMatrix& e) {
    err << e.what() << "\n";
    return kSyntax;
  } catch (const PreconditionViolated& e) {
    err << e.what() << "\n";
    return kSyntax;
  } catch (const BudgetExceeded& e) {
    err << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kMaterialize;
  }
}

struct VerifyOptions {
  std::string suite = "core";  // core | extended
  std::string catalog_dir;
  std::string only;  // claim id prefix filter
  bool json = false;
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 0;
};

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out,
                      std::ostream& err) {
  config::threads.store(opt.threads);
  bool extended = opt.suite == "extended";
  if (!extended && opt.suite != "core") {
    err << "unknown suite '" << opt.suite << "' (expected core or extended)\n";
    return kSyntax;
  }
  std::string dir =
      opt.catalog_dir.empty() ? default_catalog_dir() : opt.catalog_dir;
  Catalog catalog(dir);
  auto claims = build_claims(catalog);

  Budget budget(extended ? ~std::uint64_t(0) : opt.budget);
  unsigned passed = 0, failed_n = 0, inconclusive = 0;
  nlohmann::ordered_json jclaims = nlohmann::ordered_json::array();
  for (const Claim& c : claims) {
    if (c.extended && !extended) continue;
    if (!opt.only.empty() && c.id.rfind(opt.only, 0) != 0) continue;
    ClaimResult r = run_claim(c, budget);
    const char* tag = r.status == ClaimResult::Status::pass ? "PASS"
                      : r.status == ClaimResult::Status::fail ? "FAIL"
                                                              : "INCONCLUSIVE";
    if (c.record_only) tag = "RECORDED";
    if (!opt.json) {
      out << '[' << tag << "] " << c.id;
      if (!r.detail.empty()) out << " -- " << r.detail;
      char buf[32];
      std::snprintf(buf, sizeof buf, " (%.1f ms)", r.ms);
      out << buf << "\n";
    } else {
      nlohmann::ordered_json j;
      j["id"] = c.id;
      j["description"] = c.description;
      j["status"] = c.record_only ? "recorded" : tag;
      if (!r.detail.empty()) j["detail"] = r.detail;
      jclaims.push_back(j);
    }
    if (c.record_only) continue;
    switch (r.status) {
      case ClaimResult::Status::pass: ++passed; break;
      case ClaimResult::Status::fail: ++failed_n; break;
      case ClaimResult::Status::inconclusive: ++inconclusive; break;
    }
  }
  bool bad = failed_n > 0 || (!extended && inconclusive > 0);
  if (opt.json) {
    nlohmann::ordered_json top;
    top["schema"] = 1;
    top["suite"] = opt.suite;
    top["claims"] = jclaims;
    top["passed"] = passed;
    top["failed"] = failed_n;
    top["inconclusive"] = inconclusive;
    out << top.dump(2) << "\n";
  } else {
    out << "suite " << opt.suite << ": " << passed << " passed, " << failed_n
        << " failed, " << inconclusive << " inconclusive\n";
  }
  return bad ? 1 : kOk;
}

inline int cmd_catalog_list(const std::string& dir, bool json,
                            std::ostream& out) {
  Catalog catalog(dir.empty() ? default_catalog_dir() : dir);
  if (json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& k : catalog.keys()) {
      auto entry = catalog.named(k);
      nlohmann::ordered_json e;
      e["key"] = k;
      if (auto o = entry.expected_int("order")) e["order"] = *o;
      e["kind"] = entry.presentation ? "presentation" : "constructed";
      j.push_back(e);
    }
    out << j.dump(2) << "\n";
  } else {
    for (const auto& k : catalog.keys()) {
      auto entry = catalog.named(k);
      out << k;
      if (auto o = entry.expected_int("order")) out << " (order " << *o << ")";
      out << (entry.presentation ? "" : " [constructed]") << "\n";
    }
  }
  return kOk;
}

}  // namespace egl::cli
