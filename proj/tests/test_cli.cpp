#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "egl/cache.hpp"
#include "egl/cli.hpp"

using namespace egl;

namespace {

std::string catalog_path(const char* name) {
  return std::string(EGL_CATALOG_DIR) + "/" + name;
}

std::string write_temp(const char* name, const std::string& text) {
  std::string path = std::string("/tmp/") + name;
  std::ofstream f(path, std::ios::trunc);
  f << text;
  return path;
}

}  // namespace

TEST_CASE("analyze reports the quaternion group") {
  cli::AnalyzeOptions opt;
  opt.path = catalog_path("q8.grp");
  std::ostringstream out, err;
  int rc = cli::cmd_analyze(opt, out, err);
  CHECK(rc == cli::kOk);
  auto text = out.str();
  CHECK(text.find("order      8") != std::string::npos);
  CHECK(text.find("E-group    fails") != std::string::npos);
  CHECK(text.find("abelian=no") != std::string::npos);
}

TEST_CASE("analyze json output is deterministic and schema-tagged") {
  cli::AnalyzeOptions opt;
  opt.path = catalog_path("q8.grp");
  opt.json = true;
  std::ostringstream out1, out2, err;
  CHECK(cli::cmd_analyze(opt, out1, err) == cli::kOk);
  CHECK(cli::cmd_analyze(opt, out2, err) == cli::kOk);
  CHECK(out1.str() == out2.str());

  auto j = nlohmann::json::parse(out1.str());
  CHECK(j["schema"] == 1);
  CHECK(j["order"] == 8);
  CHECK(j["class"] == 2);
  CHECK(j["e_group"]["holds"] == false);
  CHECK(j["e_group"]["exhausted"] == false);  // fail-fast stop
  CHECK(j["aut"]["count"] == 24);
  CHECK(j["aut"]["abelian"] == false);
  CHECK(j["p_epsilon"]["holds"] == true);
  CHECK(j["p_epsilon"]["r"] == 1);
  CHECK(j["subgroup_orders"]["center"] == 2);
}

TEST_CASE("analyze reports an order-128 E-group") {
  cli::AnalyzeOptions opt;
  opt.path = catalog_path("e128_1.grp");
  opt.json = true;
  std::ostringstream out, err;
  CHECK(cli::cmd_analyze(opt, out, err) == cli::kOk);
  auto j = nlohmann::json::parse(out.str());
  CHECK(j["order"] == 128);
  CHECK(j["e_group"]["holds"] == true);
  CHECK(j["e_group"]["exhausted"] == true);
  CHECK(j["aut"]["abelian"] == true);
  CHECK(j["aut"]["all_central"] == true);
  CHECK(j["two_engel"]["holds"] == true);
  CHECK(j["p_epsilon"]["holds"] == true);
  CHECK(j["subgroup_orders"]["center"] == 8);
  CHECK(j["subgroup_orders"]["derived"] == 8);
}

TEST_CASE("analyze exit codes") {
  std::ostringstream out, err;

  cli::AnalyzeOptions bad;
  bad.path = write_temp("egl_bad.grp", "group g\ngen a\nrel b^2\n");
  CHECK(cli::cmd_analyze(bad, out, err) == cli::kSyntax);

  cli::AnalyzeOptions missing;
  missing.path = "/tmp/egl_no_such_file.grp";
  CHECK(cli::cmd_analyze(missing, out, err) == cli::kSyntax);

  cli::AnalyzeOptions infinite;
  infinite.path = write_temp("egl_inf.grp", "group t\ngen x\n");
  infinite.max_cosets = 2000;
  CHECK(cli::cmd_analyze(infinite, out, err) == cli::kMaterialize);

  cli::AnalyzeOptions tiny;
  tiny.path = catalog_path("q8.grp");
  tiny.budget = 5;
  std::ostringstream out2;
  CHECK(cli::cmd_analyze(tiny, out2, err) == cli::kBudget);
  CHECK(out2.str().find("inconclusive") != std::string::npos);
}

TEST_CASE("construct writes a faudree presentation") {
  cli::ConstructOptions opt;
  opt.family = "faudree";
  opt.p = 3;
  opt.out_path = "/tmp/egl_faudree3.grp";
  std::ostringstream out, err;
  CHECK(cli::cmd_construct(opt, out, err) == cli::kOk);
  auto pres = Catalog::load_grp(opt.out_path);
  CHECK(pres.order_hint == 6561);
  CHECK(pres.generators.size() == 4);

  cli::ConstructOptions bad;
  bad.family = "threegen";
  bad.matrix = "1,0,0,0,1,0,1,1,0";  // singular
  std::ostringstream out2;
  CHECK(cli::cmd_construct(bad, out2, err) == cli::kSyntax);

  cli::ConstructOptions unknown;
  unknown.family = "wat";
  CHECK(cli::cmd_construct(unknown, out2, err) == cli::kSyntax);
}

TEST_CASE("construct --verify analyzes the built group") {
  cli::ConstructOptions opt;
  opt.family = "threegen";
  opt.p = 3;
  opt.r = 1;
  opt.t = 1;
  opt.matrix = "1,0,0,0,1,0,0,0,1";
  opt.out_path = "/tmp/egl_threegen.grp";
  opt.verify = true;
  std::ostringstream out, err;
  CHECK(cli::cmd_construct(opt, out, err) == cli::kOk);
  CHECK(out.str().find("order      729") != std::string::npos);
  CHECK(out.str().find("p-epsilon  holds") != std::string::npos);
}

TEST_CASE("catalog list prints shipped entries") {
  std::ostringstream out;
  CHECK(cli::cmd_catalog_list(EGL_CATALOG_DIR, false, out) == cli::kOk);
  CHECK(out.str().find("q8 (order 8)") != std::string::npos);
  CHECK(out.str().find("e128_1 (order 128)") != std::string::npos);
  CHECK(out.str().find("lep5_2 (order 16) [constructed]") !=
        std::string::npos);
}

TEST_CASE("verify runs a filtered claim subset") {
  cli::VerifyOptions opt;
  opt.catalog_dir = EGL_CATALOG_DIR;
  opt.only = "q8.";
  std::ostringstream out, err;
  int rc = cli::cmd_verify(opt, out, err);
  CHECK(rc == 0);
  CHECK(out.str().find("[PASS] q8.profile") != std::string::npos);
  CHECK(out.str().find("[PASS] q8.e_group") != std::string::npos);
  CHECK(out.str().find(" 0 failed") != std::string::npos);

  cli::VerifyOptions jopt = opt;
  jopt.json = true;
  std::ostringstream jout;
  CHECK(cli::cmd_verify(jopt, jout, err) == 0);
  auto j = nlohmann::json::parse(jout.str());
  CHECK(j["schema"] == 1);
  CHECK(j["failed"] == 0);
  CHECK(j["claims"].size() >= 5);

  cli::VerifyOptions bad = opt;
  bad.suite = "wat";
  CHECK(cli::cmd_verify(bad, out, err) == cli::kSyntax);
}

TEST_CASE("binary table cache round-trips") {
  auto G = Catalog(EGL_CATALOG_DIR).build("q8");
  std::string path = "/tmp/egl_q8.egl";
  save_table(*G, path);
  auto back = load_table(path, *G->source());
  REQUIRE(back.has_value());
  CHECK((*back)->order() == G->order());
  CHECK((*back)->mul_table() == G->mul_table());
  CHECK((*back)->inv_table() == G->inv_table());
  CHECK((*back)->generators().size() == 2);
  CHECK((*back)->generators()[0].symbol == "a");

  // damaged files are rejected, not trusted
  {
    std::ofstream f(path, std::ios::binary | std::ios::in);
    f.seekp(16);
    f.put('\xff');
    f.put('\xff');
  }
  CHECK(!load_table(path).has_value());
  CHECK(!load_table("/tmp/egl_missing.egl").has_value());
}

TEST_CASE("analyze uses the table cache when EGL_CACHE_DIR is set") {
  ::setenv("EGL_CACHE_DIR", "/tmp/egl_cache_test", 1);
  std::remove("/tmp/egl_cache_test/*");
  cli::AnalyzeOptions opt;
  opt.path = catalog_path("q8.grp");
  opt.json = true;
  std::ostringstream out1, out2, err;
  CHECK(cli::cmd_analyze(opt, out1, err) == cli::kOk);
  // second run hits the cache and must produce identical output
  CHECK(cli::cmd_analyze(opt, out2, err) == cli::kOk);
  CHECK(out1.str() == out2.str());
  ::unsetenv("EGL_CACHE_DIR");

  auto pres = Catalog::load_grp(opt.path);
  std::string cache_file =
      "/tmp/egl_cache_test/" + cache_key(pres) + ".egl";
  CHECK(load_table(cache_file, pres).has_value());
}
