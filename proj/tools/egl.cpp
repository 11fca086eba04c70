#include <iostream>

#include <CLI11.hpp>

#include "egl/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"finite group toolkit: presentations, coset enumeration, "
               "structure predicates and endomorphism searches"};
  app.require_subcommand(1);

  egl::cli::AnalyzeOptions aopt;
  auto* analyze = app.add_subcommand(
      "analyze", "materialize a .grp file and report its structure");
  analyze->add_option("file", aopt.path, "presentation file")->required();
  analyze->add_flag("--json", aopt.json, "machine-readable report");
  analyze->add_option("--budget", aopt.budget, "search node budget");
  analyze->add_option("--max-cosets", aopt.max_cosets,
                      "coset enumeration limit");
  analyze->add_option("--threads", aopt.threads,
                      "worker threads (0 = hardware)");

  egl::cli::ConstructOptions copt;
  auto* construct = app.add_subcommand(
      "construct", "write a parametric presentation to a .grp file");
  construct->add_option("family", copt.family, "faudree | threegen")
      ->required();
  construct->add_option("--p", copt.p, "prime");
  construct->add_option("--r", copt.r, "exponent parameter r");
  construct->add_option("--t", copt.t, "exponent parameter t");
  construct->add_option("--matrix", copt.matrix,
                        "9 comma-separated entries, row major");
  construct->add_option("--out", copt.out_path, "output path");
  construct->add_flag("--verify", copt.verify,
                      "analyze the constructed group");
  construct->add_flag("--json", copt.json, "JSON report with --verify");
  construct->add_option("--budget", copt.budget, "search node budget");

  egl::cli::VerifyOptions vopt;
  auto* verify = app.add_subcommand(
      "verify", "run the cataloged claim suite (core or extended)");
  verify->add_option("suite", vopt.suite, "core | extended")
      ->default_val("core");
  verify->add_flag("--json", vopt.json, "machine-readable claim list");
  verify->add_option("--budget", vopt.budget, "total node budget");
  verify->add_option("--catalog", vopt.catalog_dir, "catalog directory");
  verify->add_option("--only", vopt.only, "run only claims with this prefix");
  verify->add_option("--threads", vopt.threads,
                     "worker threads (0 = hardware)");

  std::string list_dir;
  bool list_json = false;
  auto* catalog = app.add_subcommand("catalog", "catalog utilities");
  auto* list = catalog->add_subcommand("list", "list shipped catalog entries");
  list->add_option("--catalog", list_dir, "catalog directory");
  list->add_flag("--json", list_json, "machine-readable listing");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return egl::cli::cmd_analyze(aopt, std::cout, std::cerr);
    if (*construct) return egl::cli::cmd_construct(copt, std::cout, std::cerr);
    if (*verify) return egl::cli::cmd_verify(vopt, std::cout, std::cerr);
    if (*catalog) {
      if (*list) return egl::cli::cmd_catalog_list(list_dir, list_json, std::cout);
      std::cerr << "catalog: expected a subcommand (list)\n";
      return 1;
    }
  } catch (const egl::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
