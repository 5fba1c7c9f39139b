// Batch front end: one subcommand per experiment kind, plus a builtins
// catalog. Exit codes: 0 pass, 1 failed verdict, 2 unusable input.

#include <CLI11.hpp>
#include <Eigen/Core>

#include <cstdlib>
#include <iostream>
#include <string>

#include "tca/config.hpp"

namespace {

int threads_from_env() {
  const char* env = std::getenv("TCA_THREADS");
  if (!env) return 0;
  const int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

int run_kind(const std::string& kind, const std::string& config_path, const std::string& out_dir,
             bool seed_set, std::uint64_t seed) {
  tca::ExperimentConfig cfg = tca::load_config(config_path);
  if (cfg.kind != kind) {
    std::cerr << "tca " << kind << ": config " << config_path << " has kind '" << cfg.kind
              << "'\n";
    return 2;
  }
  if (seed_set) {
    cfg.seed = seed;
    cfg.has_seed = true;
  }
  const tca::RunResult res = tca::run_experiment(cfg, out_dir);
  std::cout << res.summary << "\n";
  for (const auto& f : res.files) std::cout << "  wrote " << out_dir << "/" << f << "\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = threads_from_env();
  if (threads > 0) Eigen::setNbThreads(threads);

  CLI::App app{"Twisted crossed product experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;

  std::vector<CLI::App*> kinds;
  for (const char* kind : {"verify", "laws", "spectrum", "wiener", "grs"}) {
    CLI::App* sub = app.add_subcommand(kind, std::string("run a ") + kind + " config");
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory (default: current)");
    sub->add_option("--seed", seed, "override the config seed")
        ->each([&seed_set](const std::string&) { seed_set = true; });
    kinds.push_back(sub);
  }

  std::string catalog_out;
  CLI::App* builtins = app.add_subcommand("builtins", "list builtin systems and spec grammars");
  builtins->add_option("--out", catalog_out, "write the catalog here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (builtins->parsed()) {
      const std::string body = tca::json_text(tca::catalog_json());
      if (catalog_out.empty()) {
        std::cout << body;
      } else {
        tca::write_text(catalog_out, body);
        std::cout << "wrote " << catalog_out << "\n";
      }
      return 0;
    }
    for (CLI::App* sub : kinds) {
      if (sub->parsed()) return run_kind(sub->get_name(), config_path, out_dir, seed_set, seed);
    }
  } catch (const std::exception& err) {
    std::cerr << "tca: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
