#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "family_spec.hpp"

#ifndef INFLEARN_DEFAULT_DATA_DIR
#define INFLEARN_DEFAULT_DATA_DIR "data"
#endif

namespace {

void add_common(CLI::App* cmd, inflearn::app::ExperimentConfig& cfg, bool family_required = true) {
  auto* f = cmd->add_option("--family", cfg.family, "family spec (JSON)");
  if (family_required) f->required()->check(CLI::ExistingFile);
  cmd->add_option("--learner", cfg.learner, "learner name (default: the family's)");
  cmd->add_option("--seed", cfg.seed, "first seed")->capture_default_str();
  cmd->add_option("--horizon", cfg.horizon, "informant steps (default: the family's)")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace inflearn::app;
  CLI::App app{"Learning structures in the limit from informants"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  ExperimentConfig cfg;
  std::string out_path;
  std::string data_dir = INFLEARN_DEFAULT_DATA_DIR;
  std::string check_path;
  std::string replay_path;

  auto* sim = app.add_subcommand("simulate", "run a learner on seeded informants for every family member");
  add_common(sim, cfg);
  sim->add_option("--trials", cfg.trials, "informants per member")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--out", out_path, "directory for simulate.csv and summary.json");

  auto* adv = app.add_subcommand("adversary", "search for informant extensions that force mind changes");
  add_common(adv, cfg);
  adv->add_option("--member", cfg.member, "family member")->capture_default_str();
  adv->add_option("--target", cfg.target, "mind changes to force")->capture_default_str()->check(CLI::PositiveNumber);
  adv->add_option("--budget", cfg.budget, "extension probes")->capture_default_str()->check(CLI::PositiveNumber);
  adv->add_option("--depth", cfg.depth, "units per extension")->capture_default_str()->check(CLI::PositiveNumber);
  adv->add_flag("--empty-base", cfg.empty_base, "start from the empty prefix instead of the converged one");
  adv->add_option("--out", out_path, "file for the forced prefix (replay format)");

  auto* bf = app.add_subcommand("bf", "second-level back-and-forth comparisons and learnability obstructions");
  add_common(bf, cfg);

  auto* emb = app.add_subcommand("embed", "stagewise embedding into the unary-predicate class");
  add_common(emb, cfg);
  emb->add_option("--stages", cfg.stages, "construction stages")->capture_default_str()->check(CLI::PositiveNumber);
  emb->add_option("--predicates", cfg.predicates, "tracked predicates (default: family size)");
  emb->add_option("--out", out_path, "directory for per-member stage dumps");

  auto* cat = app.add_subcommand("catalog", "shipped families and certificates");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "list shipped families and their enumerations");
  cat_list->add_option("--data", data_dir, "data directory")->capture_default_str();
  auto* cat_cert = cat->add_subcommand("certify", "print the lattice family certificate");
  cat_cert->add_option("--check", check_path, "compare against this file")->check(CLI::ExistingFile);

  auto* rep = app.add_subcommand("replay", "feed a recorded prefix to a learner");
  rep->add_option("file", replay_path, "recorded prefix")->required()->check(CLI::ExistingFile);
  add_common(rep, cfg);

  CLI11_PARSE(app, argc, argv);
  if (!out_path.empty()) cfg.out = out_path;

  if (sim->parsed()) return cmd_simulate(cfg, std::cout, std::cerr);
  if (adv->parsed()) return cmd_adversary(cfg, std::cout, std::cerr);
  if (bf->parsed()) return cmd_bf(cfg, std::cout, std::cerr);
  if (emb->parsed()) return cmd_embed(cfg, std::cout, std::cerr);
  if (cat_list->parsed()) return cmd_catalog_list(data_dir, std::cout, std::cerr);
  if (cat_cert->parsed())
    return cmd_catalog_certify(check_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(check_path),
                               std::cout, std::cerr);
  if (rep->parsed()) return cmd_replay(replay_path, cfg, std::cout, std::cerr);
  return 2;
}
