// Subcommand drivers.  Each returns a process exit code and writes its report
// to `out`; errors go to `err`.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace inflearn::app {

inline constexpr const char* kVersion = "0.1.0";
/// Shortest final run that counts as converged, whatever the horizon.
inline constexpr std::size_t kMinStableSteps = 10;

struct ExperimentConfig {
  std::filesystem::path family;
  std::string learner;  // empty: the family's default
  std::size_t trials = 20;
  std::size_t horizon = 0;  // 0: the family's default
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> out;
  std::size_t budget = 10000;
  std::size_t depth = 4;
  std::size_t stages = 50;
  std::size_t predicates = 0;  // 0: the family size
  std::size_t member = 0;
  std::size_t target = 10;
  bool empty_base = false;
};

/// Stable hash of the configuration, printed with every result.
std::string config_hash(const ExperimentConfig& cfg, const std::string& command);

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_adversary(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bf(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_embed(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_catalog_list(const std::filesystem::path& data_dir, std::ostream& out, std::ostream& err);
/// Prints the certificate; with `check`, compares it to that file and fails on a difference.
int cmd_catalog_certify(const std::optional<std::filesystem::path>& check, std::ostream& out, std::ostream& err);
int cmd_replay(const std::filesystem::path& path, const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace inflearn::app
