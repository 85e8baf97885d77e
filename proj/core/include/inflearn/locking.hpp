// Weak locking sequences and the alternating adversary.
//
// Extensions are built from units, each a short run of steps that only states
// true facts about the target:
//   repeat      restate the last step (no new information)
//   element e   decide every open tuple over mentioned ∪ {e}, for one of the
//               few least unmentioned elements e
//   close       decide every open tuple over the mentioned elements
// Search is breadth-first over unit sequences, shortest first, units in the
// order above, so budgets are comparable across runs.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "inflearn/informant.hpp"
#include "inflearn/learners.hpp"

namespace inflearn {

constexpr std::size_t kDefaultDepth = 4;
constexpr std::size_t kDefaultBudget = 10000;
constexpr std::size_t kFreshCandidates = 3;

struct LockingVerdict {
  enum class Kind { locking, mind_change, inconclusive };
  Kind kind = Kind::inconclusive;
  InformantPrefix sigma;                  // locking: the locking prefix; otherwise the last base
  std::optional<InformantPrefix> witness;  // mind_change: extension with a different conjecture
  std::size_t probes = 0;
  std::size_t moves = 0;  // times the base moved to a mind-changing extension
};

std::string to_string(LockingVerdict::Kind k);

/// Every fact agrees with the target's truth.
bool describes_part_of(const InformantPrefix& p, const Presentation& pres);

/// Search from `base`: whenever an extension changes the conjecture, move the
/// base there and restart.  A full search without a change gives `locking`.
/// Throws std::invalid_argument if base contradicts pres.
LockingVerdict find_weak_locking(const Learner& l, const Presentation& pres, const InformantPrefix& base,
                                 std::size_t depth = kDefaultDepth, std::size_t budget = kDefaultBudget);

/// Single breadth-first pass from sigma without moving: the first extension
/// whose conjecture differs, if any, within depth and budget.
struct ExtensionProbe {
  std::optional<InformantPrefix> witness;
  bool exhausted = false;  // the whole depth-bounded tree was checked
  std::size_t probes = 0;
};
ExtensionProbe probe_extensions(const Learner& l, const Presentation& pres, const InformantPrefix& sigma,
                                std::size_t depth, std::size_t budget);

struct AdversaryResult {
  bool success = false;      // reached target_changes
  InformantPrefix prefix;    // starts with the base
  std::size_t base_length = 0;
  std::size_t mind_changes = 0;  // counted after the base
  std::size_t probes = 0;
};

/// Alternates searched mind-changing extensions with canonical steps of pres.
AdversaryResult adversary(const Learner& l, const Presentation& pres, std::size_t target_changes,
                          std::size_t budget = kDefaultBudget, std::size_t depth = kDefaultDepth,
                          std::optional<InformantPrefix> base = std::nullopt);

/// Mind changes of l along p after its first `from` steps.
std::size_t count_mind_changes(const Learner& l, const InformantPrefix& p, std::size_t from = 0);

struct LockingSummary {
  struct PerSource {
    std::uint64_t seed = 0;
    std::optional<std::size_t> n;  // least passing prefix length
  };
  std::vector<PerSource> sources;
  bool all_pass() const;
};

/// For each seeded shuffled source, the least n <= horizon such that the
/// conjecture is constant on I[n..horizon] and no extension of I[n] within
/// depth changes it.
LockingSummary is_locking_up_to(const Learner& l, PresentationPtr pres, std::size_t n_informants, std::size_t horizon,
                                std::size_t depth = kDefaultDepth, std::uint64_t first_seed = 1,
                                std::size_t budget = kDefaultBudget);

}  // namespace inflearn
