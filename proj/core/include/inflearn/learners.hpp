// Learners: deterministic maps from informant prefixes to conjectures.
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "inflearn/catalog.hpp"
#include "inflearn/informant.hpp"
#include "inflearn/sigma2.hpp"

namespace inflearn {

/// An index, or "?" when empty.
class Conjecture {
 public:
  Conjecture() = default;
  Conjecture(Code index) : index_(index) {}  // NOLINT(google-explicit-constructor)
  static Conjecture unknown() { return Conjecture(); }

  bool is_index() const { return index_.has_value(); }
  Code index() const { return index_.value(); }
  std::string to_string() const { return index_ ? std::to_string(*index_) : "?"; }

  friend bool operator==(const Conjecture&, const Conjecture&) = default;

 private:
  std::optional<Code> index_;
};

/// Incremental learner state; conjecture() reflects every step fed so far.
class LearnerSession {
 public:
  virtual ~LearnerSession() = default;
  virtual void feed(const InformantStep& step) = 0;
  virtual Conjecture conjecture() const = 0;
  virtual std::unique_ptr<LearnerSession> clone() const = 0;
};

class Learner {
 public:
  virtual ~Learner() = default;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<LearnerSession> start(const Signature& sig) const = 0;

  /// From-scratch conjecture on a prefix.
  Conjecture conjecture(const InformantPrefix& p) const;
};

using LearnerPtr = std::shared_ptr<const Learner>;

/// Least pair <i, code(a)> with psi_i compatible with A_sigma via a; outputs
/// the index attached to psi_i, or 0 when no sentence is compatible.
LearnerPtr sigma2_learner(std::vector<FamilyEntry> family, Signature sig);
/// "?" until a directed 2- or 3-cycle shows up in A_sigma, then 1 or 2 forever.
LearnerPtr two_graph_learner();
/// On the first directed cycle of length n >= 2, n-1 forever.
LearnerPtr honest_cycle_learner();
/// On the first cycle of length n: <n-1, 0>.  Switches to 0 for good on a
/// component larger than n, a vertex with three neighbours, or a cycle shorter than n.
LearnerPtr index_cycle_learner();
/// Always the same conjecture.
LearnerPtr constant_learner(Conjecture c);
/// Number of steps seen, mod 2.
LearnerPtr parity_learner();
/// Largest element mentioned so far ("?" on the empty prefix).
LearnerPtr largest_element_learner();

/// Length n >= 2 of the first directed cycle of g: the cycle with the least
/// largest vertex, shortest among those.  nullopt if g is acyclic (loops ignored).
std::optional<std::size_t> first_cycle_length(const FiniteStructure& g);

struct LearningRecord {
  std::vector<Conjecture> sequence;  // sequence[n] = M(I[n]), n = 0..horizon
  std::size_t convergence_point = 0;  // least s0 with sequence constant on [s0, horizon]
  std::size_t mind_changes = 0;

  Conjecture final() const { return sequence.back(); }
  std::size_t horizon() const { return sequence.size() - 1; }
  /// Steps the final conjecture has been held, counting the last one.
  std::size_t stable_for() const { return sequence.size() - convergence_point; }
};

LearningRecord make_record(std::vector<Conjecture> sequence);
LearningRecord run(const Learner& l, const InformantSource& src, std::size_t horizon);

/// Whether conjecture c names a structure isomorphic to `target` under nu.
bool conjecture_correct(const Conjecture& c, const Enumeration& nu, const FamilyDescriptor& target);

}  // namespace inflearn
