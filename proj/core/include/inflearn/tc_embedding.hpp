// Stagewise simulation of the embedding of a learnable family into the class
// of structures with unary predicates P_0, P_1, ... over a dense order, where
// exactly one P_i gets a least element in the limit.
//
// Points are dyadic rationals held as fixed-point integers.  Anchors
// q_s = -s descend.  Each stage, per predicate:
//   open    add a point in (q_{s+1}, min), clearing any least flag
//   closed  add q_{s+1} as the least element (or keep the current one)
// and in both cases add max + 1 and the midpoint of the widest gap.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "inflearn/informant.hpp"
#include "inflearn/learners.hpp"
#include "inflearn/sigma2.hpp"
#include "inflearn/structure.hpp"

namespace inflearn {

constexpr std::int64_t kPointScale = std::int64_t{1} << 20;

/// Finite table standing in for "which member does this conjecture name".
class IndexOracle {
 public:
  IndexOracle() = default;
  explicit IndexOracle(std::map<Code, std::size_t> table) : table_(std::move(table)) {}

  /// Member index named by c, or nullopt when c is not an index on the table.
  std::optional<std::size_t> lookup(const Conjecture& c) const;
  std::size_t max_target() const;
  const std::map<Code, std::size_t>& table() const { return table_; }

 private:
  std::map<Code, std::size_t> table_;
};

struct StPoint {
  Element id = 0;          // stable across stages
  std::int64_t value = 0;  // position times kPointScale
};

struct StPredicate {
  std::vector<StPoint> points;  // sorted by value
  bool least = false;           // points.front() is the least element of the limit
};

struct StApprox {
  std::size_t stage = 0;
  std::vector<StPredicate> preds;
  Conjecture conjecture;  // learner output that drove this stage

  /// Signature Le/2, P0/1, ..., P{N-1}/1.  Le relates points of the same
  /// predicate by value; points of different predicates are incomparable.
  FiniteStructure structure() const;
  /// The same structure restricted to Le.
  FiniteStructure order_reduct() const;
};

Signature st_signature(std::size_t n_predicates);

/// Stage 0 plus `stages` further stages; stage s+1 reads M(I[s+1]).  Throws
/// std::invalid_argument if the oracle names a predicate >= n_predicates or
/// n_predicates / stages is zero.
std::vector<StApprox> embed_run(const Learner& l, const InformantSource& src, const IndexOracle& oracle,
                                std::size_t stages, std::size_t n_predicates);

/// Predicate whose least flag is set on every stage of the last quarter with
/// the same least point.  Throws std::invalid_argument on an empty run and
/// std::logic_error if several predicates qualify.
std::optional<std::size_t> limit_shape(const std::vector<StApprox>& run);

/// exists x forall y (P_i(y) -> x <= y).
Sigma2Sentence xi_sentence(std::size_t i);

/// Finite reading of xi_i: some point of the second-to-last stage satisfies
/// the universal part over the last stage.  Needs at least two stages.
bool xi_holds(const std::vector<StApprox>& run, std::size_t i);

}  // namespace inflearn
