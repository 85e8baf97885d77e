// Informant steps, prefixes, sources, and the A_sigma extraction rule.
#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "inflearn/presentation.hpp"
#include "inflearn/structure.hpp"

namespace inflearn {

struct Fact {
  Tuple tuple;
  bool label = false;

  friend bool operator==(const Fact&, const Fact&) = default;
};

/// One labelled tuple per predicate of the signature.
struct InformantStep {
  std::vector<Fact> facts;

  friend bool operator==(const InformantStep&, const InformantStep&) = default;
};

void validate_step(const Signature& sig, const InformantStep& step);

/// Decided facts of a prefix, per predicate.  Small elements are kept in a
/// dense table; anything else falls back to hashing.
class FactTable {
 public:
  explicit FactTable(std::size_t arity = 1) : arity_(arity) {}

  /// Returns the stored label if t was already decided, otherwise stores
  /// `label` and returns nullopt.
  std::optional<bool> record(std::span<const Element> t, bool label);
  /// 0 = undecided, 1 = false, 2 = true.
  std::uint8_t get(std::span<const Element> t) const;
  std::size_t size() const { return count_; }
  std::size_t arity() const { return arity_; }

 private:
  void grow_dense(Element needed);

  std::size_t arity_;
  std::size_t count_ = 0;
  std::size_t base_ = 0;  // dense table side length; 0 means no dense table yet
  bool sparse_mode_ = false;
  std::vector<std::uint8_t> dense_;
  std::unordered_map<std::uint64_t, std::uint8_t> sparse_;
};

/// Everything a prefix has revealed: decided facts (first occurrence wins),
/// mentioned elements, and a sticky inconsistency flag.
class Knowledge {
 public:
  Knowledge() = default;
  explicit Knowledge(Signature sig);

  const Signature& signature() const { return sig_; }
  void add(const InformantStep& step);

  bool consistent() const { return consistent_; }
  /// 0 = undecided, 1 = false, 2 = true.
  std::uint8_t decided(std::size_t pred, std::span<const Element> t) const { return tables_[pred].get(t); }
  const std::set<Element>& mentioned() const { return mentioned_; }
  std::size_t steps() const { return steps_; }

  /// Domain of A_sigma: walk mentioned elements from the largest down,
  /// dropping any element that lies in an undecided tuple over the elements
  /// still present.
  std::vector<Element> extract_domain() const;
  FiniteStructure structure_on(const std::vector<Element>& domain) const;

 private:
  bool touches_undecided(Element e, const std::vector<Element>& dom) const;

  Signature sig_;
  std::vector<FactTable> tables_;
  std::set<Element> mentioned_;
  bool consistent_ = true;
  std::size_t steps_ = 0;
};

class InformantPrefix {
 public:
  InformantPrefix() = default;
  explicit InformantPrefix(Signature sig) : sig_(std::move(sig)) {}

  const Signature& signature() const { return sig_; }
  const std::vector<InformantStep>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }

  void push(InformantStep step);
  InformantPrefix take(std::size_t n) const;
  /// True iff no tuple carries both labels.
  bool consistent() const;
  Knowledge knowledge() const;

  friend bool operator==(const InformantPrefix&, const InformantPrefix&) = default;

 private:
  Signature sig_;
  std::vector<InformantStep> steps_;
};

/// Per predicate, the tuples labelled 1 anywhere in the prefix.
std::vector<std::set<Tuple>> positive_content(const InformantPrefix& p);

/// A_sigma.  Inconsistent prefixes are read with first occurrence winning.
FiniteStructure extract_structure(const InformantPrefix& p);

/// Keeps A_sigma up to date as steps arrive.  Used by learners so a run does
/// not re-extract from scratch.
class IncrementalExtractor {
 public:
  IncrementalExtractor() = default;
  explicit IncrementalExtractor(Signature sig) : know_(std::move(sig)) {}

  /// Returns true iff the domain of A_sigma changed.
  bool feed(const InformantStep& step);
  const std::vector<Element>& domain() const { return domain_; }
  const Knowledge& knowledge() const { return know_; }
  FiniteStructure structure() const { return know_.structure_on(domain_); }

 private:
  Knowledge know_;
  std::vector<Element> domain_;
};

enum class SourceKind { canonical, shuffled, adversarial, replay };
std::string to_string(SourceKind k);

class InformantSource {
 public:
  virtual ~InformantSource() = default;
  virtual const Signature& signature() const = 0;
  virtual InformantStep step(std::size_t m) const = 0;
  virtual SourceKind kind() const = 0;
  virtual std::string provenance() const = 0;

  InformantPrefix prefix(std::size_t n) const;
};

using SourcePtr = std::shared_ptr<const InformantSource>;

/// Step m labels decode_tuple(arity_j, m) for every predicate j.
SourcePtr canonical_source(PresentationPtr pres);
/// Seeded permutation of the canonical order inside each code shell of each
/// predicate, so a shell is exhausted before the next one starts.
SourcePtr shuffled_source(PresentationPtr pres, std::uint64_t seed);
/// A fixed finite prefix; steps past its end throw std::out_of_range.
SourcePtr replay_source(InformantPrefix prefix);

/// Line format: "signature Name/arity ..." then one step per line with
/// space-separated fields "j:(t,...)=b".  '#' starts a comment.
std::string to_replay_text(const InformantPrefix& p);
InformantPrefix parse_replay_text(std::string_view text);

}  // namespace inflearn
