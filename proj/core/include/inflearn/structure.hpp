// Relational signatures and finite structures with complete diagrams.
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "inflearn/coding.hpp"

namespace inflearn {

struct Predicate {
  std::string name;
  std::size_t arity = 1;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// Ordered, non-empty list of uniquely named predicates of positive arity.
/// Functions and constants are represented by their graphs.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Predicate> predicates);

  std::size_t size() const { return predicates_.size(); }
  const Predicate& operator[](std::size_t j) const { return predicates_[j]; }
  const std::vector<Predicate>& predicates() const { return predicates_; }
  std::size_t max_arity() const;

  /// Index of the named predicate; throws std::out_of_range if absent.
  std::size_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const;

  /// "Edge/2 Le/2" style rendering, parsed back by parse_signature.
  std::string to_string() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Predicate> predicates_;
};

Signature parse_signature(std::string_view text);

class SignatureMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite structure over an arbitrary finite set of naturals.  Each
/// predicate stores its true tuples; every other tuple over the domain is
/// false, so the diagram is complete by construction.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  FiniteStructure(Signature sig, std::vector<Element> domain);

  const Signature& signature() const { return sig_; }
  /// Sorted, duplicate-free.
  const std::vector<Element>& domain() const { return domain_; }
  std::size_t size() const { return domain_.size(); }
  bool empty() const { return domain_.empty(); }
  bool contains(Element e) const;

  /// Marks t true.  Throws if t is not over the domain or has the wrong arity.
  void set_true(std::size_t pred, std::span<const Element> t);

  /// Truth of P_pred(t).  Throws std::out_of_range if t leaves the domain.
  bool holds(std::size_t pred, std::span<const Element> t) const;
  /// As holds(), for callers that have already checked membership.
  bool holds_unchecked(std::size_t pred, std::span<const Element> t) const;

  /// True tuples of a predicate in lexicographic order.
  std::vector<Tuple> true_tuples(std::size_t pred) const;
  std::size_t count_true(std::size_t pred) const { return tables_[pred].size(); }

  /// Restriction to the elements of `keep` that lie in the domain.
  FiniteStructure restrict_to(std::span<const Element> keep) const;

  friend bool operator==(const FiniteStructure& a, const FiniteStructure& b);

 private:
  void check_tuple(std::size_t pred, std::span<const Element> t) const;

  Signature sig_;
  std::vector<Element> domain_;
  std::vector<std::unordered_set<std::uint64_t>> tables_;
};

/// Injective key for a tuple of the given arity, used by the tables.
std::uint64_t tuple_key(std::span<const Element> t);
Tuple tuple_from_key(std::size_t arity, std::uint64_t key);

/// dom(a) is contained in dom(b) and all tables agree on dom(a)-tuples.
/// Throws SignatureMismatch if the signatures differ.
bool is_substructure(const FiniteStructure& a, const FiniteStructure& b);

/// Canonical text form: sorted domain, per-predicate sorted true tuples.
///
///   signature Edge/2
///   domain 0 1
///   Edge (0,1) (1,0)
std::string to_text(const FiniteStructure& s);
FiniteStructure structure_from_text(std::string_view text);

std::string tuple_to_string(std::span<const Element> t);

}  // namespace inflearn
