// Existential-universal sentences: syntax, evaluation, compatibility.
//
// Concrete syntax:
//
//   exists x0 x1 { forall y : Le(x0,y) ; : x0 < x1 }
//
// Conjuncts are separated by ';' and may omit the forall list.  Matrix
// connectives, loosest first: '->' (right associative), '|', '&', '!'.
// Atoms: P(v,...), v = w, v != w, v <= w (Le), v < w (Le and distinct),
// true, false.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "inflearn/presentation.hpp"
#include "inflearn/structure.hpp"

namespace inflearn {

struct Formula {
  enum class Kind { True, False, Atom, Eq, Not, And, Or, Implies };

  Kind kind = Kind::True;
  std::string pred;               // Atom
  std::vector<std::string> vars;  // Atom arguments, or the two sides of Eq
  std::vector<Formula> kids;      // Not: 1, And/Or/Implies: 2

  friend bool operator==(const Formula&, const Formula&) = default;
};

struct Conjunct {
  std::vector<std::string> universals;
  Formula matrix;

  friend bool operator==(const Conjunct&, const Conjunct&) = default;
};

struct Sigma2Sentence {
  std::vector<std::string> existentials;
  std::vector<Conjunct> conjuncts;

  std::size_t arity() const { return existentials.size(); }
};

/// Equal up to the order of conjuncts.
bool operator==(const Sigma2Sentence& a, const Sigma2Sentence& b);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

Sigma2Sentence parse_sentence(std::string_view text);
std::string print_formula(const Formula& f);
/// Canonical form: conjuncts printed and sorted.
std::string print_sentence(const Sigma2Sentence& s);

struct FamilyEntry {
  std::string name;
  Sigma2Sentence sentence;
  Code nu_index = 0;
};

/// Sequence of "sentence NAME = INDEX : <sentence>" entries; '#' comments.
std::vector<FamilyEntry> parse_sentence_family(std::string_view text);
std::string print_sentence_family(const std::vector<FamilyEntry>& fam);

/// Standard two-valued truth.  Throws std::invalid_argument on an unassigned
/// variable and std::out_of_range on a value outside dom(s).
bool eval_qf(const FiniteStructure& s, const Formula& f, const std::map<std::string, Element>& asg);

/// A sentence resolved against a signature, for repeated evaluation.
class CompiledSentence {
 public:
  CompiledSentence(const Sigma2Sentence& s, const Signature& sig);

  const Sigma2Sentence& source() const { return src_; }
  const Signature& signature() const { return sig_; }
  std::size_t arity() const { return n_; }

  /// True iff no conjunct is definitely falsified by some universal tuple over
  /// dom(c).  Atoms that mention an element outside dom(c) are undetermined.
  bool compatible(const FiniteStructure& c, std::span<const Element> a) const;

  /// Least tuple, in coding order, with code in [from, upto] that is
  /// compatible with c.  The caller promises that no tuple with code below
  /// `from` is compatible (0 is always safe); nullopt if none is found.
  std::optional<Tuple> least_compatible(const FiniteStructure& c, Code from = 0,
                                        Code upto = ~Code{0}) const;

  /// Some tuple with entries from `values` is compatible with c.
  bool exists_compatible_over(const FiniteStructure& c, const std::vector<Element>& values) const;

  struct Node;

 private:
  friend struct SearchCtx;

  Sigma2Sentence src_;
  Signature sig_;
  std::size_t n_ = 0;
  std::vector<std::shared_ptr<const Node>> matrices_;
  std::vector<std::size_t> universals_;               // per conjunct
  std::vector<std::vector<bool>> uses_exist_;         // per conjunct, which x_i occur
  std::vector<std::vector<std::size_t>> by_depth_;    // conjuncts keyed by 1 + last existential used
};

bool compatible(const Sigma2Sentence& psi, const FiniteStructure& c, std::span<const Element> a);

enum class LimitVerdict { witnessed, refuted, pending };
std::string to_string(LimitVerdict v);

/// Finite-horizon reading of "the limit structure satisfies psi".  Candidate
/// tuples range over E = {e < bound : elem_stage(e) <= bound/2}; each is tested
/// for compatibility with stage(bound).  witnessed: some candidate survives;
/// refuted: none does; pending: bound 0 or E empty.
LimitVerdict holds_in_limit(const Sigma2Sentence& psi, const Presentation& pres, std::size_t bound);

}  // namespace inflearn
