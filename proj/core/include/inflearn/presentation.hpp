// Computable structures given as increasing unions of finite stages.
#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>

#include "inflearn/structure.hpp"

namespace inflearn {

/// Names an isomorphism type inside a catalog family.  Two descriptors are
/// equal iff they denote isomorphic structures; the member number is a label
/// and does not take part in the comparison.
struct FamilyDescriptor {
  std::string family;
  std::size_t member = 0;
  std::string invariant;

  friend bool operator==(const FamilyDescriptor& a, const FamilyDescriptor& b) {
    return a.family == b.family && a.invariant == b.invariant;
  }
  std::string to_string() const { return family + ":" + invariant; }
};

/// stage(0) ⊆ stage(1) ⊆ ... with union ω.  Element e is present from stage
/// elem_stage(e) on.
class Presentation {
 public:
  virtual ~Presentation() = default;

  virtual const Signature& signature() const = 0;
  virtual FiniteStructure stage(std::size_t s) const = 0;
  virtual std::size_t elem_stage(Element e) const = 0;
  virtual const FamilyDescriptor& descriptor() const = 0;

  /// Truth of P_pred(t) in the limit structure.  The default reads it off the
  /// first stage containing every entry of t; subclasses override it with a
  /// direct computation.
  virtual bool truth(std::size_t pred, std::span<const Element> t) const;

  std::string name() const { return descriptor().to_string(); }
};

using PresentationPtr = std::shared_ptr<const Presentation>;

}  // namespace inflearn
