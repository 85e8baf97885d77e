// Concrete families of computable structures and their enumerations.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "inflearn/presentation.hpp"

namespace inflearn {

// --- graphs (signature Edge/2, directed) ---------------------------------------

Signature graph_signature();

/// G_i: infinitely many directed (i+1)-cycles, i >= 1.  Vertices n*c .. n*c+n-1
/// form cycle c (n = i+1) with edges x -> x+1 and last -> first.
PresentationPtr cycle_graph(std::size_t i);
/// Infinitely many isolated vertices.
PresentationPtr singleton_graph();
/// One directed n-cycle on 0..n-1, every other vertex isolated.
PresentationPtr singletons_plus_cycle(std::size_t n);
/// Triangle 0->1->2->0, extra edge 3->0 (so 0 has three neighbours), rest isolated.
PresentationPtr triangle_with_pendant();
/// Triangle on 0,1,2 plus the infinite directed path 3->4->5->...
PresentationPtr path_plus_triangle();

// --- linear orders (signature Le/2, reflexive) ---------------------------------

Signature order_signature();

/// a + eta + b.  Elements 0..a-1 are the left endpoints, a..a+b-1 the right
/// endpoints, and a+b+k is the k-th dyadic rational of (0,1) in breadth-first
/// order (1/2, 1/4, 3/4, 1/8, ...).  Stage s holds the endpoints and the first
/// s dyadics.
PresentationPtr order_presentation(std::size_t a, std::size_t b);
/// Value of the k-th dyadic as (odd numerator, exponent).
std::pair<std::uint64_t, unsigned> dyadic(std::uint64_t k);

// --- lattices (signature Join/3, Meet/3) -------------------------------------

Signature lattice_signature();
constexpr std::size_t kLatticeSize = 10;
constexpr std::size_t kLatticeMembers = 4;

/// Level of each element of D_i in its graded Hasse diagram; two elements are
/// comparable iff they sit on different levels.
std::vector<int> lattice_levels(std::size_t i);
/// D_i as a finite structure on 0..9.
FiniteStructure lattice_d(std::size_t i);
/// B_i = D_i with an omega-chain on top; stage s adds s chain elements.
PresentationPtr lattice_b(std::size_t i);
/// Finite lattice given by levels (used for D_i and B_i stages).
FiniteStructure lattice_from_levels(const std::vector<int>& levels);
bool is_lattice_structure(const FiniteStructure& s);
bool is_distributive(const FiniteStructure& s);

/// Text certificate of distributivity and pairwise non-embeddability.
std::string lattice_certificate();

// --- abelian p-groups (signature Add/3) ---------------------------------------

Signature group_signature();

/// A_i = direct sum of countably many Z(p^(i+1)).  Element e = e0 + p^n * r
/// with n = i+1: e0 is coordinate 0, and the base-p digits of r fill the
/// further coordinates one p-layer at a time.  Stage 0 = {0}; stage s >= 1 is
/// the subgroup of the first p^(n + floor(log2 s)) elements.
PresentationPtr pgroup(std::size_t i, std::uint64_t p = 2);
/// Coordinate vector of a group element, and back.
std::vector<std::uint64_t> group_coords(std::uint64_t e, std::size_t n, std::uint64_t p);
std::uint64_t group_element(const std::vector<std::uint64_t>& coords, std::size_t n, std::uint64_t p);

// --- Boolean algebras (descriptors only) ---------------------------------------

/// Atom count; nullopt stands for infinitely many.
FamilyDescriptor ba_descriptor(std::optional<std::uint64_t> atoms);

// --- enumerations ------------------------------------------------------------

class Enumeration {
 public:
  using IndexFn = std::function<PresentationPtr(Code)>;

  /// `size` = nullopt for infinite enumerations.
  Enumeration(std::string name, IndexFn fn, std::optional<Code> size, bool decidable, bool friedberg);

  const std::string& name() const { return name_; }
  bool has(Code e) const { return !size_ || e < *size_; }
  std::optional<Code> size() const { return size_; }
  /// nu(e); throws std::out_of_range if e is not an index.
  PresentationPtr operator()(Code e) const;
  bool decidable() const { return decidable_; }
  bool friedberg() const { return friedberg_; }

 private:
  std::string name_;
  IndexFn fn_;
  std::optional<Code> size_;
  bool decidable_;
  bool friedberg_;
};

/// Even indices from nu, odd indices from mu.
Enumeration combine(const Enumeration& nu, const Enumeration& mu);

/// Whether nu(e) is isomorphic to the target.  Throws std::logic_error if nu
/// carries no decidability witness.
bool index_set_member(const Enumeration& nu, const FamilyDescriptor& target, Code e);

/// Finite Friedberg enumeration over a fixed member list.
Enumeration list_enumeration(std::string name, std::vector<PresentationPtr> members);

/// 0 -> isolated vertices, i -> G_i (i >= 1).  Friedberg.
Enumeration honest_cycle_enumeration();
/// <i,k> -> G_i for i >= 1, <0,k> -> isolated vertices.  Decidable, not Friedberg.
Enumeration paired_cycle_enumeration();

/// The four orders 4+eta+1, 3+eta+2, 2+eta+3, 1+eta+4.
std::vector<PresentationPtr> four_orders();
std::vector<PresentationPtr> lattice_family();
std::vector<PresentationPtr> pgroup_family(std::size_t members = 4, std::uint64_t p = 2);

// --- embedding oracle ----------------------------------------------------------

constexpr std::size_t kEmbeddingLimit = 12;

/// Exhaustive search for an injective map dom(a) -> dom(b) preserving every
/// predicate in both directions.  Throws std::length_error if |dom(a)| > 12.
bool embedding_oracle(const FiniteStructure& a, const FiniteStructure& b);
/// Same search; returns the map (image of the i-th domain element of a).
std::optional<std::vector<Element>> find_embedding(const FiniteStructure& a, const FiniteStructure& b);

}  // namespace inflearn
