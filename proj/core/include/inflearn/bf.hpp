// Second-level back-and-forth comparisons on isomorphism invariants.
//
// A <=2 B means every infinitary Pi_2 sentence true in A is true in B, or
// equivalently Sigma2-Th(B) ⊆ Sigma2-Th(A).  The comparisons work on
// descriptors; nothing here inspects presentations.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace inflearn {

/// A natural number or infinity.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t n) : n_(n) {}  // NOLINT(google-explicit-constructor)
  static constexpr ExtNat inf() {
    ExtNat x;
    x.inf_ = true;
    return x;
  }

  constexpr bool is_inf() const { return inf_; }
  /// Throws std::logic_error on infinity.
  std::uint64_t value() const;
  std::string to_string() const;

  friend constexpr bool operator==(const ExtNat&, const ExtNat&) = default;
  friend constexpr bool operator<(const ExtNat& a, const ExtNat& b) {
    if (a.inf_) return false;
    return b.inf_ || a.n_ < b.n_;
  }
  friend constexpr bool operator>=(const ExtNat& a, const ExtNat& b) { return !(a < b); }

 private:
  std::uint64_t n_ = 0;
  bool inf_ = false;
};

/// "inf" or a decimal natural.  Throws std::invalid_argument otherwise.
ExtNat parse_ext_nat(const std::string& s);

enum class Tri { yes, no, unknown };
std::string to_string(Tri t);

/// Infinite Boolean algebra, up to <=2, by its number of atoms.
struct BADescriptor {
  ExtNat atoms;
  friend bool operator==(const BADescriptor&, const BADescriptor&) = default;
  std::string to_string() const;
};

/// Countable linear order t0 + M + t2 where t0 / t2 are the sizes of the
/// finite initial / final segments (inf when the order starts with omega /
/// ends with omega*), and M is the endpointless middle summarised by the
/// supremum of its block sizes and how many blocks reach it.
struct LinOrderDescriptor {
  ExtNat t0;
  ExtNat t2;
  ExtNat sup_block = 1;
  ExtNat sup_count = ExtNat::inf();

  bool has_least() const { return !(t0 == ExtNat(0)); }
  bool has_greatest() const { return !(t2 == ExtNat(0)); }

  friend bool operator==(const LinOrderDescriptor&, const LinOrderDescriptor&) = default;
  std::string to_string() const;
};

/// a + eta + b.
LinOrderDescriptor eta_order(std::uint64_t a, std::uint64_t b);

/// a <=2 b iff a has at least as many atoms as b.
bool le2_ba(const BADescriptor& a, const BADescriptor& b);

/// Decides a <=2 b by the endpoint and block rules; unknown where the rules
/// do not settle the middles.
Tri le2_lo(const LinOrderDescriptor& a, const LinOrderDescriptor& b);

/// (i, j) with i != j and member_j <=2 member_i, so Sigma2-Th(member_i) is
/// contained in Sigma2-Th(member_j) and no Sigma2 sentence holds in member_i
/// alone.  Pairs are scanned with i outer, j inner.  Throws
/// std::invalid_argument on fewer than two members or repeated descriptors.
std::optional<std::pair<std::size_t, std::size_t>> obstruction_witness(const std::vector<BADescriptor>& members);
std::optional<std::pair<std::size_t, std::size_t>> obstruction_witness(const std::vector<LinOrderDescriptor>& members);

/// Row i, column j holds le2(member_i, member_j).
std::vector<std::vector<Tri>> le2_matrix(const std::vector<BADescriptor>& members);
std::vector<std::vector<Tri>> le2_matrix(const std::vector<LinOrderDescriptor>& members);

}  // namespace inflearn
