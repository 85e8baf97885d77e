#include "inflearn/bf.hpp"

#include <stdexcept>

namespace inflearn {

std::uint64_t ExtNat::value() const {
  if (inf_) throw std::logic_error("infinite value has no natural representation");
  return n_;
}

std::string ExtNat::to_string() const { return inf_ ? "inf" : std::to_string(n_); }

ExtNat parse_ext_nat(const std::string& s) {
  if (s == "inf") return ExtNat::inf();
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("expected a natural or 'inf', got '" + s + "'");
  return ExtNat(std::stoull(s));
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "true";
    case Tri::no: return "false";
    case Tri::unknown: return "unknown";
  }
  return "unknown";
}

std::string BADescriptor::to_string() const { return "atoms=" + atoms.to_string(); }

std::string LinOrderDescriptor::to_string() const {
  return "t0=" + t0.to_string() + " t2=" + t2.to_string() + " block=" + sup_block.to_string() +
         " count=" + sup_count.to_string();
}

LinOrderDescriptor eta_order(std::uint64_t a, std::uint64_t b) { return {a, b, 1, ExtNat::inf()}; }

bool le2_ba(const BADescriptor& a, const BADescriptor& b) { return a.atoms >= b.atoms; }

namespace {

Tri le2_middle(const LinOrderDescriptor& a, const LinOrderDescriptor& b) {
  if (a.sup_block.is_inf()) return Tri::yes;
  if (a.sup_block == b.sup_block && a.sup_count.is_inf()) return Tri::yes;
  return Tri::unknown;
}

template <class D, class F>
std::vector<std::vector<Tri>> matrix_of(const std::vector<D>& m, F le2) {
  std::vector<std::vector<Tri>> out(m.size(), std::vector<Tri>(m.size(), Tri::unknown));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = le2(m[i], m[j]);
  return out;
}

template <class D, class F>
std::optional<std::pair<std::size_t, std::size_t>> witness_of(const std::vector<D>& m, F le2) {
  if (m.size() < 2) throw std::invalid_argument("obstruction witness needs at least two members");
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m[i] == m[j]) throw std::invalid_argument("members " + std::to_string(i) + " and " +
                                                    std::to_string(j) + " have the same invariants");
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j && le2(m[j], m[i]) == Tri::yes) return std::pair{i, j};
  return std::nullopt;
}

Tri ba_tri(const BADescriptor& a, const BADescriptor& b) { return le2_ba(a, b) ? Tri::yes : Tri::no; }

}  // namespace

Tri le2_lo(const LinOrderDescriptor& a, const LinOrderDescriptor& b) {
  if (a.t0.is_inf() || a.t2.is_inf()) return (a.t0 >= b.t0 && a.t2 >= b.t2) ? Tri::yes : Tri::no;
  if (a.t0 < b.t0 || a.t2 < b.t2) return Tri::no;
  return le2_middle(a, b);
}

std::optional<std::pair<std::size_t, std::size_t>> obstruction_witness(const std::vector<BADescriptor>& members) {
  return witness_of(members, ba_tri);
}

std::optional<std::pair<std::size_t, std::size_t>> obstruction_witness(
    const std::vector<LinOrderDescriptor>& members) {
  return witness_of(members, le2_lo);
}

std::vector<std::vector<Tri>> le2_matrix(const std::vector<BADescriptor>& members) {
  return matrix_of(members, ba_tri);
}

std::vector<std::vector<Tri>> le2_matrix(const std::vector<LinOrderDescriptor>& members) {
  return matrix_of(members, le2_lo);
}

}  // namespace inflearn
