#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "inflearn/catalog.hpp"

namespace inflearn {

Signature lattice_signature() { return Signature({{"Join", 3}, {"Meet", 3}}); }

// D_i: a chain of 3-i elements, a square (2x2), a spine gap of i, a second
// square.  Gap 0 glues the first top to the second bottom.  All have 10 elements.
std::vector<int> lattice_levels(std::size_t i) {
  if (i >= kLatticeMembers) throw std::out_of_range("lattice member index must be < 4");
  std::vector<int> lv;
  int level = 0;
  for (std::size_t c = 0; c < 3 - i; ++c) lv.push_back(level++);
  auto square_over = [&lv](int bottom) {
    lv.push_back(bottom + 1);
    lv.push_back(bottom + 1);
    lv.push_back(bottom + 2);
    return bottom + 2;
  };
  lv.push_back(level);
  const int top1 = square_over(level);
  int bottom2 = top1;
  if (i > 0) {
    for (std::size_t g = 1; g < i; ++g) lv.push_back(top1 + static_cast<int>(g));
    bottom2 = top1 + static_cast<int>(i);
    lv.push_back(bottom2);
  }
  square_over(bottom2);
  if (lv.size() != kLatticeSize) throw std::logic_error("lattice construction size drifted");
  return lv;
}

FiniteStructure lattice_from_levels(const std::vector<int>& levels) {
  const std::size_t n = levels.size();
  auto le = [&](std::size_t x, std::size_t y) { return x == y || levels[x] < levels[y]; };
  auto bound = [&](std::size_t x, std::size_t y, bool upper) -> std::size_t {
    std::vector<std::size_t> cands;
    for (std::size_t u = 0; u < n; ++u)
      if (upper ? (le(x, u) && le(y, u)) : (le(u, x) && le(u, y))) cands.push_back(u);
    for (std::size_t u : cands) {
      bool best = std::all_of(cands.begin(), cands.end(), [&](std::size_t v) { return upper ? le(u, v) : le(v, u); });
      if (best) return u;
    }
    throw std::invalid_argument("levels do not describe a lattice");
  };
  std::vector<Element> dom(n);
  for (std::size_t e = 0; e < n; ++e) dom[e] = e;
  FiniteStructure s(lattice_signature(), dom);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      s.set_true(0, std::vector<Element>{x, y, bound(x, y, true)});
      s.set_true(1, std::vector<Element>{x, y, bound(x, y, false)});
    }
  return s;
}

FiniteStructure lattice_d(std::size_t i) { return lattice_from_levels(lattice_levels(i)); }

namespace {

// op[x][y] for a binary operation given by its graph; nullopt if not a function.
std::optional<std::vector<std::vector<std::size_t>>> op_table(const FiniteStructure& s, std::size_t pred) {
  const auto& d = s.domain();
  const std::size_t n = d.size();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t hits = 0;
      for (std::size_t z = 0; z < n; ++z)
        if (s.holds_unchecked(pred, std::vector<Element>{d[x], d[y], d[z]})) {
          t[x][y] = z;
          ++hits;
        }
      if (hits != 1) return std::nullopt;
    }
  return t;
}

}  // namespace

bool is_lattice_structure(const FiniteStructure& s) {
  if (!(s.signature() == lattice_signature())) return false;
  auto j = op_table(s, 0), m = op_table(s, 1);
  if (!j || !m) return false;
  const std::size_t n = s.size();
  for (std::size_t x = 0; x < n; ++x) {
    if ((*j)[x][x] != x || (*m)[x][x] != x) return false;
    for (std::size_t y = 0; y < n; ++y) {
      if ((*j)[x][y] != (*j)[y][x] || (*m)[x][y] != (*m)[y][x]) return false;
      if ((*j)[x][(*m)[x][y]] != x || (*m)[x][(*j)[x][y]] != x) return false;
      for (std::size_t z = 0; z < n; ++z) {
        if ((*j)[(*j)[x][y]][z] != (*j)[x][(*j)[y][z]]) return false;
        if ((*m)[(*m)[x][y]][z] != (*m)[x][(*m)[y][z]]) return false;
      }
    }
  }
  return true;
}

bool is_distributive(const FiniteStructure& s) {
  if (!is_lattice_structure(s)) return false;
  auto j = *op_table(s, 0);
  auto m = *op_table(s, 1);
  const std::size_t n = s.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (m[x][j[y][z]] != j[m[x][y]][m[x][z]]) return false;
  return true;
}

std::string lattice_certificate() {
  std::ostringstream out;
  out << "# lattice family: D_i certified distributive and pairwise non-embeddable\n";
  std::vector<FiniteStructure> d;
  for (std::size_t i = 0; i < kLatticeMembers; ++i) d.push_back(lattice_d(i));
  for (std::size_t i = 0; i < kLatticeMembers; ++i) {
    out << "D" << i << " levels";
    for (int l : lattice_levels(i)) out << ' ' << l;
    out << " size " << d[i].size() << " lattice " << (is_lattice_structure(d[i]) ? "yes" : "no") << " distributive "
        << (is_distributive(d[i]) ? "yes" : "no") << "\n";
  }
  for (std::size_t i = 0; i < kLatticeMembers; ++i)
    for (std::size_t j = 0; j < kLatticeMembers; ++j)
      out << "embed D" << i << " -> D" << j << " " << (embedding_oracle(d[i], d[j]) ? "yes" : "no") << "\n";
  for (std::size_t i = 0; i < kLatticeMembers; ++i)
    for (std::size_t j = 0; j < kLatticeMembers; ++j) {
      FiniteStructure bj = lattice_b(j)->stage(kLatticeSize);
      out << "embed D" << i << " -> B" << j << "[stage " << kLatticeSize << "] "
          << (embedding_oracle(d[i], bj) ? "yes" : "no") << "\n";
    }
  return out.str();
}

}  // namespace inflearn
