// Brute-force reference implementations used by the tests.  Each one follows
// the textbook definition directly and is only fit for tiny inputs.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "inflearn/informant.hpp"
#include "inflearn/sigma2.hpp"
#include "inflearn/structure.hpp"

namespace inflearn::testing {

/// All tuples of the arity over {0..m}, sorted by (largest entry, lexicographic).
inline std::vector<Tuple> shell_order(std::size_t arity, Element m) {
  std::vector<Tuple> all;
  Tuple t(arity, 0);
  for (;;) {
    all.push_back(t);
    std::size_t i = arity;
    while (i > 0 && t[i - 1] == m) t[--i] = 0;
    if (i == 0) break;
    ++t[i - 1];
  }
  std::stable_sort(all.begin(), all.end(), [](const Tuple& a, const Tuple& b) {
    const auto ma = *std::max_element(a.begin(), a.end());
    const auto mb = *std::max_element(b.begin(), b.end());
    return ma != mb ? ma < mb : a < b;
  });
  return all;
}

/// Calls f on every tuple of the arity over `dom`.
inline void for_each_tuple(const std::vector<Element>& dom, std::size_t arity,
                           const std::function<void(const Tuple&)>& f) {
  if (dom.empty() && arity > 0) return;
  std::vector<std::size_t> idx(arity, 0);
  Tuple t(arity);
  for (;;) {
    for (std::size_t i = 0; i < arity; ++i) t[i] = dom[idx[i]];
    f(t);
    std::size_t i = arity;
    while (i > 0 && idx[i - 1] + 1 == dom.size()) idx[--i] = 0;
    if (i == 0) return;
    ++idx[i - 1];
  }
}

/// Every tuple over d is decided by k.
inline bool decided_complete(const Knowledge& k, const std::vector<Element>& d) {
  bool ok = true;
  for (std::size_t j = 0; j < k.signature().size() && ok; ++j)
    for_each_tuple(d, k.signature()[j].arity, [&](const Tuple& t) {
      if (k.decided(j, t) == 0) ok = false;
    });
  return ok;
}

/// All decided-complete subsets of the mentioned elements (at most 12 of them).
inline std::vector<std::vector<Element>> decided_complete_subsets(const Knowledge& k) {
  const std::vector<Element> men(k.mentioned().begin(), k.mentioned().end());
  std::vector<std::vector<Element>> out;
  for (std::uint32_t mask = 0; mask < (1u << men.size()); ++mask) {
    std::vector<Element> d;
    for (std::size_t i = 0; i < men.size(); ++i)
      if (mask >> i & 1) d.push_back(men[i]);
    if (decided_complete(k, d)) out.push_back(d);
  }
  return out;
}

/// Injective maps dom(a) -> dom(b) preserving every predicate both ways,
/// tried in full without pruning.
inline bool brute_embeds(const FiniteStructure& a, const FiniteStructure& b) {
  const auto& da = a.domain();
  const auto& db = b.domain();
  if (da.size() > db.size()) return false;
  std::vector<std::size_t> img(da.size(), 0);
  std::map<Element, Element> f;
  for (;;) {
    std::set<std::size_t> seen(img.begin(), img.end());
    if (seen.size() == img.size()) {
      for (std::size_t i = 0; i < da.size(); ++i) f[da[i]] = db[img[i]];
      bool ok = true;
      for (std::size_t j = 0; j < a.signature().size() && ok; ++j)
        for_each_tuple(da, a.signature()[j].arity, [&](const Tuple& t) {
          Tuple u(t.size());
          for (std::size_t q = 0; q < t.size(); ++q) u[q] = f[t[q]];
          if (a.holds(j, t) != b.holds(j, u)) ok = false;
        });
      if (ok) return true;
    }
    std::size_t i = img.size();
    while (i > 0 && img[i - 1] + 1 == db.size()) img[--i] = 0;
    if (i == 0) return false;
    ++img[i - 1];
  }
}

/// Three-valued reading of a matrix: nullopt when some atom mentions an
/// element outside dom(c).
inline std::optional<bool> eval3(const FiniteStructure& c, const Formula& f, const std::map<std::string, Element>& asg) {
  using K = Formula::Kind;
  auto in = [&](const std::string& v) { return c.contains(asg.at(v)); };
  switch (f.kind) {
    case K::True: return true;
    case K::False: return false;
    case K::Eq: return asg.at(f.vars[0]) == asg.at(f.vars[1]);
    case K::Atom: {
      Tuple t;
      for (const auto& v : f.vars) {
        if (!in(v)) return std::nullopt;
        t.push_back(asg.at(v));
      }
      return c.holds(c.signature().index_of(f.pred), t);
    }
    case K::Not: {
      auto x = eval3(c, f.kids[0], asg);
      if (!x) return std::nullopt;
      return !*x;
    }
    case K::And: {
      auto x = eval3(c, f.kids[0], asg), y = eval3(c, f.kids[1], asg);
      if ((x && !*x) || (y && !*y)) return false;
      if (x && y) return true;
      return std::nullopt;
    }
    case K::Or: {
      auto x = eval3(c, f.kids[0], asg), y = eval3(c, f.kids[1], asg);
      if ((x && *x) || (y && *y)) return true;
      if (x && y) return false;
      return std::nullopt;
    }
    case K::Implies: {
      auto x = eval3(c, f.kids[0], asg), y = eval3(c, f.kids[1], asg);
      if ((x && !*x) || (y && *y)) return true;
      if (x && y) return false;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

/// Compatibility straight from the definition: no conjunct is definitely
/// false for some universal tuple over dom(c).
inline bool brute_compatible(const Sigma2Sentence& psi, const FiniteStructure& c, const Tuple& a) {
  std::map<std::string, Element> asg;
  for (std::size_t i = 0; i < a.size(); ++i) asg[psi.existentials[i]] = a[i];
  for (const auto& cj : psi.conjuncts) {
    bool refuted = false;
    for_each_tuple(c.domain(), cj.universals.size(), [&](const Tuple& b) {
      auto full = asg;
      for (std::size_t q = 0; q < b.size(); ++q) full[cj.universals[q]] = b[q];
      auto v = eval3(c, cj.matrix, full);
      if (v && !*v) refuted = true;
    });
    if (refuted) return false;
  }
  return true;
}

}  // namespace inflearn::testing
