#include <algorithm>
#include <array>

#include "inflearn/sigma2.hpp"

namespace inflearn {

// --- two-valued evaluation ---------------------------------------------------------

bool eval_qf(const FiniteStructure& s, const Formula& f, const std::map<std::string, Element>& asg) {
  auto value = [&](const std::string& v) {
    auto it = asg.find(v);
    if (it == asg.end()) throw std::invalid_argument("variable '" + v + "' is unassigned");
    if (!s.contains(it->second))
      throw std::out_of_range("variable '" + v + "' is bound to " + std::to_string(it->second) + ", outside the domain");
    return it->second;
  };
  switch (f.kind) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Atom: {
      const std::size_t j = s.signature().index_of(f.pred);
      Tuple t;
      for (const auto& v : f.vars) t.push_back(value(v));
      return s.holds(j, t);
    }
    case Formula::Kind::Eq: return value(f.vars[0]) == value(f.vars[1]);
    case Formula::Kind::Not: return !eval_qf(s, f.kids[0], asg);
    case Formula::Kind::And: return eval_qf(s, f.kids[0], asg) && eval_qf(s, f.kids[1], asg);
    case Formula::Kind::Or: return eval_qf(s, f.kids[0], asg) || eval_qf(s, f.kids[1], asg);
    case Formula::Kind::Implies: return !eval_qf(s, f.kids[0], asg) || eval_qf(s, f.kids[1], asg);
  }
  return false;
}

// --- compiled three-valued evaluation -------------------------------------------------

namespace {

constexpr Element kUnset = ~Element{0};
enum V : std::uint8_t { F = 0, T = 1, U = 2 };

}  // namespace

struct CompiledSentence::Node {
  Formula::Kind kind;
  std::size_t pred = 0;
  std::vector<std::size_t> vars;  // slot indices
  std::vector<Node> kids;
};

namespace {

using Node = CompiledSentence::Node;

Node compile(const Formula& f, const Signature& sig, const std::vector<std::string>& names) {
  Node n;
  n.kind = f.kind;
  auto slot = [&](const std::string& v) {
    auto it = std::find(names.begin(), names.end(), v);
    if (it == names.end()) throw std::invalid_argument("undeclared variable '" + v + "'");
    return static_cast<std::size_t>(it - names.begin());
  };
  if (f.kind == Formula::Kind::Atom) {
    if (!sig.contains(f.pred)) throw std::invalid_argument("predicate '" + f.pred + "' is not in the signature");
    n.pred = sig.index_of(f.pred);
    if (sig[n.pred].arity != f.vars.size())
      throw std::invalid_argument("predicate '" + f.pred + "' used with wrong arity");
  }
  for (const auto& v : f.vars) n.vars.push_back(slot(v));
  for (const auto& k : f.kids) n.kids.push_back(compile(k, sig, names));
  return n;
}

void collect_slots(const Node& n, std::vector<bool>& used) {
  for (auto s : n.vars) used[s] = true;
  for (const auto& k : n.kids) collect_slots(k, used);
}

/// Domain membership with a bitmap for the common small case.
struct DomIndex {
  const FiniteStructure& c;
  std::vector<bool> bits;
  explicit DomIndex(const FiniteStructure& s) : c(s) {
    if (!s.empty() && s.domain().back() < (Element{1} << 20)) {
      bits.assign(s.domain().back() + 1, false);
      for (Element e : s.domain()) bits[e] = true;
    }
  }
  bool has(Element e) const {
    if (!bits.empty() || c.empty()) return e < bits.size() && bits[e];
    return c.contains(e);
  }
};

V eval3(const Node& n, const std::vector<Element>& vals, const DomIndex& dom) {
  switch (n.kind) {
    case Formula::Kind::True: return T;
    case Formula::Kind::False: return F;
    case Formula::Kind::Atom: {
      std::array<Element, 8> buf{};
      std::vector<Element> big;
      const std::size_t k = n.vars.size();
      Element* t = buf.data();
      if (k > buf.size()) {
        big.resize(k);
        t = big.data();
      }
      for (std::size_t q = 0; q < k; ++q) {
        const Element e = vals[n.vars[q]];
        if (e == kUnset || !dom.has(e)) return U;
        t[q] = e;
      }
      return dom.c.holds_unchecked(n.pred, std::span<const Element>(t, k)) ? T : F;
    }
    case Formula::Kind::Eq: {
      const Element a = vals[n.vars[0]], b = vals[n.vars[1]];
      if (a == kUnset || b == kUnset) return U;
      return a == b ? T : F;
    }
    case Formula::Kind::Not: {
      V a = eval3(n.kids[0], vals, dom);
      return a == U ? U : (a == T ? F : T);
    }
    case Formula::Kind::And: {
      V a = eval3(n.kids[0], vals, dom);
      if (a == F) return F;
      V b = eval3(n.kids[1], vals, dom);
      if (b == F) return F;
      return (a == T && b == T) ? T : U;
    }
    case Formula::Kind::Or: {
      V a = eval3(n.kids[0], vals, dom);
      if (a == T) return T;
      V b = eval3(n.kids[1], vals, dom);
      if (b == T) return T;
      return (a == F && b == F) ? F : U;
    }
    case Formula::Kind::Implies: {
      V a = eval3(n.kids[0], vals, dom);
      if (a == F) return T;
      V b = eval3(n.kids[1], vals, dom);
      if (b == T) return T;
      return (a == T && b == F) ? F : U;
    }
  }
  return U;
}

}  // namespace

struct SearchCtx {
  const CompiledSentence& cs;
  const DomIndex dom;
  std::vector<std::vector<Element>> slots;  // per conjunct: existentials then universals

  SearchCtx(const CompiledSentence& s, const FiniteStructure& c) : cs(s), dom(c) {
    for (std::size_t j = 0; j < cs.matrices_.size(); ++j) slots.emplace_back(cs.n_ + cs.universals_[j], kUnset);
  }

  void set_x(std::size_t i, Element v) {
    for (auto& s : slots) s[i] = v;
  }

  /// Some universal tuple over dom(c) definitely falsifies conjunct j.
  bool refuted(std::size_t j) {
    auto& vals = slots[j];
    const std::size_t m = cs.universals_[j];
    if (m > 0 && dom.c.empty()) return false;
    return refute_from(j, vals, 0, m);
  }

  bool refute_from(std::size_t j, std::vector<Element>& vals, std::size_t u, std::size_t m) {
    const V v = eval3(*cs.matrices_[j], vals, dom);
    if (v == F) return true;
    if (v == T || u == m) return false;
    const std::size_t slot = cs.n_ + u;
    bool hit = false;
    for (Element e : dom.c.domain()) {
      vals[slot] = e;
      if (refute_from(j, vals, u + 1, m)) {
        hit = true;
        break;
      }
    }
    vals[slot] = kUnset;
    return hit;
  }
};

CompiledSentence::CompiledSentence(const Sigma2Sentence& s, const Signature& sig)
    : src_(s), sig_(sig), n_(s.existentials.size()) {
  for (const auto& c : s.conjuncts) {
    std::vector<std::string> names = s.existentials;
    names.insert(names.end(), c.universals.begin(), c.universals.end());
    auto node = std::make_shared<Node>(compile(c.matrix, sig, names));
    std::vector<bool> used(names.size(), false);
    collect_slots(*node, used);
    uses_exist_.emplace_back(used.begin(), used.begin() + static_cast<std::ptrdiff_t>(n_));
    universals_.push_back(c.universals.size());
    matrices_.push_back(std::move(node));
  }
  // conjunct j is checked once its last existential is bound
  by_depth_.assign(n_ + 1, {});
  for (std::size_t j = 0; j < matrices_.size(); ++j) {
    std::size_t depth = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (uses_exist_[j][i]) depth = i + 1;
    by_depth_[depth].push_back(j);
  }
}

bool CompiledSentence::compatible(const FiniteStructure& c, std::span<const Element> a) const {
  if (a.size() != n_)
    throw std::invalid_argument("tuple of length " + std::to_string(a.size()) + " for a sentence with " +
                                std::to_string(n_) + " existential variables");
  if (!(c.signature() == sig_)) throw SignatureMismatch("compatible: structure signature differs from sentence's");
  SearchCtx ctx(*this, c);
  for (std::size_t i = 0; i < n_; ++i) ctx.set_x(i, a[i]);
  for (std::size_t j = 0; j < matrices_.size(); ++j)
    if (ctx.refuted(j)) return false;
  return true;
}

namespace {

struct ShellSearch {
  SearchCtx& ctx;
  const std::vector<std::vector<std::size_t>>& by_depth;
  std::size_t n;
  Element shell;
  Tuple from;  // empty when the lower bound is not in this shell
  Code upto;
  Tuple cur;
  bool over_limit = false;

  bool used_before(Element v, std::size_t p) const {
    return std::find(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(p), v) != cur.begin() + static_cast<std::ptrdiff_t>(p);
  }

  // Values outside dom(c) are interchangeable, so a tuple that introduces a
  // new one other than the least unused is never the least compatible tuple.
  Element least_unused_outside(std::size_t p) const {
    Element v = 0;
    while (ctx.dom.has(v) || used_before(v, p)) ++v;
    return v;
  }

  bool passes(std::size_t depth) {
    for (std::size_t j : by_depth[depth])
      if (ctx.refuted(j)) return false;
    return true;
  }

  bool dfs(std::size_t p, bool tight, bool has_max) {
    if (p == n) {
      if (encode_tuple(n, cur) > upto) {
        over_limit = true;
        return false;
      }
      return true;
    }
    Element lo = tight ? from[p] : 0;
    if (p + 1 == n && !has_max) lo = std::max(lo, shell);
    const Element fresh = least_unused_outside(p);
    for (Element v = lo; v <= shell; ++v) {
      if (v != fresh && !ctx.dom.has(v) && !used_before(v, p)) continue;
      cur[p] = v;
      ctx.set_x(p, v);
      if (passes(p + 1) && dfs(p + 1, tight && v == from[p], has_max || v == shell)) return true;
      if (over_limit) return false;
    }
    ctx.set_x(p, kUnset);
    return false;
  }
};

}  // namespace

std::optional<Tuple> CompiledSentence::least_compatible(const FiniteStructure& c, Code from, Code upto) const {
  if (!(c.signature() == sig_)) throw SignatureMismatch("least_compatible: structure signature differs");
  if (from > upto) return std::nullopt;
  if (n_ == 0) return compatible(c, {}) ? std::optional<Tuple>(Tuple{}) : std::nullopt;
  SearchCtx ctx(*this, c);
  for (std::size_t j : by_depth_[0])
    if (ctx.refuted(j)) return std::nullopt;
  // A compatible tuple with entries above max(dom) can be relabelled, keeping
  // its equality pattern, into one with max <= max(dom) + n.
  const Element last_shell = c.empty() ? static_cast<Element>(n_ - 1) : c.domain().back() + n_;
  Tuple start = decode_tuple(n_, from);
  const Element first_shell = *std::max_element(start.begin(), start.end());
  for (Element m = first_shell; m <= last_shell; ++m) {
    try {
      if (shell_start(n_, m) > upto) break;
    } catch (const std::overflow_error&) {
      break;
    }
    ShellSearch s{ctx, by_depth_, n_, m, m == first_shell ? start : Tuple{}, upto, Tuple(n_, 0)};
    const bool tight = m == first_shell;
    if (s.dfs(0, tight, false)) return s.cur;
    if (s.over_limit) break;
  }
  return std::nullopt;
}

bool compatible(const Sigma2Sentence& psi, const FiniteStructure& c, std::span<const Element> a) {
  return CompiledSentence(psi, c.signature()).compatible(c, a);
}

std::string to_string(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::witnessed: return "witnessed";
    case LimitVerdict::refuted: return "refuted-for-all-small-tuples";
    case LimitVerdict::pending: return "pending";
  }
  return "pending";
}

namespace {

struct ListSearch {
  SearchCtx& ctx;
  const std::vector<std::vector<std::size_t>>& by_depth;
  const std::vector<Element>& values;
  std::size_t n;

  bool dfs(std::size_t p) {
    if (p == n) return true;
    for (Element v : values) {
      ctx.set_x(p, v);
      bool ok = true;
      for (std::size_t j : by_depth[p + 1])
        if (ctx.refuted(j)) {
          ok = false;
          break;
        }
      if (ok && dfs(p + 1)) return true;
    }
    ctx.set_x(p, kUnset);
    return false;
  }
};

}  // namespace

LimitVerdict holds_in_limit(const Sigma2Sentence& psi, const Presentation& pres, std::size_t bound) {
  if (bound == 0) return LimitVerdict::pending;
  std::vector<Element> cand;
  for (Element e = 0; e < bound; ++e)
    if (pres.elem_stage(e) <= bound / 2) cand.push_back(e);
  if (cand.empty()) return LimitVerdict::pending;
  const FiniteStructure c = pres.stage(bound);
  CompiledSentence cs(psi, c.signature());
  if (cs.arity() == 0) return cs.compatible(c, {}) ? LimitVerdict::witnessed : LimitVerdict::refuted;
  return cs.exists_compatible_over(c, cand) ? LimitVerdict::witnessed : LimitVerdict::refuted;
}

bool CompiledSentence::exists_compatible_over(const FiniteStructure& c, const std::vector<Element>& values) const {
  SearchCtx ctx(*this, c);
  for (std::size_t j : by_depth_[0])
    if (ctx.refuted(j)) return false;
  if (n_ == 0) return true;
  ListSearch s{ctx, by_depth_, values, n_};
  return s.dfs(0);
}

}  // namespace inflearn
