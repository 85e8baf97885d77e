#include "inflearn/catalog.hpp"
#include "wide.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace inflearn {

bool Presentation::truth(std::size_t pred, std::span<const Element> t) const {
  std::size_t s = 0;
  for (Element e : t) s = std::max(s, elem_stage(e));
  return stage(s).holds(pred, t);
}

namespace {

using TruthFn = std::function<bool(std::size_t, std::span<const Element>)>;

/// Presentation whose stage s has domain {0, ..., size(s)-1}.
class SegmentPresentation : public Presentation {
 public:
  SegmentPresentation(Signature sig, FamilyDescriptor d, std::function<std::size_t(std::size_t)> size,
                      std::function<std::size_t(Element)> elem_stage, TruthFn truth)
      : sig_(std::move(sig)),
        desc_(std::move(d)),
        size_(std::move(size)),
        elem_stage_(std::move(elem_stage)),
        truth_(std::move(truth)) {}

  const Signature& signature() const override { return sig_; }
  const FamilyDescriptor& descriptor() const override { return desc_; }
  std::size_t elem_stage(Element e) const override { return elem_stage_(e); }
  bool truth(std::size_t pred, std::span<const Element> t) const override { return truth_(pred, t); }

  FiniteStructure stage(std::size_t s) const override {
    const std::size_t n = size_(s);
    std::vector<Element> dom(n);
    for (std::size_t e = 0; e < n; ++e) dom[e] = e;
    FiniteStructure out(sig_, dom);
    Tuple t;
    for (std::size_t j = 0; j < sig_.size(); ++j) {
      const std::size_t k = sig_[j].arity;
      if (n == 0) continue;
      t.assign(k, 0);
      bool more = true;
      while (more) {
        if (truth_(j, t)) out.set_true(j, t);
        more = false;
        for (std::size_t q = k; q-- > 0;) {
          if (++t[q] < n) {
            more = true;
            break;
          }
          t[q] = 0;
        }
      }
    }
    return out;
  }

 private:
  Signature sig_;
  FamilyDescriptor desc_;
  std::function<std::size_t(std::size_t)> size_;
  std::function<std::size_t(Element)> elem_stage_;
  TruthFn truth_;
};

PresentationPtr graph_with_core(std::string invariant, std::size_t core,
                                std::function<bool(Element, Element)> edge) {
  return std::make_shared<SegmentPresentation>(
      graph_signature(), FamilyDescriptor{"graphs", 0, std::move(invariant)},
      [core](std::size_t s) { return core + s; },
      [core](Element e) { return e < core ? std::size_t{0} : static_cast<std::size_t>(e - core + 1); },
      [edge](std::size_t, std::span<const Element> t) { return edge(t[0], t[1]); });
}

}  // namespace

// --- graphs ----------------------------------------------------------------------

Signature graph_signature() { return Signature({{"Edge", 2}}); }

PresentationPtr cycle_graph(std::size_t i) {
  if (i == 0) throw std::invalid_argument("cycle_graph needs i >= 1");
  const std::size_t n = i + 1;
  return std::make_shared<SegmentPresentation>(
      graph_signature(), FamilyDescriptor{"graphs", i, "cycles(" + std::to_string(n) + ")"},
      [n](std::size_t s) { return s * n; }, [n](Element e) { return static_cast<std::size_t>(e / n + 1); },
      [n](std::size_t, std::span<const Element> t) {
        const Element x = t[0], y = t[1];
        if (x / n != y / n) return false;
        return (x % n + 1) % n == y % n;
      });
}

PresentationPtr singleton_graph() {
  return graph_with_core("singletons", 0, [](Element, Element) { return false; });
}

PresentationPtr singletons_plus_cycle(std::size_t n) {
  if (n < 2) throw std::invalid_argument("cycle length must be at least 2");
  return graph_with_core("singletons+cycle(" + std::to_string(n) + ")", n, [n](Element x, Element y) {
    return x < n && y < n && (x + 1) % n == y;
  });
}

PresentationPtr triangle_with_pendant() {
  return graph_with_core("triangle+pendant", 4, [](Element x, Element y) {
    if (x < 3 && y < 3) return (x + 1) % 3 == y;
    return x == 3 && y == 0;
  });
}

PresentationPtr path_plus_triangle() {
  return graph_with_core("path+triangle", 3, [](Element x, Element y) {
    if (x < 3 && y < 3) return (x + 1) % 3 == y;
    return x >= 3 && y == x + 1;
  });
}

// --- orders ------------------------------------------------------------------------

Signature order_signature() { return Signature({{"Le", 2}}); }

std::pair<std::uint64_t, unsigned> dyadic(std::uint64_t k) {
  const unsigned level = static_cast<unsigned>(std::bit_width(k + 1));  // floor(log2(k+1)) + 1
  const std::uint64_t t = k + 1 - (std::uint64_t{1} << (level - 1));
  return {2 * t + 1, level};
}

PresentationPtr order_presentation(std::size_t a, std::size_t b) {
  const std::size_t ends = a + b;
  // rank: 0 = left block, 1 = dyadic, 2 = right block
  auto le = [a, ends](std::size_t, std::span<const Element> t) {
    auto rank = [&](Element e) { return e < a ? 0 : (e < ends ? 2 : 1); };
    const Element x = t[0], y = t[1];
    const int rx = rank(x), ry = rank(y);
    if (rx != ry) return rx < ry;
    if (rx != 1) return x <= y;
    auto [nx, lx] = dyadic(x - ends);
    auto [ny, ly] = dyadic(y - ends);
    // nx / 2^lx <= ny / 2^ly
    const unsigned m = std::max(lx, ly);
    return (static_cast<u128>(nx) << (m - lx)) <= (static_cast<u128>(ny) << (m - ly));
  };
  return std::make_shared<SegmentPresentation>(
      order_signature(),
      FamilyDescriptor{"orders", 0, std::to_string(a) + "+eta+" + std::to_string(b)},
      [ends](std::size_t s) { return ends + s; },
      [ends](Element e) { return e < ends ? std::size_t{0} : static_cast<std::size_t>(e - ends + 1); }, le);
}

std::vector<PresentationPtr> four_orders() {
  return {order_presentation(4, 1), order_presentation(3, 2), order_presentation(2, 3), order_presentation(1, 4)};
}

// --- p-groups --------------------------------------------------------------------

Signature group_signature() { return Signature({{"Add", 3}}); }

namespace {

std::uint64_t checked_pow(std::uint64_t p, std::size_t n) {
  u128 r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    r *= p;
    if (r > (static_cast<u128>(1) << 62)) throw std::overflow_error("group order too large");
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::vector<std::uint64_t> group_coords(std::uint64_t e, std::size_t n, std::uint64_t p) {
  const std::uint64_t q = checked_pow(p, n);
  std::vector<std::uint64_t> coords{e % q};
  std::uint64_t r = e / q;
  std::size_t digit = 0;
  while (r > 0) {
    const std::size_t c = 1 + digit / n;
    const std::size_t layer = digit % n;
    if (coords.size() <= c) coords.resize(c + 1, 0);
    coords[c] += (r % p) * checked_pow(p, n - 1 - layer);
    r /= p;
    ++digit;
  }
  return coords;
}

std::uint64_t group_element(const std::vector<std::uint64_t>& coords, std::size_t n, std::uint64_t p) {
  const std::uint64_t q = checked_pow(p, n);
  if (coords.empty()) return 0;
  std::uint64_t r = 0, weight = 1;
  for (std::size_t c = 1; c < coords.size(); ++c) {
    for (std::size_t layer = 0; layer < n; ++layer) {
      const std::uint64_t d = (coords[c] / checked_pow(p, n - 1 - layer)) % p;
      r += d * weight;
      weight *= p;
    }
  }
  return coords[0] % q + q * r;
}

PresentationPtr pgroup(std::size_t i, std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  const std::size_t n = i + 1;
  const std::uint64_t q = checked_pow(p, n);
  auto size = [n, p](std::size_t s) -> std::size_t {
    if (s == 0) return 1;
    return static_cast<std::size_t>(checked_pow(p, n + static_cast<std::size_t>(std::bit_width(s) - 1)));
  };
  auto elem_stage = [q, p](Element e) -> std::size_t {
    if (e == 0) return 0;
    std::size_t digits = 0;
    for (Element r = e / q; r > 0; r /= p) ++digits;
    return std::size_t{1} << digits;
  };
  auto add = [n, p, q](std::size_t, std::span<const Element> t) {
    auto x = group_coords(t[0], n, p);
    auto y = group_coords(t[1], n, p);
    if (x.size() < y.size()) x.resize(y.size(), 0);
    for (std::size_t c = 0; c < y.size(); ++c) x[c] = (x[c] + y[c]) % q;
    while (x.size() > 1 && x.back() == 0) x.pop_back();
    return group_element(x, n, p) == t[2];
  };
  return std::make_shared<SegmentPresentation>(
      group_signature(),
      FamilyDescriptor{"pgroups", i, "sum Z(" + std::to_string(p) + "^" + std::to_string(n) + ")"}, size,
      elem_stage, add);
}

std::vector<PresentationPtr> pgroup_family(std::size_t members, std::uint64_t p) {
  std::vector<PresentationPtr> out;
  for (std::size_t i = 0; i < members; ++i) out.push_back(pgroup(i, p));
  return out;
}

// --- lattices B_i ------------------------------------------------------------------

PresentationPtr lattice_b(std::size_t i) {
  std::vector<int> levels = lattice_levels(i);
  const int top = *std::max_element(levels.begin(), levels.end());
  auto level_of = [levels, top](Element e) -> long long {
    return e < kLatticeSize ? levels[e] : static_cast<long long>(top) + 1 + static_cast<long long>(e - kLatticeSize);
  };
  // Join(x,y,z): z = x v y.  Elements on one level are pairwise incomparable
  // only inside a square, whose join/meet are the unique elements one level up/down.
  auto bound = [levels, level_of](Element x, Element y, bool join) -> Element {
    if (x == y) return x;
    const long long lx = level_of(x), ly = level_of(y);
    if (lx != ly) return (lx < ly) == join ? y : x;
    const long long target = join ? lx + 1 : lx - 1;
    for (Element e = 0; e < kLatticeSize; ++e)
      if (levels[e] == target) return e;
    throw std::logic_error("malformed lattice levels");
  };
  auto truth = [bound](std::size_t pred, std::span<const Element> t) { return bound(t[0], t[1], pred == 0) == t[2]; };
  return std::make_shared<SegmentPresentation>(
      lattice_signature(), FamilyDescriptor{"lattices", i, "D" + std::to_string(i) + "+omega"},
      [](std::size_t s) { return kLatticeSize + s; },
      [](Element e) { return e < kLatticeSize ? std::size_t{0} : static_cast<std::size_t>(e - kLatticeSize + 1); },
      truth);
}

std::vector<PresentationPtr> lattice_family() {
  std::vector<PresentationPtr> out;
  for (std::size_t i = 0; i < kLatticeMembers; ++i) out.push_back(lattice_b(i));
  return out;
}

// --- Boolean algebras -------------------------------------------------------------

FamilyDescriptor ba_descriptor(std::optional<std::uint64_t> atoms) {
  return {"boolean-algebras", 0, atoms ? "atoms=" + std::to_string(*atoms) : "atoms=inf"};
}

// --- enumerations ----------------------------------------------------------------

Enumeration::Enumeration(std::string name, IndexFn fn, std::optional<Code> size, bool decidable, bool friedberg)
    : name_(std::move(name)), fn_(std::move(fn)), size_(size), decidable_(decidable), friedberg_(friedberg) {}

PresentationPtr Enumeration::operator()(Code e) const {
  if (!has(e)) throw std::out_of_range("index " + std::to_string(e) + " is outside enumeration " + name_);
  return fn_(e);
}

Enumeration combine(const Enumeration& nu, const Enumeration& mu) {
  std::optional<Code> size;
  if (nu.size() && mu.size()) size = std::min(2 * *nu.size(), 2 * *mu.size() + 1);
  auto fn = [nu, mu](Code e) { return e % 2 == 0 ? nu(e / 2) : mu(e / 2); };
  // Finite enumerations of unequal length leave holes past the shorter one;
  // the size above covers only the gap-free part.
  return Enumeration(nu.name() + "+" + mu.name(), fn, size, nu.decidable() && mu.decidable(), false);
}

bool index_set_member(const Enumeration& nu, const FamilyDescriptor& target, Code e) {
  if (!nu.decidable()) throw std::logic_error("index set not decidable at descriptor level");
  if (!nu.has(e)) return false;
  return nu(e)->descriptor() == target;
}

Enumeration list_enumeration(std::string name, std::vector<PresentationPtr> members) {
  bool distinct = true;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (members[i]->descriptor() == members[j]->descriptor()) distinct = false;
  const Code n = members.size();
  return Enumeration(std::move(name), [members](Code e) { return members[e]; }, n, true, distinct);
}

Enumeration honest_cycle_enumeration() {
  return Enumeration(
      "cycles-honest", [](Code e) { return e == 0 ? singleton_graph() : cycle_graph(e); }, std::nullopt, true, true);
}

Enumeration paired_cycle_enumeration() {
  return Enumeration(
      "cycles-paired",
      [](Code e) {
        auto [i, k] = unpair(e);
        (void)k;
        return i == 0 ? singleton_graph() : cycle_graph(i);
      },
      std::nullopt, true, false);
}

// --- embedding oracle ---------------------------------------------------------------

namespace {

struct EmbedSearch {
  const FiniteStructure& a;
  const FiniteStructure& b;
  std::vector<Element> image;
  std::vector<bool> used;

  bool consistent(std::size_t depth) {
    // check every tuple over a[0..depth] that mentions position depth
    const auto& sig = a.signature();
    const auto& da = a.domain();
    Tuple ta, tb;
    for (std::size_t j = 0; j < sig.size(); ++j) {
      const std::size_t k = sig[j].arity;
      std::vector<std::size_t> idx(k, 0);
      ta.assign(k, 0);
      tb.assign(k, 0);
      bool more = true;
      while (more) {
        bool hits = false;
        for (std::size_t q = 0; q < k; ++q) {
          hits = hits || idx[q] == depth;
          ta[q] = da[idx[q]];
          tb[q] = image[idx[q]];
        }
        if (hits && a.holds_unchecked(j, ta) != b.holds_unchecked(j, tb)) return false;
        more = false;
        for (std::size_t q = k; q-- > 0;) {
          if (++idx[q] <= depth) {
            more = true;
            break;
          }
          idx[q] = 0;
        }
      }
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == a.size()) return true;
    const auto& db = b.domain();
    for (std::size_t c = 0; c < db.size(); ++c) {
      if (used[c]) continue;
      used[c] = true;
      image[depth] = db[c];
      if (consistent(depth) && extend(depth + 1)) return true;
      used[c] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<Element>> find_embedding(const FiniteStructure& a, const FiniteStructure& b) {
  if (!(a.signature() == b.signature())) throw SignatureMismatch("embedding_oracle: signatures differ");
  if (a.size() > kEmbeddingLimit)
    throw std::length_error("embedding_oracle: source has " + std::to_string(a.size()) + " elements, limit is " +
                            std::to_string(kEmbeddingLimit));
  if (a.size() > b.size()) return std::nullopt;
  EmbedSearch s{a, b, std::vector<Element>(a.size()), std::vector<bool>(b.size(), false)};
  if (!s.extend(0)) return std::nullopt;
  return s.image;
}

bool embedding_oracle(const FiniteStructure& a, const FiniteStructure& b) { return find_embedding(a, b).has_value(); }

}  // namespace inflearn
