#include <map>
#include <numeric>
#include <random>

#include "doctest.h"
#include "inflearn/catalog.hpp"
#include "oracles.hpp"

using namespace inflearn;

namespace {

std::vector<PresentationPtr> every_member() {
  std::vector<PresentationPtr> all = {cycle_graph(1),           cycle_graph(2),         cycle_graph(3),
                                      singleton_graph(),        singletons_plus_cycle(3), triangle_with_pendant(),
                                      path_plus_triangle(),     order_presentation(0, 0), order_presentation(2, 0)};
  for (const auto& f : {four_orders(), lattice_family(), pgroup_family(4, 2), pgroup_family(2, 3)})
    all.insert(all.end(), f.begin(), f.end());
  return all;
}

std::size_t components(const FiniteStructure& g) {
  std::map<Element, Element> parent;
  for (Element e : g.domain()) parent[e] = e;
  std::function<Element(Element)> find = [&](Element x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& t : g.true_tuples(0)) parent[find(t[0])] = find(t[1]);
  std::size_t n = 0;
  for (Element e : g.domain()) n += find(e) == e;
  return n;
}

bool is_chain(const FiniteStructure& o) {
  const auto& d = o.domain();
  for (Element x : d)
    for (Element y : d) {
      const bool xy = o.holds(0, Tuple{x, y}), yx = o.holds(0, Tuple{y, x});
      if (x == y ? !xy : xy == yx) return false;
      for (Element z : d)
        if (xy && o.holds(0, Tuple{y, z}) && !o.holds(0, Tuple{x, z})) return false;
    }
  return true;
}

/// x + y read off the Add table.
Element add(const FiniteStructure& g, Element x, Element y) {
  for (Element z : g.domain())
    if (g.holds(0, Tuple{x, y, z})) return z;
  throw std::logic_error("Add is not total on the stage");
}

FiniteStructure chain(std::size_t n) {
  std::vector<int> levels(n);
  std::iota(levels.begin(), levels.end(), 0);
  return lattice_from_levels(levels);
}

bool brute_isomorphic(const FiniteStructure& a, const FiniteStructure& b) {
  return a.size() == b.size() && testing::brute_embeds(a, b);
}

}  // namespace

TEST_CASE("stage examples") {
  const FiniteStructure g2 = cycle_graph(2)->stage(2);
  CHECK(g2.size() == 6);
  CHECK(components(g2) == 2);
  CHECK(g2.count_true(0) == 6);
  const FiniteStructure o = order_presentation(3, 2)->stage(1);
  CHECK(o.size() == 6);
  CHECK(is_chain(o));
  // 1/2 sits strictly between the last left endpoint and the first right one.
  CHECK(o.holds(0, Tuple{2, 5}));
  CHECK(o.holds(0, Tuple{5, 4}));
  CHECK(o.holds(0, Tuple{5, 3}));
}

TEST_CASE("every presentation is a monotone chain covering the naturals") {
  for (const auto& p : every_member()) {
    CAPTURE(p->name());
    const std::size_t top = p->signature()[0].arity == 3 ? 6 : 30;
    FiniteStructure prev = p->stage(0);
    for (std::size_t s = 1; s <= top; ++s) {
      const FiniteStructure cur = p->stage(s);
      REQUIRE(is_substructure(prev, cur));
      prev = cur;
    }
    for (Element e = 0; e < 50; ++e) {
      const std::size_t s = p->elem_stage(e);
      if (s > top) continue;
      const FiniteStructure st = p->stage(s);
      CHECK(st.contains(e));
      if (s > 0) CHECK_FALSE(p->stage(s - 1).contains(e));
    }
  }
}

TEST_CASE("limit truth agrees with a covering stage") {
  std::mt19937_64 rng(11);
  for (const auto& p : every_member()) {
    const auto& sig = p->signature();
    for (int r = 0; r < 60; ++r) {
      const std::size_t j = rng() % sig.size();
      Tuple t(sig[j].arity);
      for (auto& x : t) x = rng() % 24;
      std::size_t s = 0;
      for (Element x : t) s = std::max(s, p->elem_stage(x));
      if (s > 40) continue;
      CHECK(p->truth(j, t) == p->stage(s).holds(j, t));
    }
  }
}

TEST_CASE("group stages are closed under Add and have exponent p^(i+1)") {
  for (std::uint64_t p : {2u, 3u})
    for (std::size_t i = 0; i < (p == 2 ? 4u : 2u); ++i) {
      const auto g = pgroup(i, p);
      std::uint64_t q = 1;
      for (std::size_t k = 0; k <= i; ++k) q *= p;
      for (std::size_t s = 1; s <= 4; ++s) {
        const FiniteStructure st = g->stage(s);
        bool has_full_order = false;
        for (Element x : st.domain()) {
          for (Element y : st.domain()) CHECK(st.contains(add(st, x, y)));
          Element acc = 0;
          std::size_t order = 0;
          do {
            acc = add(st, acc, x);
            ++order;
          } while (acc != 0);
          CHECK(q % order == 0);
          has_full_order |= order == q;
        }
        CHECK(has_full_order);
      }
    }
}

TEST_CASE("group coordinates round-trip") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::uint64_t e = 0; e < 300; ++e) CHECK(group_element(group_coords(e, n, 2), n, 2) == e);
}

TEST_CASE("embedding oracle matches brute force on small structures") {
  std::mt19937_64 rng(5);
  for (int r = 0; r < 200; ++r) {
    const std::size_t na = 1 + rng() % 4, nb = na + rng() % 3;
    std::vector<Element> da(na), db(nb);
    std::iota(da.begin(), da.end(), 0);
    std::iota(db.begin(), db.end(), 10);
    FiniteStructure a(graph_signature(), da), b(graph_signature(), db);
    testing::for_each_tuple(da, 2, [&](const Tuple& t) {
      if (rng() % 3 == 0) a.set_true(0, t);
    });
    testing::for_each_tuple(db, 2, [&](const Tuple& t) {
      if (rng() % 3 == 0) b.set_true(0, t);
    });
    const bool expect = testing::brute_embeds(a, b);
    CHECK(embedding_oracle(a, b) == expect);
    const auto f = find_embedding(a, b);
    CHECK(f.has_value() == expect);
    if (f) {
      for (std::size_t x = 0; x < na; ++x)
        for (std::size_t y = 0; y < na; ++y)
          CHECK(a.holds(0, Tuple{da[x], da[y]}) == b.holds(0, Tuple{(*f)[x], (*f)[y]}));
    }
  }
}

TEST_CASE("embedding oracle examples") {
  for (std::size_t i = 0; i < kLatticeMembers; ++i) {
    const FiniteStructure d = lattice_d(i);
    CHECK(embedding_oracle(d, d));
    CHECK(embedding_oracle(chain(2), d));
  }
  CHECK_FALSE(embedding_oracle(lattice_d(0), lattice_d(1)));
  CHECK_FALSE(embedding_oracle(lattice_d(1), lattice_d(0)));
  CHECK_THROWS_AS(embedding_oracle(chain(13), chain(13)), std::length_error);
}

TEST_CASE("lattice family gate") {
  for (std::size_t i = 0; i < kLatticeMembers; ++i) {
    const FiniteStructure d = lattice_d(i);
    CHECK(d.size() == kLatticeSize);
    CHECK(is_lattice_structure(d));
    CHECK(is_distributive(d));
    for (std::size_t j = 0; j < kLatticeMembers; ++j)
      if (i != j) CHECK_FALSE(embedding_oracle(d, lattice_d(j)));
  }
}

TEST_CASE("distributivity check") {
  CHECK(is_distributive(chain(4)));
  CHECK_FALSE(is_distributive(lattice_from_levels({0, 1, 1, 1, 2})));  // M3
  CHECK(is_distributive(lattice_from_levels({0, 1, 1, 2})));
  CHECK(is_lattice_structure(lattice_from_levels({0, 1, 1, 1, 2})));
}

TEST_CASE("descriptors identify isomorphism types") {
  const auto members = every_member();
  for (const auto& a : members)
    for (const auto& b : members) {
      const bool same = a->descriptor() == b->descriptor();
      if (same) CHECK(a->name() == b->name());
      // Isomorphic members must have isomorphic stages on small domains.
      const FiniteStructure sa = a->stage(2), sb = b->stage(2);
      if (same && sa.size() <= 10 && sb.size() <= 10) CHECK(brute_isomorphic(sa, sb));
    }
  CHECK(cycle_graph(2)->descriptor() == cycle_graph(2)->descriptor());
  CHECK_FALSE(cycle_graph(2)->descriptor() == cycle_graph(1)->descriptor());
  CHECK_FALSE(four_orders()[0]->descriptor() == four_orders()[1]->descriptor());
  // Distinct descriptors on small graphs: the stage-3 parts differ up to isomorphism.
  CHECK_FALSE(brute_isomorphic(cycle_graph(1)->stage(3), cycle_graph(2)->stage(2)));
}

TEST_CASE("enumerations, combination and index sets") {
  const Enumeration nu = list_enumeration("orders", four_orders());
  CHECK(nu.friedberg());
  CHECK(nu.size() == Code{4});
  CHECK(index_set_member(nu, four_orders()[0]->descriptor(), 0));
  for (Code e = 1; e < 4; ++e) CHECK_FALSE(index_set_member(nu, four_orders()[0]->descriptor(), e));
  CHECK_THROWS_AS(nu(4), std::out_of_range);

  const Enumeration both = combine(nu, nu);
  CHECK(both(0)->descriptor() == nu(0)->descriptor());
  CHECK(both(1)->descriptor() == nu(0)->descriptor());
  CHECK_FALSE(both.friedberg());
  for (Code i = 0; i < 4; ++i)
    for (Code e = 0; e < 10; ++e)
      CHECK(index_set_member(both, nu(i)->descriptor(), e) == (e == 2 * i || e == 2 * i + 1));

  const Enumeration h = honest_cycle_enumeration();
  CHECK(h.friedberg());
  CHECK(h(0)->descriptor() == singleton_graph()->descriptor());
  for (Code i = 1; i < 10; ++i) CHECK(h(i)->descriptor() == cycle_graph(i)->descriptor());
  const Enumeration mixed = combine(h, h);
  for (Code i = 0; i < 10; ++i)
    for (Code e = 0; e < 20; ++e) CHECK(index_set_member(mixed, h(i)->descriptor(), e) == (e / 2 == i));

  const Enumeration pc = paired_cycle_enumeration();
  CHECK(pc.decidable());
  CHECK_FALSE(pc.friedberg());
  CHECK(pc(pair(2, 0))->descriptor() == cycle_graph(2)->descriptor());
  CHECK(pc(pair(2, 5))->descriptor() == cycle_graph(2)->descriptor());
  CHECK(pc(pair(0, 3))->descriptor() == singleton_graph()->descriptor());

  const Enumeration undecidable("opaque", [](Code) { return singleton_graph(); }, std::nullopt, false, false);
  CHECK_THROWS_AS(index_set_member(undecidable, singleton_graph()->descriptor(), 0), std::logic_error);
}
