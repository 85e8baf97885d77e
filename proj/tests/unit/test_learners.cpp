#include <random>

#include "doctest.h"
#include "inflearn/learners.hpp"
#include "oracles.hpp"

using namespace inflearn;

namespace {

const char* kEndpointFamily = R"(
sentence least = 7 : exists x { forall y : x <= y }
sentence greatest = 8 : exists x { forall y : y <= x }
sentence gap = 9 : exists x0 x1 { : x0 < x1 ; forall y : !(x0 < y & y < x1) }
)";

/// Least pair <i, code(a)> by a plain scan over pair codes.
Conjecture least_pair_oracle(const std::vector<FamilyEntry>& fam, const FiniteStructure& a, Code scan) {
  for (Code n = 0; n < scan; ++n) {
    const auto [i, k] = unpair(n);
    if (i >= fam.size()) continue;
    if (testing::brute_compatible(fam[i].sentence, a, decode_tuple(fam[i].sentence.arity(), k))) return fam[i].nu_index;
  }
  return 0;
}

Conjecture final_on(const Learner& l, PresentationPtr p, std::size_t horizon, std::uint64_t seed = 0) {
  const SourcePtr src = seed ? shuffled_source(p, seed) : canonical_source(p);
  return run(l, *src, horizon).final();
}

}  // namespace

TEST_CASE("learning records") {
  const LearningRecord r = make_record({Conjecture::unknown(), 1, 1, 2, 2, 2});
  CHECK(r.convergence_point == 3);
  CHECK(r.mind_changes == 2);
  CHECK(r.final() == Conjecture(2));
  CHECK(r.horizon() == 5);
  CHECK(r.stable_for() == 3);
  CHECK(make_record({4}).convergence_point == 0);
  CHECK_THROWS(make_record({}));
  CHECK(Conjecture::unknown().to_string() == "?");
  CHECK(Conjecture(12).to_string() == "12");
}

TEST_CASE("constant and parity learners") {
  const auto src = canonical_source(cycle_graph(1));
  const LearningRecord c = run(*constant_learner(5), *src, 50);
  CHECK(c.convergence_point == 0);
  CHECK(c.mind_changes == 0);
  const LearningRecord p = run(*parity_learner(), *src, 50);
  CHECK(p.mind_changes == 50);
  const LearningRecord big = run(*largest_element_learner(), *src, 50);
  CHECK(big.sequence[0] == Conjecture::unknown());
  CHECK(big.final() == Conjecture(7));
  CHECK_THROWS(run(*parity_learner(), *src, 0));
}

TEST_CASE("two-graph learner") {
  const auto l = two_graph_learner();
  CHECK(l->conjecture(InformantPrefix(graph_signature())) == Conjecture::unknown());
  CHECK(final_on(*l, cycle_graph(1), 500) == Conjecture(1));
  CHECK(final_on(*l, cycle_graph(2), 500) == Conjecture(2));
  // Once a triangle is seen the answer never moves.
  const LearningRecord r = run(*l, *shuffled_source(cycle_graph(2), 4), 500);
  std::size_t first = 0;
  while (r.sequence[first] != Conjecture(2)) ++first;
  for (std::size_t n = first; n < r.sequence.size(); ++n) CHECK(r.sequence[n] == Conjecture(2));
  for (std::size_t n = 0; n < first; ++n) CHECK(r.sequence[n] == Conjecture::unknown());
  // A 2-cycle outside the class still yields 1.
  CHECK(final_on(*l, singletons_plus_cycle(2), 500) == Conjecture(1));
}

TEST_CASE("honest cycle learner") {
  const auto l = honest_cycle_learner();
  CHECK(final_on(*l, cycle_graph(3), 800) == Conjecture(3));
  const LearningRecord acyclic = run(*l, *canonical_source(singleton_graph()), 800);
  for (const auto& c : acyclic.sequence) CHECK(c == Conjecture::unknown());
  CHECK(final_on(*l, path_plus_triangle(), 800) == Conjecture(2));
}

TEST_CASE("index cycle learner") {
  const auto l = index_cycle_learner();
  const Enumeration nu = paired_cycle_enumeration();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Conjecture g2 = final_on(*l, cycle_graph(2), 2000, seed);
    CHECK(g2 == Conjecture(pair(2, 0)));
    CHECK(conjecture_correct(g2, nu, cycle_graph(2)->descriptor()));
    CHECK(final_on(*l, singletons_plus_cycle(3), 2000, seed) == Conjecture(pair(2, 0)));
    CHECK(final_on(*l, triangle_with_pendant(), 2000, seed) == Conjecture(0));
  }
}

TEST_CASE("first cycle length") {
  CHECK(first_cycle_length(cycle_graph(2)->stage(3)) == 3u);
  CHECK(first_cycle_length(singleton_graph()->stage(5)) == std::nullopt);
  FiniteStructure loop(graph_signature(), {0, 1});
  loop.set_true(0, Tuple{0, 0});
  CHECK(first_cycle_length(loop) == std::nullopt);
  loop.set_true(0, Tuple{0, 1});
  loop.set_true(0, Tuple{1, 0});
  CHECK(first_cycle_length(loop) == 2u);
}

TEST_CASE("sigma2 learner outputs the least compatible pair") {
  const auto fam = parse_sentence_family(kEndpointFamily);
  const auto l = sigma2_learner(fam, order_signature());
  CHECK(l->conjecture(InformantPrefix(order_signature())) == Conjecture(7));
  std::mt19937_64 rng(12);
  for (int round = 0; round < 12; ++round) {
    const auto pres = order_presentation(rng() % 3, rng() % 3);
    const SourcePtr src = shuffled_source(pres, rng());
    auto session = l->start(order_signature());
    IncrementalExtractor ex(order_signature());
    for (std::size_t n = 0; n < 140; ++n) {
      const InformantStep s = src->step(n);
      session->feed(s);
      ex.feed(s);
      if (n % 7 == 0) {
        CAPTURE(pres->name());
        CAPTURE(n);
        CHECK(session->conjecture() == least_pair_oracle(fam, ex.structure(), 4000));
      }
    }
  }
}

TEST_CASE("sigma2 learner on a refutation prefix and a clone") {
  const auto fam = parse_sentence_family(kEndpointFamily);
  const auto l = sigma2_learner(fam, order_signature());
  // 0+eta+1: no least element; the greatest one wins once 0 is beaten.
  const auto pres = order_presentation(0, 1);
  auto s = l->start(order_signature());
  const SourcePtr src = canonical_source(pres);
  for (std::size_t n = 0; n < 200; ++n) s->feed(src->step(n));
  CHECK(s->conjecture() == Conjecture(8));
  auto copy = s->clone();
  for (std::size_t n = 200; n < 260; ++n) s->feed(src->step(n));
  CHECK(copy->conjecture() == Conjecture(8));
  CHECK(s->conjecture() == Conjecture(8));
  CHECK(sigma2_learner(fam, order_signature())->name() == l->name());
}

TEST_CASE("sigma2 learner falls back to 0 when nothing is compatible") {
  const auto fam = parse_sentence_family("sentence never = 4 : exists x { : x != x }");
  const auto l = sigma2_learner(fam, order_signature());
  CHECK(run(*l, *canonical_source(order_presentation(1, 1)), 30).final() == Conjecture(0));
}
