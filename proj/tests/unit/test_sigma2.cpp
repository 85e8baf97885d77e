#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "inflearn/catalog.hpp"
#include "inflearn/sigma2.hpp"
#include "oracles.hpp"

using namespace inflearn;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path sentences_dir() { return std::filesystem::path(INFLEARN_TEST_DATA_DIR) / "sentences"; }

/// Reflexive chain on 0..n-1 plus P true on the even elements.
FiniteStructure chain(std::size_t n) {
  std::vector<Element> dom(n);
  for (std::size_t i = 0; i < n; ++i) dom[i] = i;
  FiniteStructure s(parse_signature("Le/2 P/1"), dom);
  for (Element x = 0; x < n; ++x) {
    if (x % 2 == 0) s.set_true(1, Tuple{x});
    for (Element y = x; y < n; ++y) s.set_true(0, Tuple{x, y});
  }
  return s;
}

class RandomSentences {
 public:
  explicit RandomSentences(std::uint64_t seed) : rng_(seed) {}

  std::string formula(const std::vector<std::string>& vars, int depth) {
    if (depth == 0 || rng_() % 3 == 0) {
      const auto v = [&] { return vars[rng_() % vars.size()]; };
      switch (rng_() % 8) {
        case 0: return "Le(" + v() + "," + v() + ")";
        case 1: return "P(" + v() + ")";
        case 2: return v() + " = " + v();
        case 3: return v() + " != " + v();
        case 4: return v() + " < " + v();
        case 5: return v() + " <= " + v();
        case 6: return rng_() % 4 ? "P(" + v() + ")" : "true";
        default: return rng_() % 4 ? "Le(" + v() + "," + v() + ")" : "false";
      }
    }
    const std::string a = formula(vars, depth - 1);
    switch (rng_() % 4) {
      case 0: return "!(" + a + ")";
      case 1: return "(" + a + " & " + formula(vars, depth - 1) + ")";
      case 2: return "(" + a + " | " + formula(vars, depth - 1) + ")";
      default: return "(" + a + " -> " + formula(vars, depth - 1) + ")";
    }
  }

  Sigma2Sentence sentence() {
    const std::size_t n = 1 + rng_() % 2;
    std::vector<std::string> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back("x" + std::to_string(i));
    std::string text = "exists";
    for (const auto& x : xs) text += " " + x;
    text += " {";
    const std::size_t k = 1 + rng_() % 3;
    for (std::size_t j = 0; j < k; ++j) {
      auto vars = xs;
      const std::size_t m = rng_() % 3;
      text += j ? " ; " : " ";
      if (m > 0) {
        text += "forall";
        for (std::size_t q = 0; q < m; ++q) {
          text += " y" + std::to_string(q);
          vars.push_back("y" + std::to_string(q));
        }
      }
      text += " : " + formula(vars, 3);
    }
    return parse_sentence(text + " }");
  }

  FiniteStructure structure(std::vector<Element> dom) {
    FiniteStructure s(parse_signature("Le/2 P/1"), dom);
    testing::for_each_tuple(dom, 2, [&](const Tuple& t) {
      if (rng_() % 2) s.set_true(0, t);
    });
    testing::for_each_tuple(dom, 1, [&](const Tuple& t) {
      if (rng_() % 2) s.set_true(1, t);
    });
    return s;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

TEST_CASE("parse examples") {
  const Sigma2Sentence s = parse_sentence("exists x { forall y : !(y < x) }");
  CHECK(s.arity() == 1);
  REQUIRE(s.conjuncts.size() == 1);
  CHECK(s.conjuncts[0].universals.size() == 1);
  CHECK_THROWS_AS(parse_sentence("forall y exists x : Le(x,y)"), ParseError);
  CHECK_THROWS_AS(parse_sentence("exists x { forall y : exists z : Le(x,z) }"), ParseError);
  CHECK_THROWS_AS(parse_sentence("exists x { forall y : Le(x,w) }"), ParseError);
  CHECK_THROWS_AS(parse_sentence("exists x x { : true }"), ParseError);
  try {
    parse_sentence("exists x {\n  : x ? x }");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  const Sigma2Sentence nested = parse_sentence("exists x { forall y : P(x) -> P(y) -> x = y | !P(y) & true }");
  const Formula& m = nested.conjuncts[0].matrix;
  CHECK(m.kind == Formula::Kind::Implies);
  CHECK(m.kids[1].kind == Formula::Kind::Implies);
  CHECK(m.kids[1].kids[1].kind == Formula::Kind::Or);
}

TEST_CASE("catalog sentences reparse to equal sentences") {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(sentences_dir())) {
    CAPTURE(entry.path().string());
    const auto fam = parse_sentence_family(slurp(entry.path()));
    CHECK_FALSE(fam.empty());
    for (const auto& e : fam) {
      CHECK(parse_sentence(print_sentence(e.sentence)) == e.sentence);
      ++seen;
    }
    const auto again = parse_sentence_family(print_sentence_family(fam));
    REQUIRE(again.size() == fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
      CHECK(again[i].name == fam[i].name);
      CHECK(again[i].nu_index == fam[i].nu_index);
      CHECK(again[i].sentence == fam[i].sentence);
    }
  }
  CHECK(seen >= 14);
}

TEST_CASE("random sentences round-trip through the printer") {
  RandomSentences gen(17);
  for (int i = 0; i < 500; ++i) {
    const Sigma2Sentence s = gen.sentence();
    CHECK(parse_sentence(print_sentence(s)) == s);
    CHECK(print_sentence(parse_sentence(print_sentence(s))) == print_sentence(s));
  }
}

TEST_CASE("quantifier-free evaluation") {
  const FiniteStructure c = chain(4);
  const auto f = [](const char* text) { return parse_sentence(std::string("exists a b { : ") + text + " }").conjuncts[0].matrix; };
  CHECK(eval_qf(c, f("Le(a,b)"), {{"a", 1}, {"b", 3}}));
  CHECK_FALSE(eval_qf(c, f("a < b"), {{"a", 2}, {"b", 2}}));
  CHECK(eval_qf(c, f("P(a)"), {{"a", 2}, {"b", 0}}));
  CHECK_THROWS_AS(eval_qf(c, f("P(a)"), {{"b", 0}}), std::invalid_argument);
  CHECK_THROWS_AS(eval_qf(c, f("P(a)"), {{"a", 9}, {"b", 0}}), std::out_of_range);
  for (bool x : {false, true})
    for (bool y : {false, true}) {
      const std::map<std::string, Element> asg{{"a", x ? 0u : 1u}, {"b", y ? 2u : 3u}};
      CHECK(eval_qf(c, f("P(a) -> P(b)"), asg) == (!x || y));
    }
  RandomSentences gen(3);
  for (int i = 0; i < 1000; ++i) {
    Formula g = parse_sentence("exists a b { : " + gen.formula({"a", "b"}, 3) + " }").conjuncts[0].matrix;
    const std::map<std::string, Element> asg{{"a", gen.rng()() % 4}, {"b", gen.rng()() % 4}};
    Formula neg;
    neg.kind = Formula::Kind::Not;
    neg.kids = {g};
    CHECK(eval_qf(c, neg, asg) == !eval_qf(c, g, asg));
    CHECK(testing::eval3(c, g, asg) == std::optional<bool>(eval_qf(c, g, asg)));
  }
}

TEST_CASE("compatibility examples") {
  const Sigma2Sentence psi = parse_sentence("exists x { forall y : !(y < x) }");
  const FiniteStructure c = chain(2);
  CHECK(compatible(psi, c, Tuple{0}));
  CHECK_FALSE(compatible(psi, c, Tuple{1}));
  CHECK(compatible(psi, c, Tuple{7}));
  const FiniteStructure empty(parse_signature("Le/2 P/1"), {});
  RandomSentences gen(8);
  for (int i = 0; i < 200; ++i) {
    const Sigma2Sentence s = gen.sentence();
    bool all_universal = true;
    for (const auto& cj : s.conjuncts) all_universal &= !cj.universals.empty();
    if (all_universal) CHECK(compatible(s, empty, Tuple(s.arity(), 5)));
  }
  CHECK_THROWS(compatible(psi, FiniteStructure(parse_signature("Edge/2"), {0}), Tuple{0}));
}

TEST_CASE("compatibility matches the definition on random cases") {
  RandomSentences gen(23);
  for (int i = 0; i < 3000; ++i) {
    const Sigma2Sentence s = gen.sentence();
    std::vector<Element> dom;
    for (Element e = 0; e < 5; ++e)
      if (gen.rng()() % 3) dom.push_back(e);
    const FiniteStructure c = gen.structure(dom);
    Tuple a(s.arity());
    for (auto& x : a) x = gen.rng()() % 6;
    CHECK(compatible(s, c, a) == testing::brute_compatible(s, c, a));
  }
}

TEST_CASE("least_compatible matches a linear scan over codes") {
  RandomSentences gen(29);
  for (int i = 0; i < 600; ++i) {
    const Sigma2Sentence s = gen.sentence();
    std::vector<Element> dom;
    for (Element e = 0; e < 5; ++e)
      if (gen.rng()() % 4) dom.push_back(e);
    const FiniteStructure c = gen.structure(dom);
    const CompiledSentence cs(s, c.signature());
    const Code upto = shell_start(s.arity(), 8) - 1;
    std::optional<Tuple> want;
    for (Code k = 0; k <= upto && !want; ++k) {
      const Tuple t = decode_tuple(s.arity(), k);
      if (testing::brute_compatible(s, c, t)) want = t;
    }
    CAPTURE(print_sentence(s));
    CHECK(cs.least_compatible(c, 0, upto) == want);
    if (want) {
      const Code k = encode_tuple(s.arity(), *want);
      CHECK(cs.least_compatible(c, k, upto) == want);
      if (k > 0) CHECK(cs.least_compatible(c, 0, k - 1) == std::nullopt);
    }
    std::vector<Element> values(dom);
    values.push_back(6);
    bool any = false;
    testing::for_each_tuple(values, s.arity(), [&](const Tuple& t) { any |= testing::brute_compatible(s, c, t); });
    CHECK(cs.exists_compatible_over(c, values) == any);
  }
}

TEST_CASE("compatibility is monotone along extraction chains") {
  RandomSentences gen(31);
  const auto pres = order_presentation(2, 1);
  for (int i = 0; i < 40; ++i) {
    const Sigma2Sentence s = gen.sentence();
    // Rename P to keep the order signature.
    std::string text = print_sentence(s);
    for (std::size_t pos; (pos = text.find("P(")) != std::string::npos;) text.replace(pos, 2, "Le(x0,");
    const Sigma2Sentence t = parse_sentence(text);
    const CompiledSentence cs(t, order_signature());
    const SourcePtr src = shuffled_source(pres, i);
    IncrementalExtractor ex(order_signature());
    std::vector<Tuple> cands;
    for (Code k = 0; k < 60; ++k) cands.push_back(decode_tuple(t.arity(), k));
    std::vector<bool> dead(cands.size(), false);
    for (std::size_t n = 0; n < 150; ++n) {
      ex.feed(src->step(n));
      const FiniteStructure c = ex.structure();
      for (std::size_t q = 0; q < cands.size(); ++q) {
        const bool ok = cs.compatible(c, cands[q]);
        CHECK_FALSE((dead[q] && ok));
        if (!ok) dead[q] = true;
      }
    }
  }
}

TEST_CASE("holds_in_limit") {
  const auto fam = parse_sentence_family(slurp(sentences_dir() / "orders.s2"));
  const Sigma2Sentence& four_first = fam[0].sentence;
  const auto start_only = parse_sentence(
      "exists x0 x1 x2 x3 { forall y : x0 <= y ; forall y : !(x0 < y & y < x1) ;"
      " forall y : !(x1 < y & y < x2) ; forall y : !(x2 < y & y < x3) ; : x0 < x1 ; : x1 < x2 ; : x2 < x3 }");
  CHECK(holds_in_limit(start_only, *order_presentation(4, 1), 12) == LimitVerdict::witnessed);
  CHECK(holds_in_limit(start_only, *order_presentation(3, 2), 12) == LimitVerdict::refuted);
  CHECK(holds_in_limit(four_first, *order_presentation(4, 1), 12) == LimitVerdict::witnessed);
  CHECK(holds_in_limit(four_first, *order_presentation(3, 2), 12) == LimitVerdict::refuted);
  CHECK(holds_in_limit(four_first, *order_presentation(4, 1), 0) == LimitVerdict::pending);
  CHECK(to_string(LimitVerdict::refuted) == "refuted-for-all-small-tuples");
}
