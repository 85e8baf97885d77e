#include "inflearn/tc_embedding.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace inflearn {

std::optional<std::size_t> IndexOracle::lookup(const Conjecture& c) const {
  if (!c.is_index()) return std::nullopt;
  auto it = table_.find(c.index());
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::size_t IndexOracle::max_target() const {
  std::size_t m = 0;
  for (const auto& [k, v] : table_) m = std::max(m, v);
  return m;
}

Signature st_signature(std::size_t n_predicates) {
  std::vector<Predicate> ps{{"Le", 2}};
  for (std::size_t j = 0; j < n_predicates; ++j) ps.push_back({"P" + std::to_string(j), 1});
  return Signature(std::move(ps));
}

namespace {

std::vector<Element> ids_of(const StApprox& a) {
  std::vector<Element> ids;
  for (const auto& p : a.preds)
    for (const auto& pt : p.points) ids.push_back(pt.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

FiniteStructure build(const StApprox& a, bool with_unary) {
  Signature sig = with_unary ? st_signature(a.preds.size()) : Signature({{"Le", 2}});
  FiniteStructure s(sig, ids_of(a));
  for (std::size_t j = 0; j < a.preds.size(); ++j) {
    const auto& pts = a.preds[j].points;
    for (std::size_t x = 0; x < pts.size(); ++x) {
      if (with_unary) s.set_true(1 + j, std::vector<Element>{pts[x].id});
      for (std::size_t y = x; y < pts.size(); ++y) s.set_true(0, std::vector<Element>{pts[x].id, pts[y].id});
    }
  }
  return s;
}

void insert_point(StPredicate& p, StPoint pt) {
  auto it = std::lower_bound(p.points.begin(), p.points.end(), pt.value,
                             [](const StPoint& a, std::int64_t v) { return a.value < v; });
  p.points.insert(it, pt);
}

void densify(StPredicate& p, Element& next_id) {
  insert_point(p, {next_id++, p.points.back().value + kPointScale});
  std::size_t widest = 0;
  std::int64_t gap = 0;
  for (std::size_t k = 0; k + 1 < p.points.size(); ++k) {
    std::int64_t g = p.points[k + 1].value - p.points[k].value;
    if (g > gap) {
      gap = g;
      widest = k;
    }
  }
  if (gap >= 2) insert_point(p, {next_id++, p.points[widest].value + gap / 2});
}

}  // namespace

FiniteStructure StApprox::structure() const { return build(*this, true); }
FiniteStructure StApprox::order_reduct() const { return build(*this, false); }

std::vector<StApprox> embed_run(const Learner& l, const InformantSource& src, const IndexOracle& oracle,
                                std::size_t stages, std::size_t n_predicates) {
  if (n_predicates == 0) throw std::invalid_argument("need at least one predicate");
  if (stages == 0) throw std::invalid_argument("need at least one stage");
  if (!oracle.table().empty() && oracle.max_target() >= n_predicates)
    throw std::invalid_argument("oracle names predicate " + std::to_string(oracle.max_target()) + " but only " +
                                std::to_string(n_predicates) + " are tracked");

  std::vector<StApprox> run;
  Element next_id = 0;
  StApprox cur;
  cur.preds.resize(n_predicates);
  for (auto& p : cur.preds) p.points.push_back({next_id++, kPointScale});
  auto session = l.start(src.signature());
  cur.conjecture = session->conjecture();
  run.push_back(cur);

  for (std::size_t s = 0; s < stages; ++s) {
    session->feed(src.step(s));
    const Conjecture t = session->conjecture();
    const std::optional<std::size_t> target = oracle.lookup(t);
    const std::int64_t anchor = -static_cast<std::int64_t>(s + 1) * kPointScale;
    for (std::size_t j = 0; j < n_predicates; ++j) {
      StPredicate& p = cur.preds[j];
      if (target == j) {
        if (!p.least) {
          insert_point(p, {next_id++, anchor});
          p.least = true;
        }
      } else {
        insert_point(p, {next_id++, anchor + kPointScale / 2});
        p.least = false;
      }
      densify(p, next_id);
    }
    cur.stage = s + 1;
    cur.conjecture = t;
    run.push_back(cur);
  }
  return run;
}

std::optional<std::size_t> limit_shape(const std::vector<StApprox>& run) {
  if (run.empty()) throw std::invalid_argument("empty run");
  const std::size_t window = std::max<std::size_t>(1, run.size() / 4);
  const std::size_t first = run.size() - window;
  const StApprox& last = run.back();
  std::optional<std::size_t> found;
  for (std::size_t j = 0; j < last.preds.size(); ++j) {
    const Element least_id = last.preds[j].points.front().id;
    bool stable = true;
    for (std::size_t s = first; s < run.size() && stable; ++s) {
      const StPredicate& p = run[s].preds[j];
      stable = p.least && p.points.front().id == least_id;
    }
    if (!stable) continue;
    if (found) throw std::logic_error("predicates " + std::to_string(*found) + " and " + std::to_string(j) +
                                      " both keep a least element");
    found = j;
  }
  return found;
}

Sigma2Sentence xi_sentence(std::size_t i) {
  const std::string p = "P" + std::to_string(i);
  return parse_sentence("exists x { forall y : " + p + "(y) -> x <= y }");
}

bool xi_holds(const std::vector<StApprox>& run, std::size_t i) {
  if (run.size() < 2) throw std::invalid_argument("xi needs two stages");
  const StApprox& last = run.back();
  if (i >= last.preds.size()) throw std::out_of_range("no predicate P" + std::to_string(i));
  CompiledSentence xi(xi_sentence(i), st_signature(last.preds.size()));
  return xi.exists_compatible_over(last.structure(), ids_of(run[run.size() - 2]));
}

}  // namespace inflearn
