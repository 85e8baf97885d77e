#include "inflearn/locking.hpp"

#include <algorithm>
#include <deque>
#include <memory>

namespace inflearn {

std::string to_string(LockingVerdict::Kind k) {
  switch (k) {
    case LockingVerdict::Kind::locking: return "locking-up-to-bound";
    case LockingVerdict::Kind::mind_change: return "mind-change-found";
    case LockingVerdict::Kind::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool describes_part_of(const InformantPrefix& p, const Presentation& pres) {
  if (!(p.signature() == pres.signature())) return false;
  for (const auto& step : p.steps())
    for (std::size_t j = 0; j < step.facts.size(); ++j)
      if (pres.truth(j, step.facts[j].tuple) != step.facts[j].label) return false;
  return true;
}

std::size_t count_mind_changes(const Learner& l, const InformantPrefix& p, std::size_t from) {
  auto s = l.start(p.signature());
  std::size_t changes = 0;
  Conjecture prev = s->conjecture();
  for (std::size_t n = 0; n < p.size(); ++n) {
    s->feed(p.steps()[n]);
    Conjecture c = s->conjecture();
    if (n >= from && c != prev) ++changes;
    prev = c;
  }
  return changes;
}

namespace {

/// Learner state plus what the prefix has decided, advanced together.
struct Cursor {
  std::unique_ptr<LearnerSession> session;
  Knowledge know;
  std::optional<InformantStep> last;

  Cursor(const Learner& l, const Signature& sig) : session(l.start(sig)), know(sig) {}
  Cursor(const Cursor& o) : session(o.session->clone()), know(o.know), last(o.last) {}
  Cursor(Cursor&&) = default;
  Cursor& operator=(Cursor&&) = default;

  void feed(const InformantStep& s) {
    session->feed(s);
    know.add(s);
    last = s;
  }
};

using Unit = std::vector<InformantStep>;

/// Steps deciding every open tuple over `elems`, one fact per predicate per
/// step, padded with restatements.
Unit decide_all(const Cursor& c, const Presentation& pres, const std::vector<Element>& elems) {
  const Signature& sig = pres.signature();
  std::vector<std::vector<Fact>> fresh(sig.size());
  for (std::size_t j = 0; j < sig.size(); ++j) {
    const std::size_t k = sig[j].arity;
    Tuple t(k);
    std::vector<std::size_t> idx(k, 0);
    bool more = !elems.empty();
    std::vector<std::pair<Code, Tuple>> open;
    while (more) {
      for (std::size_t q = 0; q < k; ++q) t[q] = elems[idx[q]];
      if (c.know.decided(j, t) == 0) open.emplace_back(encode_tuple(k, t), t);
      more = false;
      for (std::size_t q = k; q-- > 0;) {
        if (++idx[q] < elems.size()) {
          more = true;
          break;
        }
        idx[q] = 0;
      }
    }
    std::sort(open.begin(), open.end());
    for (auto& [code, tup] : open) fresh[j].push_back({tup, pres.truth(j, tup)});
  }
  std::size_t len = 0;
  for (const auto& f : fresh) len = std::max(len, f.size());
  Unit unit;
  for (std::size_t s = 0; s < len; ++s) {
    InformantStep step;
    for (std::size_t j = 0; j < sig.size(); ++j) {
      if (s < fresh[j].size()) {
        step.facts.push_back(fresh[j][s]);
      } else if (!fresh[j].empty()) {
        step.facts.push_back(fresh[j].back());
      } else if (c.last) {
        step.facts.push_back(c.last->facts[j]);
      } else {
        // nothing to restate yet: state the diagonal fact of the first element
        Tuple t(sig[j].arity, elems.front());
        step.facts.push_back({t, pres.truth(j, t)});
      }
    }
    unit.push_back(std::move(step));
  }
  return unit;
}

std::vector<Unit> units_for(const Cursor& c, const Presentation& pres) {
  std::vector<Unit> out;
  if (c.last) out.push_back({*c.last});
  const auto& men = c.know.mentioned();
  std::vector<Element> base(men.begin(), men.end());
  std::size_t found = 0;
  for (Element e = 0; found < kFreshCandidates; ++e) {
    if (men.count(e)) continue;
    ++found;
    std::vector<Element> elems = base;
    elems.insert(std::upper_bound(elems.begin(), elems.end(), e), e);
    Unit u = decide_all(c, pres, elems);
    if (!u.empty()) out.push_back(std::move(u));
  }
  if (!base.empty()) {
    Unit u = decide_all(c, pres, base);
    if (!u.empty()) out.push_back(std::move(u));
  }
  return out;
}

struct Found {
  std::vector<InformantStep> steps;
  Cursor cursor;
};

struct ProbeResult {
  std::optional<Found> found;
  bool exhausted = false;
  std::size_t probes = 0;
};

ProbeResult probe_from(const Cursor& root, const Presentation& pres, std::size_t depth, std::size_t budget) {
  ProbeResult r;
  const Conjecture target = root.session->conjecture();
  struct Node {
    Cursor cursor;
    std::vector<InformantStep> steps;
    std::size_t depth;
  };
  std::deque<Node> queue;
  queue.push_back({root, {}, 0});
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (node.depth == depth) continue;
    for (Unit& u : units_for(node.cursor, pres)) {
      if (r.probes >= budget) return r;
      ++r.probes;
      Node child{node.cursor, node.steps, node.depth + 1};
      for (auto& s : u) {
        child.cursor.feed(s);
        child.steps.push_back(std::move(s));
      }
      if (child.cursor.session->conjecture() != target) {
        r.found = Found{std::move(child.steps), std::move(child.cursor)};
        return r;
      }
      queue.push_back(std::move(child));
    }
  }
  r.exhausted = true;
  return r;
}

Cursor cursor_for(const Learner& l, const InformantPrefix& p) {
  Cursor c(l, p.signature());
  for (const auto& s : p.steps()) c.feed(s);
  return c;
}

void check_base(const InformantPrefix& base, const Presentation& pres) {
  if (!(base.signature() == pres.signature()))
    throw std::invalid_argument("base prefix signature differs from the presentation's");
  if (!describes_part_of(base, pres)) throw std::invalid_argument("base prefix contradicts the presentation");
}

}  // namespace

ExtensionProbe probe_extensions(const Learner& l, const Presentation& pres, const InformantPrefix& sigma,
                                std::size_t depth, std::size_t budget) {
  check_base(sigma, pres);
  ProbeResult r = probe_from(cursor_for(l, sigma), pres, depth, budget);
  ExtensionProbe out;
  out.probes = r.probes;
  out.exhausted = r.exhausted;
  if (r.found) {
    InformantPrefix w = sigma;
    for (auto& s : r.found->steps) w.push(s);
    out.witness = std::move(w);
  }
  return out;
}

LockingVerdict find_weak_locking(const Learner& l, const Presentation& pres, const InformantPrefix& base,
                                 std::size_t depth, std::size_t budget) {
  check_base(base, pres);
  LockingVerdict v;
  v.sigma = base;
  Cursor cur = cursor_for(l, base);
  while (true) {
    ProbeResult r = probe_from(cur, pres, depth, budget - v.probes);
    v.probes += r.probes;
    if (r.found) {
      InformantPrefix tau = v.sigma;
      for (auto& s : r.found->steps) tau.push(s);
      v.witness = tau;
      ++v.moves;
      if (v.probes >= budget) {
        v.kind = LockingVerdict::Kind::mind_change;
        return v;
      }
      v.sigma = std::move(tau);
      cur = std::move(r.found->cursor);
      continue;
    }
    if (r.exhausted) {
      v.kind = LockingVerdict::Kind::locking;
      v.witness.reset();
      return v;
    }
    v.kind = v.moves > 0 ? LockingVerdict::Kind::mind_change : LockingVerdict::Kind::inconclusive;
    return v;
  }
}

AdversaryResult adversary(const Learner& l, const Presentation& pres, std::size_t target_changes, std::size_t budget,
                          std::size_t depth, std::optional<InformantPrefix> base) {
  AdversaryResult res;
  res.prefix = base ? *base : InformantPrefix(pres.signature());
  check_base(res.prefix, pres);
  res.base_length = res.prefix.size();
  Cursor cur = cursor_for(l, res.prefix);
  auto canonical = canonical_source(std::shared_ptr<const Presentation>(&pres, [](const Presentation*) {}));
  std::size_t next_canonical = 0;

  auto append = [&](const InformantStep& s) {
    Conjecture before = cur.session->conjecture();
    cur.feed(s);
    res.prefix.push(s);
    if (cur.session->conjecture() != before) ++res.mind_changes;
  };

  while (res.mind_changes < target_changes && res.probes < budget) {
    ProbeResult r = probe_from(cur, pres, depth, budget - res.probes);
    res.probes += r.probes;
    if (r.found) {
      for (const auto& s : r.found->steps) append(s);
      if (res.mind_changes >= target_changes) break;
    } else if (!r.exhausted) {
      break;
    }
    append(canonical->step(next_canonical++));
  }
  res.success = res.mind_changes >= target_changes;
  return res;
}

bool LockingSummary::all_pass() const {
  return std::all_of(sources.begin(), sources.end(), [](const PerSource& s) { return s.n.has_value(); });
}

LockingSummary is_locking_up_to(const Learner& l, PresentationPtr pres, std::size_t n_informants, std::size_t horizon,
                                std::size_t depth, std::uint64_t first_seed, std::size_t budget) {
  LockingSummary out;
  for (std::size_t k = 0; k < n_informants; ++k) {
    const std::uint64_t seed = first_seed + k;
    auto src = shuffled_source(pres, seed);
    LearningRecord rec = run(l, *src, horizon);
    LockingSummary::PerSource ps{seed, std::nullopt};
    Cursor cur(l, pres->signature());
    for (std::size_t n = 0; n < rec.convergence_point; ++n) cur.feed(src->step(n));
    for (std::size_t n = rec.convergence_point; n <= horizon; ++n) {
      ProbeResult r = probe_from(cur, *pres, depth, budget);
      if (!r.found && r.exhausted) {
        ps.n = n;
        break;
      }
      if (n < horizon) cur.feed(src->step(n));
    }
    out.sources.push_back(ps);
  }
  return out;
}

}  // namespace inflearn
