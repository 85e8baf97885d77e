#include "inflearn/learners.hpp"
#include "wide.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

namespace inflearn {

Conjecture Learner::conjecture(const InformantPrefix& p) const {
  auto s = start(p.signature());
  for (const auto& step : p.steps()) s->feed(step);
  return s->conjecture();
}

LearningRecord make_record(std::vector<Conjecture> sequence) {
  if (sequence.empty()) throw std::invalid_argument("learning sequence must not be empty");
  LearningRecord r;
  r.sequence = std::move(sequence);
  for (std::size_t n = 0; n + 1 < r.sequence.size(); ++n)
    if (r.sequence[n + 1] != r.sequence[n]) {
      ++r.mind_changes;
      r.convergence_point = n + 1;
    }
  return r;
}

LearningRecord run(const Learner& l, const InformantSource& src, std::size_t horizon) {
  if (horizon == 0) throw std::invalid_argument("horizon must be at least 1");
  auto s = l.start(src.signature());
  std::vector<Conjecture> seq;
  seq.reserve(horizon + 1);
  seq.push_back(s->conjecture());
  for (std::size_t n = 0; n < horizon; ++n) {
    s->feed(src.step(n));
    seq.push_back(s->conjecture());
  }
  return make_record(std::move(seq));
}

bool conjecture_correct(const Conjecture& c, const Enumeration& nu, const FamilyDescriptor& target) {
  return c.is_index() && nu.has(c.index()) && nu(c.index())->descriptor() == target;
}

// --- graph helpers ---------------------------------------------------------------------

namespace {

struct Digraph {
  std::vector<Element> verts;
  std::map<Element, std::vector<Element>> out;  // loops excluded
  std::map<Element, std::vector<Element>> nbrs;  // undirected, loops excluded
  std::vector<Element> loops;

  explicit Digraph(const FiniteStructure& g) : verts(g.domain()) {
    const std::size_t edge = g.signature().index_of("Edge");
    for (Element v : verts) {
      out[v];
      nbrs[v];
    }
    for (const auto& t : g.true_tuples(edge)) {
      if (t[0] == t[1]) {
        loops.push_back(t[0]);
        continue;
      }
      out[t[0]].push_back(t[1]);
      auto& a = nbrs[t[0]];
      if (std::find(a.begin(), a.end(), t[1]) == a.end()) a.push_back(t[1]);
      auto& b = nbrs[t[1]];
      if (std::find(b.begin(), b.end(), t[0]) == b.end()) b.push_back(t[0]);
    }
  }

  /// Shortest directed cycle (length >= 2) through v using only vertices <= cap.
  std::optional<std::size_t> shortest_cycle_through(Element v, Element cap) const {
    std::map<Element, std::size_t> dist;
    std::deque<Element> q;
    for (Element w : out.at(v))
      if (w <= cap && !dist.count(w)) {
        dist[w] = 1;
        q.push_back(w);
      }
    while (!q.empty()) {
      Element x = q.front();
      q.pop_front();
      if (x == v) return dist[x];
      for (Element w : out.at(x)) {
        if (w > cap || dist.count(w)) continue;
        dist[w] = dist[x] + 1;
        q.push_back(w);
      }
    }
    return std::nullopt;
  }

  /// Whether v lies on a directed cycle of exactly length len within vertices <= v.
  bool has_cycle_of_length(Element v, std::size_t len) const {
    std::vector<Element> path{v};
    return extend(path, len, v);
  }

  bool extend(std::vector<Element>& path, std::size_t len, Element cap) const {
    const Element last = path.back();
    if (path.size() == len) {
      const auto& o = out.at(last);
      return std::find(o.begin(), o.end(), path.front()) != o.end();
    }
    for (Element w : out.at(last)) {
      if (w > cap || std::find(path.begin(), path.end(), w) != path.end()) continue;
      path.push_back(w);
      if (extend(path, len, cap)) return true;
      path.pop_back();
    }
    return false;
  }

  std::size_t largest_component() const {
    std::map<Element, bool> seen;
    std::size_t best = 0;
    for (Element v : verts) {
      if (seen[v]) continue;
      std::size_t size = 0;
      std::vector<Element> stack{v};
      seen[v] = true;
      while (!stack.empty()) {
        Element x = stack.back();
        stack.pop_back();
        ++size;
        for (Element w : nbrs.at(x))
          if (!seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
      }
      best = std::max(best, size);
    }
    return best;
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& [v, ns] : nbrs) d = std::max(d, ns.size());
    return d;
  }

  /// Length of the shortest directed cycle anywhere, loops counting as 1.
  std::optional<std::size_t> girth() const {
    if (!loops.empty()) return 1;
    std::optional<std::size_t> best;
    for (Element v : verts) {
      auto c = shortest_cycle_through(v, std::numeric_limits<Element>::max());
      if (c && (!best || *c < *best)) best = c;
    }
    return best;
  }
};

class ExtractingSession : public LearnerSession {
 public:
  explicit ExtractingSession(const Signature& sig) : ex_(sig) {}
  void feed(const InformantStep& step) override {
    if (ex_.feed(step)) on_domain_change(ex_.structure());
  }

 protected:
  virtual void on_domain_change(const FiniteStructure& a) = 0;
  IncrementalExtractor ex_;
};

class TwoGraphSession : public ExtractingSession {
 public:
  using ExtractingSession::ExtractingSession;
  Conjecture conjecture() const override { return out_; }
  std::unique_ptr<LearnerSession> clone() const override { return std::make_unique<TwoGraphSession>(*this); }

 private:
  void on_domain_change(const FiniteStructure& a) override {
    if (out_.is_index()) return;
    Digraph g(a);
    for (Element v : g.verts) {
      if (g.has_cycle_of_length(v, 2)) {
        out_ = 1;
        return;
      }
      if (g.has_cycle_of_length(v, 3)) {
        out_ = 2;
        return;
      }
    }
  }
  Conjecture out_;
};

class HonestSession : public ExtractingSession {
 public:
  using ExtractingSession::ExtractingSession;
  Conjecture conjecture() const override { return out_; }
  std::unique_ptr<LearnerSession> clone() const override { return std::make_unique<HonestSession>(*this); }

 private:
  void on_domain_change(const FiniteStructure& a) override {
    if (out_.is_index()) return;
    if (auto n = first_cycle_length(a)) out_ = *n - 1;
  }
  Conjecture out_;
};

class IndexSession : public ExtractingSession {
 public:
  using ExtractingSession::ExtractingSession;
  Conjecture conjecture() const override { return out_; }
  std::unique_ptr<LearnerSession> clone() const override { return std::make_unique<IndexSession>(*this); }

 private:
  void on_domain_change(const FiniteStructure& a) override {
    if (dead_) return;
    if (!n_) {
      n_ = first_cycle_length(a);
      if (!n_) return;
      out_ = pair(*n_ - 1, 0);
    }
    Digraph g(a);
    auto girth = g.girth();
    if (g.largest_component() >= *n_ + 1 || g.max_degree() >= 3 || (girth && *girth <= *n_ - 1)) {
      dead_ = true;
      out_ = 0;
    }
  }
  std::optional<std::size_t> n_;
  bool dead_ = false;
  Conjecture out_;
};

template <class S>
class SimpleLearner : public Learner {
 public:
  explicit SimpleLearner(std::string name) : name_(std::move(name)) {}
  std::string name() const override { return name_; }
  std::unique_ptr<LearnerSession> start(const Signature& sig) const override { return std::make_unique<S>(sig); }

 private:
  std::string name_;
};

class ConstantSession : public LearnerSession {
 public:
  explicit ConstantSession(Conjecture c) : c_(c) {}
  void feed(const InformantStep&) override {}
  Conjecture conjecture() const override { return c_; }
  std::unique_ptr<LearnerSession> clone() const override { return std::make_unique<ConstantSession>(*this); }

 private:
  Conjecture c_;
};

class ConstantLearner : public Learner {
 public:
  explicit ConstantLearner(Conjecture c) : c_(c) {}
  std::string name() const override { return "constant(" + c_.to_string() + ")"; }
  std::unique_ptr<LearnerSession> start(const Signature&) const override {
    return std::make_unique<ConstantSession>(c_);
  }

 private:
  Conjecture c_;
};

class ParitySession : public LearnerSession {
 public:
  explicit ParitySession(const Signature&) {}
  void feed(const InformantStep&) override { ++n_; }
  Conjecture conjecture() const override { return Conjecture(n_ % 2); }
  std::unique_ptr<LearnerSession> clone() const override { return std::make_unique<ParitySession>(*this); }

 private:
  std::size_t n_ = 0;
};

class LargestSession : public LearnerSession {
 public:
  explicit LargestSession(const Signature&) {}
  void feed(const InformantStep& step) override {
    for (const auto& f : step.facts)
      for (Element e : f.tuple)
        if (!max_ || e > *max_) max_ = e;
  }
  Conjecture conjecture() const override { return max_ ? Conjecture(*max_) : Conjecture::unknown(); }
  std::unique_ptr<LearnerSession> clone() const override { return std::make_unique<LargestSession>(*this); }

 private:
  std::optional<Element> max_;
};

// --- sigma2 learner -----------------------------------------------------------------------

class Sigma2Session : public ExtractingSession {
 public:
  Sigma2Session(const Signature& sig, std::shared_ptr<const std::vector<CompiledSentence>> sentences,
                std::shared_ptr<const std::vector<Code>> indices)
      : ExtractingSession(sig),
        sentences_(std::move(sentences)),
        indices_(std::move(indices)),
        lower_(sentences_->size(), 0),
        dead_(sentences_->size(), false) {
    recompute(FiniteStructure(sig, {}));
  }

  Conjecture conjecture() const override { return out_; }
  std::unique_ptr<LearnerSession> clone() const override { return std::make_unique<Sigma2Session>(*this); }

 private:
  void on_domain_change(const FiniteStructure& a) override {
    const bool grows = std::includes(a.domain().begin(), a.domain().end(), prev_domain_.begin(), prev_domain_.end());
    if (!grows) {
      std::fill(lower_.begin(), lower_.end(), 0);
      std::fill(dead_.begin(), dead_.end(), false);
      best_sentence_.reset();
    }
    recompute(a);
  }

  void recompute(const FiniteStructure& a) {
    prev_domain_ = a.domain();
    std::optional<std::pair<Code, Code>> best;  // (i, k)
    // The previous winner usually still wins; searching it first bounds the rest.
    if (best_sentence_ && !dead_[*best_sentence_]) consider(a, *best_sentence_, best);
    for (std::size_t i = 0; i < sentences_->size(); ++i) {
      if (dead_[i] || i == best_sentence_) continue;
      if (!consider(a, i, best)) break;
    }
    best_sentence_ = best ? std::optional<std::size_t>(best->first) : std::nullopt;
    out_ = best ? Conjecture((*indices_)[best->first]) : Conjecture(0);
  }

  /// Searches sentence i below the current best pair; false once no later
  /// sentence can beat it.
  bool consider(const FiniteStructure& a, std::size_t i, std::optional<std::pair<Code, Code>>& best) {
    Code upto = ~Code{0};
    if (best) {
      // largest k with <i,k> < <i*,k*>
      const auto [bi, bk] = *best;
      const u128 s = static_cast<u128>(bi) + bk;
      if (s < i || (s == i && i <= bi)) return i < bi;  // nothing smaller is possible for this i
      const u128 lim = i > bi ? s - i : s - i - 1;
      upto = lim > ~Code{0} ? ~Code{0} : static_cast<Code>(lim);
      if (lower_[i] > upto) return true;
    }
    auto t = (*sentences_)[i].least_compatible(a, lower_[i], upto);
    if (!t) {
      if (upto == ~Code{0}) dead_[i] = true;
      else lower_[i] = upto + 1;
      return true;
    }
    const Code k = (*sentences_)[i].arity() == 0 ? 0 : encode_tuple(t->size(), *t);
    lower_[i] = k;
    if (!best || pair_less(i, k, best->first, best->second)) best = std::make_pair(Code{i}, k);
    return true;
  }

  std::shared_ptr<const std::vector<CompiledSentence>> sentences_;
  std::shared_ptr<const std::vector<Code>> indices_;
  std::vector<Code> lower_;
  std::vector<bool> dead_;
  std::vector<Element> prev_domain_;
  std::optional<std::size_t> best_sentence_;
  Conjecture out_;
};

class Sigma2Learner : public Learner {
 public:
  Sigma2Learner(std::vector<FamilyEntry> family, Signature sig) : sig_(std::move(sig)) {
    if (family.empty()) throw std::invalid_argument("sentence family must not be empty");
    auto cs = std::make_shared<std::vector<CompiledSentence>>();
    auto idx = std::make_shared<std::vector<Code>>();
    for (const auto& e : family) {
      cs->emplace_back(e.sentence, sig_);
      idx->push_back(e.nu_index);
    }
    sentences_ = cs;
    indices_ = idx;
  }
  std::string name() const override { return "sigma2"; }
  std::unique_ptr<LearnerSession> start(const Signature& sig) const override {
    if (!(sig == sig_)) throw SignatureMismatch("sigma2 learner: input signature differs from the family's");
    return std::make_unique<Sigma2Session>(sig, sentences_, indices_);
  }

 private:
  Signature sig_;
  std::shared_ptr<const std::vector<CompiledSentence>> sentences_;
  std::shared_ptr<const std::vector<Code>> indices_;
};

}  // namespace

std::optional<std::size_t> first_cycle_length(const FiniteStructure& g) {
  Digraph d(g);
  for (Element v : d.verts)
    if (auto c = d.shortest_cycle_through(v, v)) return c;
  return std::nullopt;
}

LearnerPtr sigma2_learner(std::vector<FamilyEntry> family, Signature sig) {
  return std::make_shared<Sigma2Learner>(std::move(family), std::move(sig));
}
LearnerPtr two_graph_learner() { return std::make_shared<SimpleLearner<TwoGraphSession>>("two-graph"); }
LearnerPtr honest_cycle_learner() { return std::make_shared<SimpleLearner<HonestSession>>("honest-cycle"); }
LearnerPtr index_cycle_learner() { return std::make_shared<SimpleLearner<IndexSession>>("index-cycle"); }
LearnerPtr constant_learner(Conjecture c) { return std::make_shared<ConstantLearner>(c); }
LearnerPtr parity_learner() { return std::make_shared<SimpleLearner<ParitySession>>("parity"); }
LearnerPtr largest_element_learner() { return std::make_shared<SimpleLearner<LargestSession>>("largest-element"); }

}  // namespace inflearn
