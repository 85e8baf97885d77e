#include "inflearn/informant.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace inflearn {

namespace {

constexpr std::size_t kDenseLimit = std::size_t{1} << 22;

std::size_t ipow(std::size_t b, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (r > kDenseLimit) return kDenseLimit + 1;
    r *= b;
  }
  return r;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

void validate_step(const Signature& sig, const InformantStep& step) {
  if (step.facts.size() != sig.size())
    throw std::invalid_argument("informant step has " + std::to_string(step.facts.size()) + " facts, signature has " +
                                std::to_string(sig.size()) + " predicates");
  for (std::size_t j = 0; j < sig.size(); ++j)
    if (step.facts[j].tuple.size() != sig[j].arity)
      throw std::invalid_argument("fact for " + sig[j].name + " has wrong arity");
}

// --- FactTable ---------------------------------------------------------------

void FactTable::grow_dense(Element needed) {
  std::size_t nb = std::max<std::size_t>(base_ == 0 ? 8 : base_ * 2, 8);
  while (nb <= needed) nb *= 2;
  if (ipow(nb, arity_) > kDenseLimit) {
    // migrate to hashing for good
    for (std::size_t idx = 0; idx < dense_.size(); ++idx) {
      if (!dense_[idx]) continue;
      Tuple t(arity_);
      std::size_t rest = idx;
      for (std::size_t p = arity_; p-- > 0;) {
        t[p] = rest % base_;
        rest /= base_;
      }
      sparse_[tuple_key(t)] = dense_[idx];
    }
    dense_.clear();
    dense_.shrink_to_fit();
    sparse_mode_ = true;
    return;
  }
  std::vector<std::uint8_t> next(ipow(nb, arity_), 0);
  for (std::size_t idx = 0; idx < dense_.size(); ++idx) {
    if (!dense_[idx]) continue;
    std::size_t rest = idx, nidx = 0, mul = 1;
    for (std::size_t p = 0; p < arity_; ++p) {
      nidx += (rest % base_) * mul;
      rest /= base_;
      mul *= nb;
    }
    next[nidx] = dense_[idx];
  }
  dense_ = std::move(next);
  base_ = nb;
}

std::optional<bool> FactTable::record(std::span<const Element> t, bool label) {
  if (!sparse_mode_) {
    Element mx = *std::max_element(t.begin(), t.end());
    if (mx >= base_) grow_dense(mx);
  }
  std::uint8_t v = label ? 2 : 1;
  if (sparse_mode_) {
    auto [it, inserted] = sparse_.emplace(tuple_key(t), v);
    if (!inserted) return it->second == 2;
    ++count_;
    return std::nullopt;
  }
  std::size_t idx = 0;
  for (Element e : t) idx = idx * base_ + e;
  if (dense_[idx]) return dense_[idx] == 2;
  dense_[idx] = v;
  ++count_;
  return std::nullopt;
}

std::uint8_t FactTable::get(std::span<const Element> t) const {
  if (sparse_mode_) {
    auto it = sparse_.find(tuple_key(t));
    return it == sparse_.end() ? 0 : it->second;
  }
  std::size_t idx = 0;
  for (Element e : t) {
    if (e >= base_) return 0;
    idx = idx * base_ + e;
  }
  return dense_.empty() ? 0 : dense_[idx];
}

// --- Knowledge ---------------------------------------------------------------

Knowledge::Knowledge(Signature sig) : sig_(std::move(sig)) {
  for (const auto& p : sig_.predicates()) tables_.emplace_back(p.arity);
}

void Knowledge::add(const InformantStep& step) {
  validate_step(sig_, step);
  for (std::size_t j = 0; j < sig_.size(); ++j) {
    const Fact& f = step.facts[j];
    auto prev = tables_[j].record(f.tuple, f.label);
    if (prev && *prev != f.label) consistent_ = false;
    for (Element e : f.tuple) mentioned_.insert(e);
  }
  ++steps_;
}

bool Knowledge::touches_undecided(Element e, const std::vector<Element>& dom) const {
  Tuple t;
  for (std::size_t j = 0; j < sig_.size(); ++j) {
    const std::size_t k = sig_[j].arity;
    t.assign(k, 0);
    // p = first position holding e; earlier positions avoid e.
    for (std::size_t p = 0; p < k; ++p) {
      std::vector<std::size_t> idx(k, 0);
      bool done = false;
      while (!done) {
        bool skip = false;
        for (std::size_t q = 0; q < k; ++q) {
          if (q == p) {
            t[q] = e;
          } else {
            t[q] = dom[idx[q]];
            if (q < p && t[q] == e) skip = true;
          }
        }
        if (!skip && tables_[j].get(t) == 0) return true;
        // advance odometer over positions != p
        done = true;
        for (std::size_t q = k; q-- > 0;) {
          if (q == p) continue;
          if (++idx[q] < dom.size()) {
            done = false;
            break;
          }
          idx[q] = 0;
        }
        if (k == 1) done = true;
      }
    }
  }
  return false;
}

std::vector<Element> Knowledge::extract_domain() const {
  std::vector<Element> dom(mentioned_.begin(), mentioned_.end());
  for (std::size_t i = dom.size(); i-- > 0;) {
    if (touches_undecided(dom[i], dom)) dom.erase(dom.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return dom;
}

FiniteStructure Knowledge::structure_on(const std::vector<Element>& domain) const {
  FiniteStructure s(sig_, domain);
  if (domain.empty()) return s;
  Tuple t;
  for (std::size_t j = 0; j < sig_.size(); ++j) {
    const std::size_t k = sig_[j].arity;
    std::vector<std::size_t> idx(k, 0);
    t.assign(k, 0);
    bool more = true;
    while (more) {
      for (std::size_t q = 0; q < k; ++q) t[q] = domain[idx[q]];
      if (tables_[j].get(t) == 2) s.set_true(j, t);
      more = false;
      for (std::size_t q = k; q-- > 0;) {
        if (++idx[q] < domain.size()) {
          more = true;
          break;
        }
        idx[q] = 0;
      }
    }
  }
  return s;
}

// --- InformantPrefix ---------------------------------------------------------

void InformantPrefix::push(InformantStep step) {
  validate_step(sig_, step);
  steps_.push_back(std::move(step));
}

InformantPrefix InformantPrefix::take(std::size_t n) const {
  InformantPrefix p(sig_);
  p.steps_.assign(steps_.begin(), steps_.begin() + static_cast<std::ptrdiff_t>(std::min(n, steps_.size())));
  return p;
}

Knowledge InformantPrefix::knowledge() const {
  Knowledge k(sig_);
  for (const auto& s : steps_) k.add(s);
  return k;
}

bool InformantPrefix::consistent() const { return knowledge().consistent(); }

std::vector<std::set<Tuple>> positive_content(const InformantPrefix& p) {
  std::vector<std::set<Tuple>> out(p.signature().size());
  for (const auto& step : p.steps())
    for (std::size_t j = 0; j < step.facts.size(); ++j)
      if (step.facts[j].label) out[j].insert(step.facts[j].tuple);
  return out;
}

FiniteStructure extract_structure(const InformantPrefix& p) {
  Knowledge k = p.knowledge();
  return k.structure_on(k.extract_domain());
}

bool IncrementalExtractor::feed(const InformantStep& step) {
  const bool was_full = domain_.size() == know_.mentioned().size();
  const std::size_t before = know_.mentioned().size();
  know_.add(step);
  if (was_full && know_.mentioned().size() == before) return false;
  auto next = know_.extract_domain();
  if (next == domain_) return false;
  domain_ = std::move(next);
  return true;
}

// --- sources -----------------------------------------------------------------

std::string to_string(SourceKind k) {
  switch (k) {
    case SourceKind::canonical: return "canonical";
    case SourceKind::shuffled: return "shuffled";
    case SourceKind::adversarial: return "adversarial";
    case SourceKind::replay: return "replay";
  }
  return "unknown";
}

InformantPrefix InformantSource::prefix(std::size_t n) const {
  InformantPrefix p(signature());
  for (std::size_t m = 0; m < n; ++m) p.push(step(m));
  return p;
}

namespace {

class CanonicalSource : public InformantSource {
 public:
  explicit CanonicalSource(PresentationPtr pres) : pres_(std::move(pres)) {}
  const Signature& signature() const override { return pres_->signature(); }
  SourceKind kind() const override { return SourceKind::canonical; }
  std::string provenance() const override { return "canonical " + pres_->name(); }

  InformantStep step(std::size_t m) const override {
    InformantStep s;
    const auto& sig = pres_->signature();
    for (std::size_t j = 0; j < sig.size(); ++j) {
      Tuple t = decode_tuple(sig[j].arity, m);
      bool b = pres_->truth(j, t);
      s.facts.push_back({std::move(t), b});
    }
    return s;
  }

 private:
  PresentationPtr pres_;
};

class ShuffledSource : public InformantSource {
 public:
  ShuffledSource(PresentationPtr pres, std::uint64_t seed)
      : pres_(std::move(pres)), seed_(seed), cache_(pres_->signature().size()) {}
  const Signature& signature() const override { return pres_->signature(); }
  SourceKind kind() const override { return SourceKind::shuffled; }
  std::string provenance() const override { return "shuffled seed=" + std::to_string(seed_) + " " + pres_->name(); }

  InformantStep step(std::size_t m) const override {
    InformantStep s;
    const auto& sig = pres_->signature();
    for (std::size_t j = 0; j < sig.size(); ++j) {
      Tuple t = decode_tuple(sig[j].arity, permuted(j, sig[j].arity, m));
      bool b = pres_->truth(j, t);
      s.facts.push_back({std::move(t), b});
    }
    return s;
  }

 private:
  struct Shell {
    Element index = ~Element{0};
    Code start = 0;
    std::vector<Code> perm;
  };

  Code permuted(std::size_t j, std::size_t arity, Code m) const {
    const Tuple t = decode_tuple(arity, m);
    const Element sh = *std::max_element(t.begin(), t.end());
    std::lock_guard lock(mu_);
    Shell& c = cache_[j];
    if (c.index != sh) {
      c.index = sh;
      c.start = shell_start(arity, sh);
      const Code size = shell_start(arity, sh + 1) - c.start;
      c.perm.resize(size);
      for (Code i = 0; i < size; ++i) c.perm[i] = i;
      std::mt19937_64 rng(splitmix(seed_ ^ splitmix((j + 1) * 0x100000001B3ULL + sh)));
      for (Code i = size; i-- > 1;) std::swap(c.perm[i], c.perm[rng() % (i + 1)]);
    }
    return c.start + c.perm[m - c.start];
  }

  PresentationPtr pres_;
  std::uint64_t seed_;
  mutable std::mutex mu_;
  mutable std::vector<Shell> cache_;
};

class ReplaySource : public InformantSource {
 public:
  explicit ReplaySource(InformantPrefix p) : p_(std::move(p)) {}
  const Signature& signature() const override { return p_.signature(); }
  SourceKind kind() const override { return SourceKind::replay; }
  std::string provenance() const override { return "replay of " + std::to_string(p_.size()) + " steps"; }
  InformantStep step(std::size_t m) const override {
    if (m >= p_.size()) throw std::out_of_range("replay source exhausted at step " + std::to_string(m));
    return p_.steps()[m];
  }

 private:
  InformantPrefix p_;
};

}  // namespace

SourcePtr canonical_source(PresentationPtr pres) { return std::make_shared<CanonicalSource>(std::move(pres)); }
SourcePtr shuffled_source(PresentationPtr pres, std::uint64_t seed) {
  return std::make_shared<ShuffledSource>(std::move(pres), seed);
}
SourcePtr replay_source(InformantPrefix prefix) { return std::make_shared<ReplaySource>(std::move(prefix)); }

// --- replay text -------------------------------------------------------------

std::string to_replay_text(const InformantPrefix& p) {
  std::ostringstream out;
  out << "signature " << p.signature().to_string() << "\n";
  for (const auto& step : p.steps()) {
    for (std::size_t j = 0; j < step.facts.size(); ++j) {
      if (j) out << ' ';
      out << j << ':' << tuple_to_string(step.facts[j].tuple) << '=' << (step.facts[j].label ? 1 : 0);
    }
    out << "\n";
  }
  return out.str();
}

InformantPrefix parse_replay_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<InformantPrefix> p;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("replay line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string field;
    if (!(ls >> field)) continue;
    if (!p) {
      if (field != "signature") fail("expected 'signature' header");
      std::string rest;
      std::getline(ls, rest);
      p.emplace(parse_signature(rest));
      continue;
    }
    InformantStep step;
    do {
      auto colon = field.find(':');
      auto eq = field.rfind('=');
      if (colon == std::string::npos || eq == std::string::npos || eq < colon) fail("malformed field '" + field + "'");
      std::size_t j = 0;
      try {
        j = std::stoul(field.substr(0, colon));
      } catch (const std::exception&) {
        fail("bad predicate index in '" + field + "'");
      }
      if (j != step.facts.size()) fail("predicate fields must appear in order 0..k");
      std::string tup = field.substr(colon + 1, eq - colon - 1);
      if (tup.size() < 2 || tup.front() != '(' || tup.back() != ')') fail("malformed tuple in '" + field + "'");
      tup = tup.substr(1, tup.size() - 2);
      std::replace(tup.begin(), tup.end(), ',', ' ');
      std::istringstream ts(tup);
      Fact f;
      Element e;
      while (ts >> e) f.tuple.push_back(e);
      std::string lab = field.substr(eq + 1);
      if (lab != "0" && lab != "1") fail("label must be 0 or 1 in '" + field + "'");
      f.label = lab == "1";
      step.facts.push_back(std::move(f));
    } while (ls >> field);
    try {
      p->push(std::move(step));
    } catch (const std::invalid_argument& ex) {
      fail(ex.what());
    }
  }
  if (!p) throw std::invalid_argument("replay text has no signature header");
  return *p;
}

}  // namespace inflearn
