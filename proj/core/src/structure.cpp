#include "inflearn/structure.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <unordered_set>

namespace inflearn {

namespace {

constexpr std::uint64_t kEncodedFlag = std::uint64_t{1} << 63;

unsigned packed_bits(std::size_t arity) { return arity == 0 ? 0 : static_cast<unsigned>(63 / arity); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

// --- Signature -------------------------------------------------------------

Signature::Signature(std::vector<Predicate> predicates) : predicates_(std::move(predicates)) {
  if (predicates_.empty()) throw std::invalid_argument("signature must contain at least one predicate");
  std::unordered_set<std::string> names;
  for (const auto& p : predicates_) {
    if (p.arity == 0) throw std::invalid_argument("predicate " + p.name + " has arity 0");
    if (p.name.empty()) throw std::invalid_argument("predicate with empty name");
    if (!names.insert(p.name).second) throw std::invalid_argument("duplicate predicate " + p.name);
  }
}

std::size_t Signature::max_arity() const {
  std::size_t m = 0;
  for (const auto& p : predicates_) m = std::max(m, p.arity);
  return m;
}

std::size_t Signature::index_of(std::string_view name) const {
  for (std::size_t j = 0; j < predicates_.size(); ++j)
    if (predicates_[j].name == name) return j;
  throw std::out_of_range("unknown predicate " + std::string(name));
}

bool Signature::contains(std::string_view name) const {
  return std::any_of(predicates_.begin(), predicates_.end(), [&](const Predicate& p) { return p.name == name; });
}

std::string Signature::to_string() const {
  std::string out;
  for (const auto& p : predicates_) {
    if (!out.empty()) out += ' ';
    out += p.name + "/" + std::to_string(p.arity);
  }
  return out;
}

Signature parse_signature(std::string_view text) {
  std::vector<Predicate> preds;
  std::istringstream in{std::string(text)};
  std::string item;
  while (in >> item) {
    auto slash = item.rfind('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == item.size())
      throw std::invalid_argument("malformed predicate declaration '" + item + "'");
    std::size_t arity = 0;
    try {
      arity = std::stoul(item.substr(slash + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed arity in '" + item + "'");
    }
    preds.push_back({item.substr(0, slash), arity});
  }
  return Signature(std::move(preds));
}

// --- tuple keys ------------------------------------------------------------

std::uint64_t tuple_key(std::span<const Element> t) {
  const unsigned bits = packed_bits(t.size());
  const Element limit = bits >= 63 ? kEncodedFlag : (Element{1} << bits);
  bool fits = t.size() <= 4;
  for (Element e : t) fits = fits && e < limit;
  if (fits) {
    std::uint64_t key = 0;
    for (Element e : t) key = (key << bits) | e;
    return key;
  }
  Code c = encode_tuple(t.size(), t);
  if (c & kEncodedFlag) throw std::overflow_error("tuple too large for table key");
  return c | kEncodedFlag;
}

Tuple tuple_from_key(std::size_t arity, std::uint64_t key) {
  if (key & kEncodedFlag) return decode_tuple(arity, key & ~kEncodedFlag);
  const unsigned bits = packed_bits(arity);
  const std::uint64_t mask = bits >= 63 ? ~kEncodedFlag : ((std::uint64_t{1} << bits) - 1);
  Tuple t(arity);
  for (std::size_t p = arity; p-- > 0;) {
    t[p] = key & mask;
    key >>= bits;
  }
  return t;
}

std::string tuple_to_string(std::span<const Element> t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(t[i]);
  }
  return out + ")";
}

// --- FiniteStructure -------------------------------------------------------

FiniteStructure::FiniteStructure(Signature sig, std::vector<Element> domain)
    : sig_(std::move(sig)), domain_(std::move(domain)), tables_(sig_.size()) {
  std::sort(domain_.begin(), domain_.end());
  domain_.erase(std::unique(domain_.begin(), domain_.end()), domain_.end());
}

bool FiniteStructure::contains(Element e) const { return std::binary_search(domain_.begin(), domain_.end(), e); }

void FiniteStructure::check_tuple(std::size_t pred, std::span<const Element> t) const {
  if (pred >= sig_.size()) throw std::out_of_range("predicate index out of range");
  if (t.size() != sig_[pred].arity)
    throw std::invalid_argument("tuple " + tuple_to_string(t) + " has wrong arity for " + sig_[pred].name);
  for (Element e : t)
    if (!contains(e)) throw std::out_of_range("element " + std::to_string(e) + " is outside the domain");
}

void FiniteStructure::set_true(std::size_t pred, std::span<const Element> t) {
  check_tuple(pred, t);
  tables_[pred].insert(tuple_key(t));
}

bool FiniteStructure::holds(std::size_t pred, std::span<const Element> t) const {
  check_tuple(pred, t);
  return holds_unchecked(pred, t);
}

bool FiniteStructure::holds_unchecked(std::size_t pred, std::span<const Element> t) const {
  return tables_[pred].count(tuple_key(t)) != 0;
}

std::vector<Tuple> FiniteStructure::true_tuples(std::size_t pred) const {
  std::vector<Tuple> out;
  out.reserve(tables_[pred].size());
  for (auto key : tables_[pred]) out.push_back(tuple_from_key(sig_[pred].arity, key));
  std::sort(out.begin(), out.end());
  return out;
}

FiniteStructure FiniteStructure::restrict_to(std::span<const Element> keep) const {
  std::vector<Element> dom;
  for (Element e : keep)
    if (contains(e)) dom.push_back(e);
  FiniteStructure r(sig_, std::move(dom));
  for (std::size_t j = 0; j < sig_.size(); ++j) {
    for (auto key : tables_[j]) {
      Tuple t = tuple_from_key(sig_[j].arity, key);
      if (std::all_of(t.begin(), t.end(), [&](Element e) { return r.contains(e); })) r.tables_[j].insert(key);
    }
  }
  return r;
}

bool operator==(const FiniteStructure& a, const FiniteStructure& b) {
  return a.sig_ == b.sig_ && a.domain_ == b.domain_ && a.tables_ == b.tables_;
}

bool is_substructure(const FiniteStructure& a, const FiniteStructure& b) {
  if (!(a.signature() == b.signature())) throw SignatureMismatch("is_substructure: signatures differ");
  for (Element e : a.domain())
    if (!b.contains(e)) return false;
  const auto& sig = a.signature();
  for (std::size_t j = 0; j < sig.size(); ++j) {
    if (a.count_true(j) > b.count_true(j)) return false;
    for (const auto& t : a.true_tuples(j))
      if (!b.holds_unchecked(j, t)) return false;
    for (const auto& t : b.true_tuples(j)) {
      bool inside = std::all_of(t.begin(), t.end(), [&](Element e) { return a.contains(e); });
      if (inside && !a.holds_unchecked(j, t)) return false;
    }
  }
  return true;
}

// --- text form ---------------------------------------------------------------

std::string to_text(const FiniteStructure& s) {
  std::ostringstream out;
  out << "signature " << s.signature().to_string() << "\n";
  out << "domain";
  for (Element e : s.domain()) out << ' ' << e;
  out << "\n";
  for (std::size_t j = 0; j < s.signature().size(); ++j) {
    out << s.signature()[j].name;
    for (const auto& t : s.true_tuples(j)) out << ' ' << tuple_to_string(t);
    out << "\n";
  }
  return out.str();
}

FiniteStructure structure_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Signature> sig;
  std::optional<FiniteStructure> s;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    std::string_view lv = trim(line);
    if (lv.empty() || lv.front() == '#') continue;
    auto sp = lv.find(' ');
    std::string_view head = lv.substr(0, sp);
    std::string_view rest = sp == std::string_view::npos ? std::string_view{} : trim(lv.substr(sp + 1));
    if (!sig) {
      if (head != "signature") throw std::invalid_argument("structure text must start with 'signature'");
      sig = parse_signature(rest);
      continue;
    }
    if (!s) {
      if (head != "domain") throw std::invalid_argument("expected 'domain' line");
      std::vector<Element> dom;
      std::istringstream d{std::string(rest)};
      Element e;
      while (d >> e) dom.push_back(e);
      s.emplace(*sig, std::move(dom));
      continue;
    }
    std::size_t j = sig->index_of(head);
    std::string body(rest);
    std::size_t pos = 0;
    while ((pos = body.find('(', pos)) != std::string::npos) {
      auto close = body.find(')', pos);
      if (close == std::string::npos) throw std::invalid_argument("unterminated tuple in structure text");
      Tuple t;
      std::string inner = body.substr(pos + 1, close - pos - 1);
      std::replace(inner.begin(), inner.end(), ',', ' ');
      std::istringstream ts(inner);
      Element e;
      while (ts >> e) t.push_back(e);
      s->set_true(j, t);
      pos = close + 1;
    }
    ++seen;
  }
  if (!s) throw std::invalid_argument("incomplete structure text");
  (void)seen;
  return *s;
}

}  // namespace inflearn
