#include "inflearn/coding.hpp"
#include "wide.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace inflearn {
namespace {

using Wide = u128;

constexpr Wide kCodeMax = std::numeric_limits<Code>::max();

// base^exp, saturating at just above kCodeMax.
Wide power(Wide base, std::size_t exp) {
  Wide r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > kCodeMax) return kCodeMax + 1;
  }
  return r;
}

// Number of completions of length `rest` over {0..m} whose max is m, given
// whether m already occurred in the prefix.
Wide completions(Element m, std::size_t rest, bool has_max) {
  Wide all = power(Wide(m) + 1, rest);
  if (has_max) return all;
  return all - power(Wide(m), rest);
}

}  // namespace

Code shell_start(std::size_t arity, Element m) {
  Wide p = power(m, arity);
  if (p > kCodeMax) throw std::overflow_error("tuple shell start exceeds 64 bits");
  return static_cast<Code>(p);
}

Code encode_tuple(std::size_t arity, std::span<const Element> t) {
  if (arity == 0) throw std::invalid_argument("tuple arity must be positive");
  if (t.size() != arity) {
    throw std::invalid_argument("tuple length " + std::to_string(t.size()) +
                                " does not match arity " + std::to_string(arity));
  }
  const Element m = *std::max_element(t.begin(), t.end());
  Wide code = power(m, arity);
  bool has_max = false;
  for (std::size_t p = 0; p < arity; ++p) {
    const std::size_t rest = arity - p - 1;
    for (Element d = 0; d < t[p]; ++d) code += completions(m, rest, has_max || d == m);
    has_max = has_max || t[p] == m;
    if (code > kCodeMax) throw std::overflow_error("tuple code exceeds 64 bits");
  }
  return static_cast<Code>(code);
}

Tuple decode_tuple(std::size_t arity, Code code) {
  if (arity == 0) throw std::invalid_argument("tuple arity must be positive");
  // Largest m with m^arity <= code.
  Element m = static_cast<Element>(std::floor(std::pow(static_cast<long double>(code),
                                                       1.0L / static_cast<long double>(arity))));
  while (m > 0 && power(m, arity) > code) --m;
  while (power(m + 1, arity) <= code) ++m;
  Wide rank = Wide(code) - power(m, arity);
  Tuple t(arity);
  bool has_max = false;
  for (std::size_t p = 0; p < arity; ++p) {
    const std::size_t rest = arity - p - 1;
    Element d = 0;
    for (;; ++d) {
      Wide c = completions(m, rest, has_max || d == m);
      if (rank < c) break;
      rank -= c;
    }
    t[p] = d;
    has_max = has_max || d == m;
  }
  return t;
}

Code pair(Code i, Code k) {
  Wide s = Wide(i) + k;
  Wide r = s * (s + 1) / 2 + k;
  if (r > kCodeMax) throw std::overflow_error("pair code exceeds 64 bits");
  return static_cast<Code>(r);
}

std::pair<Code, Code> unpair(Code n) {
  // s = largest with s(s+1)/2 <= n
  Code s = static_cast<Code>((std::sqrt(8.0L * static_cast<long double>(n) + 1.0L) - 1.0L) / 2.0L);
  while (Wide(s) * (s + 1) / 2 > n) --s;
  while (Wide(s + 1) * (s + 2) / 2 <= n) ++s;
  const Code k = n - static_cast<Code>(Wide(s) * (s + 1) / 2);
  return {s - k, k};
}

bool pair_less(Code i1, Code k1, Code i2, Code k2) {
  const Wide s1 = Wide(i1) + k1;
  const Wide s2 = Wide(i2) + k2;
  if (s1 != s2) return s1 < s2;
  return k1 < k2;
}

}  // namespace inflearn
