// Fixed bijections between naturals and tuples, and the pairing function.
//
// Tuples of a fixed arity k are enumerated in shells: shell m holds the
// tuples whose largest entry is exactly m, ordered lexicographically.  Shell m
// starts at code m^k, so every tuple over {0..m-1} precedes every tuple that
// mentions m.  The learners' "least pair" order depends on this enumeration;
// it is frozen by golden tests and must not change.
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace inflearn {

using Element = std::uint64_t;
using Code = std::uint64_t;
using Tuple = std::vector<Element>;

/// Code of `t` in the arity-|t| enumeration.  Throws std::invalid_argument if
/// |t| != arity or arity == 0, std::overflow_error if the code exceeds 64 bits.
Code encode_tuple(std::size_t arity, std::span<const Element> t);
Tuple decode_tuple(std::size_t arity, Code code);

/// First code of shell m for the given arity, i.e. m^arity.
Code shell_start(std::size_t arity, Element m);

/// Cantor pairing <i,k> = (i+k)(i+k+1)/2 + k.  Monotone in both arguments.
Code pair(Code i, Code k);
std::pair<Code, Code> unpair(Code n);

/// Compares <i1,k1> with <i2,k2> without materialising the codes.
bool pair_less(Code i1, Code k1, Code i2, Code k2);

}  // namespace inflearn
