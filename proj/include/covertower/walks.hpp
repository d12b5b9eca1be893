// Run-length-compressed symbolic walks over one tower level.

#pragma once

#include <vector>

#include "covertower/bigint.hpp"

namespace covertower {

// Loop symbol. Circuit symbols are their positive indices.
inline constexpr int kLoopSym = 0;

struct Token {
  int sym = kLoopSym;  // kLoopSym or circuit index 1..level
  BigInt rep = 1;      // positive repetition count

  bool operator==(const Token&) const = default;
};

// A walk at one level, base vertex to base vertex, as a token sequence.
// Each loop token unit has edge length 1; each circuit token unit has the
// full circuit length. Canonical form never holds two adjacent tokens with
// the same symbol.
struct SymWalk {
  int level = 0;
  std::vector<Token> tokens;

  bool operator==(const SymWalk&) const = default;
};

// A symbolic walk with cumulative edge offsets for positional lookup.
struct PositionedWalk {
  int level = 0;
  std::vector<Token> tokens;
  std::vector<BigInt> unit_len;  // edge length of one repetition of tokens[k]
  std::vector<BigInt> cum;       // cum[k] = start offset of tokens[k]; cum[size] = total

  const BigInt& total() const { return cum.back(); }
  std::size_t run_count() const { return tokens.size(); }

  // Index of the run containing edge offset p (0 <= p < total).
  std::size_t locate(const BigInt& p) const;
};

}  // namespace covertower
