// Symbolic walk algebra: projection through the tower, explicit expansion,
// and occurrence/gap analysis of circuits inside projected walks.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "covertower/tower.hpp"

namespace covertower {

// Total edge length of a symbolic walk.
BigInt walk_length(const Tower& t, const SymWalk& w);

// Merge adjacent tokens with equal symbols and drop zero repetitions.
SymWalk canonical(SymWalk w);

SymWalk single_circuit(int level, int i, BigInt rep = 1);
SymWalk loop_walk(int level, BigInt rep);

// One cover step down: loops stay loops, each circuit repetition is replaced
// by its rewrite at the level below. Length is preserved.
SymWalk project_one(const Tower& t, const SymWalk& w,
                    std::int64_t run_limit = kDefaultRunLimit);

// Iterated projection down to level m <= level(w).
SymWalk project_to(const Tower& t, const SymWalk& w, int m,
                   std::int64_t run_limit = kDefaultRunLimit);

// The residual walk at level m: for k = d..n, mult(n,k) projected copies of
// circuit k of level n, then one loop. Contains no circuit symbol below d.
// d may be n+1, leaving just the loop.
SymWalk r_walk(const Tower& t, int n, int d, int m,
               std::int64_t run_limit = kDefaultRunLimit);

// Edge length of r_walk(n, d, m), computed from the length table alone.
BigInt r_walk_length(const Tower& t, int n, int d);

// Explicit vertex walk in the materialized level; length bounded by limit.
WalkSeq expand_explicit(const Tower& t, const SymWalk& w,
                        std::int64_t limit = kDefaultExplicitLimit);

// Occurrences of one circuit inside a walk at its own level. An occurrence
// is one full repetition of a matching circuit token; a gap is the total
// edge length strictly between two consecutive occurrences.
struct GapSpectrum {
  int level = 0;
  int target = 0;
  BigInt occ_len = 0;
  std::vector<BigInt> positions;  // start offsets, strictly increasing
  std::vector<BigInt> gaps;       // gaps[k] between positions[k] and positions[k+1]

  bool operator==(const GapSpectrum&) const = default;
  std::string to_string() const;
};

GapSpectrum gap_spectrum(const Tower& t, const SymWalk& w, int target);

// Largest gap between occurrences of circuit l of level N inside the doubled
// projected circuit walk of level n.
BigInt g_formula(const Tower& t, int n, int l, int N);

// Walk suffix strictly after the last full occurrence of a circuit symbol.
SymWalk suffix_after_last_occurrence(const Tower& t, const SymWalk& w, int target);

struct VerifyResult {
  std::string name;
  bool pass = true;
  std::vector<std::pair<std::string, std::string>> fields;
  std::string failure;  // empty when passing

  std::string to_string() const;
};

// Every nonzero gap between occurrences of circuit l in the projection of
// circuit l of level n down to level N matches the residual-sum form for
// some intermediate level, and the doubled-walk maximum equals g_formula.
VerifyResult verify_spectrum(const Tower& t, int n, int l, int N);

// Between two equal gaps a strictly larger gap occurs.
VerifyResult verify_interleaving(const Tower& t, int n, int l, int N);

// After the last occurrence of circuit l the suffix still carries circuit
// l+1, with a pair of extreme gaps of the predicted size and only smaller
// gaps between them.
VerifyResult verify_tail(const Tower& t, int n, int l, int N);

}  // namespace covertower
