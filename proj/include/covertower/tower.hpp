// The tower of wedge-of-circuits levels and the covers between them.
//
// Level 0 is a single vertex with a loop. Level n >= 1 is a wedge of
// circuits c_{n,1}..c_{n,n} joined at a base vertex that also carries a
// loop. The cover from level n+1 to level n sends the top circuit to the
// base vertex and rewrites every other circuit i as
//   loop + mult(n,i) c_{n,i} + mult(n,i+1) c_{n,i+1} + ... + mult(n,n) c_{n,n} + loop.
// Circuit lengths follow the induced recurrence and are kept exact.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "covertower/bigint.hpp"
#include "covertower/graph.hpp"
#include "covertower/walks.hpp"

namespace covertower {

inline constexpr std::int64_t kDefaultExplicitLimit = 10'000'000;
inline constexpr std::int64_t kDefaultRunLimit = 10'000'000;

struct TowerConfig {
  int depth = 6;
  // top_length[n-1] = length of the top circuit of level n, for n = 1..depth.
  std::vector<BigInt> top_length;
  // mult[n-1][i-1] = multiplicity of circuit i of level n in the rewrite of
  // level-(n+1) circuits, for n = 1..depth-1, i = 1..n.
  std::vector<std::vector<BigInt>> mult;

  static TowerConfig uniform(int depth, const BigInt& top = 2, const BigInt& m = 2);
  void validate() const;  // throws std::invalid_argument

  const BigInt& top(int n) const { return top_length[static_cast<std::size_t>(n) - 1]; }
  const BigInt& multiplicity(int n, int i) const {
    return mult[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(i) - 1];
  }
};

// Key-value text format: depth, then top_length and mult given either as a
// single constant or as a per-level list. Throws std::invalid_argument with
// the offending line number.
TowerConfig parse_tower_config(const std::string& text);
TowerConfig load_tower_config(const std::string& path);

// Canonical vertex name: circuit == 0 is the base vertex (pos is 0); an
// interior vertex has 1 <= circuit <= level and 0 < pos < circuit length.
struct VertexRef {
  int level = 0;
  int circuit = 0;
  BigInt pos = 0;

  bool is_base() const { return circuit == 0; }
  bool operator==(const VertexRef&) const = default;
};

std::string vertex_name(const VertexRef& v);

class Tower {
 public:
  explicit Tower(TowerConfig cfg);

  int depth() const { return cfg_.depth; }
  const TowerConfig& config() const { return cfg_; }

  const BigInt& circuit_length(int n, int i) const;  // 1 <= i <= n <= depth
  // Edge length of one unit of a token symbol at a level: 1 for the loop.
  BigInt segment_length(int level, int sym) const;

  BigInt level_vertex_count(int n) const;
  BigInt level_edge_count(int n) const;

  // Canonicalizing vertex factory; endpoint positions collapse to the base.
  VertexRef base(int level) const;
  VertexRef vertex(int n, int i, const BigInt& pos) const;

  // Image of circuit i of level n+1 under the cover to level n, as a walk
  // at level n. Defined for 0 <= n < depth, 1 <= i <= n+1.
  const SymWalk& cover_template(int n, int i) const;
  const PositionedWalk& cover_template_runs(int n, int i) const;

  // Image at level n of position pos (0 <= pos <= length) of circuit i of level n+1.
  VertexRef template_image(int n, int i, const BigInt& pos) const;

  // Exhaustive check of the strict length ordering between levels:
  // l(m, l) > l(n, l') for all m > n >= 1 and 1 <= l <= l' <= n.
  bool check_monotone_lengths() const;

  // Explicit graphs; memoized per level. The limit bounds the vertex count.
  GraphPtr materialize_level(int n, std::int64_t limit = kDefaultExplicitLimit) const;
  GraphHom materialize_cover(int n, std::int64_t limit = kDefaultExplicitLimit) const;

  std::int64_t vertex_index(int n, const VertexRef& v) const;
  VertexRef vertex_from_index(int n, std::int64_t id) const;

  // Projection of a full circuit traversal down to level m, memoized.
  // Returned pointer stays valid for the tower's lifetime.
  const PositionedWalk* projected_circuit(int n, int i, int m,
                                          std::int64_t run_limit = kDefaultRunLimit) const;

 private:
  TowerConfig cfg_;
  std::vector<std::vector<BigInt>> len_;            // len_[n][i-1], 1 <= i <= n
  std::vector<std::vector<SymWalk>> tmpl_;          // tmpl_[n][i-1], cover level n+1 -> n
  std::vector<std::vector<PositionedWalk>> truns_;  // positioned templates

  mutable std::mutex cache_mu_;
  mutable std::map<int, GraphPtr> level_cache_;
  mutable std::map<std::tuple<int, int, int>, std::unique_ptr<PositionedWalk>> proj_cache_;
};

// Positioned view of a symbolic walk.
PositionedWalk position_walk(const Tower& t, const SymWalk& w);

// Vertex at edge offset p of a positioned walk, 0 <= p <= total.
VertexRef vertex_at(const Tower& t, const PositionedWalk& w, const BigInt& p);

}  // namespace covertower
