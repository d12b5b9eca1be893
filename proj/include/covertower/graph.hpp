// Finite directed graphs, graph homomorphisms and walks, with the cover
// predicates used throughout the tower construction.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace covertower {

using VertexId = std::int64_t;
using Edge = std::pair<VertexId, VertexId>;

// Immutable directed graph on vertices 0..vertex_count-1. Vertex ids are
// opaque within one graph; ids from different graphs are never comparable.
class DirectedGraph {
 public:
  DirectedGraph(VertexId vertex_count, std::vector<Edge> edges);

  VertexId vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(VertexId u, VertexId v) const;
  std::int64_t out_degree(VertexId v) const { return out_deg_[static_cast<std::size_t>(v)]; }
  std::int64_t in_degree(VertexId v) const { return in_deg_[static_cast<std::size_t>(v)]; }

  // Edges leaving u, as a contiguous range of the sorted edge list.
  std::pair<const Edge*, const Edge*> out_edges(VertexId u) const;

 private:
  VertexId vertex_count_;
  std::vector<Edge> edges_;  // sorted, unique
  std::vector<std::int64_t> out_deg_;
  std::vector<std::int64_t> in_deg_;
  std::vector<std::size_t> out_start_;  // offset of first edge with source u
};

using GraphPtr = std::shared_ptr<const DirectedGraph>;

// Total vertex map between two graphs. Construction does not validate the
// homomorphism property; call is_graph_hom.
struct GraphHom {
  GraphPtr source;
  GraphPtr target;
  std::vector<VertexId> vmap;

  VertexId operator()(VertexId v) const { return vmap[static_cast<std::size_t>(v)]; }
};

struct WalkSeq {
  GraphPtr graph;
  std::vector<VertexId> verts;

  std::int64_t length() const { return static_cast<std::int64_t>(verts.size()) - 1; }
};

enum class WalkClass { walk, path, cycle, circuit };

bool is_graph_hom(const GraphHom& h);
bool check_edge_surjective(const DirectedGraph& g);
bool check_plus_directional(const GraphHom& h);
bool check_bidirectional(const GraphHom& h);
bool check_cover(const GraphHom& h);

// outer after inner; requires inner.target and outer.source to be the same graph.
GraphHom compose(const GraphHom& outer, const GraphHom& inner);

bool valid_walk(const WalkSeq& w);
WalkSeq map_walk(const GraphHom& h, const WalkSeq& w);
WalkSeq concat_walks(const WalkSeq& a, const WalkSeq& b);
WalkClass classify_walk(const WalkSeq& w);

// DOT rendering with vertices and edges emitted in id order.
std::string to_dot(const DirectedGraph& g, std::string_view name,
                   const std::vector<std::string>* labels = nullptr);

}  // namespace covertower
