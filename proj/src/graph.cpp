#include "covertower/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace covertower {

DirectedGraph::DirectedGraph(VertexId vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 0) throw std::invalid_argument("graph: negative vertex count");
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  out_deg_.assign(static_cast<std::size_t>(vertex_count_), 0);
  in_deg_.assign(static_cast<std::size_t>(vertex_count_), 0);
  for (const auto& [u, v] : edges_) {
    if (u < 0 || u >= vertex_count_ || v < 0 || v >= vertex_count_)
      throw std::invalid_argument("graph: edge endpoint outside vertex set");
    ++out_deg_[static_cast<std::size_t>(u)];
    ++in_deg_[static_cast<std::size_t>(v)];
  }
  out_start_.assign(static_cast<std::size_t>(vertex_count_) + 1, 0);
  for (const auto& [u, v] : edges_) ++out_start_[static_cast<std::size_t>(u) + 1];
  for (std::size_t i = 1; i < out_start_.size(); ++i) out_start_[i] += out_start_[i - 1];
}

bool DirectedGraph::has_edge(VertexId u, VertexId v) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

std::pair<const Edge*, const Edge*> DirectedGraph::out_edges(VertexId u) const {
  const Edge* base = edges_.data();
  return {base + out_start_[static_cast<std::size_t>(u)],
          base + out_start_[static_cast<std::size_t>(u) + 1]};
}

bool is_graph_hom(const GraphHom& h) {
  if (!h.source || !h.target) return false;
  if (static_cast<VertexId>(h.vmap.size()) != h.source->vertex_count()) return false;
  for (VertexId img : h.vmap)
    if (img < 0 || img >= h.target->vertex_count()) return false;
  for (const auto& [u, v] : h.source->edges())
    if (!h.target->has_edge(h(u), h(v))) return false;
  return true;
}

bool check_edge_surjective(const DirectedGraph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.out_degree(v) < 1 || g.in_degree(v) < 1) return false;
  return true;
}

bool check_plus_directional(const GraphHom& h) {
  if (!is_graph_hom(h)) return false;
  for (VertexId u = 0; u < h.source->vertex_count(); ++u) {
    auto [first, last] = h.source->out_edges(u);
    for (const Edge* e = first; e != last; ++e)
      if (h(e->second) != h(first->second)) return false;
  }
  return true;
}

bool check_bidirectional(const GraphHom& h) {
  if (!check_plus_directional(h)) return false;
  // In-edge condition: all predecessors of a vertex share one image.
  std::vector<VertexId> pred_img(static_cast<std::size_t>(h.source->vertex_count()), -1);
  for (const auto& [u, v] : h.source->edges()) {
    VertexId& img = pred_img[static_cast<std::size_t>(v)];
    if (img == -1)
      img = h(u);
    else if (img != h(u))
      return false;
  }
  return true;
}

bool check_cover(const GraphHom& h) {
  if (!check_plus_directional(h)) return false;
  if (!check_edge_surjective(*h.source) || !check_edge_surjective(*h.target)) return false;
  // Every target edge must be the image of some source edge.
  std::vector<Edge> image;
  image.reserve(h.source->edges().size());
  for (const auto& [u, v] : h.source->edges()) image.emplace_back(h(u), h(v));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return image.size() == h.target->edges().size();
}

GraphHom compose(const GraphHom& outer, const GraphHom& inner) {
  if (inner.target != outer.source)
    throw std::invalid_argument("compose: inner target is not the outer source");
  GraphHom out;
  out.source = inner.source;
  out.target = outer.target;
  out.vmap.reserve(inner.vmap.size());
  for (VertexId mid : inner.vmap) out.vmap.push_back(outer(mid));
  return out;
}

bool valid_walk(const WalkSeq& w) {
  if (!w.graph || w.verts.empty()) return false;
  for (VertexId v : w.verts)
    if (v < 0 || v >= w.graph->vertex_count()) return false;
  for (std::size_t i = 0; i + 1 < w.verts.size(); ++i)
    if (!w.graph->has_edge(w.verts[i], w.verts[i + 1])) return false;
  return true;
}

WalkSeq map_walk(const GraphHom& h, const WalkSeq& w) {
  if (w.graph != h.source) throw std::invalid_argument("map_walk: walk not in the source graph");
  WalkSeq out;
  out.graph = h.target;
  out.verts.reserve(w.verts.size());
  for (VertexId v : w.verts) out.verts.push_back(h(v));
  return out;
}

WalkSeq concat_walks(const WalkSeq& a, const WalkSeq& b) {
  if (a.graph != b.graph) throw std::invalid_argument("concat_walks: walks in different graphs");
  if (a.verts.empty() || b.verts.empty() || a.verts.back() != b.verts.front())
    throw std::invalid_argument("concat_walks: endpoint mismatch");
  WalkSeq out = a;
  out.verts.insert(out.verts.end(), b.verts.begin() + 1, b.verts.end());
  return out;
}

WalkClass classify_walk(const WalkSeq& w) {
  const auto& vs = w.verts;
  const std::size_t n = vs.size();
  auto distinct = [](auto first, auto last) {
    std::unordered_set<VertexId> seen(first, last);
    return seen.size() == static_cast<std::size_t>(std::distance(first, last));
  };
  if (n == 1) return WalkClass::path;
  if (vs.front() == vs.back()) {
    if (distinct(vs.begin(), vs.end() - 1)) return WalkClass::circuit;
    return WalkClass::cycle;
  }
  if (distinct(vs.begin(), vs.end())) return WalkClass::path;
  return WalkClass::walk;
}

std::string to_dot(const DirectedGraph& g, std::string_view name,
                   const std::vector<std::string>* labels) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    os << "  n" << v;
    if (labels) os << " [label=\"" << (*labels)[static_cast<std::size_t>(v)] << "\"]";
    os << ";\n";
  }
  for (const auto& [u, v] : g.edges()) os << "  n" << u << " -> n" << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace covertower
