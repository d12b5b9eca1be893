#include "covertower/tower.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "covertower/errors.hpp"

namespace covertower {

TowerConfig TowerConfig::uniform(int depth, const BigInt& top, const BigInt& m) {
  TowerConfig cfg;
  cfg.depth = depth;
  cfg.top_length.assign(static_cast<std::size_t>(std::max(depth, 0)), top);
  cfg.mult.resize(static_cast<std::size_t>(std::max(depth - 1, 0)));
  for (int n = 1; n < depth; ++n)
    cfg.mult[static_cast<std::size_t>(n) - 1].assign(static_cast<std::size_t>(n), m);
  return cfg;
}

void TowerConfig::validate() const {
  if (depth < 0) throw std::invalid_argument("config: depth must be nonnegative");
  if (top_length.size() != static_cast<std::size_t>(depth))
    throw std::invalid_argument("config: top_length needs one value per level 1..depth");
  for (int n = 1; n <= depth; ++n)
    if (top(n) < 2)
      throw std::invalid_argument("config: top circuit lengths must be at least 2");
  if (mult.size() != static_cast<std::size_t>(std::max(depth - 1, 0)))
    throw std::invalid_argument("config: mult needs one row per level 1..depth-1");
  for (int n = 1; n < depth; ++n) {
    if (mult[static_cast<std::size_t>(n) - 1].size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("config: mult row for level " + std::to_string(n) +
                                  " needs " + std::to_string(n) + " entries");
    for (int i = 1; i <= n; ++i)
      if (multiplicity(n, i) < 2)
        throw std::invalid_argument("config: multiplicities must be at least 2");
  }
}

std::string vertex_name(const VertexRef& v) {
  std::ostringstream os;
  if (v.is_base())
    os << "v_{" << v.level << ",0}";
  else
    os << "v_{" << v.level << "," << v.circuit << "," << v.pos.str() << "}";
  return os.str();
}

std::size_t PositionedWalk::locate(const BigInt& p) const {
  auto it = std::upper_bound(cum.begin(), cum.end(), p);
  return static_cast<std::size_t>(it - cum.begin()) - 1;
}

Tower::Tower(TowerConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  const int depth = cfg_.depth;
  len_.resize(static_cast<std::size_t>(depth) + 1);
  for (int n = 1; n <= depth; ++n) {
    auto& row = len_[static_cast<std::size_t>(n)];
    row.resize(static_cast<std::size_t>(n));
    row[static_cast<std::size_t>(n) - 1] = cfg_.top(n);
    if (n > 1) {
      const auto& prev = len_[static_cast<std::size_t>(n) - 1];
      for (int i = 1; i < n; ++i) {
        BigInt sum = 2;
        for (int k = i; k < n; ++k)
          sum += cfg_.multiplicity(n - 1, k) * prev[static_cast<std::size_t>(k) - 1];
        row[static_cast<std::size_t>(i) - 1] = sum;
      }
    }
  }
  tmpl_.resize(static_cast<std::size_t>(std::max(depth, 0)));
  truns_.resize(tmpl_.size());
  for (int n = 0; n < depth; ++n) {
    auto& row = tmpl_[static_cast<std::size_t>(n)];
    auto& runs = truns_[static_cast<std::size_t>(n)];
    row.resize(static_cast<std::size_t>(n) + 1);
    runs.resize(row.size());
    for (int i = 1; i <= n + 1; ++i) {
      SymWalk w;
      w.level = n;
      if (i == n + 1) {
        w.tokens.push_back({kLoopSym, cfg_.top(n + 1)});
      } else {
        w.tokens.push_back({kLoopSym, 1});
        for (int k = i; k <= n; ++k) w.tokens.push_back({k, cfg_.multiplicity(n, k)});
        w.tokens.push_back({kLoopSym, 1});
      }
      row[static_cast<std::size_t>(i) - 1] = std::move(w);
      runs[static_cast<std::size_t>(i) - 1] =
          position_walk(*this, row[static_cast<std::size_t>(i) - 1]);
    }
  }
}

const BigInt& Tower::circuit_length(int n, int i) const {
  if (n < 1 || n > cfg_.depth || i < 1 || i > n)
    throw std::out_of_range("circuit_length: indices out of range");
  return len_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i) - 1];
}

BigInt Tower::segment_length(int level, int sym) const {
  if (sym == kLoopSym) return 1;
  return circuit_length(level, sym);
}

BigInt Tower::level_vertex_count(int n) const {
  if (n < 0 || n > cfg_.depth) throw std::out_of_range("level_vertex_count: bad level");
  BigInt count = 1;
  for (int i = 1; i <= n; ++i) count += circuit_length(n, i) - 1;
  return count;
}

BigInt Tower::level_edge_count(int n) const {
  if (n < 0 || n > cfg_.depth) throw std::out_of_range("level_edge_count: bad level");
  BigInt count = 1;  // the loop
  for (int i = 1; i <= n; ++i) count += circuit_length(n, i);
  return count;
}

VertexRef Tower::base(int level) const {
  if (level < 0 || level > cfg_.depth) throw std::out_of_range("base: bad level");
  return VertexRef{level, 0, 0};
}

VertexRef Tower::vertex(int n, int i, const BigInt& pos) const {
  if (i == 0) {
    if (pos != 0) throw std::invalid_argument("vertex: base carries no position");
    return base(n);
  }
  const BigInt& len = circuit_length(n, i);
  if (pos < 0 || pos > len) throw std::out_of_range("vertex: position outside circuit");
  if (pos == 0 || pos == len) return base(n);
  return VertexRef{n, i, pos};
}

const SymWalk& Tower::cover_template(int n, int i) const {
  if (n < 0 || n >= cfg_.depth || i < 1 || i > n + 1)
    throw std::out_of_range("cover_template: indices out of range");
  return tmpl_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i) - 1];
}

const PositionedWalk& Tower::cover_template_runs(int n, int i) const {
  if (n < 0 || n >= cfg_.depth || i < 1 || i > n + 1)
    throw std::out_of_range("cover_template_runs: indices out of range");
  return truns_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i) - 1];
}

VertexRef Tower::template_image(int n, int i, const BigInt& pos) const {
  const PositionedWalk& runs = cover_template_runs(n, i);
  if (pos < 0 || pos > runs.total())
    throw std::out_of_range("template_image: position outside walk");
  return vertex_at(*this, runs, pos);
}

bool Tower::check_monotone_lengths() const {
  for (int m = 2; m <= cfg_.depth; ++m)
    for (int n = 1; n < m; ++n)
      for (int l = 1; l <= n; ++l)
        for (int lp = l; lp <= n; ++lp)
          if (circuit_length(m, l) <= circuit_length(n, lp)) return false;
  return true;
}

std::int64_t Tower::vertex_index(int n, const VertexRef& v) const {
  if (v.level != n) throw std::invalid_argument("vertex_index: level mismatch");
  if (v.is_base()) return 0;
  std::int64_t offset = 1;
  for (int i = 1; i < v.circuit; ++i)
    offset += to_i64(circuit_length(n, i) - 1);
  return offset + to_i64(v.pos) - 1;
}

VertexRef Tower::vertex_from_index(int n, std::int64_t id) const {
  if (id == 0) return base(n);
  std::int64_t offset = 1;
  for (int i = 1; i <= n; ++i) {
    std::int64_t interior = to_i64(circuit_length(n, i) - 1);
    if (id < offset + interior) return VertexRef{n, i, BigInt(id - offset + 1)};
    offset += interior;
  }
  throw std::out_of_range("vertex_from_index: id outside level");
}

GraphPtr Tower::materialize_level(int n, std::int64_t limit) const {
  if (n < 0 || n > cfg_.depth) throw std::out_of_range("materialize_level: bad level");
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = level_cache_.find(n);
    if (it != level_cache_.end()) return it->second;
  }
  BigInt count = level_vertex_count(n);
  if (count > limit)
    throw ExplicitLimitExceeded("materialize_level: level " + std::to_string(n) + " has " +
                                count.str() + " vertices, limit " + std::to_string(limit));
  const std::int64_t vcount = to_i64(count);
  std::vector<Edge> edges;
  edges.emplace_back(0, 0);  // the loop at the base
  std::int64_t next = 1;
  for (int i = 1; i <= n; ++i) {
    std::int64_t interior = to_i64(circuit_length(n, i) - 1);
    std::int64_t first = next;
    for (std::int64_t j = 0; j + 1 < interior; ++j) edges.emplace_back(first + j, first + j + 1);
    edges.emplace_back(0, first);
    edges.emplace_back(first + interior - 1, 0);
    next += interior;
  }
  auto g = std::make_shared<DirectedGraph>(vcount, std::move(edges));
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto [it, inserted] = level_cache_.emplace(n, std::move(g));
  (void)inserted;
  return it->second;
}

GraphHom Tower::materialize_cover(int n, std::int64_t limit) const {
  if (n < 0 || n >= cfg_.depth) throw std::out_of_range("materialize_cover: bad level");
  GraphHom h;
  h.target = materialize_level(n, limit);
  h.source = materialize_level(n + 1, limit);
  h.vmap.resize(static_cast<std::size_t>(h.source->vertex_count()));
  h.vmap[0] = 0;
  for (std::int64_t id = 1; id < h.source->vertex_count(); ++id) {
    VertexRef v = vertex_from_index(n + 1, id);
    VertexRef img = template_image(n, v.circuit, v.pos);
    h.vmap[static_cast<std::size_t>(id)] = vertex_index(n, img);
  }
  return h;
}

const PositionedWalk* Tower::projected_circuit(int n, int i, int m, std::int64_t run_limit) const {
  if (n < 1 || n > cfg_.depth || i < 1 || i > n || m < 0 || m > n)
    throw std::out_of_range("projected_circuit: indices out of range");
  const auto key = std::make_tuple(n, i, m);
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = proj_cache_.find(key);
    if (it != proj_cache_.end()) return it->second.get();
  }
  SymWalk w;
  w.level = n;
  w.tokens.push_back({i, 1});
  for (int lev = n; lev > m; --lev) {
    SymWalk next;
    next.level = lev - 1;
    auto append = [&](int sym, const BigInt& rep) {
      if (!next.tokens.empty() && next.tokens.back().sym == sym)
        next.tokens.back().rep += rep;
      else
        next.tokens.push_back({sym, rep});
      if (static_cast<std::int64_t>(next.tokens.size()) > run_limit)
        throw ExplicitLimitExceeded("projected_circuit: run count exceeds limit");
    };
    for (const Token& tok : w.tokens) {
      if (tok.sym == kLoopSym) {
        append(kLoopSym, tok.rep);
        continue;
      }
      const SymWalk& tpl = cover_template(lev - 1, tok.sym);
      if (tpl.tokens.size() == 1 && tpl.tokens[0].sym == kLoopSym) {
        append(kLoopSym, tpl.tokens[0].rep * tok.rep);
        continue;
      }
      for (BigInt c = 0; c < tok.rep; ++c)
        for (const Token& t2 : tpl.tokens) append(t2.sym, t2.rep);
    }
    w = std::move(next);
  }
  auto pw = std::make_unique<PositionedWalk>(position_walk(*this, w));
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto [it, inserted] = proj_cache_.emplace(key, std::move(pw));
  (void)inserted;
  return it->second.get();
}

PositionedWalk position_walk(const Tower& t, const SymWalk& w) {
  PositionedWalk pw;
  pw.level = w.level;
  pw.tokens = w.tokens;
  pw.unit_len.reserve(w.tokens.size());
  pw.cum.reserve(w.tokens.size() + 1);
  BigInt off = 0;
  pw.cum.push_back(off);
  for (const Token& tok : w.tokens) {
    BigInt unit = t.segment_length(w.level, tok.sym);
    pw.unit_len.push_back(unit);
    off += unit * tok.rep;
    pw.cum.push_back(off);
  }
  return pw;
}

VertexRef vertex_at(const Tower& t, const PositionedWalk& w, const BigInt& p) {
  if (p < 0 || p > w.total()) throw std::out_of_range("vertex_at: offset outside walk");
  if (p == w.total()) return t.base(w.level);
  std::size_t k = w.locate(p);
  const Token& tok = w.tokens[k];
  if (tok.sym == kLoopSym) return t.base(w.level);
  BigInt q = (p - w.cum[k]) % w.unit_len[k];
  return t.vertex(w.level, tok.sym, q);
}

}  // namespace covertower
