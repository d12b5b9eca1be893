#include "covertower/scramble.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "covertower/errors.hpp"

namespace covertower {

namespace {

// A stretch of steps during which one trajectory stays inside a single run.
// For circuit runs the in-circuit position is (phase + (t - t0)) mod mod;
// base segments use sym 0.
struct Seg {
  BigInt t0, t1;  // [t0, t1)
  int sym = kLoopSym;
  BigInt phase = 0;
  BigInt mod = 1;
};

// Segment of the trajectory that contains step t; t1 is clipped to `end`.
Seg seg_at(const Trajectory& traj, const BigInt& t, const BigInt& end) {
  if (traj.fixed) return {t, end, kLoopSym, 0, 1};
  const PositionedWalk& w = *traj.walk;
  BigInt p = traj.start + t;
  if (p >= w.total()) return {t, end, kLoopSym, 0, 1};  // final base vertex
  std::size_t k = w.locate(p);
  BigInt t1 = std::min(BigInt(w.cum[k + 1] - traj.start), end);
  const Token& tok = w.tokens[k];
  if (tok.sym == kLoopSym) return {t, t1, kLoopSym, 0, 1};
  return {t, t1, tok.sym, floor_mod(p - w.cum[k], w.unit_len[k]), w.unit_len[k]};
}

enum class ScanMode { vertex_differ, vertex_equal, both_base, degree_differ };

// First step in [t0, t1) satisfying the mode for two co-running segments,
// with phases given at t0. Every case reduces to O(1) congruence arithmetic.
std::optional<BigInt> seg_first(ScanMode mode, const BigInt& t0, const BigInt& t1, const Seg& sx,
                                const Seg& sy) {
  auto in_range = [&](const BigInt& v) -> std::optional<BigInt> {
    if (v < t1) return v;
    return std::nullopt;
  };
  auto in_range_opt = [&](std::optional<BigInt> v) -> std::optional<BigInt> {
    if (v && *v < t1) return v;
    return std::nullopt;
  };
  // Steps where a circuit segment sits on the base vertex.
  auto first_zero = [&](const Seg& s) { return next_congruent(t0, t0 - s.phase, s.mod); };
  const bool xe = sx.sym == kLoopSym;
  const bool ye = sy.sym == kLoopSym;

  switch (mode) {
    case ScanMode::vertex_equal: {
      if (xe && ye) return in_range(t0);
      if (xe != ye) return in_range(first_zero(xe ? sy : sx));
      if (sx.sym == sy.sym)
        return floor_mod(sx.phase - sy.phase, sx.mod) == 0 ? in_range(t0) : std::nullopt;
      return in_range_opt(
          next_congruent2(t0, t0 - sx.phase, sx.mod, t0 - sy.phase, sy.mod));
    }
    case ScanMode::vertex_differ: {
      if (xe && ye) return std::nullopt;
      if (xe != ye) {
        const Seg& c = xe ? sy : sx;
        if (c.phase != 0) return in_range(t0);
        return in_range(t0 + 1);  // next step is interior: circuit lengths exceed 1
      }
      if (sx.sym == sy.sym)
        return floor_mod(sx.phase - sy.phase, sx.mod) != 0 ? in_range(t0) : std::nullopt;
      if (!(sx.phase == 0 && sy.phase == 0)) return in_range(t0);
      return in_range(t0 + 1);
    }
    case ScanMode::both_base: {
      if (xe && ye) return in_range(t0);
      if (xe != ye) return in_range(first_zero(xe ? sy : sx));
      if (sx.sym == sy.sym)
        return floor_mod(sx.phase - sy.phase, sx.mod) == 0 ? in_range(first_zero(sx))
                                                           : std::nullopt;
      return in_range_opt(
          next_congruent2(t0, t0 - sx.phase, sx.mod, t0 - sy.phase, sy.mod));
    }
    case ScanMode::degree_differ: {
      if (xe && ye) return std::nullopt;
      if (xe != ye) {
        const Seg& c = xe ? sy : sx;
        if (c.phase != 0) return in_range(t0);
        return in_range(t0 + 1);
      }
      if (sx.sym == sy.sym) {
        if (floor_mod(sx.phase - sy.phase, sx.mod) == 0) return std::nullopt;
        return in_range(std::min(first_zero(sx), first_zero(sy)));
      }
      if (!(sx.phase == 0 && sy.phase == 0)) return in_range(t0);
      return in_range(t0 + 1);
    }
  }
  return std::nullopt;
}

std::optional<BigInt> scan_first(const Trajectory& x, const Trajectory& y, const BigInt& horizon,
                                 ScanMode mode) {
  BigInt end = horizon + 1;
  BigInt t = 0;
  while (t < end) {
    Seg a = seg_at(x, t, end);
    Seg b = seg_at(y, t, end);
    BigInt t1 = std::min(a.t1, b.t1);
    if (auto r = seg_first(mode, t, t1, a, b)) return r;
    t = t1;
  }
  return std::nullopt;
}

BigInt resolve_horizon(const Tower& t, const PointAnchor& x, const PointAnchor& y,
                       const std::optional<BigInt>& requested) {
  std::optional<BigInt> hx = anchor_horizon(t, x);
  std::optional<BigInt> hy = anchor_horizon(t, y);
  std::optional<BigInt> cap;
  if (hx && hy)
    cap = std::min(*hx, *hy);
  else if (hx)
    cap = hx;
  else if (hy)
    cap = hy;
  if (!requested) {
    if (!cap) return 0;  // two fixed points: the trace is constant anyway
    return *cap;
  }
  if (*requested < 0) throw std::invalid_argument("horizon: negative");
  if (cap && *requested > *cap)
    throw HorizonExhausted("horizon " + requested->str() + " exceeds the usable " + cap->str(),
                           *cap);
  return *requested;
}

}  // namespace

Trajectory trajectory(const Tower& t, const PointAnchor& a, int N, std::int64_t run_limit) {
  Trajectory traj;
  traj.level = N;
  if (a.fixed) {
    traj.fixed = true;
    return traj;
  }
  if (N > a.depth) throw std::out_of_range("trajectory: resolution above anchor depth");
  traj.walk = t.projected_circuit(a.depth, a.circuit, N, run_limit);
  traj.start = a.pos;
  traj.horizon = remn(t, anchor_vertex(t, a));
  return traj;
}

VertexRef trajectory_vertex(const Tower& t, const Trajectory& x, const BigInt& step) {
  if (x.fixed) return t.base(x.level);
  return vertex_at(t, *x.walk, x.start + step);
}

BigInt first_meet_base(const Tower& t, const PointAnchor& a, int N) {
  if (a.fixed) return 0;
  if (N > a.depth) throw std::out_of_range("first_meet_base: resolution above anchor depth");
  VertexRef coord = project_vertex(t, anchor_vertex(t, a), N);
  if (coord.is_base()) return 0;
  return remn(t, coord);
}

BigInt visit_count(const Tower& t, const PointAnchor& a, const VertexRef& target,
                   const BigInt& horizon) {
  if (horizon < 0) throw std::invalid_argument("visit_count: negative horizon");
  if (a.fixed) return target.is_base() ? horizon + 1 : BigInt(0);
  const int N = target.level;
  if (N > a.depth) throw std::out_of_range("visit_count: resolution above anchor depth");
  BigInt usable = *anchor_horizon(t, a);
  if (horizon > usable)
    throw HorizonExhausted("visit_count: horizon " + horizon.str() + " exceeds " + usable.str(),
                           usable);
  const PositionedWalk& w = *t.projected_circuit(a.depth, a.circuit, N);
  const BigInt lo = a.pos;
  const BigInt hi_ex = a.pos + horizon + 1;  // window [lo, hi_ex)
  BigInt count = 0;
  // Count congruent offsets per overlapping run.
  for (std::size_t k = (lo < w.total() ? w.locate(lo) : w.run_count()); k < w.run_count(); ++k) {
    BigInt s = std::max(w.cum[k], lo);
    BigInt e = std::min(w.cum[k + 1], hi_ex);
    if (s >= e) {
      if (w.cum[k] >= hi_ex) break;
      continue;
    }
    const Token& tok = w.tokens[k];
    if (tok.sym == kLoopSym) {
      if (target.is_base()) count += e - s;
      continue;
    }
    const BigInt& unit = w.unit_len[k];
    BigInt want;
    if (target.is_base())
      want = 0;
    else if (target.circuit == tok.sym)
      want = target.pos;
    else
      continue;
    BigInt first = w.cum[k] + want;
    first = next_congruent(s, first, unit);
    if (first < e) count += (e - 1 - first) / unit + 1;
  }
  if (w.total() < hi_ex && w.total() >= lo && target.is_base()) ++count;
  return count;
}

std::optional<BigInt> gap_at_level(const Tower& t, const PointAnchor& x, const PointAnchor& y,
                                   int n) {
  Thread tx = thread_of(t, x, x.fixed ? n : -1);
  Thread ty = thread_of(t, y, y.fixed ? n : -1);
  if (n >= static_cast<int>(tx.size()) || n >= static_cast<int>(ty.size()))
    throw std::out_of_range("gap_at_level: level above anchor depth");
  const VertexRef& u = tx[static_cast<std::size_t>(n)];
  const VertexRef& v = ty[static_cast<std::size_t>(n)];
  if (u.is_base() || v.is_base() || u.circuit != v.circuit) return std::nullopt;
  return v.pos - u.pos;
}

std::optional<BigInt> same_orbit_detect(const Tower& t, const PointAnchor& x,
                                        const PointAnchor& y, std::span<const int> levels) {
  std::optional<BigInt> shift;
  for (int n : levels) {
    auto g = gap_at_level(t, x, y, n);
    if (!g) return std::nullopt;
    if (shift && *shift != *g) return std::nullopt;
    shift = g;
  }
  return shift;
}

std::optional<BigInt> joint_meet(const Tower& t, const PointAnchor& x, const PointAnchor& y,
                                 int N) {
  BigInt horizon = resolve_horizon(t, x, y, std::nullopt);
  return scan_first(trajectory(t, x, N), trajectory(t, y, N), horizon, ScanMode::both_base);
}

std::optional<BigInt> first_divergence(const Tower& t, const PointAnchor& x, const PointAnchor& y,
                                       int N, std::optional<BigInt> horizon) {
  BigInt h = resolve_horizon(t, x, y, horizon);
  return scan_first(trajectory(t, x, N), trajectory(t, y, N), h, ScanMode::vertex_differ);
}

std::optional<BigInt> first_degree_divergence(const Tower& t, const PointAnchor& x,
                                              const PointAnchor& y, int N,
                                              std::optional<BigInt> horizon) {
  BigInt h = resolve_horizon(t, x, y, horizon);
  return scan_first(trajectory(t, x, N), trajectory(t, y, N), h, ScanMode::degree_differ);
}

std::string PairReport::to_string() const {
  std::ostringstream os;
  os << "pair x=" << x.to_string() << " y=" << y.to_string() << " level=" << level
     << " horizon=" << horizon.str();
  os << " joint_base=" << (joint_base ? joint_base->str() : "none");
  os << " divergence=" << (divergence ? divergence->str() : "none");
  os << " degree_divergence=" << (degree_divergence ? degree_divergence->str() : "none");
  os << " min_distance=" << min_distance.to_string()
     << " max_distance=" << max_distance.to_string();
  return os.str();
}

PairReport separation_report(const Tower& t, const PointAnchor& x, const PointAnchor& y, int N,
                             std::optional<BigInt> horizon) {
  PairReport rep;
  rep.x = x;
  rep.y = y;
  rep.level = N;
  rep.horizon = resolve_horizon(t, x, y, horizon);
  rep.joint_base =
      scan_first(trajectory(t, x, N), trajectory(t, y, N), rep.horizon, ScanMode::both_base);
  rep.divergence =
      scan_first(trajectory(t, x, N), trajectory(t, y, N), rep.horizon, ScanMode::vertex_differ);
  rep.degree_divergence =
      scan_first(trajectory(t, x, N), trajectory(t, y, N), rep.horizon, ScanMode::degree_differ);

  int min_depth;
  if (!x.fixed && !y.fixed)
    min_depth = std::min(x.depth, y.depth);
  else if (!x.fixed)
    min_depth = x.depth;
  else if (!y.fixed)
    min_depth = y.depth;
  else
    min_depth = 0;

  rep.max_distance = DyadicDistance{min_depth + 1, true};
  for (int m = 1; m <= min_depth; ++m) {
    if (scan_first(trajectory(t, x, m), trajectory(t, y, m), rep.horizon,
                   ScanMode::vertex_differ)) {
      rep.max_distance = DyadicDistance{m, false};
      break;
    }
  }
  rep.min_distance = DyadicDistance{1, false};
  for (int m = min_depth; m >= 1; --m) {
    if (scan_first(trajectory(t, x, m), trajectory(t, y, m), rep.horizon,
                   ScanMode::vertex_equal)) {
      rep.min_distance =
          (m == min_depth) ? DyadicDistance{min_depth + 1, true} : DyadicDistance{m + 1, false};
      break;
    }
  }
  return rep;
}

PointAnchor dense_anchor(const Tower& t, int N, int D) {
  if (N < 1 || D <= N || D > t.depth())
    throw std::out_of_range("dense_anchor: need 1 <= N < D <= depth");
  VertexRef u = t.vertex(N, 1, 1);
  for (int lev = N; lev < D; ++lev) {
    const PositionedWalk& runs = t.cover_template_runs(lev, 1);
    std::optional<BigInt> first;
    for (std::size_t k = 0; k < runs.run_count() && !first; ++k) {
      if (runs.tokens[k].sym != u.circuit) continue;
      first = runs.cum[k] + u.pos;
    }
    if (!first) throw std::logic_error("dense_anchor: no preimage found");
    u = t.vertex(lev + 1, 1, *first);
  }
  return PointAnchor::at(t, D, 1, u.pos);
}

PointAnchor lift_anchor(const Tower& t, const PointAnchor& a) {
  if (a.fixed) throw std::invalid_argument("lift_anchor: the fixed point has no lift");
  if (a.depth + 1 > t.depth()) throw std::out_of_range("lift_anchor: tower too shallow");
  const PositionedWalk& runs = t.cover_template_runs(a.depth, a.circuit);
  for (std::size_t k = 0; k < runs.run_count(); ++k) {
    if (runs.tokens[k].sym != a.circuit) continue;
    return PointAnchor::at(t, a.depth + 1, a.circuit, runs.cum[k] + a.pos);
  }
  throw std::logic_error("lift_anchor: no preimage found");
}

bool anchor_stabilized(const Tower& t, const PointAnchor& a) {
  if (a.fixed || a.depth < 1) return false;
  VertexRef below = project_vertex(t, anchor_vertex(t, a), a.depth - 1);
  return below.circuit == a.circuit;
}

bool coverage_check(const Tower& t, const PointAnchor& a, int n, std::int64_t limit) {
  if (n < 0) throw std::out_of_range("coverage_check: bad level");
  if (t.level_vertex_count(n) > limit)
    throw ExplicitLimitExceeded("coverage_check: level " + std::to_string(n) + " above limit");
  if (a.fixed) return n == 0;
  if (n > a.depth) throw std::out_of_range("coverage_check: level above anchor depth");
  if (n == 0) return true;
  const PositionedWalk& w = *t.projected_circuit(a.depth, a.circuit, n);
  const BigInt& start = a.pos;
  std::vector<bool> full(static_cast<std::size_t>(n) + 1, false);
  std::vector<BigInt> min_head(static_cast<std::size_t>(n) + 1, BigInt(-1));
  for (std::size_t k = w.locate(start); k < w.run_count(); ++k) {
    const Token& tok = w.tokens[k];
    if (tok.sym == kLoopSym) continue;
    BigInt s = std::max(w.cum[k], start);
    const BigInt& e = w.cum[k + 1];
    if (s >= e) continue;
    const BigInt& unit = w.unit_len[k];
    BigInt q0 = floor_mod(s - w.cum[k], unit);
    auto sym = static_cast<std::size_t>(tok.sym);
    if (q0 != 0) {
      if (min_head[sym] < 0 || q0 < min_head[sym]) min_head[sym] = q0;
      s += unit - q0;  // next unit boundary
    }
    if (s + unit <= e) full[sym] = true;
  }
  for (int i = 1; i <= n; ++i) {
    auto sym = static_cast<std::size_t>(i);
    if (!full[sym] && !(min_head[sym] >= 0 && min_head[sym] <= 1)) return false;
  }
  return true;
}

std::string WitnessReport::to_string() const {
  std::ostringstream os;
  os << "witness x=" << x.to_string() << " lifted=" << lifted.to_string()
     << " companion=" << companion.to_string() << " first_pos=" << first_pos.str()
     << " second_pos=" << second_pos.str() << " shift=" << shift.str() << " level=" << level
     << " horizon=" << horizon.str();
  os << " shared_depth_divergence="
     << (shared_depth_divergence ? shared_depth_divergence->str() : "none");
  os << " divergence=" << (divergence ? divergence->str() : "none");
  return os.str();
}

WitnessReport equicontinuity_witness(const Tower& t, const PointAnchor& x, int N) {
  if (x.fixed) throw std::invalid_argument("equicontinuity_witness: needs an anchored point");
  if (x.depth + 1 > t.depth())
    throw std::out_of_range("equicontinuity_witness: tower too shallow for the lift");
  if (N > x.depth) throw std::out_of_range("equicontinuity_witness: resolution above depth");
  const int D = x.depth;
  const PositionedWalk& runs = t.cover_template_runs(D, x.circuit);
  std::vector<BigInt> hits;
  for (std::size_t k = 0; k < runs.run_count() && hits.size() < 2; ++k) {
    if (runs.tokens[k].sym != x.circuit) continue;
    const BigInt& unit = runs.unit_len[k];
    for (BigInt u = 0; u < runs.tokens[k].rep && hits.size() < 2; ++u)
      hits.push_back(runs.cum[k] + u * unit + x.pos);
  }
  if (hits.size() < 2)
    throw std::logic_error("equicontinuity_witness: rewrite lacks a repeated copy");

  WitnessReport rep;
  rep.x = x;
  rep.first_pos = hits[0];
  rep.second_pos = hits[1];
  rep.lifted = PointAnchor::at(t, D + 1, x.circuit, hits[0]);
  rep.companion = PointAnchor::at(t, D + 1, x.circuit, hits[1]);
  rep.shift = hits[1] - hits[0];
  rep.level = N;
  rep.horizon = resolve_horizon(t, rep.lifted, rep.companion, std::nullopt);
  rep.shared_depth_divergence = first_divergence(t, rep.lifted, rep.companion, D);
  rep.divergence = first_divergence(t, rep.lifted, rep.companion, N);
  if (!rep.divergence)
    throw NoDivergenceWithinHorizon(
        "equicontinuity_witness: no separation at level " + std::to_string(N) + " within " +
        rep.horizon.str() + " steps; re-anchor deeper");
  return rep;
}

bool no_periodic_check(const Tower& t, int depth) {
  if (depth < 0 || depth + 1 > t.depth())
    throw std::out_of_range("no_periodic_check: tower too shallow");
  for (int n = 0; n <= depth; ++n)
    for (int i = 1; i <= n + 1; ++i) {
      const SymWalk& tpl = t.cover_template(n, i);
      if (tpl.tokens.size() == 1 && tpl.tokens[0].rep == 1) return false;
    }
  return true;
}

}  // namespace covertower
