#include "covertower/point.hpp"

#include <sstream>
#include <stdexcept>

#include "covertower/errors.hpp"

namespace covertower {

PointAnchor PointAnchor::at(const Tower& t, int depth, int circuit, BigInt pos) {
  if (depth < 1 || depth > t.depth() || circuit < 1 || circuit > depth)
    throw std::out_of_range("anchor: indices out of range");
  if (pos <= 0 || pos >= t.circuit_length(depth, circuit))
    throw std::invalid_argument("anchor: position must be interior to the circuit");
  return PointAnchor{false, depth, circuit, std::move(pos)};
}

std::string PointAnchor::to_string() const {
  if (fixed) return "p";
  std::ostringstream os;
  os << depth << ":" << circuit << ":" << pos.str();
  return os.str();
}

PointAnchor parse_anchor(const Tower& t, const std::string& text) {
  if (text == "p") return PointAnchor::fixed_point();
  std::istringstream is(text);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(is, part, ':')) parts.push_back(part);
  if (parts.size() != 3) throw std::invalid_argument("anchor: expected D:i:j or p");
  try {
    int depth = std::stoi(parts[0]);
    int circuit = std::stoi(parts[1]);
    BigInt pos(parts[2]);
    return PointAnchor::at(t, depth, circuit, std::move(pos));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::out_of_range&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("anchor: cannot parse '" + text + "'");
  }
}

VertexRef anchor_vertex(const Tower& t, const PointAnchor& a) {
  if (a.fixed) return t.base(0);
  return t.vertex(a.depth, a.circuit, a.pos);
}

BigInt remn(const Tower& t, const VertexRef& v) {
  if (v.is_base()) throw std::invalid_argument("remn: undefined at the base vertex");
  return t.circuit_length(v.level, v.circuit) - v.pos;
}

std::optional<BigInt> anchor_horizon(const Tower& t, const PointAnchor& a) {
  if (a.fixed) return std::nullopt;
  return remn(t, anchor_vertex(t, a));
}

bool degree_ge(Degree a, Degree b) {
  if (a.infinite()) return true;
  if (b.infinite()) return false;
  return a.index >= b.index;
}

Degree deg(const VertexRef& v) { return Degree{v.circuit}; }

VertexRef project_vertex(const Tower& t, const VertexRef& v, int m) {
  if (m > v.level) throw std::out_of_range("project_vertex: target level above vertex");
  VertexRef cur = v;
  while (cur.level > m) {
    if (cur.is_base()) return t.base(m);
    cur = t.template_image(cur.level - 1, cur.circuit, cur.pos);
  }
  return cur;
}

Thread thread_of(const Tower& t, const PointAnchor& a, int depth) {
  if (depth < 0) depth = a.fixed ? t.depth() : a.depth;
  if (!a.fixed && depth != a.depth)
    throw std::invalid_argument("thread_of: anchored points have a fixed depth");
  Thread th;
  th.reserve(static_cast<std::size_t>(depth) + 1);
  if (a.fixed) {
    for (int lev = 0; lev <= depth; ++lev) th.push_back(t.base(lev));
    return th;
  }
  VertexRef top = anchor_vertex(t, a);
  for (int lev = 0; lev <= depth; ++lev) th.push_back(project_vertex(t, top, lev));
  return th;
}

std::vector<VertexRef> orbit_trace(const Tower& t, const PointAnchor& a, int N,
                                   const BigInt& steps) {
  if (steps < 0) throw std::invalid_argument("orbit_trace: negative step count");
  std::vector<VertexRef> out;
  if (a.fixed) {
    for (BigInt k = 0; k <= steps; ++k) out.push_back(t.base(N));
    return out;
  }
  if (N > a.depth) throw std::out_of_range("orbit_trace: resolution above anchor depth");
  BigInt horizon = *anchor_horizon(t, a);
  if (steps > horizon)
    throw HorizonExhausted("orbit_trace: requested " + steps.str() + " steps, anchor supports " +
                               horizon.str(),
                           horizon);
  for (BigInt k = 0; k <= steps; ++k) {
    VertexRef v = t.vertex(a.depth, a.circuit, a.pos + k);
    out.push_back(project_vertex(t, v, N));
  }
  return out;
}

std::string DyadicDistance::to_string() const {
  std::string s = "2^-" + std::to_string(exponent);
  if (upper_bound) s = "<=" + s;
  return s;
}

DyadicDistance distance(const Thread& x, const Thread& y) {
  if (x.size() != y.size()) throw std::invalid_argument("distance: threads of unequal depth");
  for (std::size_t lev = 1; lev < x.size(); ++lev)
    if (!(x[lev] == y[lev])) return DyadicDistance{static_cast<int>(lev), false};
  return DyadicDistance{static_cast<int>(x.size()), true};
}

}  // namespace covertower
