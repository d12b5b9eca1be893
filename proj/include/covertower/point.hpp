// Finite-depth points of the inverse limit: cylinder anchors, positional
// projection, threads, degrees, orbit stepping and the dyadic metric.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covertower/tower.hpp"

namespace covertower {

// A point is named by a finite cylinder: either the globally base-anchored
// fixed point, or an interior vertex of one circuit at an anchor depth.
// Orbit data is exact up to the anchor's remaining steps; deeper questions
// need a deeper anchor.
struct PointAnchor {
  bool fixed = false;
  int depth = 0;
  int circuit = 0;
  BigInt pos = 0;

  static PointAnchor fixed_point() { return PointAnchor{true, 0, 0, 0}; }
  // Requires an interior position: the base vertex does not determine the
  // next step at its own level.
  static PointAnchor at(const Tower& t, int depth, int circuit, BigInt pos);

  bool operator==(const PointAnchor&) const = default;
  std::string to_string() const;
};

PointAnchor parse_anchor(const Tower& t, const std::string& text);

VertexRef anchor_vertex(const Tower& t, const PointAnchor& a);

// Steps remaining along the circuit until the base vertex.
BigInt remn(const Tower& t, const VertexRef& v);
// Largest usable orbit horizon from the anchor; nullopt for the fixed point.
std::optional<BigInt> anchor_horizon(const Tower& t, const PointAnchor& a);

// Circuit index of a vertex; the base vertex is treated as infinite.
struct Degree {
  int index = 0;  // 0 encodes infinity
  bool infinite() const { return index == 0; }
  bool operator==(const Degree&) const = default;
};
// True when a >= b with the base vertex on top.
bool degree_ge(Degree a, Degree b);
Degree deg(const VertexRef& v);

// Positional descent through the cover templates; agrees with the
// materialized covers wherever those exist.
VertexRef project_vertex(const Tower& t, const VertexRef& v, int m);

using Thread = std::vector<VertexRef>;  // index = level, 0..depth

Thread thread_of(const Tower& t, const PointAnchor& a, int depth = -1);

// Orbit positions 0..steps at resolution N. Throws HorizonExhausted when the
// anchor cannot support that many steps.
std::vector<VertexRef> orbit_trace(const Tower& t, const PointAnchor& a, int N,
                                   const BigInt& steps);

// Exact dyadic distance 2^-exponent, or an upper bound when two threads agree
// through their whole depth.
struct DyadicDistance {
  int exponent = 0;
  bool upper_bound = false;

  bool operator==(const DyadicDistance&) const = default;
  std::string to_string() const;
};

DyadicDistance distance(const Thread& x, const Thread& y);

}  // namespace covertower
