// Finite-horizon verifiers for the dynamics: base visits, joint meets,
// orbit-shift detection, separation, density coverage, non-equicontinuity
// witnesses and periodic-point exclusion. All searches work on the
// run-length structure of projected walks; positions stay exact.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covertower/point.hpp"
#include "covertower/symwalk.hpp"

namespace covertower {

// Level-N view of an anchored orbit: a positioned walk plus the starting
// offset. The fixed point is the constant base trajectory.
struct Trajectory {
  int level = 0;
  bool fixed = false;
  const PositionedWalk* walk = nullptr;  // owned by the tower cache
  BigInt start = 0;
  std::optional<BigInt> horizon;  // nullopt: unbounded (fixed point)
};

Trajectory trajectory(const Tower& t, const PointAnchor& a, int N,
                      std::int64_t run_limit = kDefaultRunLimit);

VertexRef trajectory_vertex(const Tower& t, const Trajectory& x, const BigInt& step);

// Least step at which the level-N coordinate sits on the base vertex;
// always within the anchor horizon.
BigInt first_meet_base(const Tower& t, const PointAnchor& a, int N);

// Number of steps 0..horizon whose level-N coordinate equals target.
BigInt visit_count(const Tower& t, const PointAnchor& a, const VertexRef& target,
                   const BigInt& horizon);

// Signed positional difference of the two level-n coordinates when both sit
// inside the same circuit; nullopt otherwise.
std::optional<BigInt> gap_at_level(const Tower& t, const PointAnchor& x, const PointAnchor& y,
                                   int n);

// The constant gap across the requested levels, if there is one.
std::optional<BigInt> same_orbit_detect(const Tower& t, const PointAnchor& x,
                                        const PointAnchor& y, std::span<const int> levels);

// Least common step with both level-N coordinates on the base vertex.
std::optional<BigInt> joint_meet(const Tower& t, const PointAnchor& x, const PointAnchor& y,
                                 int N);

// Least step with differing level-N coordinates, searched up to the common
// horizon (or the given cap).
std::optional<BigInt> first_divergence(const Tower& t, const PointAnchor& x,
                                       const PointAnchor& y, int N,
                                       std::optional<BigInt> horizon = std::nullopt);

// Least step with differing level-N coordinate degrees.
std::optional<BigInt> first_degree_divergence(const Tower& t, const PointAnchor& x,
                                              const PointAnchor& y, int N,
                                              std::optional<BigInt> horizon = std::nullopt);

struct PairReport {
  PointAnchor x, y;
  int level = 0;
  BigInt horizon = 0;
  std::optional<BigInt> joint_base;
  std::optional<BigInt> divergence;
  std::optional<BigInt> degree_divergence;
  DyadicDistance min_distance, max_distance;

  std::string to_string() const;
};

PairReport separation_report(const Tower& t, const PointAnchor& x, const PointAnchor& y, int N,
                             std::optional<BigInt> horizon = std::nullopt);

// The anchor reached by following first preimages of the first interior
// vertex of circuit 1 from level N up to depth D.
PointAnchor dense_anchor(const Tower& t, int N, int D);

// One-level first-preimage lift staying in the same circuit.
PointAnchor lift_anchor(const Tower& t, const PointAnchor& a);

// True when the anchor's projection one level down still sits in the same
// circuit; the orbit's degree is already stable at such anchors.
bool anchor_stabilized(const Tower& t, const PointAnchor& a);

// Whether the orbit visits every vertex of the materialized level n before
// its horizon runs out.
bool coverage_check(const Tower& t, const PointAnchor& a, int n,
                    std::int64_t limit = kDefaultExplicitLimit);

struct WitnessReport {
  PointAnchor x;          // the anchor under test, at depth D
  PointAnchor lifted;     // its first lift into the circuit one level up
  PointAnchor companion;  // the second preimage position: same thread through D
  BigInt first_pos, second_pos;
  BigInt shift;  // companion = shift steps along the lifted orbit
  int level = 0;
  BigInt horizon = 0;
  std::optional<BigInt> shared_depth_divergence;  // first split at depth D
  std::optional<BigInt> divergence;               // first split at the requested level

  std::string to_string() const;
};

// Builds a cylinder-mate of x one level deeper and finds where the pair
// separates. Throws NoDivergenceWithinHorizon when the requested resolution
// shows no split within the common horizon.
WitnessReport equicontinuity_witness(const Tower& t, const PointAnchor& x, int N);

// No rewrite of a circuit is a single traversal of one lower circuit, for
// all covers up to the given depth; rules out periodic circuit chains.
bool no_periodic_check(const Tower& t, int depth);

}  // namespace covertower
