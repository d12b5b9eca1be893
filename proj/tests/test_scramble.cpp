#include <random>

#include "covertower/errors.hpp"
#include "covertower/scramble.hpp"
#include "doctest.h"
#include "support/oracle.hpp"

using namespace covertower;

namespace {

PointAnchor random_anchor(const Tower& t, std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> ci(1, depth);
  int circuit = ci(rng);
  std::int64_t len = to_i64(t.circuit_length(depth, circuit));
  std::uniform_int_distribution<std::int64_t> pj(1, len - 1);
  return PointAnchor::at(t, depth, circuit, pj(rng));
}

// Step-by-step references built on the concatenation rows.
std::optional<BigInt> brute_first(oracle::Oracle& orc, const PointAnchor& x, const PointAnchor& y,
                                  int N, const BigInt& horizon, int what) {
  for (BigInt s = 0; s <= horizon; ++s) {
    VertexRef a = orc.orbit_entry(x, N, s);
    VertexRef b = orc.orbit_entry(y, N, s);
    bool hit = false;
    if (what == 0) hit = !(a == b);                                    // differ
    else if (what == 1) hit = a.is_base() && b.is_base();              // both base
    else hit = !(deg(a) == deg(b));                                    // degree differ
    if (hit) return s;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("first base visit") {
  Tower t(TowerConfig::uniform(6));
  CHECK(first_meet_base(t, PointAnchor::at(t, 2, 1, 2), 1) == 1);
  CHECK(first_meet_base(t, PointAnchor::at(t, 2, 1, 2), 2) == 4);
  CHECK(first_meet_base(t, PointAnchor::fixed_point(), 3) == 0);

  // always within the horizon, and the trace really is at the base there
  oracle::Oracle orc(t);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    int depth = 2 + static_cast<int>(rng() % 4);
    PointAnchor a = random_anchor(t, rng, depth);
    int N = 1 + static_cast<int>(rng() % depth);
    BigInt s = first_meet_base(t, a, N);
    CHECK(s <= *anchor_horizon(t, a));
    CHECK(orc.orbit_entry(a, N, s).is_base());
    for (BigInt u = 0; u < s; ++u) CHECK(!orc.orbit_entry(a, N, u).is_base());
  }
}

TEST_CASE("visit counting") {
  Tower t(TowerConfig::uniform(8));
  PointAnchor a = PointAnchor::at(t, 3, 1, 1);
  CHECK(visit_count(t, a, t.vertex(1, 1, 1), 17) == 4);
  CHECK(visit_count(t, a, t.base(1), 17) >= 1);
  CHECK_THROWS_AS(visit_count(t, a, t.base(1), 18), HorizonExhausted);

  // against the step-by-step count
  oracle::Oracle orc(t);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 120; ++k) {
    int depth = 2 + static_cast<int>(rng() % 4);
    PointAnchor p = random_anchor(t, rng, depth);
    int N = 1 + static_cast<int>(rng() % depth);
    BigInt horizon = std::min(*anchor_horizon(t, p), BigInt(60));
    VertexRef target = (rng() % 3 == 0)
                           ? t.base(N)
                           : t.vertex(N, 1 + static_cast<int>(rng() % N),
                                      1 + static_cast<int>(rng() % 1));
    BigInt expect = 0;
    for (BigInt s = 0; s <= horizon; ++s)
      if (orc.orbit_entry(p, N, s) == target) ++expect;
    CHECK(visit_count(t, p, target, horizon) == expect);
  }

  // winding doubles along the lift family
  for (int D = 3; D <= 6; ++D) {
    PointAnchor x = PointAnchor::at(t, D, 1, 1);
    PointAnchor up = lift_anchor(t, x);
    VertexRef tau = t.vertex(2, 2, 1);
    BigInt base_count = visit_count(t, x, tau, *anchor_horizon(t, x));
    BigInt lift_count = visit_count(t, up, tau, *anchor_horizon(t, up));
    CHECK(base_count > 0);
    CHECK(lift_count >= 2 * base_count);
  }
}

TEST_CASE("gaps and orbit-shift detection") {
  Tower t(TowerConfig::uniform(6));
  PointAnchor x = PointAnchor::at(t, 3, 1, 2);
  PointAnchor y = PointAnchor::at(t, 3, 1, 8);
  CHECK(gap_at_level(t, x, x, 3) == BigInt(0));
  CHECK(gap_at_level(t, x, y, 3) == BigInt(6));
  CHECK(!gap_at_level(t, x, PointAnchor::at(t, 3, 2, 1), 3).has_value());
  CHECK(!gap_at_level(t, x, PointAnchor::fixed_point(), 3).has_value());

  std::vector<int> levels = {3};
  CHECK(same_orbit_detect(t, x, y, levels) == BigInt(6));
  std::vector<int> both = {2, 3};
  // projections of the +6 shift stay 6 apart inside the same circuit copy
  CHECK(gap_at_level(t, x, y, 2) == BigInt(6 % 6));
  CHECK(!same_orbit_detect(t, x, PointAnchor::fixed_point(), levels).has_value());
  CHECK(!same_orbit_detect(t, x, PointAnchor::at(t, 3, 2, 1), levels).has_value());

  PointAnchor deep_x = PointAnchor::at(t, 5, 1, 10);
  PointAnchor deep_y = PointAnchor::at(t, 5, 1, 16);
  std::vector<int> five = {5};
  CHECK(same_orbit_detect(t, deep_x, deep_y, five) == BigInt(6));
  (void)both;
}

TEST_CASE("scanner agrees with step-by-step search") {
  Tower t(TowerConfig::uniform(6));
  oracle::Oracle orc(t);
  std::mt19937_64 rng(20250101);
  for (int k = 0; k < 250; ++k) {
    int depth = 2 + static_cast<int>(rng() % 4);
    PointAnchor x = random_anchor(t, rng, depth);
    PointAnchor y = (rng() % 8 == 0) ? PointAnchor::fixed_point() : random_anchor(t, rng, depth);
    int N = 1 + static_cast<int>(rng() % std::min(depth, 3));
    BigInt horizon = x.fixed ? BigInt(0) : *anchor_horizon(t, x);
    if (!y.fixed) horizon = std::min(horizon, *anchor_horizon(t, y));
    CHECK(first_divergence(t, x, y, N) == brute_first(orc, x, y, N, horizon, 0));
    CHECK(joint_meet(t, x, y, N) == brute_first(orc, x, y, N, horizon, 1));
    CHECK(first_degree_divergence(t, x, y, N) == brute_first(orc, x, y, N, horizon, 2));
  }
}

TEST_CASE("joint meets") {
  Tower t(TowerConfig::uniform(6));
  oracle::Oracle orc(t);

  PointAnchor x = PointAnchor::at(t, 3, 1, 2);
  PointAnchor y = PointAnchor::at(t, 3, 1, 5);
  auto meet = joint_meet(t, x, y, 1);
  REQUIRE(meet.has_value());
  CHECK(*meet == *brute_first(orc, x, y, 1, BigInt(10), 1));
  CHECK(*meet == 2);

  CHECK(joint_meet(t, x, x, 1) == first_meet_base(t, x, 1));
  CHECK(joint_meet(t, PointAnchor::at(t, 4, 1, 2), PointAnchor::at(t, 4, 2, 1), 1).has_value());

  // exhaustive at small depth: a joint base visit always exists
  for (int i = 1; i <= 4; ++i)
    for (BigInt p = 1; p < t.circuit_length(4, i); ++p)
      for (int j = 1; j <= 4; ++j)
        for (BigInt q = 1; q < t.circuit_length(4, j); ++q) {
          PointAnchor a = PointAnchor::at(t, 4, i, p);
          PointAnchor b = PointAnchor::at(t, 4, j, q);
          CHECK(joint_meet(t, a, b, 1).has_value());
        }
}

TEST_CASE("separation reports") {
  Tower t(TowerConfig::uniform(6));
  PointAnchor x = PointAnchor::at(t, 3, 1, 2);
  PointAnchor y = PointAnchor::at(t, 3, 1, 8);

  PairReport rep = separation_report(t, x, y, 1);
  CHECK(rep.horizon == 10);
  // the shifted pair separates at full resolution first, one step later at level 1
  CHECK(rep.divergence == BigInt(7));
  CHECK(first_divergence(t, x, y, 2) == BigInt(6));
  CHECK(rep.max_distance == DyadicDistance{1, false});
  CHECK(rep.joint_base.has_value());

  PairReport same = separation_report(t, x, x, 1);
  CHECK(!same.divergence.has_value());
  CHECK(same.max_distance == DyadicDistance{4, true});
  CHECK(same.min_distance == DyadicDistance{4, true});

  PairReport degrees =
      separation_report(t, PointAnchor::at(t, 4, 1, 2), PointAnchor::at(t, 4, 2, 1), 2);
  CHECK(degrees.divergence.has_value());
  CHECK(degrees.degree_divergence.has_value());
}

TEST_CASE("dense anchors and coverage") {
  Tower t(TowerConfig::uniform(7));
  CHECK(dense_anchor(t, 1, 2) == PointAnchor::at(t, 2, 1, 2));
  CHECK(dense_anchor(t, 1, 3) == PointAnchor::at(t, 3, 1, 3));
  for (int D = 2; D <= 6; ++D) {
    PointAnchor a = dense_anchor(t, 1, D);
    CHECK(project_vertex(t, anchor_vertex(t, a), 1) == t.vertex(1, 1, 1));
  }

  CHECK(coverage_check(t, dense_anchor(t, 1, 3), 1));
  for (int n = 1; n <= 4; ++n) CHECK(coverage_check(t, dense_anchor(t, 1, n + 2), n));

  // a degree-2 anchor never reaches the interior of circuit 1
  CHECK_FALSE(coverage_check(t, PointAnchor::at(t, 4, 2, 1), 2));
  CHECK_FALSE(coverage_check(t, PointAnchor::fixed_point(), 1));

  // brute-force: coverage means every vertex id shows up in the full trace
  oracle::Oracle orc(t);
  PointAnchor a = dense_anchor(t, 1, 4);
  BigInt horizon = *anchor_horizon(t, a);
  std::vector<bool> seen(static_cast<std::size_t>(to_i64(t.level_vertex_count(2))), false);
  for (BigInt s = 0; s <= horizon; ++s)
    seen[static_cast<std::size_t>(t.vertex_index(2, orc.orbit_entry(a, 2, s)))] = true;
  bool all = true;
  for (bool b : seen) all = all && b;
  CHECK(all == coverage_check(t, a, 2));
}

TEST_CASE("lift and stabilization") {
  Tower t(TowerConfig::uniform(6));
  PointAnchor a = PointAnchor::at(t, 3, 2, 4);
  PointAnchor up = lift_anchor(t, a);
  CHECK(project_vertex(t, anchor_vertex(t, up), 3) == anchor_vertex(t, a));
  CHECK(up.circuit == a.circuit);

  CHECK(anchor_stabilized(t, PointAnchor::at(t, 3, 1, 2)));
  CHECK_FALSE(anchor_stabilized(t, PointAnchor::at(t, 3, 1, 1)));   // sits over the base
  CHECK_FALSE(anchor_stabilized(t, PointAnchor::at(t, 3, 2, 1)));   // projects into the loop run
  CHECK(anchor_stabilized(t, PointAnchor::at(t, 2, 1, 1)) == false);
}

TEST_CASE("equicontinuity witness") {
  Tower t(TowerConfig::uniform(8));
  oracle::Oracle orc(t);

  WitnessReport rep = equicontinuity_witness(t, PointAnchor::at(t, 2, 1, 1), 1);
  CHECK(rep.first_pos == 2);
  CHECK(rep.second_pos == 8);
  CHECK(rep.shift == 6);
  CHECK(rep.lifted == PointAnchor::at(t, 3, 1, 2));
  CHECK(rep.companion == PointAnchor::at(t, 3, 1, 8));
  // the companion shares the thread through the anchor depth
  Thread tx = thread_of(t, rep.lifted);
  Thread ty = thread_of(t, rep.companion);
  CHECK(tx[2] == ty[2]);
  CHECK(tx[1] == ty[1]);
  CHECK(!(tx[3] == ty[3]));
  // first split at the shared depth, then at resolution 1 a step later
  CHECK(rep.shared_depth_divergence == BigInt(6));
  CHECK(rep.divergence == BigInt(7));
  CHECK(*rep.shared_depth_divergence ==
        *brute_first(orc, rep.lifted, rep.companion, 2, rep.horizon, 0));
  CHECK(*rep.divergence == *brute_first(orc, rep.lifted, rep.companion, 1, rep.horizon, 0));

  // stabilized degree-1 anchors at small depths all yield witnesses
  for (int D = 3; D <= 4; ++D)
    for (BigInt p = 1; p < t.circuit_length(D, 1); ++p) {
      PointAnchor x = PointAnchor::at(t, D, 1, p);
      if (!anchor_stabilized(t, x)) continue;
      WitnessReport w = equicontinuity_witness(t, x, 1);
      CHECK(w.divergence.has_value());
      CHECK(w.shift == t.circuit_length(D, 1));
    }
}

TEST_CASE("no periodic circuit chains") {
  Tower t(TowerConfig::uniform(10));
  CHECK(no_periodic_check(t, 9));
  CHECK_THROWS_AS(no_periodic_check(t, 10), std::out_of_range);
}
