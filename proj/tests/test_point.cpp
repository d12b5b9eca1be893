#include <random>

#include "covertower/errors.hpp"
#include "covertower/point.hpp"
#include "covertower/symwalk.hpp"
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

}  // namespace

TEST_CASE("positional descent") {
  Tower t(TowerConfig::uniform(6));
  oracle::Oracle orc(t);

  CHECK(project_vertex(t, t.vertex(3, 1, 2), 2) == t.vertex(2, 1, 1));
  CHECK(project_vertex(t, t.vertex(3, 1, 2), 2) == orc.project_position(3, 1, 2, 2));
  CHECK(project_vertex(t, t.vertex(3, 1, 1), 2) == t.base(2));
  for (int n = 1; n <= 5; ++n)
    for (int m = 0; m <= n; ++m) CHECK(project_vertex(t, t.base(n), m) == t.base(m));

  // exhaustive agreement with the concatenation rows on small levels
  for (int n = 1; n <= 4; ++n)
    for (int i = 1; i <= n; ++i)
      for (BigInt p = 1; p < t.circuit_length(n, i); ++p)
        for (int m = 0; m < n; ++m)
          CHECK(project_vertex(t, t.vertex(n, i, p), m) == orc.project_position(n, i, p, m));

  // transitivity, sampled at depth 6
  std::mt19937_64 rng(555);
  for (int k = 0; k < 300; ++k) {
    PointAnchor a = random_anchor(t, rng, 6);
    VertexRef v = anchor_vertex(t, a);
    int m1 = static_cast<int>(rng() % 6);
    int m2 = static_cast<int>(rng() % (m1 + 1));
    CHECK(project_vertex(t, project_vertex(t, v, m1), m2) == project_vertex(t, v, m2));
  }
}

TEST_CASE("threads") {
  Tower t(TowerConfig::uniform(6));
  oracle::Oracle orc(t);

  Thread fp = thread_of(t, PointAnchor::fixed_point());
  for (const VertexRef& v : fp) CHECK(v.is_base());

  PointAnchor a = PointAnchor::at(t, 3, 1, 2);
  Thread th = thread_of(t, a);
  REQUIRE(th.size() == 4);
  CHECK(th[3] == t.vertex(3, 1, 2));
  for (int m = 0; m <= 3; ++m) CHECK(th[static_cast<std::size_t>(m)] == orc.project_position(3, 1, 2, m));
  CHECK(th[2] == t.vertex(2, 1, 1));

  // compatibility through the materialized covers
  GraphHom phi2 = t.materialize_cover(2);
  for (int m = 0; m < 3; ++m)
    CHECK(th[static_cast<std::size_t>(m)] == project_vertex(t, th[static_cast<std::size_t>(m) + 1], m));
  CHECK(t.vertex_index(2, th[2]) == phi2(t.vertex_index(3, th[3])));
}

TEST_CASE("remaining steps and degree") {
  Tower t(TowerConfig::uniform(6));
  CHECK(remn(t, t.vertex(2, 1, 1)) == 5);
  CHECK(remn(t, t.vertex(3, 1, 3)) == 15);
  CHECK(remn(t, t.vertex(4, 2, t.circuit_length(4, 2) - 1)) == 1);
  CHECK_THROWS_AS(remn(t, t.base(3)), std::invalid_argument);

  CHECK(deg(t.base(5)).infinite());
  CHECK(deg(t.vertex(3, 2, 4)) == Degree{2});

  std::mt19937_64 rng(99);
  for (int k = 0; k < 400; ++k) {
    PointAnchor a = random_anchor(t, rng, 6);
    VertexRef v = anchor_vertex(t, a);
    int m = static_cast<int>(rng() % 6);
    CHECK(degree_ge(deg(project_vertex(t, v, m)), deg(v)));
  }
}

TEST_CASE("orbit traces") {
  Tower t(TowerConfig::uniform(6));
  auto trace = orbit_trace(t, PointAnchor::at(t, 2, 1, 1), 1, 5);
  std::vector<VertexRef> expect = {t.base(1),         t.vertex(1, 1, 1), t.base(1),
                                   t.vertex(1, 1, 1), t.base(1),         t.base(1)};
  CHECK(trace == expect);

  auto fixed = orbit_trace(t, PointAnchor::fixed_point(), 2, 7);
  CHECK(fixed.size() == 8);
  for (const VertexRef& v : fixed) CHECK(v == t.base(2));

  CHECK_THROWS_AS(orbit_trace(t, PointAnchor::at(t, 2, 1, 1), 1, 6), HorizonExhausted);

  // within the horizon the anchor-level coordinate never leaves its circuit
  PointAnchor a = PointAnchor::at(t, 4, 2, 3);
  BigInt rem = *anchor_horizon(t, a);
  auto own = orbit_trace(t, a, 4, rem);
  for (std::size_t k = 0; k + 1 < own.size(); ++k) CHECK(own[k].circuit == 2);
  CHECK(own.back().is_base());

  // positional descent equals the concatenation route, sampled
  oracle::Oracle orc(t);
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 60; ++k) {
    int depth = 2 + static_cast<int>(rng() % 4);
    PointAnchor p = random_anchor(t, rng, depth);
    int res = static_cast<int>(rng() % (depth + 1));
    BigInt span = std::min(*anchor_horizon(t, p), BigInt(40));
    auto got = orbit_trace(t, p, res, span);
    for (BigInt s = 0; s <= span; ++s)
      CHECK(got[static_cast<std::size_t>(to_i64(s))] == orc.orbit_entry(p, res, s));
  }
}

TEST_CASE("dyadic distance") {
  Tower t(TowerConfig::uniform(6));
  Thread a = thread_of(t, PointAnchor::at(t, 4, 1, 5));
  CHECK(distance(a, a) == DyadicDistance{5, true});

  Thread p = thread_of(t, PointAnchor::fixed_point(), 4);
  Thread b = thread_of(t, PointAnchor::at(t, 4, 1, 4));
  // interior at level 1 differs from the base thread at level 1
  REQUIRE(!b[1].is_base());
  CHECK(distance(b, p) == DyadicDistance{1, false});

  std::mt19937_64 rng(31);
  for (int k = 0; k < 200; ++k) {
    Thread x = thread_of(t, random_anchor(t, rng, 5));
    Thread y = thread_of(t, random_anchor(t, rng, 5));
    CHECK(distance(x, y) == distance(y, x));
  }

  Thread shallow = thread_of(t, PointAnchor::fixed_point(), 3);
  CHECK_THROWS_AS(distance(a, shallow), std::invalid_argument);
}

TEST_CASE("anchor parsing") {
  Tower t(TowerConfig::uniform(6));
  CHECK(parse_anchor(t, "p") == PointAnchor::fixed_point());
  CHECK(parse_anchor(t, "3:1:2") == PointAnchor::at(t, 3, 1, 2));
  CHECK_THROWS_AS(parse_anchor(t, "3:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_anchor(t, "3:1:0"), std::invalid_argument);   // base position
  CHECK_THROWS_AS(parse_anchor(t, "3:1:18"), std::invalid_argument);  // endpoint position
  CHECK_THROWS_AS(parse_anchor(t, "3:9:1"), std::out_of_range);
}
