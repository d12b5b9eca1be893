#include "covertower/tower.hpp"
#include "doctest.h"

using namespace covertower;

TEST_CASE("config parsing") {
  TowerConfig cfg = parse_tower_config("depth = 5\ntop_length = 2\nmult = 2\n");
  CHECK(cfg.depth == 5);
  CHECK(cfg.top(3) == 2);
  CHECK(cfg.multiplicity(3, 2) == 2);

  TowerConfig lists = parse_tower_config(
      "# schedules as lists\n"
      "depth = 4\n"
      "top_length = 2, 3, 2, 5\n"
      "mult = 2 4 3\n");
  CHECK(lists.top(2) == 3);
  CHECK(lists.top(4) == 5);
  CHECK(lists.multiplicity(2, 1) == 4);
  CHECK(lists.multiplicity(3, 3) == 3);
  CHECK_NOTHROW(Tower{lists});

  TowerConfig defaults = parse_tower_config("depth = 3\n");
  CHECK(defaults.top(1) == 2);
}

TEST_CASE("config errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_tower_config("depth = 3\nmult == 2\n"),
                       doctest::Contains("line 2"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_tower_config("depth = 3\n\nwhat = 4\n"),
                       doctest::Contains("line 3"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_tower_config("depth = 3\ntop_length = 2 2\n"),
                       doctest::Contains("line 2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tower_config("top_length = 2\n"), std::invalid_argument);
  // schedule invariants enforce the excluded degenerate towers
  CHECK_THROWS_AS(parse_tower_config("depth = 4\nmult = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tower_config("depth = 4\ntop_length = 1\n"), std::invalid_argument);
}
