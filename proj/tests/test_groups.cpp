#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "helpers.hpp"

using namespace spinelab;
using spinelab::test::error_kind;

TEST_CASE("build_group accepts small tables and rejects broken ones") {
  FiniteGroup t = build_group({{0}}, "1");
  CHECK(t.order == 1);

  FiniteGroup g = build_group({{0, 1}, {1, 0}}, "C2");
  CHECK(g.order == 2);
  CHECK(g.inverses == std::vector<int>{0, 1});

  CHECK(error_kind([] { build_group({{0, 1}, {1, 1}}, "bad"); }) != "");
  CHECK(error_kind([] { build_group({{0, 1}}, "bad"); }) == "NotSquare");
}

TEST_CASE("build_group relabels so the identity is element 0") {
  // Z/2 with the identity stored at index 1.
  FiniteGroup g = build_group({{1, 0}, {0, 1}}, "C2");
  CHECK(g.mul(0, 1) == 1);
  CHECK(g.mul(1, 1) == 0);
}

TEST_CASE("cyclic groups") {
  CHECK(cyclic(1).order == 1);
  CHECK(cyclic(2).inv(1) == 1);
  CHECK(cyclic(3).inv(1) == 2);
  CHECK(cyclic(5).is_abelian());
  CHECK(error_kind([] { cyclic(0); }) == "InvalidOrder");
}

TEST_CASE("symmetric groups") {
  FiniteGroup s2 = symmetric(2);
  CHECK(s2.order == 2);
  CHECK(s2.table == cyclic(2).table);

  FiniteGroup s3 = symmetric(3);
  CHECK(s3.order == 6);
  bool commute_all = true;
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) commute_all &= s3.table[x][y] == s3.table[y][x];
  CHECK_FALSE(commute_all);
  CHECK_FALSE(s3.is_abelian());

  FiniteGroup s4 = symmetric(4);
  CHECK(s4.order == 24);
  std::vector<int> center;
  for (int x = 0; x < 24; ++x) {
    bool central = true;
    for (int y = 0; y < 24; ++y) central &= s4.table[x][y] == s4.table[y][x];
    if (central) center.push_back(x);
  }
  CHECK(center == std::vector<int>{0});
  CHECK(s4.center() == center);

  CHECK(error_kind([] { symmetric(1); }) == "InvalidOrder");
  CHECK(error_kind([] { symmetric(5); }) == "InvalidOrder");
}

TEST_CASE("built-in tables satisfy the group axioms") {
  for (const FiniteGroup& g : {cyclic(1), cyclic(4), cyclic(7), symmetric(3), symmetric(4)}) {
    CHECK(group_axioms(g.table));
    for (int x = 0; x < g.order; ++x) CHECK(g.mul(x, g.inv(x)) == 0);
  }
  CHECK_FALSE(group_axioms({{0, 1}, {1, 1}}));
}

TEST_CASE("factor spec mini-language") {
  FactorSystem sys = parse_factor_spec("C2,S3,C5");
  REQUIRE(sys.n() == 3);
  CHECK(sys.factor(1).order == 2);
  CHECK(sys.factor(2).order == 6);
  CHECK(sys.factor(3).order == 5);
  CHECK(error_kind([] { parse_factor_spec("C2,X3"); }) == "ParseError");
  CHECK(error_kind([] { parse_factor_spec(""); }) == "ParseError");
}
