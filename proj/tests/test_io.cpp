#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "helpers.hpp"
#include "spinelab/io.hpp"
#include "spinelab/spine.hpp"
#include "spinelab/verify.hpp"

using namespace spinelab;
using namespace spinelab::test;

TEST_CASE("group and factor descriptors") {
  CHECK(group_from_json(json{{"cyclic", 3}}).order == 3);
  CHECK(group_from_json(json{{"symmetric", 3}}).order == 6);
  FiniteGroup t = group_from_json(json{{"table", {{0, 1}, {1, 0}}}, {"name", "Z2"}});
  CHECK(t.order == 2);
  CHECK(t.name == "Z2");
  CHECK(error_kind([] { group_from_json(json{{"table", "x"}}); }) == "ParseError");
  CHECK(error_kind([] { group_from_json(json::array()); }) == "ParseError");

  FactorSystem sys = factors_from_json(json{{"factors", {{{"cyclic", 2}}, {{"symmetric", 3}}}}});
  CHECK(sys == make_system({cyclic(2), symmetric(3)}));

  const std::string path = "spinelab_io_factors.json";
  {
    std::ofstream f(path);
    f << R"({"factors": [{"cyclic": 2}, {"cyclic": 3}, {"cyclic": 2}]})";
  }
  CHECK(load_factors(path) == make_system({cyclic(2), cyclic(3), cyclic(2)}));
  std::remove(path.c_str());
  CHECK(load_factors("C2,C2") == c2(2));
}

TEST_CASE("words, automorphisms and markings round-trip through JSON") {
  FactorSystem sys = make_system({cyclic(2), symmetric(3), cyclic(3), cyclic(2)});
  std::mt19937_64 rng(17);
  GraphOfGroups X = basepoint_star(sys);
  auto gens = gamma_prime_generators(sys);
  for (int t = 0; t < 100; ++t) {
    GraphOfGroups M = random_walk(sys, X, 1 + t % 6, rng);
    CHECK(marking_from_json(sys, json::parse(marking_to_json(M).dump())) == M);
    for (const auto& L : M.vertices) CHECK(word_from_json(sys, word_to_json(L.conj)) == L.conj);

    OuterAutoWord f;
    for (int k = 0; k < 1 + t % 3; ++k) f = compose(f, gens[rng() % gens.size()]);
    if (t % 2) f = invert(f);
    CHECK(auto_from_json(sys, json::parse(auto_to_json(f).dump())) == f);
  }
}

TEST_CASE("malformed input is rejected with the right kind") {
  FactorSystem sys = c2(4);
  json star = marking_to_json(basepoint_star(sys));
  json bad = star;
  bad["vertices"][4]["label"]["factor"] = 9;
  CHECK(error_kind([&] { marking_from_json(sys, bad); }) == "SystemMismatch");
  json missing = star;
  missing.erase("edges");
  CHECK(error_kind([&] { marking_from_json(sys, missing); }) == "ParseError");
  CHECK(error_kind([&] { word_from_json(sys, json{{1}}); }) == "ParseError");
  CHECK(error_kind([&] { word_from_json(sys, json{{1, 7}}); }) == "InvalidLetter");
  CHECK(error_kind([&] { auto_from_json(sys, json{{{"i", 1}, {"w", json::array()}}}); }) == "IdentityGenerator");
  CHECK(error_kind([] { read_json_file("/nonexistent/spinelab.json"); }) == "ParseError");
}

TEST_CASE("spine ball dumps") {
  FactorSystem sys = c2(3);
  SpineBall B = explore(sys, basepoint_star(sys), 2);
  json j = spine_ball_to_json(sys, B);
  CHECK(j["vertices"].size() == B.vertices.size());
  CHECK(j["edges"].size() == B.edges.size());
  CHECK(j["truncated"] == false);
  for (const auto& v : j["vertices"]) {
    CHECK(v.contains("key"));
    CHECK(v.contains("tags"));
    CHECK(marking_from_json(sys, v["marking"]).num_vertices() > 0);
  }
  CHECK(spine_ball_to_json(sys, B).dump() == j.dump());
  std::string dot = spine_ball_to_dot(sys, B);
  CHECK(dot.rfind("graph", 0) == 0);
  CHECK(marking_to_dot(basepoint_star(sys)).find("A3") != std::string::npos);
}
