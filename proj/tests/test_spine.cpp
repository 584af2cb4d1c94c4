#include <doctest.h>

#include "helpers.hpp"
#include "spinelab/spine.hpp"

using namespace spinelab;
using namespace spinelab::test;

TEST_CASE("the n = 2 spine is a single point") {
  for (const FactorSystem& sys : {c2(2), make_system({cyclic(3), cyclic(2)})}) {
    SpineBall B = explore(sys, basepoint_star(sys), 5);
    CHECK(B.vertices.size() == 1);
    CHECK(B.edges.empty());
    CHECK_FALSE(B.truncated);
  }
}

TEST_CASE("n = 3 ball is a tree") {
  FactorSystem sys = c2(3);
  SpineBall B = explore(sys, basepoint_star(sys), 4);
  CHECK(B.edges.size() + 1 == B.vertices.size());
  for (const auto& v : B.vertices) CHECK(validate(sys, v.rep).empty());
}

TEST_CASE("explore records depths and replayable moves") {
  FactorSystem sys = c2(4);
  SpineBall B = explore(sys, basepoint_star(sys), 2);
  CHECK(B.depth[0] == 0);
  for (const auto& e : B.edges) {
    CHECK(std::abs(B.depth[e.a] - B.depth[e.b]) <= 1);
    GraphOfGroups Y = replay(sys, B.vertices[e.a].rep, e.move);
    CHECK(canonical_form(sys, Y) == B.vertices[e.b].key);
  }
  SpineBall capped = explore(sys, basepoint_star(sys), 4, 10);
  CHECK(capped.truncated);
}

TEST_CASE("spine distance") {
  FactorSystem sys = c2(4);
  GraphOfGroups X = basepoint_star(sys);
  CHECK(spine_distance(sys, X, X, 4) == 0);
  CHECK(spine_distance(sys, X, y_vertex(sys, 1), 4) == 1);
  CHECK(spine_adjacent(sys, X, y_vertex(sys, 2)));
  GraphOfGroups F = act_on_gog(sys, f_ij(sys, 1, 2), X);
  auto d = spine_distance(sys, X, F, 6);
  REQUIRE(d);
  CHECK(*d >= 2);
  CHECK(*d == 4);
  CHECK_FALSE(spine_distance(sys, X, F, 3));
}

TEST_CASE("classify") {
  FactorSystem sys = c2(4);
  GraphOfGroups X = basepoint_star(sys);
  auto tags = classify(sys, X);
  CHECK(tags.count("TypeX"));
  CHECK(tags.count("M4"));
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) CHECK(tags.count("K" + std::to_string(i) + std::to_string(j)));

  auto y = classify(sys, y_vertex(sys, 1));
  CHECK(y.count("TypeY"));
  CHECK_FALSE(y.count("TypeX"));

  GraphOfGroups K = star_with(sys, {{}, {}, {}, w(sys, {a(1), a(2)}), {}});
  auto k = classify(sys, K);
  CHECK(k.count("TypeX"));
  CHECK(k.count("K12"));
  CHECK_FALSE(k.count("K34"));
}

TEST_CASE("xy_path") {
  FactorSystem sys = c2(4);
  GraphOfGroups X = basepoint_star(sys);
  CHECK(xy_path(sys, X, X, OuterAutoWord{}).size() == 1);

  OuterAutoWord f = gen(sys, 3, w(sys, {a(1)}));
  auto path = xy_path(sys, X, act_on_gog(sys, f, X), f);
  REQUIRE(path.size() == 3);
  CHECK(classify(sys, path[1].rep).count("TypeY"));
  CHECK(equivalent(sys, path[2].rep, act_on_gog(sys, f, X)));

  OuterAutoWord g = gen(sys, 3, w(sys, {a(1), a(2)}));
  auto longer = xy_path(sys, X, act_on_gog(sys, g, X), g);
  CHECK(longer.size() == 5);
  for (size_t i = 0; i + 1 < longer.size(); ++i) CHECK(spine_adjacent(sys, longer[i].rep, longer[i + 1].rep));
}

TEST_CASE("recover_automorphism") {
  FactorSystem sys = c2(4);
  GraphOfGroups X = basepoint_star(sys);
  auto id = recover_automorphism(sys, X, X);
  REQUIRE(id);
  CHECK(id->gens.empty());

  GraphOfGroups S1 = star_with(sys, {{}, {}, {}, w(sys, {a(1)}), {}});
  auto phi = recover_automorphism(sys, X, S1);
  REQUIRE(phi);
  CHECK(equivalent(sys, act_on_gog(sys, *phi, X), S1));
  CHECK(outer_equal(sys, *phi, gen(sys, 3, w(sys, {a(1)}))));

  OuterAutoWord two = compose(gen(sys, 1, w(sys, {a(2)})), gen(sys, 3, w(sys, {a(2)})));
  GraphOfGroups S2 = act_on_gog(sys, two, X);
  std::vector<int> through;
  for (int i = 1; i <= 4; ++i) {
    GraphOfGroups Y = y_vertex(sys, i);
    if (spine_adjacent(sys, X, Y) && spine_adjacent(sys, Y, S2)) through.push_back(i);
  }
  CHECK(through == std::vector<int>{2});
  CHECK(spine_distance(sys, X, S2, 3) == 2);
  phi = recover_automorphism(sys, X, S2);
  REQUIRE(phi);
  CHECK(equivalent(sys, act_on_gog(sys, *phi, X), S2));
  CHECK(outer_equal(sys, *phi, two));
  for (const auto& g : phi->gens) CHECK(is_gamma_prime_generator(g));

  CHECK(error_kind([&] { recover_automorphism(sys, X, y_vertex(sys, 1)); }) == "NotTypeX");
}

TEST_CASE("stabilizer_sample at the basepoint") {
  FactorSystem sys = c2(4);
  GraphOfGroups X = basepoint_star(sys);
  auto gens = gamma_prime_generators(sys);
  auto sample = stabilizer_sample(sys, X, gens, 2);

  std::vector<OuterAutoWord> oracle{OuterAutoWord{}};
  std::vector<OuterAutoWord> letters = gens;
  for (const auto& g : gens) letters.push_back(invert(g));
  auto add = [&](const OuterAutoWord& f) {
    if (!equivalent(sys, act_on_gog(sys, f, X), X)) return;
    for (const auto& o : oracle)
      if (outer_equal(sys, o, f)) return;
    oracle.push_back(f);
  };
  for (const auto& g : letters) {
    add(g);
    for (const auto& h : letters) add(compose(g, h));
  }
  CHECK(sample.size() == oracle.size());
  bool has_identity = false;
  for (const auto& f : sample) {
    has_identity |= outer_equal(sys, f, OuterAutoWord{});
    CHECK(equivalent(sys, act_on_gog(sys, f, X), X));
  }
  CHECK(has_identity);
  CHECK_FALSE(equivalent(sys, act_on_gog(sys, gen(sys, 3, w(sys, {a(1)})), X), X));
}
