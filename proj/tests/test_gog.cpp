#include <doctest.h>

#include <numeric>
#include <set>

#include "helpers.hpp"

using namespace spinelab;
using namespace spinelab::test;

namespace {

bool has_kind(const std::vector<std::string>& errs, const std::string& kind) {
  for (const auto& e : errs)
    if (e.rfind(kind + ":", 0) == 0) return true;
  return false;
}

// Admissible iff no component of the chosen edges holds two peripheral vertices.
bool admissible_subset(const GraphOfGroups& X, unsigned mask) {
  std::vector<int> parent(X.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v];
    return v;
  };
  for (int e = 0; e < X.num_edges(); ++e)
    if (mask >> e & 1) parent[find(X.edges[e].first)] = find(X.edges[e].second);
  std::vector<int> peripheral(X.num_vertices(), 0);
  for (int v = 0; v < X.num_vertices(); ++v)
    if (!X.vertices[v].trivial() && ++peripheral[find(v)] > 1) return false;
  return true;
}

int edge_towards(const GraphOfGroups& Y, int v, int factor) {
  for (int e : Y.incident(v))
    if (Y.vertices[Y.other_end(e, v)].factor == factor) return e;
  return -1;
}

}  // namespace

TEST_CASE("basepoint star shapes") {
  GraphOfGroups s2 = basepoint_star(c2(2));
  CHECK(s2.num_vertices() == 2);
  CHECK(s2.num_edges() == 1);

  for (int n : {3, 4, 5}) {
    FactorSystem sys = c2(n);
    GraphOfGroups X = basepoint_star(sys);
    CHECK(X.num_vertices() == n + 1);
    int hubs = 0;
    for (int v = 0; v < X.num_vertices(); ++v) {
      if (X.vertices[v].trivial()) {
        ++hubs;
        CHECK(X.degree(v) == n);
      } else {
        CHECK(X.degree(v) == 1);
        CHECK(X.vertices[v].conj.empty());
      }
    }
    CHECK(hubs == 1);
    CHECK(validate(sys, X).empty());
  }
  CHECK(error_kind([] { basepoint_star(c2(1)); }) == "TooFewFactors");
}

TEST_CASE("validate reports violated invariants") {
  FactorSystem sys = c2(3);
  GraphOfGroups X = basepoint_star(sys);
  GraphOfGroups leaf = X;
  leaf.vertices.push_back({});
  leaf.edges.push_back({0, 4});
  CHECK(has_kind(validate(sys, leaf), "DegreeTooLow"));

  GraphOfGroups big;
  big.vertices = {VertexLabel::peripheral(1, {}), {}, {}, VertexLabel::peripheral(2, {}), VertexLabel::peripheral(3, {})};
  big.edges = {{0, 1}, {1, 2}, {2, 3}, {2, 4}};
  CHECK(has_kind(validate(sys, big), "CountBound"));

  GraphOfGroups cyc = X;
  cyc.edges.push_back({1, 2});
  CHECK(has_kind(validate(sys, cyc), "NotTree"));

  GraphOfGroups twice = X;
  twice.vertices[3] = VertexLabel::peripheral(2, {});
  CHECK(has_kind(validate(sys, twice), "FactorCount"));
  CHECK(error_kind([&] { validate_or_throw(sys, twice); }) != "");
}

TEST_CASE("collapse") {
  FactorSystem sys = c2(4);
  GraphOfGroups X = basepoint_star(sys);
  GraphOfGroups Y1 = collapse(sys, X, {0});
  CHECK(Y1 == y_vertex(sys, 1));
  int c = Y1.vertex_of(1);
  CHECK(Y1.degree(c) == 3);
  CHECK(Y1.num_vertices() == 4);
  CHECK(error_kind([&] { collapse(sys, X, {0, 1}); }) == "Inadmissible");
  CHECK(error_kind([&] { collapse(sys, X, {}); }) == "EmptyCollapse");

  FactorSystem s2 = c2(2);
  CHECK(error_kind([&] { collapse(s2, basepoint_star(s2), {0}); }) == "Inadmissible");
}

TEST_CASE("enumerate_collapses matches a brute-force subset scan") {
  CHECK(enumerate_collapses(c2(2), basepoint_star(c2(2))).empty());
  for (int n : {3, 4}) {
    FactorSystem sys = c2(n);
    GraphOfGroups X = basepoint_star(sys);
    int expected = 0;
    for (unsigned mask = 1; mask < (1u << X.num_edges()); ++mask) {
      std::vector<int> ids;
      for (int e = 0; e < X.num_edges(); ++e)
        if (mask >> e & 1) ids.push_back(e);
      if (admissible_subset(X, mask)) {
        ++expected;
        CHECK(validate(sys, collapse(sys, X, ids)).empty());
      } else {
        CHECK(error_kind([&] { collapse(sys, X, ids); }) == "Inadmissible");
      }
    }
    auto got = enumerate_collapses(sys, X);
    CHECK(static_cast<int>(got.size()) == expected);
    CHECK(expected == n);
    for (const auto& [ids, Y] : got) CHECK(ids.size() == 1);
  }
}

TEST_CASE("expand") {
  FactorSystem sys = c2(4);
  GraphOfGroups X = basepoint_star(sys);

  GraphOfGroups H = expand(sys, X, {0, {2, 3}, false, {}});
  int trivial3 = 0;
  for (int v = 0; v < H.num_vertices(); ++v)
    if (H.vertices[v].trivial() && H.degree(v) == 3) ++trivial3;
  CHECK(trivial3 == 2);
  CHECK(H.num_vertices() == 6);

  GraphOfGroups Y1 = y_vertex(sys, 1);
  int c = Y1.vertex_of(1);
  CHECK(equivalent(sys, expand(sys, Y1, {c, Y1.incident(c), false, {}}), X));

  GraphOfGroups T = expand(sys, Y1, {c, Y1.incident(c), false, {{edge_towards(Y1, c, 3), 1}}});
  GraphOfGroups want = star_with(sys, {{}, {}, {}, w(sys, {a(1)}), {}});
  CHECK(equivalent(sys, T, want));
  CHECK_FALSE(equivalent(sys, T, X));

  CHECK(error_kind([&] { expand(sys, X, {0, {0, 1}, false, {{2, 1}}}); }) == "TwistOnTrivialVertex");
  CHECK(error_kind([&] { expand(sys, X, {0, {0}, false, {}}); }) == "DegreeViolation");
  CHECK(error_kind([&] { expand(sys, Y1, {c, Y1.incident(c), false, {{edge_towards(Y1, c, 3), 5}}}); }) ==
        "InvalidTwistElement");

  bool saw_x = false, saw_twisted = false;
  for (const auto& [spec, Y] : enumerate_expansions(sys, Y1)) {
    saw_x |= equivalent(sys, Y, X);
    saw_twisted |= equivalent(sys, Y, want);
  }
  CHECK(saw_x);
  CHECK(saw_twisted);
}

TEST_CASE("expansions stop at the maximal edge count") {
  FactorSystem sys = c2(2);
  CHECK(enumerate_expansions(sys, basepoint_star(sys)).empty());
  FactorSystem s3 = c2(3);
  CHECK(error_kind([&] { enumerate_expansions(s3, basepoint_star(s3)); }) == "MaxEdgesReached");
}

TEST_CASE("n = 3 star: distinct markings within two moves, deduplicated by the oracle") {
  FactorSystem sys = c2(3);
  GraphOfGroups X = basepoint_star(sys);
  std::vector<GraphOfGroups> frontier{X}, all;
  for (int step = 0; step < 2; ++step) {
    std::vector<GraphOfGroups> next;
    for (const auto& M : frontier) {
      for (auto& [ids, Y] : enumerate_collapses(sys, M)) next.push_back(Y);
      for (auto& [spec, Y] : raw_expansions(sys, M)) next.push_back(Y);
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = next;
  }
  const int r = default_oracle_radius(sys);
  std::vector<GraphOfGroups> reps;
  for (const auto& M : all) {
    if (equivariant_iso_oracle(sys, M, X, r)) continue;
    bool seen = false;
    for (const auto& R : reps) seen = seen || equivariant_iso_oracle(sys, M, R, r);
    if (!seen) reps.push_back(M);
  }
  CHECK(reps.size() == 6);
}

TEST_CASE("canonical forms") {
  FactorSystem s2 = c2(2);
  GraphOfGroups seg = basepoint_star(s2);
  GraphOfGroups seg2 = seg;
  seg2.vertices[1].conj = w(s2, {a(1)});
  CHECK(canonical_form(s2, seg) == canonical_form(s2, seg2));
  CHECK(equivariant_iso_oracle(s2, seg, seg2, default_oracle_radius(s2)));

  FactorSystem s3 = c2(3);
  Word x1 = w(s3, {a(1)}), x2 = w(s3, {a(2)});
  GraphOfGroups X = basepoint_star(s3);
  GraphOfGroups twisted = star_with(s3, {{}, {}, x1, x1});
  CHECK(equivalent(s3, X, twisted));
  CHECK(equivariant_iso_oracle(s3, X, twisted, default_oracle_radius(s3)));
  GraphOfGroups other = star_with(s3, {{}, {}, {}, x2});
  CHECK_FALSE(equivalent(s3, X, other));
  CHECK_FALSE(equivariant_iso_oracle(s3, X, other, 6));

  GraphOfGroups inner = act_on_gog(s3, compose({gen(s3, 2, x1), gen(s3, 3, x1)}), X);
  CHECK(canonical_form(s3, inner) == canonical_form(s3, X));

  GraphOfGroups perm = X;
  std::swap(perm.vertices[1], perm.vertices[3]);
  CHECK(canonical_form(s3, perm) == canonical_form(s3, X));

  GraphOfGroups back = decode_canonical(canonical_form(s3, other));
  CHECK(equivalent(s3, back, other));
}

TEST_CASE("Bass-Serre balls") {
  FactorSystem s2 = c2(2);
  BassSerreBall seg = bass_serre_ball(s2, basepoint_star(s2), 0, 2);
  CHECK(seg.nodes.size() == 5);
  int leaves = 0;
  for (const auto& nb : seg.adj) {
    CHECK(nb.size() <= 2);
    leaves += nb.size() == 1;
  }
  CHECK(leaves == 2);

  FactorSystem s3 = c2(3);
  GraphOfGroups X = basepoint_star(s3);
  BassSerreBall hub = bass_serre_ball(s3, X, 0, 1);
  CHECK(hub.nodes.size() == 4);

  FactorSystem s4 = c2(4);
  Word u = w(s4, {a(1), a(2)});
  GraphOfGroups M = star_with(s4, {{}, {}, {}, u, {}});
  BassSerreTree T(s4, M);
  BSNode v3 = T.node_at(M.vertex_of(3), Word{});
  CHECK(v3.rep == u);
  CHECK(T.stabilizer(v3) == VertexLabel::peripheral(3, u));
  CHECK(T.stabilizer(T.factor_vertex(3)) == VertexLabel::peripheral(3, {}));

  BassSerreBall small = bass_serre_ball(T, T.factor_vertex(1), 3);
  BassSerreBall large = bass_serre_ball(T, T.factor_vertex(1), 4);
  for (size_t i = 0; i < small.nodes.size(); ++i) {
    int j = large.find(small.nodes[i]);
    REQUIRE(j >= 0);
    CHECK(large.depth[j] == small.depth[i]);
    for (int nb : small.adj[i]) {
      int k = large.find(small.nodes[nb]);
      CHECK(std::find(large.adj[j].begin(), large.adj[j].end(), k) != large.adj[j].end());
    }
  }
}
