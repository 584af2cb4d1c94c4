#include "spinelab/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "spinelab/autos.hpp"
#include "spinelab/error.hpp"
#include "spinelab/metrics.hpp"
#include "spinelab/spine.hpp"

namespace spinelab {

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << "FIRST FAILURE: " << why << "; ";
    pass = false;
  }
};

std::string system_name(const FactorSystem& sys) {
  std::string s;
  for (int i = 1; i <= sys.n(); ++i) s += (i > 1 ? "," : "") + sys.factor(i).name;
  return s;
}

std::vector<FactorSystem> systems_or(const VerifyOptions& opt, std::initializer_list<const char*> specs) {
  if (opt.factors) return {*opt.factors};
  std::vector<FactorSystem> out;
  for (const char* s : specs) out.push_back(parse_factor_spec(s));
  return out;
}

FactorSystem system_or(const VerifyOptions& opt, const char* spec, int need_n = 0) {
  FactorSystem sys = opt.factors ? *opt.factors : parse_factor_spec(spec);
  if (need_n && sys.n() != need_n)
    fail_input("SystemMismatch", "this suite needs " + std::to_string(need_n) + " factors");
  return sys;
}

void suite_g2_point(const VerifyOptions& opt, Outcome& o) {
  for (const auto& sys : systems_or(opt, {"C2,C2", "C3,C2"})) {
    if (sys.n() != 2) fail_input("SystemMismatch", "g2-point needs two factors");
    SpineBall B = explore(sys, basepoint_star(sys), 3);
    o.detail << system_name(sys) << ": " << B.vertices.size() << " spine vertex, " << B.edges.size() << " edges; ";
    if (B.vertices.size() != 1 || !B.edges.empty()) o.fail(system_name(sys) + " spine is not a point");
  }
}

void suite_g3_tree(const VerifyOptions& opt, Outcome& o) {
  const FactorSystem sys = system_or(opt, "C2,C2,C2", 3);
  SpineBall B = explore(sys, basepoint_star(sys), 6);
  const size_t V = B.vertices.size(), E = B.edges.size();
  std::vector<std::vector<int>> adj(V);
  for (const auto& e : B.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<bool> seen(V, false);
  std::deque<int> q{0};
  seen[0] = true;
  size_t reached = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        q.push_back(y);
      }
  }
  o.detail << "radius 6: V=" << V << " E=" << E << " reached=" << reached << (B.truncated ? " (truncated)" : "");
  if (B.truncated) o.fail("ball truncated");
  if (E + 1 != V) o.fail("|E| != |V|-1");
  if (reached != V) o.fail("ball not connected");
}

void suite_counts(const VerifyOptions& opt, Outcome& o) {
  for (const auto& sys : systems_or(opt, {"C2,C2,C2", "C2,C2,C2,C2"})) {
    const int n = sys.n();
    SpineBall B = explore(sys, basepoint_star(sys), 3);
    int bad = 0;
    for (const auto& v : B.vertices) {
      const int V = v.rep.num_vertices(), E = v.rep.num_edges();
      if (V < n || V > 2 * (n - 1) || E < n - 1 || E > 2 * n - 3) ++bad;
    }
    o.detail << system_name(sys) << ": " << B.vertices.size() << " vertices checked, " << bad << " violations; ";
    if (bad) o.fail("count bound violated for " + system_name(sys));
  }
}

void suite_inner(const VerifyOptions& opt, Outcome& o) {
  for (const auto& sys : systems_or(opt, {"C2,C2,C2,C2", "S3,C2,C2,C2"})) {
    int checked = 0;
    for (int f = 1; f <= sys.n(); ++f)
      for (int a = 1; a < sys.factor(f).order; ++a) {
        OuterAutoWord prod;
        for (int k = 1; k <= sys.n(); ++k) prod = compose(prod, gen(sys, k, f, a));
        auto h = is_inner(sys, prod);
        ++checked;
        if (!h || !(*h == letter_word(sys, f, a)))
          o.fail("product for " + std::to_string(f) + "." + std::to_string(a) + " not inner by that element");
      }
    for (int f = 2; f <= sys.n(); ++f)
      for (int b = 1; b < sys.factor(f).order; ++b) {
        ++checked;
        if (is_inner(sys, gen(sys, 1, f, b))) o.fail("gen(1,[b]) reported inner");
      }
    o.detail << system_name(sys) << ": " << checked << " cases; ";
  }
}

// All reduced words over the given factors of length 1..max_len.
std::vector<Word> reduced_words(const FactorSystem& sys, const std::vector<int>& factors, int max_len) {
  std::vector<Word> out, layer{Word{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (int f : factors) {
        if (!w.empty() && w.back().factor == f) continue;
        for (int a = 1; a < sys.factor(f).order; ++a) next.push_back(mul(sys, w, letter_word(sys, f, a)));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

void suite_injectivity(const VerifyOptions& opt, Outcome& o) {
  const FactorSystem sys = system_or(opt, "C2,C2,C2,C2");
  const GraphOfGroups X = basepoint_star(sys);
  std::vector<int> others;
  for (int f = 2; f <= sys.n(); ++f) others.push_back(f);
  const auto words = reduced_words(sys, others, 3);
  for (const auto& w : words)
    if (equivalent(sys, act_on_gog(sys, gen(sys, 1, w), X), X)) o.fail("f_A1^" + to_string(w) + " fixes X");
  o.detail << words.size() << " reduced words of length <= 3 checked";
}

void suite_commutation(const VerifyOptions& opt, Outcome& o) {
  const FactorSystem sys = system_or(opt, "C2,C2,C2,C2");
  std::vector<Word> gens_x;
  for (int f = 1; f <= sys.n(); ++f)
    for (int e = 1; e < sys.factor(f).order; ++e) gens_x.push_back(letter_word(sys, f, e));
  int cases = 0;
  for (int k = 1; k <= sys.n(); ++k)
    for (int m = 1; m <= sys.n(); ++m) {
      if (k == m) continue;
      for (int fu = 1; fu <= sys.n(); ++fu)
        for (int fv = 1; fv <= sys.n(); ++fv) {
          if (fu == k || fu == m || fv == k || fv == m) continue;
          for (int a = 1; a < sys.factor(fu).order; ++a)
            for (int b = 1; b < sys.factor(fv).order; ++b) {
              const auto gu = gen(sys, k, fu, a), gv = gen(sys, m, fv, b);
              const auto uv = compose(gu, gv), vu = compose(gv, gu);
              ++cases;
              for (const auto& x : gens_x)
                if (!(apply_word(sys, uv, x) == apply_word(sys, vu, x))) o.fail("maps differ on " + to_string(x));
            }
        }
    }
  o.detail << cases << " (k,m,u,v) cases checked on " << gens_x.size() << " generators";
}

void suite_g_bounds(const VerifyOptions&, Outcome& o) {
  const FactorSystem sys = parse_factor_spec("C2,C2,C2,C2");
  const GraphOfGroups X = basepoint_star(sys);
  const auto f = f_ij(sys, 1, 2);
  for (int m = 1; m <= 2; ++m) {
    const GraphOfGroups Y = act_on_tree(sys, power(f, m), X);
    const int gx = g_count(sys, X, 3, 1, 2, m), gy = g_count(sys, Y, 3, 1, 2, m);
    const auto d = spine_distance(sys, X, Y, 4 * m);
    o.detail << "m=" << m << ": g(X)=" << gx << " g(f^m T_X)=" << gy << " d=" << (d ? std::to_string(*d) : "AboveCap")
             << "; ";
    if (gx != 2 * m) o.fail("g(X) != 2m");
    if (gy != 0) o.fail("g(f^m T_X) != 0");
    if (d && *d < 2 * m) o.fail("distance below 2m");
  }
}

void suite_lipschitz(const VerifyOptions&, Outcome& o) {
  const FactorSystem sys = parse_factor_spec("C2,C2,C2,C2");
  SpineBall B = explore(sys, basepoint_star(sys), 4);
  std::vector<std::array<int, 3>> triples;
  for (int k = 1; k <= 4; ++k)
    for (int i1 = 1; i1 <= 4; ++i1)
      for (int i2 = 1; i2 <= 4; ++i2)
        if (k != i1 && k != i2 && i1 != i2) triples.push_back({k, i1, i2});
  std::vector<std::vector<int>> g(B.vertices.size());
  for (size_t v = 0; v < B.vertices.size(); ++v)
    for (const auto& t : triples)
      for (int m = 0; m <= 2; ++m) g[v].push_back(g_count(sys, B.vertices[v].rep, t[0], t[1], t[2], m));
  int g_bad = 0;
  for (const auto& e : B.edges)
    for (size_t c = 0; c < g[e.a].size(); ++c)
      if (std::abs(g[e.a][c] - g[e.b][c]) > 1) ++g_bad;
  std::vector<GraphOfGroups> R;
  for (const auto& v : B.vertices) R.push_back(retract_Lij(sys, v.rep, 1, 2));
  NeighborCache cache(sys);
  int r_bad = 0;
  for (const auto& e : B.edges)
    if (!spine_distance(sys, R[e.a], R[e.b], 2, 1, &cache)) ++r_bad;
  o.detail << B.edges.size() << " edges x " << g[0].size() << " (k,i1,i2,m) tuples: " << g_bad
           << " g violations; " << r_bad << " L12 violations";
  if (g_bad) o.fail("g not 1-Lipschitz");
  if (r_bad) o.fail("L12 moved an edge more than 2");
}

void suite_retraction(const VerifyOptions& opt, Outcome& o) {
  const FactorSystem sys = parse_factor_spec("C2,C2,C2,C2");
  SpineBall B = explore(sys, basepoint_star(sys), 3);
  std::mt19937_64 rng(opt.seed);
  std::vector<size_t> idx(B.vertices.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(std::min<size_t>(100, idx.size()));
  int bad = 0, fixed_checked = 0;
  auto check = [&](const GraphOfGroups& X, const std::string& tag, const std::function<GraphOfGroups(const GraphOfGroups&)>& L) {
    const GraphOfGroups R = L(X);
    if (!classify(sys, R).count(tag)) {
      ++bad;
      o.fail("image not in " + tag);
    }
    if (!equivalent(sys, L(R), R)) {
      ++bad;
      o.fail("retraction " + tag + " not idempotent");
    }
    if (classify(sys, X).count(tag)) {
      ++fixed_checked;
      if (!equivalent(sys, R, X)) {
        ++bad;
        o.fail("retraction " + tag + " moved a member");
      }
    }
  };
  for (size_t v : idx) {
    const GraphOfGroups& X = B.vertices[v].rep;
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j)
        check(X, "K" + std::to_string(i) + std::to_string(j),
              [&](const GraphOfGroups& Z) { return retract_Lij(sys, Z, i, j); });
    check(X, "M4", [&](const GraphOfGroups& Z) { return retract_L4(sys, Z); });
  }
  o.detail << idx.size() << " sampled vertices x 7 retractions; " << fixed_checked << " fixed-point checks; " << bad
           << " violations";
}

void suite_oracle(const VerifyOptions& opt, Outcome& o) {
  std::mt19937_64 rng(opt.seed + 1);
  int pairs = 0, represented = 0, equivalent_pairs = 0, disagree = 0;
  for (const char* spec : {"C2,C2,C2", "C2,C2,C2,C2"}) {
    const FactorSystem sys = parse_factor_spec(spec);
    const GraphOfGroups X = basepoint_star(sys);
    const int R = default_oracle_radius(sys);
    std::uniform_int_distribution<int> steps(0, 6);
    for (int t = 0; t < 105; ++t) {
      const GraphOfGroups a = random_walk(sys, X, steps(rng), rng);
      const bool re = t % 3 == 0;
      const GraphOfGroups b = re ? re_present(sys, a, rng) : random_walk(sys, X, steps(rng), rng);
      const bool canon = canonical_form(sys, a) == canonical_form(sys, b);
      const bool oracle = equivariant_iso_oracle(sys, a, b, R);
      ++pairs;
      represented += re;
      equivalent_pairs += oracle;
      if (canon != oracle) {
        ++disagree;
        o.fail(std::string("disagreement on a ") + spec + " pair");
      }
      if (re && !oracle) o.fail("re-presented pair judged inequivalent");
    }
  }
  o.detail << pairs << " pairs (" << represented << " re-presented, " << equivalent_pairs << " equivalent), "
           << disagree << " disagreements";
  if (pairs < 200 || represented < 50) o.fail("too few pairs");
}

void suite_roundtrip(const VerifyOptions&, Outcome& o) {
  const FactorSystem sys = parse_factor_spec("C2,C2,C2,C2");
  SpineBall B = explore(sys, basepoint_star(sys), 2);
  int checked = 0;
  for (const auto& v : B.vertices)
    for (const auto& [spec, Y] : raw_expansions(sys, v.rep)) {
      ++checked;
      if (!equivalent(sys, collapse(sys, Y, {Y.num_edges() - 1}), v.rep)) o.fail("collapse does not undo expansion");
    }
  o.detail << B.vertices.size() << " vertices, " << checked << " expansions round-tripped";
}

void suite_xy(const VerifyOptions& opt, Outcome& o) {
  const FactorSystem sys = parse_factor_spec("C2,C2,C2,C2");
  const GraphOfGroups X = basepoint_star(sys);
  const auto gens = gamma_prime_generators(sys);
  std::mt19937_64 rng(opt.seed + 2);
  std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> len(1, 3), sign(0, 1);
  size_t longest = 0;
  for (int t = 0; t < 50; ++t) {
    OuterAutoWord phi;
    for (int l = len(rng); l > 0; --l) {
      const auto& g = gens[pick(rng)];
      phi = compose(phi, sign(rng) ? g : invert(g));
    }
    const GraphOfGroups Y = act_on_gog(sys, phi, X);
    const auto path = xy_path(sys, X, Y, phi);
    longest = std::max(longest, path.size());
    if (path.empty() || path.front().key != canonical_form(sys, X) || path.back().key != canonical_form(sys, Y))
      o.fail("path endpoints wrong");
    for (size_t s = 0; s < path.size(); ++s) {
      auto tags = classify(sys, path[s].rep);
      if (!tags.count("TypeX") && !tags.count("TypeY")) o.fail("path vertex neither X nor Y");
      if (s && !spine_adjacent(sys, path[s - 1].rep, path[s].rep)) o.fail("path step not a spine edge");
    }
  }
  o.detail << "50 witnesses, longest path " << longest << " vertices";
}

void suite_recover(const VerifyOptions&, Outcome& o) {
  const FactorSystem sys = parse_factor_spec("C2,C2,C2,C2");
  const GraphOfGroups X = basepoint_star(sys);
  SpineBall B = explore(sys, X, 2);
  int checked = 0;
  for (size_t v = 0; v < B.vertices.size(); ++v) {
    if (B.depth[v] != 2 || !classify(sys, B.vertices[v].rep).count("TypeX")) continue;
    ++checked;
    auto phi = recover_automorphism(sys, X, B.vertices[v].rep);
    if (!phi) {
      o.fail("no automorphism recovered");
      continue;
    }
    for (const auto& g : phi->gens)
      if (!is_gamma_prime_generator(g)) o.fail("recovered word uses a non-generator");
    if (!equivalent(sys, act_on_gog(sys, *phi, X), B.vertices[v].rep)) o.fail("recovered automorphism misses target");
  }
  o.detail << checked << " type X vertices at distance 2";
  if (!checked) o.fail("no type X vertices at distance 2");
}

void suite_zz(const VerifyOptions&, Outcome& o) {
  const FactorSystem sys = parse_factor_spec("C2,C2,C2,C2");
  const auto a = f_ij(sys, 1, 2), b = f_ij(sys, 3, 4);
  if (!outer_equal(sys, compose(a, b), compose(b, a))) o.fail("f12 and f34 do not commute");
  int equal_cases = 0;
  for (int m = 0; m <= 2; ++m)
    for (int l = 0; l <= 2; ++l) {
      const bool eq = outer_equal(sys, power(a, m), power(b, l));
      equal_cases += eq;
      if (eq != (m == 0 && l == 0)) o.fail("unexpected coincidence at m=" + std::to_string(m) + " l=" + std::to_string(l));
    }
  o.detail << "commute; " << equal_cases << " of 9 (m,l) pairs coincide";
}

void suite_bs_geometry(const VerifyOptions&, Outcome& o) {
  const FactorSystem sys = parse_factor_spec("C2,C2,C2,C2");
  const GraphOfGroups X = basepoint_star(sys);
  const auto f = f_ij(sys, 1, 2);
  for (int m = 1; m <= 2; ++m) {
    const GraphOfGroups Y = act_on_tree(sys, power(f, m), X);
    BassSerreTree T(sys, Y);
    BassSerreBall B = bass_serre_ball(T, T.factor_vertex(1), 4 * m + 4);
    const int id = B.find(T.factor_vertex(3));
    const int d = id < 0 ? -1 : B.depth[id];
    o.detail << "m=" << m << ": d(v(A1),v(A3))=" << d << "; ";
    if (d != 4 * m + 2) o.fail("distance != 4m+2");
  }
}

using SuiteFn = void (*)(const VerifyOptions&, Outcome&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"g2-point", suite_g2_point},       {"g3-tree", suite_g3_tree},         {"counts", suite_counts},
      {"inner", suite_inner},             {"injectivity", suite_injectivity}, {"commutation", suite_commutation},
      {"g-bounds", suite_g_bounds},       {"lipschitz", suite_lipschitz},     {"retraction", suite_retraction},
      {"oracle", suite_oracle},           {"roundtrip", suite_roundtrip},     {"xy-connect", suite_xy},
      {"recover", suite_recover},         {"zz-separation", suite_zz},        {"bs-geometry", suite_bs_geometry},
  };
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : registry()) out.push_back(name);
  return out;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opt) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    fn(opt, o);
    SuiteResult r;
    r.name = name;
    r.pass = o.pass;
    r.detail = o.detail.str();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  fail_input("ParseError", "unknown suite '" + name + "'");
}

GraphOfGroups random_walk(const FactorSystem& sys, const GraphOfGroups& start, int steps, std::mt19937_64& rng) {
  GraphOfGroups X = start;
  for (int s = 0; s < steps; ++s) {
    std::vector<GraphOfGroups> moves;
    for (auto& [edges, Y] : enumerate_collapses(sys, X)) moves.push_back(std::move(Y));
    for (auto& [spec, Y] : raw_expansions(sys, X)) moves.push_back(std::move(Y));
    if (moves.empty()) break;
    X = moves[std::uniform_int_distribution<size_t>(0, moves.size() - 1)(rng)];
  }
  return X;
}

GraphOfGroups re_present(const FactorSystem& sys, const GraphOfGroups& X, std::mt19937_64& rng) {
  GraphOfGroups Y = X;
  // Twist: move the far side of an edge at a peripheral vertex by an element of its group.
  std::vector<std::pair<int, int>> slots;
  for (int e = 0; e < Y.num_edges(); ++e)
    for (int v : {Y.edges[e].first, Y.edges[e].second})
      if (!Y.vertices[v].trivial()) slots.push_back({e, v});
  std::uniform_int_distribution<int> coin(0, 1);
  for (auto [e, u] : slots) {
    if (!coin(rng)) continue;
    const int k = Y.vertices[u].factor;
    const int a = std::uniform_int_distribution<int>(1, sys.factor(k).order - 1)(rng);
    const Word p = conj(sys, letter_word(sys, k, a), Y.vertices[u].conj);
    std::vector<bool> side(Y.num_vertices(), false);
    std::deque<int> q{Y.other_end(e, u)};
    side[q.front()] = true;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int f : Y.incident(x)) {
        int y = Y.other_end(f, x);
        if (f == e || side[y]) continue;
        side[y] = true;
        q.push_back(y);
      }
    }
    for (int x = 0; x < Y.num_vertices(); ++x)
      if (side[x] && !Y.vertices[x].trivial())
        Y.vertices[x].conj = normalize_conj(sys, Y.vertices[x].factor, mul(sys, p, Y.vertices[x].conj));
  }
  // Global conjugation by a random short word.
  std::vector<int> all;
  for (int f = 1; f <= sys.n(); ++f) all.push_back(f);
  const auto words = reduced_words(sys, all, 2);
  const Word h = words[std::uniform_int_distribution<size_t>(0, words.size() - 1)(rng)];
  for (auto& L : Y.vertices)
    if (!L.trivial()) L.conj = normalize_conj(sys, L.factor, mul(sys, h, L.conj));
  return Y;
}

}  // namespace spinelab
