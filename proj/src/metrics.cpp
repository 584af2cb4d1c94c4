#include "spinelab/metrics.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "spinelab/error.hpp"
#include "spinelab/spine.hpp"

namespace spinelab {

namespace {

[[noreturn]] void too_small(const std::string& what) { fail_resource("BallTooSmall", what); }

int max_conj_length(const GraphOfGroups& X) {
  size_t m = 0;
  for (const auto& L : X.vertices) m = std::max(m, L.conj.size());
  return static_cast<int>(m);
}

// Runs fn on balls of growing radius until it stops reporting BallTooSmall.
template <typename Fn>
auto with_ball(const BassSerreTree& T, const BSNode& center, int radius, Fn fn) {
  while (true) {
    try {
      BassSerreBall B = bass_serre_ball(T, center, radius);
      return fn(B);
    } catch (const Error& e) {
      if (e.kind() == "RadiusTooLarge") too_small("node cap reached before the computation fit in a ball");
      if (e.kind() != "BallTooSmall") throw;
    }
    radius += std::max(2, radius / 2);
  }
}

int need(const BassSerreBall& B, const BSNode& n, const char* what) {
  int id = B.find(n);
  if (id < 0) too_small(what);
  return id;
}

// Multi-source BFS distances inside the ball.
std::vector<int> distances_from(const BassSerreBall& B, const std::vector<int>& sources) {
  std::vector<int> dist(B.nodes.size(), -1);
  std::deque<int> q;
  for (int s : sources) {
    dist[s] = 0;
    q.push_back(s);
  }
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : B.adj[x])
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push_back(y);
      }
  }
  return dist;
}

// Domains through all the given nodes at minimal distance from gamma, in shortlex order.
std::vector<Word> closest_domains(const MinimalSubtree& M, const BassSerreTree& T, const BassSerreBall& B,
                                  const std::vector<int>& through) {
  std::vector<Word> cands = M.domains.at(through[0]);
  for (size_t t = 1; t < through.size(); ++t) {
    const auto& other = M.domains.at(through[t]);
    std::vector<Word> keep;
    for (const auto& h : cands)
      if (std::find(other.begin(), other.end(), h) != other.end()) keep.push_back(h);
    cands = std::move(keep);
  }
  if (cands.empty()) too_small("no fundamental domain found through the projection");
  const auto dist = distances_from(B, M.gamma);
  int best_d = -1;
  std::vector<Word> best;
  for (const auto& h : cands) {
    int d = -1;
    for (int g : M.gamma) {
      int id = B.find(T.translate(h, B.nodes[g]));
      if (id >= 0 && (d < 0 || dist[id] < d)) d = dist[id];
    }
    if (d < 0) continue;
    if (best_d < 0 || d < best_d) {
      best_d = d;
      best.clear();
    }
    if (d == best_d) best.push_back(h);
  }
  if (best.empty()) too_small("candidate domains leave the ball");
  std::sort(best.begin(), best.end());
  return best;
}

Word choose_domain(const MinimalSubtree& M, const BassSerreTree& T, const BassSerreBall& B,
                   const std::vector<int>& through, RetractInfo* info) {
  auto best = closest_domains(M, T, B, through);
  if (best.size() > 1 && info) ++info->ties;
  return best.front();
}

// Quotient graph of groups of a parent-closed node set, with the given labels; trivial vertices of
// degree <= 2 are smoothed away.
GraphOfGroups graph_from_subtree(const BassSerreBall& B, const std::set<int>& nodes,
                                 const std::map<int, VertexLabel>& labels) {
  std::map<int, std::set<int>> adj;
  for (int x : nodes) {
    adj[x];
    int p = B.parent[x];
    if (p >= 0 && nodes.count(p)) {
      adj[x].insert(p);
      adj[p].insert(x);
    }
  }
  auto is_trivial = [&](int x) { return !labels.count(x) || labels.at(x).trivial(); };
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = adj.begin(); it != adj.end(); ++it) {
      int x = it->first;
      if (!is_trivial(x) || it->second.size() > 2) continue;
      std::vector<int> nb(it->second.begin(), it->second.end());
      for (int y : nb) adj[y].erase(x);
      if (nb.size() == 2) {
        adj[nb[0]].insert(nb[1]);
        adj[nb[1]].insert(nb[0]);
      }
      adj.erase(it);
      changed = true;
      break;
    }
  }
  GraphOfGroups X;
  std::map<int, int> id;
  for (auto& [x, _] : adj) {
    id[x] = X.num_vertices();
    X.vertices.push_back(labels.count(x) ? labels.at(x) : VertexLabel{});
  }
  for (auto& [x, nb] : adj)
    for (int y : nb)
      if (x < y) X.edges.push_back({id[x], id[y]});
  return X;
}

std::string gen_word_name(const SubgroupSpec& sub, const std::vector<int>& w) {
  if (w.empty()) return "id";
  std::string s;
  for (size_t t = 0; t < w.size(); ++t) {
    if (t) s += " ";
    int g = std::abs(w[t]) - 1;
    s += sub.gen_names[g];
    if (w[t] < 0) s += "^-1";
  }
  return s;
}

std::string auto_encoding(const OuterAutoWord& f) {
  std::string s;
  for (const auto& g : f.gens) {
    s += "(" + std::to_string(g.i) + "," + to_string(g.w) + "," + std::to_string(g.exp) + ")";
  }
  return s.empty() ? "()" : s;
}

}  // namespace

MinimalSubtree minimal_subtree(const BassSerreTree& T, const BassSerreBall& ball, int i, int j) {
  const int vi = ball.find(T.factor_vertex(i));
  const int vj = ball.find(T.factor_vertex(j));
  if (vi < 0 || vj < 0) fail_input("CentersMissing", "factor vertices are not inside the ball");
  const FactorSystem& sys = T.system();
  MinimalSubtree M;
  M.gamma = ball.geodesic(vi, vj);
  std::set<int> nodes;
  std::deque<Word> q{Word{}};
  const size_t max_len = static_cast<size_t>(2 * ball.radius + 4);
  while (!q.empty()) {
    Word h = q.front();
    q.pop_front();
    bool hit = false;
    for (int g : M.gamma) {
      int id = ball.find(T.translate(h, ball.nodes[g]));
      if (id < 0) continue;
      hit = true;
      nodes.insert(id);
      M.domains[id].push_back(h);
    }
    if (!hit || h.size() >= max_len) continue;
    for (int f : {i, j}) {
      if (!h.empty() && h.back().factor == f) continue;
      for (int a = 1; a < sys.factor(f).order; ++a) q.push_back(mul(sys, h, letter_word(sys, f, a)));
    }
  }
  M.nodes.assign(nodes.begin(), nodes.end());
  return M;
}

AxisSegment axis(const BassSerreTree& T, const BassSerreBall& ball, const Word& g) {
  std::vector<int> shift(ball.nodes.size(), -1);
  const Word ginv = inv(T.system(), g);
  int best = -1;
  for (size_t p = 0; p < ball.nodes.size(); ++p) {
    // Requiring both translates keeps the result the same for g and g^-1.
    int q = ball.find(T.translate(g, ball.nodes[p]));
    if (q < 0 || ball.find(T.translate(ginv, ball.nodes[p])) < 0) continue;
    int d = static_cast<int>(ball.geodesic(static_cast<int>(p), q).size()) - 1;
    shift[p] = d;
    if (best < 0 || d < best) best = d;
  }
  if (best < 0) too_small("no translate of a ball node stays in the ball");
  if (best == 0) fail_input("Elliptic", "the element fixes a vertex");
  std::set<int> on;
  for (size_t p = 0; p < ball.nodes.size(); ++p)
    if (shift[p] == best) on.insert(static_cast<int>(p));
  int start = *on.begin();
  for (int p : on) {
    int deg = 0;
    for (int y : ball.adj[p]) deg += on.count(y);
    if (deg <= 1) {
      start = p;
      break;
    }
  }
  AxisSegment A;
  A.translation_length = best;
  std::set<int> seen{start};
  for (int cur = start;;) {
    A.nodes.push_back(cur);
    int nxt = -1;
    for (int y : ball.adj[cur])
      if (on.count(y) && !seen.count(y)) nxt = y;
    if (nxt < 0) break;
    seen.insert(nxt);
    cur = nxt;
  }
  return A;
}

int g_count(const FactorSystem& sys, const GraphOfGroups& X, int k, int i1, int i2, int m) {
  if (k == i1 || k == i2 || i1 == i2) fail_input("BadReference", "k, i1, i2 must be distinct");
  if (m < 0) fail_input("BadReference", "reference exponent must be non-negative");
  BassSerreTree T(sys, X);
  const Word a = letter_word(sys, i1, 1);
  const Word b = letter_word(sys, i2, 1);
  const Word g = mul(sys, a, b);
  const BSNode va = T.factor_vertex(i1), vb = T.factor_vertex(i2), vk = T.factor_vertex(k);
  const BSNode ref = T.translate(power(sys, mul(sys, b, a), m), vb);
  const int R0 = std::max(max_conj_length(X), m) + 4;
  return with_ball(T, va, R0, [&](const BassSerreBall& B) {
    const auto sigma = B.geodesic(need(B, vb, "v(A_i2) outside ball"), need(B, T.translate(a, vb), "a.v(A_i2) outside ball"));
    const int M = B.radius + m + 2;
    std::unordered_map<BSNode, int, BSNodeHash> pos;
    int idx = 0;
    for (int t = -M; t <= M; ++t) {
      const Word gt = power(sys, g, t);
      for (size_t s = 0; s + 1 < sigma.size(); ++s) pos.emplace(T.translate(gt, B.nodes[sigma[s]]), idx++);
    }
    auto rit = pos.find(ref);
    if (rit == pos.end()) fail_input("BadReference", "reference vertex is not on the axis");
    int proj = -1;
    for (int x : B.path_to_center(need(B, vk, "v(A_k) outside ball"))) {
      auto it = pos.find(B.nodes[x]);
      if (it != pos.end()) {
        proj = it->second;
        break;
      }
    }
    if (proj < 0) too_small("projection not found");
    const int lo = std::min(proj, rit->second), hi = std::max(proj, rit->second);
    std::vector<BSNode> by_pos(idx);
    for (auto& [node, p] : pos) by_pos[p] = node;
    int count = 0;
    for (int p = lo + 1; p < hi; ++p) {
      // Only conjugates of A_i1, A_i2 lying inside A_i1 * A_i2 count.
      const VertexLabel L = T.stabilizer(by_pos[p]);
      if ((L.factor == i1 || L.factor == i2) && over_factors(L.conj, {i1, i2})) ++count;
    }
    return count;
  });
}

GraphOfGroups retract_Lij(const FactorSystem& sys, const GraphOfGroups& X, int i, int j, RetractInfo* info) {
  if (i == j || i < 1 || j < 1 || i > sys.n() || j > sys.n()) fail_input("BadPair", "need two distinct factors");
  BassSerreTree T(sys, X);
  const int R0 = 2 * max_conj_length(X) + 4;
  return with_ball(T, T.factor_vertex(i), R0, [&](const BassSerreBall& B) {
    RetractInfo local;
    need(B, T.factor_vertex(j), "v(A_j) outside ball");
    MinimalSubtree M = minimal_subtree(T, B, i, j);
    std::unordered_set<int> in_sub(M.nodes.begin(), M.nodes.end());
    std::map<int, VertexLabel> labels;
    std::set<int> nodes;
    auto add_path = [&](int x) {
      for (int y : B.path_to_center(x)) nodes.insert(y);
    };
    const int vi = 0, vj = B.find(T.factor_vertex(j));
    labels[vi] = T.stabilizer(B.nodes[vi]);
    labels[vj] = T.stabilizer(B.nodes[vj]);
    add_path(vj);
    // Candidate retracted vertices per k; equally close domains are resolved jointly by the
    // smallest spanning subtree, then shortlex.
    std::vector<std::vector<int>> options;
    for (int k = 1; k <= sys.n(); ++k) {
      if (k == i || k == j) continue;
      const int vk = need(B, T.factor_vertex(k), "v(A_k) outside ball");
      int p = -1;
      for (int x : B.path_to_center(vk))
        if (in_sub.count(x)) {
          p = x;
          break;
        }
      if (p < 0 || B.depth[p] == B.radius) too_small("projection at ball boundary");
      std::vector<int> opts;
      for (const auto& h : closest_domains(M, T, B, {p}))
        opts.push_back(need(B, T.translate(inv(sys, h), B.nodes[vk]), "retracted vertex outside ball"));
      if (opts.size() > 1) ++local.ties;
      options.push_back(std::move(opts));
    }
    std::vector<size_t> pick(options.size(), 0), best_pick;
    size_t best_size = 0;
    for (int guard = 0; guard < 1 << 16; ++guard) {
      std::set<int> trial = nodes;
      for (size_t t = 0; t < options.size(); ++t)
        for (int y : B.path_to_center(options[t][pick[t]])) trial.insert(y);
      if (best_pick.empty() || trial.size() < best_size) {
        best_size = trial.size();
        best_pick = pick;
      }
      size_t t = 0;
      while (t < pick.size() && ++pick[t] == options[t].size()) pick[t++] = 0;
      if (t == pick.size()) break;
    }
    for (size_t t = 0; t < options.size(); ++t) {
      const int c = options[t][best_pick.empty() ? 0 : best_pick[t]];
      labels[c] = T.stabilizer(B.nodes[c]);
      add_path(c);
    }
    GraphOfGroups Y = graph_from_subtree(B, nodes, labels);
    validate_or_throw(sys, Y);
    if (info) *info = local;
    return Y;
  });
}

GraphOfGroups retract_L4(const FactorSystem& sys, const GraphOfGroups& X, RetractInfo* info) {
  if (sys.n() != 4) fail_input("SystemMismatch", "L4 needs exactly four factors");
  if (classify(sys, X).count("M4")) return X;
  BassSerreTree T(sys, X);
  const int R0 = 2 * max_conj_length(X) + 4;
  return with_ball(T, T.factor_vertex(1), R0, [&](const BassSerreBall& B) {
    RetractInfo local;
    for (int k = 2; k <= 4; ++k) need(B, T.factor_vertex(k), "factor vertex outside ball");
    MinimalSubtree M12 = minimal_subtree(T, B, 1, 2);
    MinimalSubtree M34 = minimal_subtree(T, B, 3, 4);
    std::unordered_set<int> s12(M12.nodes.begin(), M12.nodes.end()), s34(M34.nodes.begin(), M34.nodes.end());
    std::vector<int> I;
    for (int x : M12.nodes)
      if (s34.count(x)) I.push_back(x);
    std::vector<int> at12, at34;
    if (I.empty()) {
      // The bridge lies on the geodesic from v(A_3) to v(A_1).
      const auto path = B.path_to_center(B.find(T.factor_vertex(3)));
      int last34 = -1, first12 = -1;
      for (int x : path) {
        if (first12 < 0 && s12.count(x)) first12 = x;
        if (first12 < 0 && s34.count(x)) last34 = x;
      }
      if (first12 < 0 || last34 < 0) too_small("bridge not found");
      at12 = {first12};
      at34 = {last34};
    } else {
      for (int x : I)
        if (B.depth[x] == B.radius) too_small("intersection reaches the ball boundary");
      std::unordered_set<int> sI(I.begin(), I.end());
      std::vector<int> ends;
      for (int x : I) {
        int deg = 0;
        for (int y : B.adj[x]) deg += sI.count(y);
        if (deg <= 1) ends.push_back(x);
      }
      std::vector<int> seg = ends.size() >= 2 ? B.geodesic(ends[0], ends[1]) : std::vector<int>{I[0]};
      const size_t L = seg.size() - 1;
      if (L % 2 == 0) at12 = at34 = {seg[L / 2]};
      else at12 = at34 = {seg[L / 2], seg[L / 2 + 1]};
    }
    const Word h12 = choose_domain(M12, T, B, at12, &local);
    const Word h34 = choose_domain(M34, T, B, at34, &local);
    GraphOfGroups Y = X;
    for (auto& L : Y.vertices) {
      if (L.trivial()) continue;
      L.conj = normalize_conj(sys, L.factor, L.factor <= 2 ? h12 : h34);
    }
    validate_or_throw(sys, Y);
    if (info) *info = local;
    return Y;
  });
}

SubgroupSpec subgroup_H12(const FactorSystem& sys) {
  SubgroupSpec s;
  s.name = "H12";
  for (int k = 3; k <= sys.n(); ++k)
    for (int f : {1, 2})
      for (int a = 1; a < sys.factor(f).order; ++a) {
        s.generators.push_back(gen(sys, k, f, a));
        s.gen_names.push_back("f" + std::to_string(k) + "_" + std::to_string(f) + "." + std::to_string(a));
      }
  return s;
}

SubgroupSpec subgroup_N12_N34(const FactorSystem& sys) {
  if (sys.n() < 4) fail_input("SystemMismatch", "N12-N34 needs at least four factors");
  SubgroupSpec s;
  s.name = "N12-N34";
  s.generators = {f_ij(sys, 1, 2), f_ij(sys, 3, 4)};
  s.gen_names = {"g12", "g34"};
  s.n_pairs = {{1, 2}, {3, 4}};
  return s;
}

SubgroupSpec subgroup_M12M34(const FactorSystem& sys) {
  if (sys.n() != 4) fail_input("SystemMismatch", "M12M34 needs exactly four factors");
  SubgroupSpec s;
  s.name = "M12M34";
  auto add = [&](int i, int f) {
    for (int a = 1; a < sys.factor(f).order; ++a) {
      auto g = gen(sys, i, f, a);
      // Partial conjugations of A_i by its own elements are trivial for abelian factors.
      if (i == f && sys.factor(f).is_abelian()) continue;
      s.generators.push_back(g);
      s.gen_names.push_back("f" + std::to_string(i) + "_" + std::to_string(f) + "." + std::to_string(a));
    }
  };
  for (auto [i, f] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 3}, {4, 3}, {3, 4}, {4, 4}}) add(i, f);
  return s;
}

SubgroupSpec subgroup_by_name(const FactorSystem& sys, const std::string& name) {
  if (name == "H12") return subgroup_H12(sys);
  if (name == "N12-N34") return subgroup_N12_N34(sys);
  if (name == "M12M34") return subgroup_M12M34(sys);
  fail_input("ParseError", "unknown subgroup '" + name + "'");
}

std::vector<DistortionRow> distortion_report(const FactorSystem& sys, const SubgroupSpec& sub, int max_len, int cap,
                                             int threads) {
  if (sub.generators.empty()) fail_input("EmptySubgroup", "no generators");
  const GraphOfGroups X = basepoint_star(sys);
  // Breadth-first over generator words; the first word reaching an outer class fixes its length.
  struct Cls {
    std::vector<int> word;
    OuterAutoWord f;
  };
  std::vector<Cls> classes{{{}, OuterAutoWord{}}};
  std::vector<size_t> layer{0};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<size_t> next;
    for (size_t c : layer)
      for (int g = 1; g <= static_cast<int>(sub.generators.size()); ++g)
        for (int sgn : {1, -1}) {
          std::vector<int> w = classes[c].word;
          w.push_back(sgn * g);
          OuterAutoWord f = compose(classes[c].f, sgn > 0 ? sub.generators[g - 1] : invert(sub.generators[g - 1]));
          bool dup = std::any_of(classes.begin(), classes.end(),
                                 [&](const Cls& o) { return outer_equal(sys, o.f, f); });
          if (dup) continue;
          classes.push_back({w, f});
          next.push_back(classes.size() - 1);
        }
    layer = std::move(next);
  }
  NeighborCache cache(sys);
  std::vector<DistortionRow> rows;
  for (const auto& c : classes) {
    DistortionRow r;
    r.name = gen_word_name(sub, c.word);
    r.word = auto_encoding(c.f);
    r.sub_length = static_cast<int>(c.word.size());
    const GraphOfGroups Y = act_on_gog(sys, c.f, X);
    r.spine_distance = spine_distance(sys, X, Y, cap, threads, &cache);
    if (sub.n_pairs) {
      // d(X, phi X) = d(phi^-1 X, X), so g on the tree phi.T_X certifies the same distance.
      const GraphOfGroups Yinv = act_on_tree(sys, c.f, X);
      int e[2] = {0, 0};
      for (int s : c.word) e[std::abs(s) - 1] += s > 0 ? 1 : -1;
      int bound = 0;
      const std::pair<int, int> pairs[2] = {sub.n_pairs->first, sub.n_pairs->second};
      for (int t = 0; t < 2; ++t) {
        auto [p, q] = pairs[t];
        int k = 1;
        while (k == p || k == q) ++k;
        const int m = std::abs(e[t]);
        for (auto [i1, i2] : {std::pair{p, q}, std::pair{q, p}})
          bound = std::max(bound, std::abs(g_count(sys, X, k, i1, i2, m) - g_count(sys, Yinv, k, i1, i2, m)));
      }
      r.g_lower_bound = bound;
    }
    if (!r.spine_distance) r.status = "above_cap";
    else if (r.g_lower_bound && *r.spine_distance < *r.g_lower_bound) r.status = "violation";
    else r.status = "ok";
    rows.push_back(std::move(r));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const DistortionRow& a, const DistortionRow& b) {
    return std::tie(a.sub_length, a.word) < std::tie(b.sub_length, b.word);
  });
  return rows;
}

std::string distortion_csv(const std::vector<DistortionRow>& rows) {
  std::ostringstream os;
  os << "name,word,sub_length,spine_distance,g_lower_bound,status\n";
  for (const auto& r : rows) {
    os << '"' << r.name << "\",\"" << r.word << "\"," << r.sub_length << ","
       << (r.spine_distance ? std::to_string(*r.spine_distance) : "AboveCap") << ","
       << (r.g_lower_bound ? std::to_string(*r.g_lower_bound) : "") << "," << r.status << "\n";
  }
  return os.str();
}

}  // namespace spinelab
