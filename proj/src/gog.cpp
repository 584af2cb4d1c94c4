#include "spinelab/gog.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_set>

#include "spinelab/error.hpp"

namespace spinelab {

int GraphOfGroups::degree(int v) const {
  int d = 0;
  for (const auto& [a, b] : edges) d += (a == v) + (b == v);
  return d;
}

std::vector<int> GraphOfGroups::incident(int v) const {
  std::vector<int> out;
  for (int e = 0; e < num_edges(); ++e)
    if (edges[e].first == v || edges[e].second == v) out.push_back(e);
  return out;
}

int GraphOfGroups::other_end(int e, int v) const {
  return edges[e].first == v ? edges[e].second : edges[e].first;
}

int GraphOfGroups::vertex_of(int k) const {
  for (int v = 0; v < num_vertices(); ++v)
    if (vertices[v].factor == k) return v;
  return -1;
}

Word normalize_conj(const FactorSystem& sys, int k, const Word& w) {
  return strip_trailing(reduce(sys, w.letters), k);
}

GraphOfGroups basepoint_star(const FactorSystem& sys) {
  const int n = sys.n();
  if (n < 2) fail_input("TooFewFactors", "need at least 2 factors");
  GraphOfGroups X;
  if (n == 2) {
    X.vertices = {VertexLabel::peripheral(1, {}), VertexLabel::peripheral(2, {})};
    X.edges = {{0, 1}};
    return X;
  }
  X.vertices.push_back({});
  for (int k = 1; k <= n; ++k) {
    X.vertices.push_back(VertexLabel::peripheral(k, {}));
    X.edges.push_back({0, k});
  }
  return X;
}

GraphOfGroups star_with(const FactorSystem& sys, const std::vector<Word>& conjs) {
  GraphOfGroups X = basepoint_star(sys);
  for (auto& v : X.vertices)
    if (!v.trivial()) v.conj = normalize_conj(sys, v.factor, conjs.at(v.factor));
  return X;
}

GraphOfGroups y_vertex(const FactorSystem& sys, int i) {
  GraphOfGroups X = basepoint_star(sys);
  if (sys.n() == 2) return X;
  return collapse(sys, X, {i - 1});
}

std::vector<std::string> validate(const FactorSystem& sys, const GraphOfGroups& X) {
  std::vector<std::string> errs;
  const int n = sys.n();
  const int V = X.num_vertices();
  const int E = X.num_edges();
  std::set<std::pair<int, int>> seen;
  bool edges_ok = true;
  for (int e = 0; e < E; ++e) {
    auto [a, b] = X.edges[e];
    if (a < 0 || b < 0 || a >= V || b >= V) {
      errs.push_back("BadEdge: edge " + std::to_string(e) + " has an endpoint out of range");
      edges_ok = false;
    } else if (a == b) {
      errs.push_back("BadEdge: edge " + std::to_string(e) + " is a loop");
      edges_ok = false;
    } else if (!seen.insert({std::min(a, b), std::max(a, b)}).second) {
      errs.push_back("NotTree: duplicate edge " + std::to_string(e));
      edges_ok = false;
    }
  }
  if (E != V - 1) errs.push_back("NotTree: |E| = " + std::to_string(E) + " but |V| = " + std::to_string(V));
  if (edges_ok && V > 0) {
    std::vector<int> comp(V);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (auto [a, b] : X.edges) comp[find(a)] = find(b);
    for (int v = 1; v < V; ++v)
      if (find(v) != find(0)) {
        errs.push_back("NotTree: vertex " + std::to_string(v) + " is disconnected");
        break;
      }
  }
  std::vector<int> count(n + 1, 0);
  for (int v = 0; v < V; ++v) {
    const auto& L = X.vertices[v];
    if (L.factor < 0 || L.factor > n) {
      errs.push_back("SystemMismatch: vertex " + std::to_string(v) + " names factor " + std::to_string(L.factor));
      continue;
    }
    if (L.trivial()) {
      if (!L.conj.empty()) errs.push_back("BadLabel: trivial vertex " + std::to_string(v) + " has a conjugator");
      if (edges_ok && X.degree(v) < 3)
        errs.push_back("DegreeTooLow: trivial vertex " + std::to_string(v) + " has degree " +
                       std::to_string(X.degree(v)));
      continue;
    }
    ++count[L.factor];
    bool letters_ok = true;
    for (const auto& l : L.conj.letters) {
      if (l.factor < 1 || l.factor > n || l.elem <= 0 || l.elem >= sys.factor(l.factor).order) letters_ok = false;
    }
    if (!letters_ok) {
      errs.push_back("SystemMismatch: vertex " + std::to_string(v) + " conjugator has invalid letters");
      continue;
    }
    if (!(reduce(sys, L.conj.letters) == L.conj))
      errs.push_back("BadLabel: vertex " + std::to_string(v) + " conjugator is not reduced");
    else if (!L.conj.empty() && L.conj.back().factor == L.factor)
      errs.push_back("BadLabel: vertex " + std::to_string(v) + " conjugator ends in its own factor");
  }
  for (int k = 1; k <= n; ++k)
    if (count[k] != 1)
      errs.push_back("FactorCount: factor " + std::to_string(k) + " labels " + std::to_string(count[k]) + " vertices");
  if (V < n || V > 2 * (n - 1) || E < n - 1 || E > 2 * n - 3)
    errs.push_back("CountBound: |V| = " + std::to_string(V) + ", |E| = " + std::to_string(E));
  return errs;
}

void validate_or_throw(const FactorSystem& sys, const GraphOfGroups& X) {
  auto errs = validate(sys, X);
  if (errs.empty()) return;
  const std::string& first = errs.front();
  std::string kind = first.substr(0, first.find(':'));
  std::string all;
  for (const auto& e : errs) all += (all.empty() ? "" : "; ") + e;
  fail_input(kind, all);
}

GraphOfGroups collapse(const FactorSystem& sys, const GraphOfGroups& X, const std::vector<int>& edge_ids) {
  const int V = X.num_vertices();
  if (edge_ids.empty()) fail_input("EmptyCollapse", "no edges given");
  std::vector<char> contracted(X.num_edges(), 0);
  for (int e : edge_ids) {
    if (e < 0 || e >= X.num_edges()) fail_input("BadEdge", "edge id " + std::to_string(e) + " out of range");
    contracted[e] = 1;
  }
  std::vector<int> comp(V);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
  for (int e = 0; e < X.num_edges(); ++e)
    if (contracted[e]) {
      int a = find(X.edges[e].first), b = find(X.edges[e].second);
      if (a != b) comp[std::max(a, b)] = std::min(a, b);
    }
  std::vector<int> new_id(V, -1);
  GraphOfGroups Y;
  for (int v = 0; v < V; ++v) {
    int r = find(v);
    if (new_id[r] < 0) {
      new_id[r] = Y.num_vertices();
      Y.vertices.push_back({});
    }
    const auto& L = X.vertices[v];
    if (L.trivial()) continue;
    auto& slot = Y.vertices[new_id[r]];
    if (!slot.trivial())
      fail_input("Inadmissible", "contraction merges factors " + std::to_string(slot.factor) + " and " +
                                     std::to_string(L.factor));
    slot = L;
  }
  for (int e = 0; e < X.num_edges(); ++e)
    if (!contracted[e]) Y.edges.push_back({new_id[find(X.edges[e].first)], new_id[find(X.edges[e].second)]});
  validate_or_throw(sys, Y);
  return Y;
}

namespace {

// Vertices on the far side of edge e as seen from v.
std::vector<int> branch_beyond(const GraphOfGroups& X, int e, int v) {
  std::vector<int> out;
  std::vector<char> seen(X.num_vertices(), 0);
  seen[v] = 1;
  std::vector<int> stack{X.other_end(e, v)};
  seen[stack[0]] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    out.push_back(u);
    for (int f : X.incident(u)) {
      int w = X.other_end(f, u);
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return out;
}

}  // namespace

GraphOfGroups expand(const FactorSystem& sys, const GraphOfGroups& X, const ExpansionSpec& spec) {
  const int v = spec.vertex;
  if (v < 0 || v >= X.num_vertices()) fail_input("BadVertex", "vertex " + std::to_string(v) + " out of range");
  const auto inc = X.incident(v);
  std::set<int> far(spec.far_edges.begin(), spec.far_edges.end());
  for (int e : far)
    if (std::find(inc.begin(), inc.end(), e) == inc.end())
      fail_input("DegreeViolation", "edge " + std::to_string(e) + " is not incident to vertex " + std::to_string(v));
  const int n_far = static_cast<int>(far.size());
  const int n_near = static_cast<int>(inc.size()) - n_far;
  const VertexLabel L = X.vertices[v];
  std::set<int> trivial_side;
  if (L.trivial()) {
    if (!spec.twists.empty()) fail_input("TwistOnTrivialVertex", "vertex " + std::to_string(v) + " is trivial");
    if (n_far < 2 || n_near < 2)
      fail_input("DegreeViolation", "split of a trivial vertex needs two edges on each side");
  } else if (!spec.label_far) {
    if (n_far < 2) fail_input("DegreeViolation", "new trivial vertex would have degree < 3");
    trivial_side = far;
  } else {
    if (n_near < 2) fail_input("DegreeViolation", "vertex left behind would have degree < 3");
    for (int e : inc)
      if (!far.count(e)) trivial_side.insert(e);
  }

  GraphOfGroups Y = X;
  const int vp = Y.num_vertices();
  Y.vertices.push_back({});
  for (int e : far) {
    auto& ed = Y.edges[e];
    if (ed.first == v) ed.first = vp;
    else ed.second = vp;
  }
  Y.edges.push_back({v, vp});
  if (!L.trivial() && spec.label_far) std::swap(Y.vertices[v], Y.vertices[vp]);

  for (auto [e, a] : spec.twists) {
    if (!trivial_side.count(e))
      fail_input("InvalidTwistElement", "edge " + std::to_string(e) + " is not on the trivial side");
    if (a < 0 || a >= sys.factor(L.factor).order)
      fail_input("InvalidTwistElement", "element " + std::to_string(a) + " not in factor " + std::to_string(L.factor));
    if (a == 0) continue;
    Word p = conj(sys, letter_word(sys, L.factor, a), L.conj);
    // Branch beyond e in X; vertex ids are shared with Y.
    for (int u : branch_beyond(X, e, v)) {
      auto& lab = Y.vertices[u];
      if (!lab.trivial()) lab.conj = normalize_conj(sys, lab.factor, mul(sys, p, lab.conj));
    }
  }
  validate_or_throw(sys, Y);
  return Y;
}

std::vector<std::pair<std::vector<int>, GraphOfGroups>> enumerate_collapses(const FactorSystem& sys,
                                                                             const GraphOfGroups& X) {
  const int E = X.num_edges();
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 1; mask < (1u << E); ++mask) {
    std::vector<int> s;
    for (int e = 0; e < E; ++e)
      if (mask >> e & 1u) s.push_back(e);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end());
  std::vector<std::pair<std::vector<int>, GraphOfGroups>> out;
  for (auto& s : subsets) {
    try {
      out.emplace_back(s, collapse(sys, X, s));
    } catch (const Error& err) {
      if (err.kind() != "Inadmissible") throw;
    }
  }
  return out;
}

std::vector<std::pair<ExpansionSpec, GraphOfGroups>> raw_expansions(const FactorSystem& sys,
                                                                    const GraphOfGroups& X) {
  std::vector<std::pair<ExpansionSpec, GraphOfGroups>> out;
  if (X.num_edges() >= 2 * sys.n() - 3) return out;
  for (int v = 0; v < X.num_vertices(); ++v) {
    const auto inc = X.incident(v);
    const int d = static_cast<int>(inc.size());
    const VertexLabel& L = X.vertices[v];
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
      std::vector<int> S;
      for (int t = 0; t < d; ++t)
        if (mask >> t & 1u) S.push_back(inc[t]);
      const int s = static_cast<int>(S.size());
      if (L.trivial()) {
        // Unordered bipartition: the first incident edge always stays near.
        if (mask & 1u) continue;
        if (s < 2 || d - s < 2) continue;
        ExpansionSpec spec{v, S, false, {}};
        out.emplace_back(spec, expand(sys, X, spec));
        continue;
      }
      if (s < 2) continue;
      const int m = sys.factor(L.factor).order;
      // Twists on S[1..], S[0] fixed at the identity.
      std::vector<int> tw(s, 0);
      while (true) {
        ExpansionSpec spec{v, S, false, {}};
        for (int t = 1; t < s; ++t)
          if (tw[t]) spec.twists.push_back({S[t], tw[t]});
        out.emplace_back(spec, expand(sys, X, spec));
        int t = s - 1;
        while (t >= 1 && ++tw[t] == m) tw[t--] = 0;
        if (t < 1) break;
      }
    }
  }
  return out;
}

std::vector<std::pair<ExpansionSpec, GraphOfGroups>> enumerate_expansions(const FactorSystem& sys,
                                                                          const GraphOfGroups& X) {
  if (sys.n() == 2) return {};
  if (X.num_edges() >= 2 * sys.n() - 3)
    fail_input("MaxEdgesReached", "marking already has " + std::to_string(X.num_edges()) + " edges");
  std::vector<std::pair<ExpansionSpec, GraphOfGroups>> out;
  std::unordered_set<std::string> keys;
  for (auto& [spec, Y] : raw_expansions(sys, X))
    if (keys.insert(canonical_form(sys, Y)).second) out.emplace_back(spec, Y);
  return out;
}

// ---- canonical form ----

namespace {

struct Rooted {
  std::vector<std::vector<int>> children;
  std::vector<int> order;  // BFS order from the root
  std::vector<int> parent;
};

Rooted root_at(const GraphOfGroups& X, int r) {
  Rooted R;
  const int V = X.num_vertices();
  R.children.assign(V, {});
  R.parent.assign(V, -1);
  std::vector<char> seen(V, 0);
  std::deque<int> q{r};
  seen[r] = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    R.order.push_back(u);
    for (int e : X.incident(u)) {
      int w = X.other_end(e, u);
      if (seen[w]) continue;
      seen[w] = 1;
      R.parent[w] = u;
      R.children[u].push_back(w);
      q.push_back(w);
    }
  }
  return R;
}

std::string encode_label(int factor, const Word& w) {
  if (factor == 0) return "T";
  std::string s = "P" + std::to_string(factor) + ":";
  for (const auto& l : w.letters) s += std::to_string(l.factor) + "." + std::to_string(l.elem) + ";";
  return s;
}

struct Canon {
  const FactorSystem& sys;
  const GraphOfGroups& X;
  const Rooted& R;

  // Minimal encoding of the subtree at u when its branch has been translated by c.
  std::string best(int u, const Word& c) const {
    const VertexLabel& L = X.vertices[u];
    Word w;
    if (!L.trivial()) w = normalize_conj(sys, L.factor, mul(sys, c, L.conj));
    std::vector<std::string> kids;
    for (int ch : R.children[u]) {
      if (L.trivial()) {
        kids.push_back(best(ch, c));
        continue;
      }
      std::string m;
      const int order = sys.factor(L.factor).order;
      for (int a = 0; a < order; ++a) {
        Word p = conj(sys, letter_word(sys, L.factor, a), w);
        std::string s = best(ch, mul(sys, p, c));
        if (a == 0 || s < m) m = std::move(s);
      }
      kids.push_back(std::move(m));
    }
    std::sort(kids.begin(), kids.end());
    std::string out = "(" + encode_label(L.factor, w);
    for (auto& k : kids) out += k;
    return out + ")";
  }
};

}  // namespace

std::string canonical_form(const FactorSystem& sys, const GraphOfGroups& X) {
  validate_or_throw(sys, X);
  const int r = X.vertex_of(1);
  Rooted R = root_at(X, r);
  Canon C{sys, X, R};
  return C.best(r, inv(sys, X.vertices[r].conj));
}

GraphOfGroups decode_canonical(const std::string& key) {
  GraphOfGroups X;
  size_t pos = 0;
  auto read_int = [&]() {
    size_t start = pos;
    while (pos < key.size() && std::isdigit(static_cast<unsigned char>(key[pos]))) ++pos;
    if (start == pos) fail_input("ParseError", "bad canonical key near offset " + std::to_string(start));
    return std::stoi(key.substr(start, pos - start));
  };
  std::function<int()> node = [&]() -> int {
    if (pos >= key.size() || key[pos] != '(') fail_input("ParseError", "bad canonical key");
    ++pos;
    VertexLabel L;
    if (key[pos] == 'T') {
      ++pos;
    } else if (key[pos] == 'P') {
      ++pos;
      L.factor = read_int();
      ++pos;  // ':'
      while (pos < key.size() && std::isdigit(static_cast<unsigned char>(key[pos]))) {
        Letter l;
        l.factor = read_int();
        ++pos;  // '.'
        l.elem = read_int();
        ++pos;  // ';'
        L.conj.letters.push_back(l);
      }
    } else {
      fail_input("ParseError", "bad canonical label");
    }
    int id = X.num_vertices();
    X.vertices.push_back(L);
    while (pos < key.size() && key[pos] == '(') {
      int ch = node();
      X.edges.push_back({id, ch});
    }
    if (pos >= key.size() || key[pos] != ')') fail_input("ParseError", "unbalanced canonical key");
    ++pos;
    return id;
  };
  node();
  return X;
}

bool equivalent(const FactorSystem& sys, const GraphOfGroups& a, const GraphOfGroups& b) {
  return canonical_form(sys, a) == canonical_form(sys, b);
}

bool any_presentation(const FactorSystem& sys, const GraphOfGroups& X, int anchor,
                      const std::function<bool(const std::vector<VertexLabel>&)>& fn) {
  const int r = X.vertex_of(anchor);
  Rooted R = root_at(X, r);
  std::vector<VertexLabel> labels = X.vertices;
  const Word c0 = inv(sys, X.vertices[r].conj);
  for (auto& L : labels)
    if (!L.trivial()) L.conj = normalize_conj(sys, L.factor, mul(sys, c0, L.conj));

  std::vector<std::vector<int>> subtree(X.num_vertices());
  for (auto it = R.order.rbegin(); it != R.order.rend(); ++it) {
    int u = *it;
    subtree[u].push_back(u);
    for (int ch : R.children[u]) subtree[u].insert(subtree[u].end(), subtree[ch].begin(), subtree[ch].end());
  }
  std::vector<std::pair<int, int>> slots;
  for (int u : R.order)
    if (!X.vertices[u].trivial())
      for (int ch : R.children[u]) slots.push_back({u, ch});

  std::function<bool(size_t, std::vector<VertexLabel>&)> rec = [&](size_t s, std::vector<VertexLabel>& cur) {
    if (s == slots.size()) return fn(cur);
    auto [u, ch] = slots[s];
    const int k = cur[u].factor;
    for (int a = 0; a < sys.factor(k).order; ++a) {
      std::vector<VertexLabel> next = cur;
      if (a != 0) {
        Word p = conj(sys, letter_word(sys, k, a), cur[u].conj);
        for (int x : subtree[ch])
          if (!next[x].trivial()) next[x].conj = normalize_conj(sys, next[x].factor, mul(sys, p, next[x].conj));
      }
      if (rec(s + 1, next)) return true;
    }
    return false;
  };
  return rec(0, labels);
}

// ---- Bass-Serre tree ----

size_t node_cap() {
  if (const char* env = std::getenv("SPINELAB_NODE_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<size_t>(v);
  }
  return 1000000;
}

BassSerreTree::BassSerreTree(const FactorSystem& sys, const GraphOfGroups& X) : sys_(sys), X_(X) {
  validate_or_throw(sys, X);
  adj_.assign(X.num_vertices(), {});
  for (auto [a, b] : X.edges) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  conj_inv_.resize(X.num_vertices());
  for (int v = 0; v < X.num_vertices(); ++v) conj_inv_[v] = inv(sys, X.vertices[v].conj);
}

BSNode BassSerreTree::node_at(int qv, const Word& g) const {
  const auto& L = X_.vertices[qv];
  if (L.trivial()) return {qv, g};
  return {qv, strip_trailing(mul(sys_, g, L.conj), L.factor)};
}

BSNode BassSerreTree::translate(const Word& h, const BSNode& x) const {
  const auto& L = X_.vertices[x.qv];
  if (L.trivial()) return {x.qv, mul(sys_, h, x.rep)};
  return {x.qv, strip_trailing(mul(sys_, h, x.rep), L.factor)};
}

std::vector<BSNode> BassSerreTree::neighbors(const BSNode& x) const {
  std::vector<BSNode> out;
  const auto& L = X_.vertices[x.qv];
  if (L.trivial()) {
    for (int u : adj_[x.qv]) out.push_back(node_at(u, x.rep));
    return out;
  }
  const int m = sys_.factor(L.factor).order;
  for (int a = 0; a < m; ++a) {
    Word g = mul(sys_, {x.rep, letter_word(sys_, L.factor, a), conj_inv_[x.qv]});
    for (int u : adj_[x.qv]) out.push_back(node_at(u, g));
  }
  return out;
}

VertexLabel BassSerreTree::stabilizer(const BSNode& x) const {
  const auto& L = X_.vertices[x.qv];
  if (L.trivial()) return {};
  return VertexLabel::peripheral(L.factor, x.rep);
}

BSNode BassSerreTree::factor_vertex(int k) const { return {X_.vertex_of(k), Word{}}; }

int BassSerreTree::degree(const BSNode& x) const {
  const auto& L = X_.vertices[x.qv];
  int d = static_cast<int>(adj_[x.qv].size());
  return L.trivial() ? d : d * sys_.factor(L.factor).order;
}

std::vector<int> BassSerreBall::path_to_center(int a) const {
  std::vector<int> p;
  for (int x = a; x >= 0; x = parent[x]) p.push_back(x);
  return p;
}

std::vector<int> BassSerreBall::geodesic(int a, int b) const {
  std::vector<int> left, right;
  while (depth[a] > depth[b]) {
    left.push_back(a);
    a = parent[a];
  }
  while (depth[b] > depth[a]) {
    right.push_back(b);
    b = parent[b];
  }
  while (a != b) {
    left.push_back(a);
    right.push_back(b);
    a = parent[a];
    b = parent[b];
  }
  left.push_back(a);
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

BassSerreBall bass_serre_ball(const BassSerreTree& T, const BSNode& center, int radius) {
  if (radius < 0) fail_input("BadRadius", "radius must be non-negative");
  const size_t cap = node_cap();
  BassSerreBall B;
  B.center = center;
  B.radius = radius;
  B.nodes.push_back(center);
  B.adj.push_back({});
  B.depth.push_back(0);
  B.parent.push_back(-1);
  B.index.emplace(center, 0);
  for (size_t i = 0; i < B.nodes.size(); ++i) {
    if (B.depth[i] == radius) continue;
    const BSNode cur = B.nodes[i];
    for (auto& nb : T.neighbors(cur)) {
      if (B.parent[i] >= 0 && nb == B.nodes[B.parent[i]]) continue;
      if (B.nodes.size() >= cap)
        fail_resource("RadiusTooLarge", "Bass-Serre ball exceeds node cap " + std::to_string(cap));
      int id = static_cast<int>(B.nodes.size());
      if (!B.index.emplace(nb, id).second)
        fail_input("NotATree", "labels do not present the free product; node revisited");
      B.nodes.push_back(nb);
      B.adj.push_back({static_cast<int>(i)});
      B.adj[i].push_back(id);
      B.depth.push_back(B.depth[i] + 1);
      B.parent.push_back(static_cast<int>(i));
    }
  }
  return B;
}

BassSerreBall bass_serre_ball(const FactorSystem& sys, const GraphOfGroups& X, int center_qv, int radius) {
  BassSerreTree T(sys, X);
  if (center_qv < 0 || center_qv >= X.num_vertices()) fail_input("BadVertex", "center out of range");
  return bass_serre_ball(T, T.node_at(center_qv, Word{}), radius);
}

int default_oracle_radius(const FactorSystem& sys) { return 2 * (2 * sys.n() - 3) + 2; }

namespace {

struct IsoSearch {
  const BassSerreTree& T1;
  const BassSerreTree& T2;
  const BassSerreBall& B1;
  const BassSerreBall& B2;
  std::unordered_map<long long, bool> memo;

  std::vector<int> children(const BassSerreBall& B, int x) const {
    std::vector<int> c;
    for (int y : B.adj[x])
      if (y != B.parent[x]) c.push_back(y);
    return c;
  }

  bool match(int x, int y) {
    const long long key = static_cast<long long>(x) * static_cast<long long>(B2.nodes.size()) + y;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool ok = compute(x, y);
    memo[key] = ok;
    return ok;
  }

  bool compute(int x, int y) {
    if (!(T1.stabilizer(B1.nodes[x]) == T2.stabilizer(B2.nodes[y]))) return false;
    if (B1.depth[x] == B1.radius) return true;
    if (T1.degree(B1.nodes[x]) != T2.degree(B2.nodes[y])) return false;
    auto cx = children(B1, x);
    auto cy = children(B2, y);
    if (cx.size() != cy.size()) return false;
    // Kuhn augmenting paths over the compatibility relation.
    std::vector<int> owner(cy.size(), -1);
    for (size_t i = 0; i < cx.size(); ++i) {
      std::vector<char> used(cy.size(), 0);
      std::function<bool(size_t)> augment = [&](size_t a) {
        for (size_t b = 0; b < cy.size(); ++b) {
          if (used[b] || !match(cx[a], cy[b])) continue;
          used[b] = 1;
          if (owner[b] < 0 || augment(static_cast<size_t>(owner[b]))) {
            owner[b] = static_cast<int>(a);
            return true;
          }
        }
        return false;
      };
      if (!augment(i)) return false;
    }
    return true;
  }
};

}  // namespace

bool equivariant_iso_oracle(const FactorSystem& sys, const GraphOfGroups& a, const GraphOfGroups& b, int radius) {
  BassSerreTree T1(sys, a), T2(sys, b);
  BassSerreBall B1 = bass_serre_ball(T1, T1.factor_vertex(1), radius);
  BassSerreBall B2 = bass_serre_ball(T2, T2.factor_vertex(1), radius);
  if (B1.nodes.size() != B2.nodes.size()) return false;
  IsoSearch S{T1, T2, B1, B2, {}};
  return S.match(0, 0);
}

}  // namespace spinelab
