#include "spinelab/spine.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <unordered_set>

#include "spinelab/error.hpp"

namespace spinelab {

SpineVertex make_vertex(const FactorSystem& sys, const GraphOfGroups& X) {
  SpineVertex v;
  v.key = canonical_form(sys, X);
  v.rep = decode_canonical(v.key);
  return v;
}

GraphOfGroups replay(const FactorSystem& sys, const GraphOfGroups& from, const Move& m) {
  if (m.collapse) return collapse(sys, from, m.edges);
  GraphOfGroups Y = from;
  for (const auto& spec : m.expansions) Y = expand(sys, Y, spec);
  return Y;
}

std::vector<Neighbor> spine_neighbors(const FactorSystem& sys, const GraphOfGroups& rep) {
  const std::string self = canonical_form(sys, rep);
  std::vector<Neighbor> out;
  std::unordered_set<std::string> seen{self};
  for (auto& [edges, Y] : enumerate_collapses(sys, rep)) {
    std::string k = canonical_form(sys, Y);
    if (seen.insert(k).second) out.push_back({std::move(k), Move{true, edges, {}}});
  }
  // Multi-edge expansions as chains of one-edge expansions; the new edges are the trailing ids.
  const int E0 = rep.num_edges();
  std::function<void(const GraphOfGroups&, std::vector<ExpansionSpec>&)> grow =
      [&](const GraphOfGroups& Y, std::vector<ExpansionSpec>& chain) {
        for (auto& [spec, Z] : raw_expansions(sys, Y)) {
          chain.push_back(spec);
          std::string k = canonical_form(sys, Z);
          if (!seen.count(k)) {
            std::vector<int> fresh;
            for (int e = E0; e < Z.num_edges(); ++e) fresh.push_back(e);
            if (canonical_form(sys, collapse(sys, Z, fresh)) == self) {
              seen.insert(k);
              out.push_back({std::move(k), Move{false, {}, chain}});
            }
          }
          grow(Z, chain);
          chain.pop_back();
        }
      };
  std::vector<ExpansionSpec> chain;
  grow(rep, chain);
  return out;
}

int default_threads() {
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(std::min(h, 16u));
}

std::shared_ptr<const std::vector<Neighbor>> NeighborCache::get(const std::string& key) {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
  }
  auto v = std::make_shared<const std::vector<Neighbor>>(spine_neighbors(sys_, decode_canonical(key)));
  std::lock_guard<std::mutex> lk(mu_);
  return map_.emplace(key, std::move(v)).first->second;
}

void NeighborCache::prefetch(const std::vector<std::string>& keys, int threads) {
  if (threads <= 1 || keys.size() < 2) {
    for (const auto& k : keys) get(k);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  const int t = std::min<int>(threads, static_cast<int>(keys.size()));
  for (int i = 0; i < t; ++i)
    pool.emplace_back([&]() {
      try {
        for (size_t j = next++; j < keys.size(); j = next++) get(keys[j]);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

SpineBall explore(const FactorSystem& sys, const GraphOfGroups& base, int radius, int max_vertices, int threads) {
  if (radius < 0) fail_input("BadRadius", "radius must be non-negative");
  NeighborCache cache(sys);
  SpineBall B;
  B.base = make_vertex(sys, base);
  B.radius = radius;
  B.vertices.push_back(B.base);
  B.depth.push_back(0);
  std::unordered_map<std::string, int> id{{B.base.key, 0}};
  std::set<std::pair<int, int>> edge_seen;
  std::vector<int> level{0};
  for (int d = 0; !level.empty(); ++d) {
    std::vector<std::string> keys;
    for (int v : level) keys.push_back(B.vertices[v].key);
    cache.prefetch(keys, threads);
    std::vector<int> next;
    for (int v : level) {
      auto nbs = cache.get(B.vertices[v].key);
      for (const auto& nb : *nbs) {
        auto it = id.find(nb.key);
        int w;
        if (it == id.end()) {
          // Vertices at the boundary only contribute edges among known vertices.
          if (d == radius) continue;
          if (static_cast<int>(B.vertices.size()) >= max_vertices) {
            B.truncated = true;
            continue;
          }
          w = static_cast<int>(B.vertices.size());
          id.emplace(nb.key, w);
          B.vertices.push_back({nb.key, decode_canonical(nb.key)});
          B.depth.push_back(d + 1);
          next.push_back(w);
        } else {
          w = it->second;
        }
        if (edge_seen.insert({std::min(v, w), std::max(v, w)}).second) B.edges.push_back({v, w, nb.move});
      }
    }
    if (d == radius) break;
    level = std::move(next);
  }
  return B;
}

std::optional<int> spine_distance(const FactorSystem& sys, const GraphOfGroups& a, const GraphOfGroups& b, int cap,
                                  int threads, NeighborCache* cache) {
  NeighborCache local(sys);
  NeighborCache& C = cache ? *cache : local;
  const std::string ka = canonical_form(sys, a), kb = canonical_form(sys, b);
  if (ka == kb) return 0;
  std::unordered_map<std::string, int> da{{ka, 0}}, db{{kb, 0}};
  std::vector<std::string> fa{ka}, fb{kb};
  int ra = 0, rb = 0;
  while (ra + rb < cap && !fa.empty() && !fb.empty()) {
    const bool left = fa.size() <= fb.size();
    auto& dist = left ? da : db;
    auto& other = left ? db : da;
    auto& front = left ? fa : fb;
    C.prefetch(front, threads);
    int best = -1;
    std::vector<std::string> next;
    for (const auto& k : front) {
      const int dk = dist.at(k);
      for (const auto& nb : *C.get(k)) {
        if (auto it = other.find(nb.key); it != other.end()) {
          int cand = dk + 1 + it->second;
          if (best < 0 || cand < best) best = cand;
        }
        if (dist.emplace(nb.key, dk + 1).second) next.push_back(nb.key);
      }
    }
    front = std::move(next);
    (left ? ra : rb) += 1;
    if (best >= 0) return best <= cap ? std::optional<int>(best) : std::nullopt;
  }
  return std::nullopt;
}

bool spine_adjacent(const FactorSystem& sys, const GraphOfGroups& a, const GraphOfGroups& b) {
  const std::string kb = canonical_form(sys, b);
  for (const auto& nb : spine_neighbors(sys, decode_canonical(canonical_form(sys, a))))
    if (nb.key == kb) return true;
  return false;
}

namespace {

bool is_type_x(const FactorSystem& sys, const GraphOfGroups& X) {
  const int n = sys.n();
  if (n < 3 || X.num_vertices() != n + 1) return false;
  for (int v = 0; v < X.num_vertices(); ++v)
    if (X.vertices[v].trivial() && X.degree(v) == n) return true;
  return false;
}

bool is_type_y(const FactorSystem& sys, const GraphOfGroups& X) {
  const int n = sys.n();
  if (X.num_vertices() != n) return false;
  int centers = 0;
  for (int v = 0; v < X.num_vertices(); ++v) {
    if (X.vertices[v].trivial()) return false;
    int d = X.degree(v);
    if (d == n - 1) ++centers;
    else if (d != 1) return false;
  }
  return centers >= 1;
}

}  // namespace

std::set<std::string> classify(const FactorSystem& sys, const GraphOfGroups& X) {
  validate_or_throw(sys, X);
  std::set<std::string> tags;
  const int n = sys.n();
  if (is_type_x(sys, X)) tags.insert("TypeX");
  if (is_type_y(sys, X)) tags.insert("TypeY");
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const int vj = X.vertex_of(j);
      bool ok = any_presentation(sys, X, i, [&](const std::vector<VertexLabel>& L) {
        if (!L[vj].conj.empty()) return false;
        for (const auto& lab : L)
          if (!lab.trivial() && !over_factors(lab.conj, {i, j})) return false;
        return true;
      });
      if (ok) tags.insert("K" + std::to_string(i) + std::to_string(j));
    }
  if (n == 4) {
    const int v2 = X.vertex_of(2), v3 = X.vertex_of(3), v4 = X.vertex_of(4);
    bool ok = any_presentation(sys, X, 1, [&](const std::vector<VertexLabel>& L) {
      // Labels u A1 u^-1, u A2 u^-1, v A3 v^-1, v A4 v^-1 anchored at A1 leave c2 in A1 and
      // c3, c4 sharing an A1*A2 prefix followed by a common A3*A4 part.
      const Word& c2 = L[v2].conj;
      if (c2.size() > 1 || (c2.size() == 1 && c2.back().factor != 1)) return false;
      auto split = [](const Word& c) {
        size_t t = 0;
        while (t < c.size() && c.letters[t].factor <= 2) ++t;
        return t;
      };
      const Word& c3 = L[v3].conj;
      const Word& c4 = L[v4].conj;
      const size_t t3 = split(c3), t4 = split(c4);
      if (t3 != t4 || !std::equal(c3.letters.begin(), c3.letters.begin() + t3, c4.letters.begin())) return false;
      const Word r3(std::vector<Letter>(c3.letters.begin() + t3, c3.letters.end()));
      const Word r4(std::vector<Letter>(c4.letters.begin() + t4, c4.letters.end()));
      if (!over_factors(r3, {3, 4}) || !over_factors(r4, {3, 4})) return false;
      for (int a = 0; a < sys.factor(3).order; ++a)
        if (strip_trailing(mul(sys, r3, letter_word(sys, 3, a)), 4) == r4) return true;
      return false;
    });
    if (ok) tags.insert("M4");
  }
  return tags;
}

namespace {

struct SingleStep {
  int k;      // factor being conjugated
  Letter l;   // conjugating letter
  int exp;
};

std::vector<SingleStep> single_steps(const OuterAutoWord& f) {
  std::vector<SingleStep> out;
  for (const auto& g : f.gens) {
    if (g.exp > 0) {
      for (auto it = g.w.letters.rbegin(); it != g.w.letters.rend(); ++it) out.push_back({g.i, *it, 1});
    } else {
      for (const auto& l : g.w.letters) out.push_back({g.i, l, -1});
    }
  }
  return out;
}

bool is_basepoint(const FactorSystem& sys, const GraphOfGroups& S) {
  return canonical_form(sys, S) == canonical_form(sys, basepoint_star(sys));
}

}  // namespace

std::vector<SpineVertex> xy_path(const FactorSystem& sys, const GraphOfGroups& S, const GraphOfGroups& Sp,
                                 const OuterAutoWord& witness) {
  if (!is_type_x(sys, S) || !is_type_x(sys, Sp)) fail_input("NotTypeX", "both endpoints must be type X stars");
  if (!is_basepoint(sys, S)) fail_input("NotBasepoint", "the source must be equivalent to the basepoint star");
  if (!equivalent(sys, act_on_gog(sys, witness, S), Sp))
    fail_input("WitnessRequired", "the witness does not carry the source to the target");
  const GraphOfGroups X = basepoint_star(sys);
  std::vector<SpineVertex> path{make_vertex(sys, X)};
  OuterAutoWord h;
  for (const auto& st : single_steps(witness)) {
    OuterAutoWord g = gen(sys, st.k, Word({st.l}), st.exp);
    OuterAutoWord hg = compose(h, g);
    if (st.l.factor != st.k) {
      path.push_back(make_vertex(sys, act_on_gog(sys, h, y_vertex(sys, st.l.factor))));
      path.push_back(make_vertex(sys, act_on_gog(sys, hg, X)));
    }
    h = std::move(hg);
  }
  // A later step can undo an earlier one; drop immediate back-and-forth.
  std::vector<SpineVertex> out;
  for (auto& v : path) {
    if (!out.empty() && out.back().key == v.key) continue;
    if (out.size() >= 2 && out[out.size() - 2].key == v.key) {
      out.pop_back();
      continue;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<OuterAutoWord> recover_automorphism(const FactorSystem& sys, const GraphOfGroups& S,
                                                  const GraphOfGroups& Sp) {
  if (!is_type_x(sys, S) || !is_type_x(sys, Sp)) fail_input("NotTypeX", "both markings must be type X stars");
  for (const auto& L : S.vertices)
    if (!L.trivial() && !L.conj.empty()) fail_input("BadBasepoint", "source labels must be exactly A_1..A_n");
  const std::string target = canonical_form(sys, Sp);
  if (canonical_form(sys, S) == target) return OuterAutoWord{};
  const int n = sys.n();
  for (int i = 1; i <= n; ++i) {
    const int m = sys.factor(i).order;
    std::vector<int> tw(n + 1, 0);
    while (true) {
      std::vector<Word> conjs(n + 1);
      for (int k = 1; k <= n; ++k)
        if (k != i) conjs[k] = letter_word(sys, i, tw[k]);
      if (canonical_form(sys, star_with(sys, conjs)) == target) {
        OuterAutoWord phi;
        for (int k = 1; k <= n; ++k)
          if (k != i && tw[k] != 0) phi = compose(phi, gen(sys, k, i, tw[k]));
        return phi;
      }
      int k = n;
      while (k >= 1) {
        if (k == i) {
          --k;
          continue;
        }
        if (++tw[k] < m) break;
        tw[k--] = 0;
      }
      if (k < 1) break;
    }
  }
  return std::nullopt;
}

std::vector<OuterAutoWord> stabilizer_sample(const FactorSystem& sys, const GraphOfGroups& X,
                                             const std::vector<OuterAutoWord>& gens, int maxlen) {
  const std::string key = canonical_form(sys, X);
  std::vector<OuterAutoWord> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(invert(g));
  }
  std::vector<OuterAutoWord> found{OuterAutoWord{}};
  std::vector<OuterAutoWord> layer{OuterAutoWord{}};
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<OuterAutoWord> next;
    for (const auto& w : layer)
      for (const auto& l : letters) {
        OuterAutoWord c = compose(w, l);
        next.push_back(c);
        if (canonical_form(sys, act_on_gog(sys, c, X)) != key) continue;
        bool dup = std::any_of(found.begin(), found.end(), [&](const OuterAutoWord& f) { return outer_equal(sys, f, c); });
        if (!dup) found.push_back(c);
      }
    layer = std::move(next);
  }
  return found;
}

}  // namespace spinelab
