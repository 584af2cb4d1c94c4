#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "spinelab/autos.hpp"
#include "spinelab/gog.hpp"

namespace spinelab {

struct SpineVertex {
  std::string key;
  GraphOfGroups rep;
};

SpineVertex make_vertex(const FactorSystem& sys, const GraphOfGroups& X);

// A collapse of `edges`, or a chain of one-edge expansions, applied to the source rep.
struct Move {
  bool collapse = true;
  std::vector<int> edges;
  std::vector<ExpansionSpec> expansions;
};

GraphOfGroups replay(const FactorSystem& sys, const GraphOfGroups& from, const Move& m);

struct Neighbor {
  std::string key;
  Move move;
};

// Spine neighbors of the canonical representative of key, deduplicated, self excluded.
std::vector<Neighbor> spine_neighbors(const FactorSystem& sys, const GraphOfGroups& rep);

// Memoizes neighbor lists by canonical key; safe for concurrent use.
class NeighborCache {
 public:
  explicit NeighborCache(const FactorSystem& sys) : sys_(sys) {}
  std::shared_ptr<const std::vector<Neighbor>> get(const std::string& key);
  // Fills the cache for all keys, in parallel when threads > 1.
  void prefetch(const std::vector<std::string>& keys, int threads);
  const FactorSystem& system() const { return sys_; }

 private:
  const FactorSystem& sys_;
  std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<const std::vector<Neighbor>>> map_;
};

int default_threads();

struct SpineEdge {
  int a = 0;  // the move is applied to vertex a's rep
  int b = 0;
  Move move;
};

struct SpineBall {
  SpineVertex base;
  int radius = 0;
  std::vector<SpineVertex> vertices;  // vertices[0] is the base
  std::vector<SpineEdge> edges;
  std::vector<int> depth;
  bool truncated = false;
};

SpineBall explore(const FactorSystem& sys, const GraphOfGroups& base, int radius, int max_vertices = 200000,
                  int threads = 1);

std::optional<int> spine_distance(const FactorSystem& sys, const GraphOfGroups& a, const GraphOfGroups& b,
                                  int cap, int threads = 1, NeighborCache* cache = nullptr);

bool spine_adjacent(const FactorSystem& sys, const GraphOfGroups& a, const GraphOfGroups& b);

std::set<std::string> classify(const FactorSystem& sys, const GraphOfGroups& X);

std::vector<SpineVertex> xy_path(const FactorSystem& sys, const GraphOfGroups& S, const GraphOfGroups& Sp,
                                 const OuterAutoWord& witness);

std::optional<OuterAutoWord> recover_automorphism(const FactorSystem& sys, const GraphOfGroups& S,
                                                  const GraphOfGroups& Sp);

std::vector<OuterAutoWord> stabilizer_sample(const FactorSystem& sys, const GraphOfGroups& X,
                                             const std::vector<OuterAutoWord>& gens, int maxlen);

}  // namespace spinelab
