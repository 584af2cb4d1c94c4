#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spinelab/groups.hpp"
#include "spinelab/words.hpp"

namespace spinelab {

// factor == 0 means Trivial; otherwise the subgroup conj * A_factor * conj^-1.
struct VertexLabel {
  int factor = 0;
  Word conj;

  bool trivial() const { return factor == 0; }
  bool operator==(const VertexLabel&) const = default;
  static VertexLabel peripheral(int k, Word w) { return {k, std::move(w)}; }
};

struct GraphOfGroups {
  std::vector<VertexLabel> vertices;
  std::vector<std::pair<int, int>> edges;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int degree(int v) const;
  // Incident edge ids of v, ascending.
  std::vector<int> incident(int v) const;
  int other_end(int e, int v) const;
  // Quotient vertex carrying factor k, or -1.
  int vertex_of(int k) const;
  bool operator==(const GraphOfGroups&) const = default;
};

// Reduces w and strips a trailing A_k letter.
Word normalize_conj(const FactorSystem& sys, int k, const Word& w);

GraphOfGroups basepoint_star(const FactorSystem& sys);
// The star collapsed at the leaf of factor i.
GraphOfGroups y_vertex(const FactorSystem& sys, int i);
// Star with the given label conjugators (index 0 unused).
GraphOfGroups star_with(const FactorSystem& sys, const std::vector<Word>& conjs);

// Returns one message per violated invariant, each prefixed by its kind.
std::vector<std::string> validate(const FactorSystem& sys, const GraphOfGroups& X);
void validate_or_throw(const FactorSystem& sys, const GraphOfGroups& X);

GraphOfGroups collapse(const FactorSystem& sys, const GraphOfGroups& X, const std::vector<int>& edge_ids);

struct ExpansionSpec {
  int vertex = 0;
  std::vector<int> far_edges;
  bool label_far = false;
  // (edge id of a branch on the new trivial side, element of the label group).
  std::vector<std::pair<int, int>> twists;
  bool operator==(const ExpansionSpec&) const = default;
};

// New vertex gets id |V|, new edge id |E|; existing ids are kept.
GraphOfGroups expand(const FactorSystem& sys, const GraphOfGroups& X, const ExpansionSpec& spec);

std::vector<std::pair<std::vector<int>, GraphOfGroups>> enumerate_collapses(const FactorSystem& sys,
                                                                             const GraphOfGroups& X);
// Every one-edge expansion without dedupe; the first trivial-side branch is never twisted.
std::vector<std::pair<ExpansionSpec, GraphOfGroups>> raw_expansions(const FactorSystem& sys,
                                                                    const GraphOfGroups& X);
std::vector<std::pair<ExpansionSpec, GraphOfGroups>> enumerate_expansions(const FactorSystem& sys,
                                                                          const GraphOfGroups& X);

std::string canonical_form(const FactorSystem& sys, const GraphOfGroups& X);
GraphOfGroups decode_canonical(const std::string& key);
bool equivalent(const FactorSystem& sys, const GraphOfGroups& a, const GraphOfGroups& b);

// Calls fn with the labels (indexed by quotient vertex) of every fundamental domain whose
// anchor vertex carries exactly A_anchor. Stops early when fn returns true; reports whether it did.
bool any_presentation(const FactorSystem& sys, const GraphOfGroups& X, int anchor,
                      const std::function<bool(const std::vector<VertexLabel>&)>& fn);

// ---- Bass-Serre tree ----

struct BSNode {
  int qv = 0;  // quotient vertex
  Word rep;    // stabilizer rep*A_k*rep^-1 when peripheral, translating element when trivial
  bool operator==(const BSNode&) const = default;
};

struct BSNodeHash {
  size_t operator()(const BSNode& n) const { return WordHash{}(n.rep) * 31 + static_cast<size_t>(n.qv); }
};

size_t node_cap();

// Lazy view of the Bass-Serre tree of a marking.
class BassSerreTree {
 public:
  BassSerreTree(const FactorSystem& sys, const GraphOfGroups& X);
  BSNode node_at(int qv, const Word& g) const;  // g . (lift of qv in the base domain)
  BSNode translate(const Word& h, const BSNode& x) const;
  std::vector<BSNode> neighbors(const BSNode& x) const;
  VertexLabel stabilizer(const BSNode& x) const;
  // The unique vertex fixed by A_k.
  BSNode factor_vertex(int k) const;
  int degree(const BSNode& x) const;
  const GraphOfGroups& marking() const { return X_; }
  const FactorSystem& system() const { return sys_; }

 private:
  const FactorSystem& sys_;
  GraphOfGroups X_;
  std::vector<std::vector<int>> adj_;
  std::vector<Word> conj_inv_;
};

struct BassSerreBall {
  BSNode center;
  int radius = 0;
  std::vector<BSNode> nodes;
  std::vector<std::vector<int>> adj;
  std::vector<int> depth;
  std::vector<int> parent;  // BFS parent, -1 at center
  std::unordered_map<BSNode, int, BSNodeHash> index;

  int find(const BSNode& n) const {
    auto it = index.find(n);
    return it == index.end() ? -1 : it->second;
  }
  // Node ids from a to the center along BFS parents.
  std::vector<int> path_to_center(int a) const;
  // Tree geodesic between two ball nodes.
  std::vector<int> geodesic(int a, int b) const;
};

BassSerreBall bass_serre_ball(const BassSerreTree& T, const BSNode& center, int radius);
BassSerreBall bass_serre_ball(const FactorSystem& sys, const GraphOfGroups& X, int center_qv, int radius);

int default_oracle_radius(const FactorSystem& sys);
bool equivariant_iso_oracle(const FactorSystem& sys, const GraphOfGroups& a, const GraphOfGroups& b,
                            int radius);

}  // namespace spinelab
