#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spinelab/autos.hpp"
#include "spinelab/gog.hpp"

namespace spinelab {

struct SubgroupSpec {
  std::string name;
  std::vector<std::string> gen_names;
  std::vector<OuterAutoWord> generators;
  // For N^{i1 i2} x N^{i3 i4} style specs: the two factor pairs whose exponents are tracked.
  std::optional<std::pair<std::pair<int, int>, std::pair<int, int>>> n_pairs;
};

SubgroupSpec subgroup_H12(const FactorSystem& sys);
SubgroupSpec subgroup_N12_N34(const FactorSystem& sys);
SubgroupSpec subgroup_M12M34(const FactorSystem& sys);
SubgroupSpec subgroup_by_name(const FactorSystem& sys, const std::string& name);

// Portion of the A_i*A_j-minimal subtree inside a ball, with the fundamental domains through each node.
struct MinimalSubtree {
  std::vector<int> nodes;                                // sorted ball ids
  std::unordered_map<int, std::vector<Word>> domains;    // node -> translating words h of h.gamma
  std::vector<int> gamma;                                // base domain, v_i to v_j
};

MinimalSubtree minimal_subtree(const BassSerreTree& T, const BassSerreBall& ball, int i, int j);

struct AxisSegment {
  std::vector<int> nodes;  // ball ids ordered along the axis
  int translation_length = 0;
};

AxisSegment axis(const BassSerreTree& T, const BassSerreBall& ball, const Word& g);

int g_count(const FactorSystem& sys, const GraphOfGroups& X, int k, int i1, int i2, int m);

struct RetractInfo {
  int ties = 0;  // projections lying in more than one candidate domain
};

GraphOfGroups retract_Lij(const FactorSystem& sys, const GraphOfGroups& X, int i, int j, RetractInfo* info = nullptr);
GraphOfGroups retract_L4(const FactorSystem& sys, const GraphOfGroups& X, RetractInfo* info = nullptr);

struct DistortionRow {
  std::string name;
  std::string word;
  int sub_length = 0;
  std::optional<int> spine_distance;
  std::optional<int> g_lower_bound;
  std::string status;
};

std::vector<DistortionRow> distortion_report(const FactorSystem& sys, const SubgroupSpec& sub, int max_len, int cap,
                                             int threads = 1);
std::string distortion_csv(const std::vector<DistortionRow>& rows);

}  // namespace spinelab
