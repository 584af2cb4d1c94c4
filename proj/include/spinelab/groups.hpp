#pragma once

#include <string>
#include <vector>

namespace spinelab {

// Finite group given by its multiplication table. The identity is always element 0.
struct FiniteGroup {
  int order = 0;
  std::vector<std::vector<int>> table;
  std::vector<int> inverses;
  std::string name;

  int mul(int g, int h) const { return table[g][h]; }
  int inv(int g) const { return inverses[g]; }
  bool is_abelian() const;
  std::vector<int> center() const;
};

// Validates the table and relabels elements so the identity becomes 0.
FiniteGroup build_group(const std::vector<std::vector<int>>& table, const std::string& name);
FiniteGroup cyclic(int k);
FiniteGroup symmetric(int k);

// Raw axiom check on an arbitrary table (no relabeling).
bool group_axioms(const std::vector<std::vector<int>>& table);

struct FactorSystem {
  std::vector<FiniteGroup> factors;

  int n() const { return static_cast<int>(factors.size()); }
  // Factors are addressed 1..n throughout the library.
  const FiniteGroup& factor(int i) const { return factors[i - 1]; }
  bool operator==(const FactorSystem& o) const;
};

FactorSystem make_system(std::vector<FiniteGroup> factors);

// Parses "C2,C2,S3" style specs.
FactorSystem parse_factor_spec(const std::string& spec);

}  // namespace spinelab
