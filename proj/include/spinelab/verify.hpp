#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spinelab/gog.hpp"
#include "spinelab/groups.hpp"

namespace spinelab {

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  // Restricts suites that accept a factor system to this one.
  std::optional<FactorSystem> factors;
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const VerifyOptions& opt);

// A marking reached from `start` by `steps` random collapse/one-edge-expansion moves.
GraphOfGroups random_walk(const FactorSystem& sys, const GraphOfGroups& start, int steps, std::mt19937_64& rng);
// The same point of the deformation space under a random global conjugation and random twists.
GraphOfGroups re_present(const FactorSystem& sys, const GraphOfGroups& X, std::mt19937_64& rng);

}  // namespace spinelab
