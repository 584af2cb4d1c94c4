#pragma once

#include <string>
#include <vector>

#include "spinelab/autos.hpp"
#include "spinelab/error.hpp"
#include "spinelab/gog.hpp"
#include "spinelab/groups.hpp"
#include "spinelab/words.hpp"

namespace spinelab::test {

inline FactorSystem c2(int n) { return make_system(std::vector<FiniteGroup>(n, cyclic(2))); }

// a_k: the nontrivial element of the k-th C2 factor.
inline Letter a(int k) { return {k, 1}; }

inline Word w(const FactorSystem& sys, std::vector<Letter> ls) { return reduce(sys, ls); }

template <class F>
std::string error_kind(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "";
}

}  // namespace spinelab::test
