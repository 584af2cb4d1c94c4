#pragma once

#include <optional>
#include <vector>

#include "spinelab/gog.hpp"
#include "spinelab/words.hpp"

namespace spinelab {

struct AutoGen {
  int i = 1;  // factor whose elements get conjugated
  Word w;     // conjugator, reduced and nonempty
  int exp = 1;
  bool operator==(const AutoGen&) const = default;
};

// Composition of generators; the leftmost entry is applied last.
struct OuterAutoWord {
  std::vector<AutoGen> gens;
  bool operator==(const OuterAutoWord&) const = default;
};

OuterAutoWord gen(const FactorSystem& sys, int i, const Word& w, int exp = 1);
OuterAutoWord gen(const FactorSystem& sys, int i, int letter_factor, int letter_elem, int exp = 1);
// Single letter from a factor other than i.
bool is_gamma_prime_generator(const AutoGen& g);

Word apply_word(const FactorSystem& sys, const OuterAutoWord& f, const Word& g);
OuterAutoWord compose(const OuterAutoWord& f, const OuterAutoWord& g);
OuterAutoWord compose(std::initializer_list<OuterAutoWord> fs);
OuterAutoWord invert(const OuterAutoWord& f);
OuterAutoWord power(const OuterAutoWord& f, int m);

// Conjugator u with f(A_k) = u A_k u^-1, u not ending in A_k.
Word image_conjugator(const FactorSystem& sys, const OuterAutoWord& f, int k);

std::optional<Word> is_inner(const FactorSystem& sys, const OuterAutoWord& f);
bool outer_equal(const FactorSystem& sys, const OuterAutoWord& f, const OuterAutoWord& g);

GraphOfGroups act_on_gog(const FactorSystem& sys, const OuterAutoWord& f, const GraphOfGroups& X);
// f acting on the G-tree by twisting the action (g . x := f(g) x); vertex stabilizers become f^-1 of
// the old ones, so this is act_on_gog with f^-1.
GraphOfGroups act_on_tree(const FactorSystem& sys, const OuterAutoWord& f, const GraphOfGroups& X);

// prod_{p != i,j} f_{A_p}^{x_i} f_{A_p}^{x_j} with x_i, x_j the element 1 of their factors.
OuterAutoWord f_ij(const FactorSystem& sys, int i, int j);
// All single-letter generators f_{A_i}^{a}, a in A_j \ {1}, j != i.
std::vector<OuterAutoWord> gamma_prime_generators(const FactorSystem& sys);

}  // namespace spinelab
