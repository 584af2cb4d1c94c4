#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <functional>
#include <string>
#include <vector>

#include "spinelab/groups.hpp"

namespace spinelab {

struct Letter {
  int factor = 0;  // 1-based
  int elem = 0;    // never the identity inside a reduced Word

  auto operator<=>(const Letter&) const = default;
};

// Reduced alternating word; ordering is shortlex.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  const Letter& back() const { return letters.back(); }

  bool operator==(const Word& o) const { return letters == o.letters; }
  std::strong_ordering operator<=>(const Word& o) const {
    if (letters.size() != o.letters.size()) return letters.size() <=> o.letters.size();
    return letters <=> o.letters;
  }
};

struct WordHash {
  size_t operator()(const Word& w) const {
    size_t h = 1469598103934665603ull;
    for (const auto& l : w.letters) {
      h ^= static_cast<size_t>(l.factor * 131 + l.elem);
      h *= 1099511628211ull;
    }
    return h;
  }
};

Word reduce(const FactorSystem& sys, const std::vector<Letter>& raw);
Word mul(const FactorSystem& sys, const Word& x, const Word& y);
Word mul(const FactorSystem& sys, std::initializer_list<Word> parts);
Word inv(const FactorSystem& sys, const Word& x);
// w g w^-1
Word conj(const FactorSystem& sys, const Word& g, const Word& w);
Word letter_word(const FactorSystem& sys, int factor, int elem);
Word power(const FactorSystem& sys, const Word& x, int m);

// Drops a trailing letter of factor k; gives the canonical conjugator of w A_k w^-1.
Word strip_trailing(const Word& w, int k);

// True when every letter belongs to one of the listed factors.
bool over_factors(const Word& w, std::initializer_list<int> factors);

void check_letter(const FactorSystem& sys, const Letter& l);

std::string to_string(const Word& w);

}  // namespace spinelab
