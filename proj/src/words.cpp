#include "spinelab/words.hpp"

#include <algorithm>

#include "spinelab/error.hpp"

namespace spinelab {

namespace {

// Appends l to a reduced stack, merging with and cancelling against the top.
void push_letter(const FactorSystem& sys, std::vector<Letter>& st, Letter l) {
  if (l.elem == 0) return;
  if (!st.empty() && st.back().factor == l.factor) {
    int e = sys.factor(l.factor).mul(st.back().elem, l.elem);
    st.pop_back();
    if (e != 0) st.push_back({l.factor, e});
    return;
  }
  st.push_back(l);
}

}  // namespace

void check_letter(const FactorSystem& sys, const Letter& l) {
  if (l.factor < 1 || l.factor > sys.n())
    fail_input("InvalidLetter", "factor index " + std::to_string(l.factor) + " out of range");
  if (l.elem < 0 || l.elem >= sys.factor(l.factor).order)
    fail_input("InvalidLetter", "element " + std::to_string(l.elem) + " not in factor " +
                                    std::to_string(l.factor));
}

Word reduce(const FactorSystem& sys, const std::vector<Letter>& raw) {
  std::vector<Letter> st;
  st.reserve(raw.size());
  for (const auto& l : raw) {
    check_letter(sys, l);
    push_letter(sys, st, l);
  }
  return Word(std::move(st));
}

Word mul(const FactorSystem& sys, const Word& x, const Word& y) {
  std::vector<Letter> st = x.letters;
  for (const auto& l : y.letters) push_letter(sys, st, l);
  return Word(std::move(st));
}

Word mul(const FactorSystem& sys, std::initializer_list<Word> parts) {
  std::vector<Letter> st;
  for (const auto& p : parts)
    for (const auto& l : p.letters) push_letter(sys, st, l);
  return Word(std::move(st));
}

Word inv(const FactorSystem& sys, const Word& x) {
  std::vector<Letter> out;
  out.reserve(x.size());
  for (auto it = x.letters.rbegin(); it != x.letters.rend(); ++it)
    out.push_back({it->factor, sys.factor(it->factor).inv(it->elem)});
  return Word(std::move(out));
}

Word conj(const FactorSystem& sys, const Word& g, const Word& w) {
  return mul(sys, {w, g, inv(sys, w)});
}

Word letter_word(const FactorSystem& sys, int factor, int elem) {
  return reduce(sys, {{factor, elem}});
}

Word power(const FactorSystem& sys, const Word& x, int m) {
  Word base = m >= 0 ? x : inv(sys, x);
  Word out;
  for (int i = 0; i < std::abs(m); ++i) out = mul(sys, out, base);
  return out;
}

Word strip_trailing(const Word& w, int k) {
  if (!w.empty() && w.back().factor == k) {
    Word out = w;
    out.letters.pop_back();
    return out;
  }
  return w;
}

bool over_factors(const Word& w, std::initializer_list<int> factors) {
  return std::all_of(w.letters.begin(), w.letters.end(), [&](const Letter& l) {
    return std::find(factors.begin(), factors.end(), l.factor) != factors.end();
  });
}

std::string to_string(const Word& w) {
  std::string s = "[";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += "(" + std::to_string(w.letters[i].factor) + "," + std::to_string(w.letters[i].elem) + ")";
  }
  return s + "]";
}

}  // namespace spinelab
