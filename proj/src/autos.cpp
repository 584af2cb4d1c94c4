#include "spinelab/autos.hpp"

#include <algorithm>

#include "spinelab/error.hpp"

namespace spinelab {

namespace {

// One partial conjugation by the single letter l on the A_i letters of x.
Word apply_letter(const FactorSystem& sys, int i, const Letter& l, int exp, const Word& x) {
  Word lw = letter_word(sys, l.factor, l.elem);
  Word li = inv(sys, lw);
  const Word& pre = exp > 0 ? lw : li;
  const Word& post = exp > 0 ? li : lw;
  std::vector<Letter> raw;
  raw.reserve(x.size() * 3);
  for (const auto& a : x.letters) {
    if (a.factor == i) {
      raw.insert(raw.end(), pre.letters.begin(), pre.letters.end());
      raw.push_back(a);
      raw.insert(raw.end(), post.letters.begin(), post.letters.end());
    } else {
      raw.push_back(a);
    }
  }
  return reduce(sys, raw);
}

Word apply_gen(const FactorSystem& sys, const AutoGen& g, const Word& x) {
  const bool avoids_i =
      std::none_of(g.w.letters.begin(), g.w.letters.end(), [&](const Letter& l) { return l.factor == g.i; });
  if (avoids_i) {
    // F^w fixes w, so the composite is plain conjugation of A_i by w^{+-1}.
    Word wi = inv(sys, g.w);
    const Word& pre = g.exp > 0 ? g.w : wi;
    const Word& post = g.exp > 0 ? wi : g.w;
    std::vector<Letter> raw;
    for (const auto& a : x.letters) {
      if (a.factor == g.i) {
        raw.insert(raw.end(), pre.letters.begin(), pre.letters.end());
        raw.push_back(a);
        raw.insert(raw.end(), post.letters.begin(), post.letters.end());
      } else {
        raw.push_back(a);
      }
    }
    return reduce(sys, raw);
  }
  // F^{l_1...l_m} = F^{l_m} o ... o F^{l_1}.
  Word y = x;
  if (g.exp > 0) {
    for (const auto& l : g.w.letters) y = apply_letter(sys, g.i, l, 1, y);
  } else {
    for (auto it = g.w.letters.rbegin(); it != g.w.letters.rend(); ++it) y = apply_letter(sys, g.i, *it, -1, y);
  }
  return y;
}

}  // namespace

OuterAutoWord gen(const FactorSystem& sys, int i, const Word& w, int exp) {
  if (i < 1 || i > sys.n()) fail_input("InvalidFactor", "factor " + std::to_string(i) + " out of range");
  Word r = reduce(sys, w.letters);
  if (r.empty()) fail_input("IdentityGenerator", "conjugator reduces to the identity");
  if (exp != 1 && exp != -1) fail_input("ParseError", "exponent must be 1 or -1");
  return OuterAutoWord{{AutoGen{i, r, exp}}};
}

OuterAutoWord gen(const FactorSystem& sys, int i, int letter_factor, int letter_elem, int exp) {
  return gen(sys, i, letter_word(sys, letter_factor, letter_elem), exp);
}

bool is_gamma_prime_generator(const AutoGen& g) { return g.w.size() == 1 && g.w.back().factor != g.i; }

Word apply_word(const FactorSystem& sys, const OuterAutoWord& f, const Word& g) {
  Word y = g;
  for (auto it = f.gens.rbegin(); it != f.gens.rend(); ++it) y = apply_gen(sys, *it, y);
  return y;
}

OuterAutoWord compose(const OuterAutoWord& f, const OuterAutoWord& g) {
  OuterAutoWord h = f;
  h.gens.insert(h.gens.end(), g.gens.begin(), g.gens.end());
  return h;
}

OuterAutoWord compose(std::initializer_list<OuterAutoWord> fs) {
  OuterAutoWord h;
  for (const auto& f : fs) h.gens.insert(h.gens.end(), f.gens.begin(), f.gens.end());
  return h;
}

OuterAutoWord invert(const OuterAutoWord& f) {
  OuterAutoWord h;
  for (auto it = f.gens.rbegin(); it != f.gens.rend(); ++it) h.gens.push_back({it->i, it->w, -it->exp});
  return h;
}

OuterAutoWord power(const OuterAutoWord& f, int m) {
  OuterAutoWord base = m >= 0 ? f : invert(f);
  OuterAutoWord h;
  for (int t = 0; t < std::abs(m); ++t) h = compose(h, base);
  return h;
}

Word image_conjugator(const FactorSystem& sys, const OuterAutoWord& f, int k) {
  const auto& A = sys.factor(k);
  if (A.order == 1) return {};
  Word y = apply_word(sys, f, letter_word(sys, k, 1));
  const size_t L = y.size();
  if (L % 2 == 0) fail_input("MalformedImage", "image of a factor element has even length");
  const size_t h = L / 2;
  if (y.letters[h].factor != k) fail_input("MalformedImage", "middle letter of image not in factor " + std::to_string(k));
  Word u(std::vector<Letter>(y.letters.begin(), y.letters.begin() + static_cast<long>(h)));
  Word tail(std::vector<Letter>(y.letters.begin() + static_cast<long>(h) + 1, y.letters.end()));
  if (!(inv(sys, u) == tail)) fail_input("MalformedImage", "image is not a conjugate of a factor element");
  return u;
}

std::optional<Word> is_inner(const FactorSystem& sys, const OuterAutoWord& f) {
  int p = 0;
  for (int k = 1; k <= sys.n() && !p; ++k)
    if (sys.factor(k).order > 1) p = k;
  if (!p) return Word{};
  const Word u = image_conjugator(sys, f, p);
  for (int a = 0; a < sys.factor(p).order; ++a) {
    const Word h = mul(sys, u, letter_word(sys, p, a));
    bool ok = true;
    for (int k = 1; k <= sys.n() && ok; ++k)
      for (int e = 1; e < sys.factor(k).order && ok; ++e) {
        Word x = letter_word(sys, k, e);
        ok = apply_word(sys, f, x) == conj(sys, x, h);
      }
    if (ok) return h;
  }
  return std::nullopt;
}

bool outer_equal(const FactorSystem& sys, const OuterAutoWord& f, const OuterAutoWord& g) {
  return is_inner(sys, compose(f, invert(g))).has_value();
}

GraphOfGroups act_on_gog(const FactorSystem& sys, const OuterAutoWord& f, const GraphOfGroups& X) {
  validate_or_throw(sys, X);
  for (const auto& g : f.gens) {
    if (g.i < 1 || g.i > sys.n()) fail_input("SystemMismatch", "generator names factor " + std::to_string(g.i));
    for (const auto& l : g.w.letters) check_letter(sys, l);
  }
  GraphOfGroups Y = X;
  std::vector<std::optional<Word>> u(sys.n() + 1);
  for (auto& L : Y.vertices) {
    if (L.trivial()) continue;
    if (!u[L.factor]) u[L.factor] = image_conjugator(sys, f, L.factor);
    L.conj = normalize_conj(sys, L.factor, mul(sys, apply_word(sys, f, L.conj), *u[L.factor]));
  }
  return Y;
}

GraphOfGroups act_on_tree(const FactorSystem& sys, const OuterAutoWord& f, const GraphOfGroups& X) {
  return act_on_gog(sys, invert(f), X);
}

OuterAutoWord f_ij(const FactorSystem& sys, int i, int j) {
  OuterAutoWord f;
  for (int p = 1; p <= sys.n(); ++p) {
    if (p == i || p == j) continue;
    f = compose({f, gen(sys, p, i, 1), gen(sys, p, j, 1)});
  }
  return f;
}

std::vector<OuterAutoWord> gamma_prime_generators(const FactorSystem& sys) {
  std::vector<OuterAutoWord> out;
  for (int i = 1; i <= sys.n(); ++i)
    for (int j = 1; j <= sys.n(); ++j) {
      if (i == j) continue;
      for (int a = 1; a < sys.factor(j).order; ++a) out.push_back(gen(sys, i, j, a));
    }
  return out;
}

}  // namespace spinelab
