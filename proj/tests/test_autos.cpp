#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace spinelab;
using namespace spinelab::test;

namespace {

std::vector<Letter> inverse_letters(const FactorSystem& sys, const Word& x) {
  std::vector<Letter> out;
  for (auto it = x.letters.rbegin(); it != x.letters.rend(); ++it)
    out.push_back({it->factor, sys.factor(it->factor).inv(it->elem)});
  return out;
}

// Rewrites the word one letter at a time, innermost generator first.
Word oracle_apply(const FactorSystem& sys, const OuterAutoWord& f, const Word& g) {
  std::vector<Letter> cur = g.letters;
  for (auto it = f.gens.rbegin(); it != f.gens.rend(); ++it) {
    std::vector<Letter> left, right;
    for (int e = 0; e < std::abs(it->exp); ++e) {
      auto fw = it->w.letters;
      auto bw = inverse_letters(sys, it->w);
      if (it->exp < 0) std::swap(fw, bw);
      left.insert(left.end(), fw.begin(), fw.end());
      right.insert(right.begin(), bw.begin(), bw.end());
    }
    std::vector<Letter> next;
    for (Letter l : cur) {
      if (l.factor == it->i) {
        next.insert(next.end(), left.begin(), left.end());
        next.push_back(l);
        next.insert(next.end(), right.begin(), right.end());
      } else {
        next.push_back(l);
      }
    }
    cur = reduce(sys, next).letters;
  }
  return Word(cur);
}

OuterAutoWord random_auto(const FactorSystem& sys, std::mt19937_64& rng, int len) {
  auto gens = gamma_prime_generators(sys);
  OuterAutoWord f;
  for (int t = 0; t < len; ++t) {
    auto g = gens[std::uniform_int_distribution<size_t>(0, gens.size() - 1)(rng)];
    f = compose(f, rng() % 2 ? g : invert(g));
  }
  return f;
}

}  // namespace

TEST_CASE("single generators act on letters") {
  FactorSystem sys = c2(4);
  OuterAutoWord g = gen(sys, 1, w(sys, {a(2)}));
  CHECK(apply_word(sys, g, w(sys, {a(1)})) == w(sys, {a(2), a(1), a(2)}));
  CHECK(apply_word(sys, g, w(sys, {a(2)})) == w(sys, {a(2)}));
  CHECK(error_kind([&] { gen(sys, 1, Word{}); }) == "IdentityGenerator");
  CHECK(error_kind([&] { gen(sys, 5, w(sys, {a(2)})); }) == "InvalidFactor");
}

TEST_CASE("apply_word agrees with a letter-by-letter oracle") {
  FactorSystem sys = c2(4);
  OuterAutoWord f = compose(gen(sys, 3, w(sys, {a(1)})), gen(sys, 3, w(sys, {a(2)})));
  Word x3 = w(sys, {a(3)});
  CHECK(apply_word(sys, f, x3) == oracle_apply(sys, f, x3));
  // The rightmost generator acts first: a3 -> a2 a3 a2 -> a2 (a1 a3 a1) a2.
  CHECK(apply_word(sys, f, x3) == w(sys, {a(2), a(1), a(3), a(1), a(2)}));

  OuterAutoWord g = gen(sys, 1, w(sys, {a(2)}));
  CHECK(apply_word(sys, g, w(sys, {a(1), a(3)})) == w(sys, {a(2), a(1), a(2), a(3)}));
  CHECK(apply_word(sys, OuterAutoWord{}, x3) == x3);

  std::mt19937_64 rng(3);
  FactorSystem mixed = make_system({symmetric(3), cyclic(2), cyclic(3), cyclic(2)});
  for (int t = 0; t < 200; ++t) {
    OuterAutoWord h = random_auto(mixed, rng, 1 + t % 4);
    std::vector<Letter> raw;
    for (int k = 1; k <= 4; ++k) raw.push_back({k, 1 + static_cast<int>(rng() % (mixed.factor(k).order - 1))});
    Word x = reduce(mixed, raw);
    CHECK(apply_word(mixed, h, x) == oracle_apply(mixed, h, x));
  }
}

TEST_CASE("compose and invert") {
  FactorSystem sys = make_system({cyclic(3), cyclic(2), symmetric(3), cyclic(2)});
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    OuterAutoWord f = random_auto(sys, rng, 3);
    OuterAutoWord id = compose(f, invert(f));
    for (int k = 1; k <= sys.n(); ++k)
      for (int e = 1; e < sys.factor(k).order; ++e) CHECK(apply_word(sys, id, letter_word(sys, k, e)) == letter_word(sys, k, e));
  }
  FactorSystem s = c2(3);
  Word u = w(s, {a(2), a(3)});
  OuterAutoWord gi = invert(gen(s, 1, u));
  CHECK(apply_word(s, gi, w(s, {a(1)})) == mul(s, {inv(s, u), w(s, {a(1)}), u}));
  CHECK(power(gen(s, 1, u), 2) == compose(gen(s, 1, u), gen(s, 1, u)));
}

TEST_CASE("generators with disjoint support commute") {
  FactorSystem sys = c2(4);
  OuterAutoWord f = gen(sys, 1, w(sys, {a(3)}));
  OuterAutoWord g = gen(sys, 2, w(sys, {a(4)}));
  for (int k = 1; k <= 4; ++k) {
    Word x = w(sys, {a(k)});
    CHECK(apply_word(sys, compose(f, g), x) == apply_word(sys, compose(g, f), x));
  }
}

TEST_CASE("is_inner") {
  FactorSystem sys = c2(4);
  auto h = is_inner(sys, OuterAutoWord{});
  REQUIRE(h);
  CHECK(h->empty());

  Word x1 = w(sys, {a(1)});
  OuterAutoWord prod = compose({gen(sys, 1, x1), gen(sys, 2, x1), gen(sys, 3, x1), gen(sys, 4, x1)});
  h = is_inner(sys, prod);
  REQUIRE(h);
  CHECK(*h == x1);

  // Over C2*C2, conjugating A1 by b is inner: it is conjugation by b on both factors.
  FactorSystem s2 = c2(2);
  h = is_inner(s2, gen(s2, 1, w(s2, {a(2)})));
  REQUIRE(h);
  CHECK(*h == w(s2, {a(2)}));

  // With a third factor the same generator moves A1 but fixes A2 and A3, so no conjugator works.
  OuterAutoWord g = gen(sys, 1, w(sys, {a(2)}));
  CHECK_FALSE(is_inner(sys, g));
  std::vector<Word> layer{Word{}};
  for (int len = 0; len <= 4; ++len) {
    std::vector<Word> next;
    for (const Word& c : layer) {
      bool ok = true;
      for (int k = 1; k <= 4; ++k) ok &= apply_word(sys, g, w(sys, {a(k)})) == conj(sys, w(sys, {a(k)}), c);
      CHECK_FALSE(ok);
      for (int k = 1; k <= 4; ++k)
        if (c.empty() || c.back().factor != k) next.push_back(mul(sys, c, w(sys, {a(k)})));
    }
    layer = std::move(next);
  }
}

TEST_CASE("outer_equal") {
  FactorSystem sys = c2(4);
  OuterAutoWord f = gen(sys, 1, w(sys, {a(2)}));
  CHECK(outer_equal(sys, f, f));
  OuterAutoWord lhs = compose({gen(sys, 1, w(sys, {a(2)})), gen(sys, 3, w(sys, {a(2)})), gen(sys, 4, w(sys, {a(2)}))});
  CHECK(outer_equal(sys, lhs, invert(gen(sys, 2, w(sys, {a(2)})))));
  CHECK_FALSE(outer_equal(sys, gen(sys, 1, w(sys, {a(2)})), gen(sys, 1, w(sys, {a(3)}))));
}

TEST_CASE("act_on_gog on the basepoint star") {
  FactorSystem sys = c2(4);
  GraphOfGroups X = basepoint_star(sys);
  CHECK(act_on_gog(sys, OuterAutoWord{}, X) == X);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      if (i == j) continue;
      GraphOfGroups Y = act_on_gog(sys, gen(sys, i, w(sys, {a(j)})), X);
      for (int k = 1; k <= 4; ++k) {
        const VertexLabel& L = Y.vertices[Y.vertex_of(k)];
        CHECK(L.conj == (k == i ? w(sys, {a(j)}) : Word{}));
      }
    }
  Word x1 = w(sys, {a(1)});
  OuterAutoWord inner = compose({gen(sys, 2, x1), gen(sys, 3, x1), gen(sys, 4, x1)});
  CHECK(equivalent(sys, act_on_gog(sys, inner, X), X));
  CHECK(act_on_tree(sys, gen(sys, 2, x1), X) == act_on_gog(sys, invert(gen(sys, 2, x1)), X));
}

TEST_CASE("f_ij and the generator list") {
  FactorSystem sys = c2(4);
  OuterAutoWord f = f_ij(sys, 1, 2);
  CHECK(f.gens.size() == 4);
  for (const auto& g : f.gens) {
    CHECK(g.i >= 3);
    CHECK(is_gamma_prime_generator(g));
  }
  // n * (n - 1) single-letter generators over C2.
  CHECK(gamma_prime_generators(sys).size() == 12);
}
