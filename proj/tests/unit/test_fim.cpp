#include <catch_amalgamated.hpp>

#include <random>

#include "fimeq/error.hpp"
#include "fimeq/scheiblich.hpp"
#include "oracles/oracles.hpp"

using namespace fimeq;

namespace {

  InvAlphabet const AB = InvAlphabet::from_base({"a", "b"});

  Word w(char const* s) {
    return AB.parse_word(s);
  }

  bool same(ScheiblichPair const& x, oracle::Walk const& y) {
    return x.tree() == y.visited && x.group().word() == y.end;
  }

}  // namespace

TEST_CASE("psi agrees with the Munn walk") {
  std::mt19937_64     rng(21);
  std::vector<Letter> all{0, 1, 2, 3};
  for (int i = 0; i < 2000; ++i) {
    Word u = oracle::random_word(rng, all, 0, 10);
    CHECK(same(psi(AB, u), oracle::munn_walk(AB, u)));
  }
  CHECK(to_string(AB, psi(AB, w("a~ab"))) == "(P={eps,a,b}; g=b)");
  CHECK(to_string(AB, psi(AB, Word{})) == "(P={eps}; g=eps)");
}

TEST_CASE("multiplication is the composition of walks") {
  std::mt19937_64     rng(22);
  std::vector<Letter> all{0, 1, 2, 3};
  for (int i = 0; i < 1000; ++i) {
    Word u = oracle::random_word(rng, all, 0, 7);
    Word v = oracle::random_word(rng, all, 0, 7);
    auto xy = fim_multiply(AB, psi(AB, u), psi(AB, v));
    CHECK(same(xy, oracle::compose(AB, oracle::munn_walk(AB, u),
                                   oracle::munn_walk(AB, v))));
    CHECK(xy == psi(AB, concat(u, v)));
  }
}

TEST_CASE("inverse monoid laws on random elements") {
  std::mt19937_64     rng(23);
  std::vector<Letter> all{0, 1, 2, 3};
  for (int i = 0; i < 500; ++i) {
    auto x  = psi(AB, oracle::random_word(rng, all, 0, 6));
    auto y  = psi(AB, oracle::random_word(rng, all, 0, 6));
    auto xi = fim_inverse(AB, x);
    CHECK(fim_multiply(AB, fim_multiply(AB, x, xi), x) == x);
    CHECK(fim_multiply(AB, fim_multiply(AB, xi, x), xi) == xi);
    CHECK(fim_inverse(AB, xi) == x);
    auto e = fim_multiply(AB, x, xi);
    auto f = fim_multiply(AB, y, fim_inverse(AB, y));
    CHECK(is_idempotent(e));
    CHECK(fim_multiply(AB, e, f) == fim_multiply(AB, f, e));
    CHECK(fim_multiply(AB, e, e) == e);
  }
}

TEST_CASE("word problem") {
  CHECK(word_problem(AB, w("a~aa"), w("a")));
  CHECK_FALSE(word_problem(AB, w("a~a"), Word{}));
  CHECK(word_problem(AB, w("a~ab~b"), w("b~ba~a")));
  CHECK_FALSE(word_problem(AB, w("ab"), w("ba")));
  CHECK(eta_to_group(psi(AB, w("a~a"))).empty());
}

TEST_CASE("pair validation") {
  CHECK_NOTHROW(ScheiblichPair(AB, WordSet{Word{}, w("a")}, ReducedWord(AB, w("a"))));
  CHECK_THROWS_AS(ScheiblichPair(AB, WordSet{w("a")}, ReducedWord{}), InvalidInput);
  CHECK_THROWS_AS(ScheiblichPair(AB, WordSet{Word{}, w("ab")}, ReducedWord{}),
                  InvalidInput);
  CHECK_THROWS_AS(ScheiblichPair(AB, WordSet{Word{}}, ReducedWord(AB, w("a"))),
                  InvalidInput);
  CHECK_THROWS_AS(
      ScheiblichPair(AB, WordSet{Word{}, w("a"), w("a~a")}, ReducedWord{}),
      InvalidInput);
  CHECK(psi_reduced(AB, ReducedWord(AB, w("ab"))) == psi(AB, w("ab")));
}
