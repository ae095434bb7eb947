#include <catch_amalgamated.hpp>

#include <random>

#include "fimeq/error.hpp"
#include "fimeq/text_io.hpp"
#include "fimeq/typed.hpp"
#include "oracles/oracles.hpp"

using namespace fimeq;

namespace {

  InvAlphabet const AB = InvAlphabet::from_base({"a", "b"});

  Word w(char const* s) {
    return AB.parse_word(s);
  }

  ScheiblichPair pair(std::initializer_list<char const*> P, char const* g) {
    WordSet set;
    for (auto const* p : P) {
      set.insert(w(p));
    }
    return ScheiblichPair(AB, set, ReducedWord(AB, w(g)));
  }

  oracle::OracleAssignment to_oracle(TypedSystem const& S, Assignment const& s) {
    oracle::OracleAssignment out;
    for (auto const& v : S.vars()) {
      VarValue const* x = s.find(v.name);
      if (auto const* p = std::get_if<ScheiblichPair>(x)) {
        out[v.name] = {p->tree(), p->group().word()};
      } else {
        out[v.name] = oracle::munn_walk(S.alphabet(),
                                        std::get<ReducedWord>(*x).word());
      }
    }
    return out;
  }

}  // namespace

TEST_CASE("check_solution on small systems") {
  auto S = parse_typed_system("letters: a b\nvars: X:gen\nX = X\n");
  Assignment s;
  s.set("X", pair({"eps", "a"}, "a"));
  CHECK(check_solution(S, s));

  auto T = parse_typed_system("letters: a b\nvars: Z:idem\nZ Z = Z\n");
  Assignment t;
  t.set("Z", pair({"eps", "a"}, "eps"));
  CHECK(check_solution(T, t));

  auto U = parse_typed_system("letters: a b\na ~a = b ~b\n");
  CHECK_FALSE(check_solution(U, Assignment{}));
}

TEST_CASE("assignment validation") {
  auto S = parse_typed_system("letters: a b\nvars: Z:idem x:red\nZ x = x Z\n");
  Assignment s;
  s.set("x", ReducedWord(AB, w("a")));
  CHECK_THROWS_AS(check_assignment(S, s), InvalidInput);
  s.set("Z", pair({"eps", "a"}, "a"));
  CHECK_THROWS_AS(check_assignment(S, s), InvalidInput);
  s.set("Z", pair({"eps", "a"}, "eps"));
  CHECK_NOTHROW(check_assignment(S, s));
  s.set("x", pair({"eps"}, "eps"));
  CHECK_THROWS_AS(check_assignment(S, s), InvalidInput);
}

TEST_CASE("declarations") {
  TypedSystem S(AB);
  S.add_var("X", VarKind::general);
  CHECK_THROWS_AS(S.add_var("X", VarKind::idempotent), InvalidInput);
  CHECK_THROWS_AS(S.add_var("a", VarKind::general), InvalidInput);
  CHECK_THROWS_AS(S.add_equation({Token::var(7)}, {}), InvalidInput);
  auto Z = S.add_var("Z", VarKind::idempotent);
  CHECK_THROWS_AS(S.add_equation({Token::var(Z, true)}, {}), InvalidInput);
}

TEST_CASE("evaluation agrees with the walk oracle") {
  auto S = parse_typed_system(
      "letters: a b\nvars: X:gen Z:idem x:red\n"
      "a X Z ~x b = ~X x Z ~a\n"
      "Z ~X ~a = x x b Z\n");
  std::mt19937_64 rng(31);
  auto trees = oracle::all_trees(AB, 2);
  for (int i = 0; i < 300; ++i) {
    auto const& P = trees[rng() % trees.size()];
    auto const& Q = trees[rng() % trees.size()];
    Word g = *std::next(P.begin(), static_cast<long>(rng() % P.size()));
    Assignment s;
    s.set("X", ScheiblichPair(AB, P, ReducedWord(AB, g)));
    s.set("Z", ScheiblichPair(AB, Q, ReducedWord{}));
    s.set("x", ReducedWord(AB, oracle::random_reduced(rng, AB, rng() % 4)));
    auto o = to_oracle(S, s);
    for (auto const& e : S.equations()) {
      auto l = evaluate(S, s, e.lhs);
      auto fl = oracle::fold(S, o, e.lhs);
      CHECK(l.tree() == fl.visited);
      CHECK(l.group().word() == fl.end);
    }
    CHECK(check_solution(S, s) == oracle::solves(S, o));
  }
}

TEST_CASE("tau_decompose structure and solution transfer") {
  auto S = parse_typed_system("letters: a b\nvars: X:gen\nX = a ~a\n");
  auto T = tau_decompose(S);
  REQUIRE(T.vars().size() == 2);
  CHECK(T.format(T.equations()[0]) == "Z@X x@X = a ~a");
  CHECK(T.vars()[0].kind == VarKind::idempotent);
  CHECK(T.vars()[1].kind == VarKind::reduced);

  Assignment s;
  s.set("X", pair({"eps", "a"}, "eps"));
  REQUIRE(check_solution(S, s));
  Assignment t = tau_forward(S, s);
  CHECK(check_solution(T, t));
  CHECK(tau_backward(S, t) == s);

  auto V = parse_typed_system("letters: a b\nvars: X:gen Z:idem\nX = Z\n");
  CHECK_THROWS_AS(tau_decompose(V), PreconditionError);
}

TEST_CASE("tau_decompose preserves bounded satisfiability") {
  InvAlphabet const A = InvAlphabet::from_base({"a"});
  auto trees = oracle::all_trees(A, 2);
  std::vector<oracle::Walk> general;
  for (auto const& P : trees) {
    for (auto const& g : P) {
      general.push_back({P, g});
    }
  }
  std::mt19937_64 rng(32);
  std::vector<std::string> tokens{"a", "~a", "X", "~X"};
  for (int i = 0; i < 150; ++i) {
    auto side = [&] {
      std::string out;
      std::size_t n = rng() % 4;
      for (std::size_t k = 0; k < n; ++k) {
        out += tokens[rng() % tokens.size()] + " ";
      }
      return out.empty() ? std::string("eps") : out;
    };
    auto S = parse_typed_system("letters: a\nvars: X:gen\n" + side() + " = "
                                + side() + "\n");
    auto T = tau_decompose(S);
    bool s_sat = false;
    for (auto const& x : general) {
      if (oracle::solves(S, {{"X", x}})) {
        s_sat = true;
        break;
      }
    }
    bool t_sat = false;
    for (auto const& P : trees) {
      for (auto const& g : oracle::all_reduced(A, 2)) {
        if (oracle::solves(T, {{"Z@X", {P, {}}},
                               {"x@X", oracle::munn_walk(A, g)}})) {
          t_sat = true;
        }
      }
    }
    CHECK(s_sat == t_sat);
  }
}

TEST_CASE("underlying group equations") {
  auto S = parse_typed_system(
      "letters: a b\nvars: Z:idem x:red\nZ a Z = a\na Z x = x Z a\nx ~x = eps\n");
  auto [l0, r0] = underlying_group_equation(S, S.equations()[0]);
  CHECK(S.format(l0) == "a");
  CHECK(S.format(r0) == "a");
  auto [l1, r1] = underlying_group_equation(S, S.equations()[1]);
  CHECK(S.format(l1) == "a x");
  CHECK(S.format(r1) == "x a");
  auto [l2, r2] = underlying_group_equation(S, S.equations()[2]);
  CHECK(l2.empty());

  CHECK(solves_group_part(S, {{"x", ReducedWord(AB, w("aa"))}}));
  CHECK_FALSE(solves_group_part(S, {{"x", ReducedWord(AB, w("b"))}}));
}

TEST_CASE("group part of a solution solves the underlying equations") {
  auto S = parse_typed_system(
      "letters: a b\nvars: Z:idem x:red\nZ x a = a Z x\n");
  auto trees = oracle::all_trees(AB, 1);
  for (auto const& g : oracle::all_reduced(AB, 2)) {
    for (auto const& P : trees) {
      Assignment s;
      s.set("Z", ScheiblichPair(AB, P, ReducedWord{}));
      s.set("x", ReducedWord(AB, g));
      if (check_solution(S, s)) {
        CHECK(solves_group_part(S, {{"x", ReducedWord(AB, g)}}));
      }
    }
  }
}

TEST_CASE("substitute_group_solution") {
  auto S = parse_typed_system("letters: a b\nvars: Z:idem x:red\nx Z = Z x\n");
  auto T = substitute_group_solution(S, {{"x", ReducedWord(AB, w("ab"))}});
  CHECK(T.format(T.equations()[0]) == "a b Z = Z a b");
  CHECK(T.vars().size() == 1);
  auto E = substitute_group_solution(S, {{"x", ReducedWord{}}});
  CHECK(E.format(E.equations()[0]) == "Z = Z");
  auto I = parse_typed_system("letters: a b\nvars: x:red\n~x = a\n");
  auto J = substitute_group_solution(I, {{"x", ReducedWord(AB, w("ab"))}});
  CHECK(J.format(J.equations()[0]) == "~b ~a = a");
}
