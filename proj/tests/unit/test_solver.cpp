#include <catch_amalgamated.hpp>

#include <random>

#include "fimeq/error.hpp"
#include "fimeq/langeq_solver.hpp"
#include "fimeq/text_io.hpp"
#include "oracles/oracles.hpp"

using namespace fimeq;

namespace {

  InvAlphabet const A1 = InvAlphabet::from_base({"a"});

  // Random systems over {a, ~a} with short constants and coefficients.
  LangSystem random_system(std::mt19937_64& rng, Interp interp, int equations,
                           int vars) {
    LangSystem S(A1, interp);
    for (int v = 0; v < vars; ++v) {
      S.add_var(std::string(1, static_cast<char>('X' + v)));
    }
    std::vector<Letter> all{0, 1};
    auto term = [&] {
      LangTerm t;
      for (std::size_t k = rng() % 3; k > 0; --k) {
        t.constants.insert(oracle::random_word(rng, all, 0, 2));
      }
      for (std::size_t k = rng() % 3; k > 0; --k) {
        t.summands.push_back(Summand{oracle::random_word(rng, all, 0, 1),
                                     static_cast<std::uint32_t>(rng() % vars)});
      }
      return t;
    };
    for (int e = 0; e < equations; ++e) {
      LangEquation eq;
      eq.lhs        = term();
      eq.rhs        = term();
      eq.inequality = rng() % 4 == 0;
      S.add_equation(eq);
    }
    return S;
  }

  // Random systems in group normal form: each side has a nonempty
  // prefix-closed constant set and coefficients taken from it.
  LangSystem random_normal_form(std::mt19937_64& rng, InvAlphabet const& A,
                                int equations, int vars) {
    LangSystem S(A, Interp::group);
    for (int v = 0; v < vars; ++v) {
      S.add_var(std::string(1, static_cast<char>('X' + v)));
    }
    auto term = [&] {
      LangTerm t;
      t.constants.insert(Word{});
      for (std::size_t k = rng() % 2; k > 0; --k) {
        for (auto const& p : prefixes(oracle::random_reduced(rng, A, rng() % 3))) {
          t.constants.insert(p);
        }
      }
      std::vector<Word> pool(t.constants.begin(), t.constants.end());
      for (std::size_t k = rng() % 3; k > 0; --k) {
        t.summands.push_back(Summand{pool[rng() % pool.size()],
                                     static_cast<std::uint32_t>(rng() % vars)});
      }
      return t;
    };
    for (int e = 0; e < equations; ++e) {
      LangEquation eq;
      eq.lhs = term();
      eq.rhs = term();
      S.add_equation(eq);
    }
    return S;
  }

  SolverBudget at(int L) {
    SolverBudget b;
    b.max_len = L;
    return b;
  }

}  // namespace

TEST_CASE("word universes") {
  InvAlphabet AB = InvAlphabet::from_base({"a", "b"});
  CHECK(words_up_to(AB, 2, false).size() == 21);
  CHECK(words_up_to(AB, 2, true).size() == 17);
  CHECK(words_up_to(A1, 3, true).size() == 7);
  auto ws = words_up_to(AB, 2, false);
  CHECK(std::is_sorted(ws.begin(), ws.end(), ShortLex{}));
}

TEST_CASE("brute force agrees with subset enumeration (monoid)") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 150; ++i) {
    LangSystem S = random_system(rng, Interp::monoid, 1 + static_cast<int>(rng() % 2),
                                 1 + static_cast<int>(rng() % 2));
    Verdict v = brute_force(S, at(1));
    auto    o = oracle::lang_search(S, 1);
    REQUIRE(v.status != Status::unknown);
    CHECK((v.status == Status::sat) == o.has_value());
    if (v.witness) {
      CHECK(oracle::lang_holds(S, *v.witness));
    }
  }
}

TEST_CASE("brute force agrees with subset enumeration (group)") {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 150; ++i) {
    LangSystem S = random_system(rng, Interp::group, 1 + static_cast<int>(rng() % 2),
                                 1 + static_cast<int>(rng() % 2));
    if (i % 4 == 0) {
      S.equations()[0].marked = true;
    }
    Verdict v = brute_force(S, at(2));
    auto    o = oracle::lang_search(S, 2);
    CHECK((v.status == Status::sat) == o.has_value());
    if (v.witness) {
      CHECK(oracle::lang_holds(S, *v.witness));
    }
  }
}

TEST_CASE("brute force with side constraints") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 150; ++i) {
    Interp     m = i % 2 == 0 ? Interp::group : Interp::monoid;
    LangSystem S = random_system(rng, m, 1 + static_cast<int>(rng() % 2), 2);
    BruteForceOptions opts{true, true, true};
    Verdict v = brute_force(S, at(2), opts);
    auto    o = oracle::lang_search(S, 2, {true, true, true});
    CHECK((v.status == Status::sat) == o.has_value());
    if (v.witness) {
      CHECK(oracle::lang_holds(S, *v.witness));
      for (auto const& [x, P] : *v.witness) {
        CHECK(!P.empty());
        CHECK(is_prefix_closed(P));
      }
    }
  }
}

TEST_CASE("brute force returns the largest solution") {
  auto S = parse_lang_system("letters: a\nX = {eps} + a.X\n");
  Verdict v = brute_force(S, at(3));
  REQUIRE(v.status == Status::unsat_within_bound);
  auto T = parse_lang_system("letters: a\nX <= {eps,a} + a.Y\n");
  Verdict w = brute_force(T, at(1));
  REQUIRE(w.status == Status::sat);
  CHECK(w.witness->at("X") == WordSet{Word{}, Word{0}});
  CHECK(w.witness->at("Y").size() == 3);
}

TEST_CASE("brute force respects budget limits") {
  InvAlphabet AB = InvAlphabet::from_base({"a", "b"});
  LangSystem  S(AB, Interp::monoid);
  S.add_var("X");
  SolverBudget b = at(12);
  b.max_universe = 1000;
  CHECK(brute_force(S, b).status == Status::unknown);
}

TEST_CASE("ggs1 solver verdicts") {
  auto S = parse_lang_system(read_file(FIMEQ_TEST_DATA "/ggs1.lang"));
  S.set_interp(Interp::group);
  Verdict g = solve_over_group(S, at(1));
  REQUIRE(g.status == Status::sat);
  CHECK(holds(S, *g.witness));
  CHECK(holds(S, {{"X", {Word{}}}, {"Y", {Word{}}}}));

  S.set_interp(Interp::monoid);
  Verdict m = brute_force(S, at(2));
  REQUIRE(m.status == Status::sat);
  CHECK(m.witness->at("X") == m.witness->at("Y"));
  CHECK(m.witness->at("X").count(Word{}) == 1);
}

TEST_CASE("simple equations") {
  SimpleEq one{SimpleEq::Kind::one, 0};
  SimpleEq plus{SimpleEq::Kind::one_plus, 1};
  SimpleEq sum{SimpleEq::Kind::sum, 0, 1, 2};
  SimpleEq lin{SimpleEq::Kind::linear, 2, 1, 0, Word{0, 2}};
  for (auto const& e : {one, plus, sum, lin}) {
    auto c = classify_simple(to_equation(e));
    REQUIRE(c.has_value());
    CHECK(c->kind == e.kind);
    CHECK(c->x == e.x);
    CHECK(to_equation(*c) == to_equation(e));
  }
  LangEquation other;
  other.lhs.constants.insert(Word{0});
  CHECK_FALSE(classify_simple(other).has_value());
}

TEST_CASE("group normal form") {
  auto S = parse_lang_system(read_file(FIMEQ_TEST_DATA "/ggs1.lang"));
  S.set_interp(Interp::group);
  LangSystem N = to_group_normal_form(S);
  CHECK(format_equation(N, N.equations()[0])
        == "{eps} + eps.X + eps.Y = {eps} + eps.Y + eps.X");

  auto bad = parse_lang_system("letters: a\ninterp: group\n{a} + a.X = {eps}\n");
  CHECK_THROWS_AS(to_group_normal_form(bad), PreconditionError);
  auto coef = parse_lang_system("letters: a\ninterp: group\n{eps} + a.X = {eps}\n");
  CHECK_THROWS_AS(to_group_normal_form(coef), PreconditionError);
  auto marked = parse_lang_system("letters: a\ninterp: group\n! {eps} = {eps}\n");
  CHECK_THROWS_AS(to_group_normal_form(marked), PreconditionError);
}

TEST_CASE("decompose_simple yields simple equations and keeps verdicts") {
  std::mt19937_64 rng(54);
  for (int i = 0; i < 60; ++i) {
    LangSystem S = random_normal_form(rng, A1, 1 + static_cast<int>(rng() % 2), 2);
    LangSystem D = decompose_simple(S);
    for (auto const& e : D.equations()) {
      CHECK(classify_simple(e).has_value());
    }
    for (std::size_t v = 0; v < S.vars().size(); ++v) {
      CHECK(D.vars()[v] == S.vars()[v]);
    }
    BruteForceOptions pc{true, true, true};
    Verdict a = brute_force(S, at(2), pc);
    Verdict b = brute_force(D, at(2), pc);
    CHECK(a.status == b.status);
  }
}

TEST_CASE("solve_over_group agrees with the direct bounded search") {
  std::mt19937_64 rng(55);
  InvAlphabet     AB = InvAlphabet::from_base({"a", "b"});
  for (int i = 0; i < 80; ++i) {
    InvAlphabet const& A = i % 2 == 0 ? A1 : AB;
    LangSystem S = random_normal_form(rng, A, 1 + static_cast<int>(rng() % 2),
                                      1 + static_cast<int>(rng() % 2));
    Verdict direct = brute_force(S, at(2), {true, true, true});
    Verdict marked = solve_over_group(S, at(2));
    CHECK(direct.status == marked.status);
    if (marked.witness) {
      CHECK(holds(S, *marked.witness));
      for (auto const& [x, P] : *marked.witness) {
        CHECK(is_prefix_closed(P));
        CHECK(!P.empty());
      }
    }
  }
}

TEST_CASE("marking enumerator") {
  auto S = parse_lang_system(
      "letters: a\ninterp: group\n{eps,a} + a.X = {eps,a} + a.Y\n");
  LangSystem D = decompose_simple(to_group_normal_form(S));
  MarkingEnumerator all(D, at(2), false);
  std::size_t       n = 0;
  while (auto leaf = all.next()) {
    for (auto const& e : leaf->equations()) {
      auto c = classify_simple(e);
      REQUIRE(c.has_value());
      if (c->kind != SimpleEq::Kind::linear || c->u.empty()) {
        CHECK(e.marked);
      }
    }
    ++n;
  }
  CHECK(n == all.branches());
  CHECK(n >= 1);
  CHECK_FALSE(all.truncated());

  SolverBudget tiny = at(2);
  tiny.max_branches = 1;
  MarkingEnumerator cut(D, tiny, false);
  while (cut.next()) {
  }
  if (n > 1) {
    CHECK(cut.truncated());
    CHECK_THROWS_AS(marking_reduction(D, tiny), Error);
  }
  CHECK(marking_reduction(D, at(2)).size() == n);
}

TEST_CASE("time limit yields UNKNOWN") {
  InvAlphabet AB = InvAlphabet::from_base({"a", "b"});
  LangSystem  S(AB, Interp::monoid);
  auto X = S.add_var("X");
  auto Y = S.add_var("Y");
  LangEquation e;
  e.lhs.summands = {Summand{Word{0}, X}, Summand{Word{2}, Y}};
  e.rhs.summands = {Summand{Word{2}, X}, Summand{Word{0}, Y}};
  e.rhs.constants.insert(Word{0});
  S.add_equation(e);
  SolverBudget b = at(9);
  b.time_limit   = std::chrono::milliseconds(1);
  Verdict v      = brute_force(S, b);
  CHECK(v.status == Status::unknown);
}
