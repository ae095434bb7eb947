#include <catch_amalgamated.hpp>

#include <random>

#include "fimeq/error.hpp"
#include "fimeq/idempotent.hpp"
#include "fimeq/langeq_solver.hpp"
#include "fimeq/surgery.hpp"
#include "fimeq/text_io.hpp"
#include "oracles/oracles.hpp"

using namespace fimeq;

namespace {

  SolverBudget at(int L) {
    SolverBudget b;
    b.max_len = L;
    return b;
  }

  LangSystem random_monoid(std::mt19937_64& rng, int equations, int vars) {
    LangSystem S(InvAlphabet::from_base({"a", "b"}), Interp::monoid);
    S.set_coeffs_over({0, 2});
    for (int v = 0; v < vars; ++v) {
      S.add_var(std::string(1, static_cast<char>('X' + v)));
    }
    std::vector<Letter> B{0, 2};
    auto term = [&] {
      LangTerm t;
      for (std::size_t k = rng() % 2; k > 0; --k) {
        t.constants.insert(oracle::random_word(rng, B, 0, 2));
      }
      for (std::size_t k = rng() % 3; k > 0; --k) {
        t.summands.push_back(Summand{oracle::random_word(rng, B, 0, 2),
                                     static_cast<std::uint32_t>(rng() % vars)});
      }
      return t;
    };
    for (int e = 0; e < equations; ++e) {
      LangEquation eq;
      eq.lhs        = term();
      eq.rhs        = term();
      eq.inequality = rng() % 5 == 0;
      S.add_equation(eq);
    }
    return S;
  }

  bool unit_ineq(LangEquation const& e, bool padded) {
    if (!e.inequality || e.marked || !e.lhs.constants.empty()
        || e.lhs.summands.size() != 1 || e.rhs.summands.size() != 2) {
      return false;
    }
    for (auto const* s : {&e.lhs.summands[0], &e.rhs.summands[0],
                          &e.rhs.summands[1]}) {
      if (s->coef.size() > 1) {
        return false;
      }
    }
    return padded ? e.rhs.constants == WordSet{e.lhs.summands[0].coef}
                  : e.rhs.constants.empty();
  }

  void check_s1_shape(LangSystem const& S1, bool padded) {
    // X#0 = 1, or X#0 = 1 + d for a letter d outside the coefficients.
    auto       one = [&](WordSet const& c) {
      if (!padded) {
        return c == WordSet{Word{}};
      }
      return c.size() == 2 && c.begin()->empty() && c.rbegin()->size() == 1
             && S1.alphabet().bar(c.rbegin()->front()) != c.rbegin()->front();
    };
    int constants = 0;
    for (auto const& e : S1.equations()) {
      if (!e.inequality && e.lhs.summands.size() == 1
          && e.lhs.summands[0].coef.empty() && e.lhs.constants.empty()
          && e.rhs.summands.empty() && one(e.rhs.constants)) {
        ++constants;
        continue;
      }
      INFO(format_equation(S1, e));
      CHECK(unit_ineq(e, padded));
    }
    CHECK(constants == 1);
  }

}  // namespace

TEST_CASE("normalize_s1 produces the normal form") {
  auto S  = parse_lang_system("letters: a b\nX = {ab} + ab.X + b.Y\n");
  auto S1 = normalize_s1(S);
  check_s1_shape(S1, false);
  CHECK(S1.vars()[0] == "X");
  CHECK(S1.vars()[1] == "Y");
  CHECK(std::find(S1.vars().begin(), S1.vars().end(), "X#0") != S1.vars().end());
  CHECK(std::find(S1.vars().begin(), S1.vars().end(), "[bX]") != S1.vars().end());

  auto G = parse_lang_system("letters: a\ninterp: group\nX = a.X\n");
  CHECK_THROWS_AS(normalize_s1(G), PreconditionError);
  auto M = parse_lang_system("letters: a\n! X = a.X\n");
  CHECK_THROWS_AS(normalize_s1(M), PreconditionError);

  std::mt19937_64 rng(71);
  for (int i = 0; i < 40; ++i) {
    check_s1_shape(normalize_s1(random_monoid(rng, 2, 2)), false);
  }
}

TEST_CASE("normalize_s1 keeps satisfiability") {
  std::mt19937_64 rng(72);
  for (int i = 0; i < 60; ++i) {
    auto S  = random_monoid(rng, 1 + static_cast<int>(rng() % 2), 2);
    auto S1 = normalize_s1(S);
    auto a  = brute_force(S, at(2));
    auto b  = brute_force(S1, at(2));
    INFO(format_lang_system(S));
    CHECK(a.status == b.status);
    if (b.witness) {
      CHECK(holds(S1, *b.witness));
    }
  }
  auto U = parse_lang_system("letters: a b\n{eps} = {a}\n");
  CHECK(brute_force(normalize_s1(U), at(2)).status == Status::unsat_within_bound);
}

TEST_CASE("pad_s2 shape and solution transfer") {
  auto S1 = normalize_s1(parse_lang_system("letters: a b\nX = {a} + b.X\n"));
  auto S2 = pad_s2(S1);
  check_s1_shape(S2, true);
  CHECK(S2.vars() == S1.vars());
  for (std::uint32_t v = 0; v < S1.vars().size(); ++v) {
    CHECK(S2.slack(v) == S1.slack(v) + 1);
  }
  CHECK_THROWS_AS(pad_s2(S2), PreconditionError);

  std::mt19937_64 rng(73);
  for (int i = 0; i < 40; ++i) {
    auto T1 = normalize_s1(random_monoid(rng, 1, 2));
    auto T2 = pad_s2(T1);
    auto v  = brute_force(T1, at(2));
    if (v.witness) {
      auto padded = pad_forward(T1, *v.witness);
      CHECK(holds(T2, padded));
      for (auto const& [x, P] : padded) {
        CHECK(!P.empty());
        CHECK(is_prefix_closed(P));
      }
    }
    auto w = brute_force(T2, at(2), {true, true, false});
    INFO(format_lang_system(T1));
    CHECK((v.status == Status::sat) == (w.status == Status::sat));
    if (w.witness) {
      CHECK(holds(T1, pad_backward(T2, *w.witness)));
    }
  }
}

TEST_CASE("alphabet_control") {
  auto S2 = pad_s2(normalize_s1(parse_lang_system("letters: a b\nX = {a} + b.X\n")));
  auto Sp = alphabet_control(S2);
  REQUIRE(Sp.equations().size() == 2);
  CHECK(Sp.vars().back() == control_var);
  for (auto const& e : Sp.equations()) {
    CHECK_FALSE(e.inequality);
    CHECK_FALSE(e.marked);
  }
  auto narrow = parse_lang_system(
      "letters: a\ncoeffs-over: a\nX#0 = {eps,a}\nX <= {eps} + a.X + a.X\n");
  CHECK_THROWS_AS(alphabet_control(narrow), InvalidInput);

  // The padding letter lies outside the coefficient letters.
  auto wide = pad_s2(normalize_s1(parse_lang_system("letters: a b\nX = {a} + b.X\n")));
  CHECK(wide.alphabet().size() > 4);
  auto spare = pad_s2(normalize_s1(parse_lang_system(
      "letters: a b c\ncoeffs-over: a b\nX = {a} + b.X\n")));
  CHECK(spare.alphabet().size() == 6);
}

TEST_CASE("fim_encode") {
  auto Sp = parse_lang_system("letters: a\n{eps} + a.X = {eps}\nX = X\n");
  auto T  = fim_encode(Sp);
  REQUIRE(T.equations().size() == 2);
  CHECK(T.format(T.equations()[0]) == "a X ~a = eps");
  CHECK(T.vars()[0].kind == VarKind::idempotent);

  auto one = parse_lang_system("letters: a\nX = X\n");
  CHECK_THROWS_AS(fim_encode(one), PreconditionError);
  auto ineq = parse_lang_system("letters: a\nX <= X\nX = X\n");
  CHECK_THROWS_AS(fim_encode(ineq), PreconditionError);
}

TEST_CASE("hardness chain keeps satisfiability") {
  std::mt19937_64 rng(74);
  for (int i = 0; i < 12; ++i) {
    auto S     = random_monoid(rng, 1, 1 + static_cast<int>(rng() % 2));
    auto chain = full_hardness_chain(S);
    REQUIRE(chain.reports.size() == 4);
    CHECK(chain.reports[0].stage == "s1");
    CHECK(chain.reports[3].stage == "fim");
    CHECK(chain.result.equations().size() == 2);
    auto a = brute_force(S, at(1));
    auto b = decide_idempotent_system(chain.result, at(1), IdemStrategy::direct);
    INFO(format_lang_system(S));
    CHECK(a.status == b.status);
    if (b.witness) {
      CHECK(check_solution(chain.result, *b.witness));
    }
  }
  auto U     = parse_lang_system("letters: a b\n{eps} = {a}\n");
  auto chain = full_hardness_chain(U);
  CHECK(decide_idempotent_system(chain.result, at(1), IdemStrategy::direct).status
        == Status::unsat_within_bound);
}
