#include "fimeq/surgery.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "fimeq/error.hpp"

namespace fimeq {

  namespace {

    LangSystem copy_vars(LangSystem const& S, Interp interp, int extra = 0) {
      LangSystem out(S.alphabet(), interp);
      out.set_coeffs_over(S.coeffs_over());
      for (std::uint32_t v = 0; v < S.vars().size(); ++v) {
        out.add_var(S.vars()[v], S.slack(v) + extra);
      }
      return out;
    }

    LangEquation leq(Summand a, Summand b, Summand c) {
      LangEquation e;
      e.lhs.summands = {std::move(a)};
      e.rhs.summands = {std::move(b), std::move(c)};
      e.inequality   = true;
      return e;
    }

    bool is_unit_summand(Summand const& s) {
      return s.coef.size() <= 1;
    }

    // a X <= b Y + c Z with |a|, |b|, |c| <= 1 and no constants, or the
    // padded form a X <= a + b Y + c Z.
    bool is_s1_inequality(LangEquation const& e, bool padded) {
      if (!e.inequality || e.marked || !e.lhs.constants.empty()
          || e.lhs.summands.size() != 1 || e.rhs.summands.size() != 2) {
        return false;
      }
      if (!std::all_of(e.lhs.summands.begin(),
                       e.lhs.summands.end(),
                       is_unit_summand)
          || !std::all_of(e.rhs.summands.begin(),
                          e.rhs.summands.end(),
                          is_unit_summand)) {
        return false;
      }
      if (padded) {
        return e.rhs.constants == WordSet{e.lhs.summands[0].coef};
      }
      return e.rhs.constants.empty();
    }

    // The equation X = c, returning X.
    std::optional<std::uint32_t> defining_constant(LangEquation const& e,
                                                   WordSet const&      c) {
      if (e.inequality || e.marked || !e.lhs.constants.empty()
          || e.lhs.summands.size() != 1 || !e.lhs.summands[0].coef.empty()
          || !e.rhs.summands.empty() || e.rhs.constants != c) {
        return std::nullopt;
      }
      return e.lhs.summands[0].var;
    }

    Letter first_letter(LangSystem const& S) {
      auto B = S.coefficient_letters();
      if (B.empty()) {
        throw InvalidInput("the coefficient alphabet is empty");
      }
      return B.front();
    }

    // d in the padded equation X#0 = 1 + d.
    Letter pad_letter(LangSystem const& S2) {
      for (auto const& e : S2.equations()) {
        auto const& c = e.rhs.constants;
        if (c.size() == 2 && c.begin()->empty() && c.rbegin()->size() == 1
            && defining_constant(e, c)) {
          return c.rbegin()->front();
        }
      }
      throw PreconditionError("no equation X#0 = 1 + d");
    }

    // A letter d such that neither d nor bar(d) is a coefficient letter of
    // S1. The alphabet grows by one base letter if there is none.
    std::pair<InvAlphabet, Letter> pad_alphabet(LangSystem const& S1) {
      InvAlphabet const& A = S1.alphabet();
      auto const         B = S1.coefficient_letters();
      auto in_B = [&](Letter a) {
        return std::find(B.begin(), B.end(), a) != B.end();
      };
      for (Letter a : A.positive_letters()) {
        if (A.bar(a) != a && !in_B(a) && !in_B(A.bar(a))) {
          return {A, a};
        }
      }
      std::string base = "d";
      for (int k = 1; A.find(base) || A.find("~" + base) || S1.find_var(base);
           ++k) {
        base = "d" + std::to_string(k);
      }
      auto         names = A.names();
      auto         bars  = A.bars();
      Letter const d     = static_cast<Letter>(names.size());
      names.push_back(base);
      names.push_back("~" + base);
      bars.push_back(static_cast<Letter>(d + 1));
      bars.push_back(d);
      return {InvAlphabet(std::move(names), std::move(bars)), d};
    }

    void check_s1_shape(LangSystem const& S, bool padded) {
      WordSet const one = padded ? WordSet{Word{}, Word{pad_letter(S)}}
                                 : WordSet{Word{}};
      std::size_t constants = 0;
      for (auto const& e : S.equations()) {
        if (defining_constant(e, one)) {
          ++constants;
        } else if (!is_s1_inequality(e, padded)) {
          throw PreconditionError("not in normal form: "
                                  + format_equation(S, e));
        }
      }
      if (constants != 1) {
        throw PreconditionError("expected exactly one equation X#0 = "
                                + format_set(S.alphabet(), one));
      }
    }

    void dedupe(std::vector<Summand>& ss) {
      std::vector<Summand> out;
      for (auto& s : ss) {
        if (std::find(out.begin(), out.end(), s) == out.end()) {
          out.push_back(std::move(s));
        }
      }
      ss = std::move(out);
    }

    std::vector<std::string> fresh_vars(std::vector<std::string> const& before,
                                        std::vector<std::string> const& after) {
      std::vector<std::string> out;
      for (auto const& v : after) {
        if (std::find(before.begin(), before.end(), v) == before.end()) {
          out.push_back(v);
        }
      }
      return out;
    }

    // S over an explicit coefficient alphabet B containing no pair c,
    // bar(c). Letters are renamed to fresh base letters if needed (~a
    // becomes a'), which the free monoid does not notice.
    LangSystem inverse_free(LangSystem const& S) {
      InvAlphabet const&  A = S.alphabet();
      std::vector<Letter> B = S.coefficient_letters();
      for (auto const& e : S.equations()) {
        for (LangTerm const* t : {&e.lhs, &e.rhs}) {
          for (auto const& c : t->constants) {
            B.insert(B.end(), c.begin(), c.end());
          }
        }
      }
      std::sort(B.begin(), B.end());
      B.erase(std::unique(B.begin(), B.end()), B.end());
      bool const clash = std::any_of(B.begin(), B.end(), [&](Letter c) {
        return std::binary_search(B.begin(), B.end(), A.bar(c));
      });
      if (!clash) {
        LangSystem out = S;
        out.set_coeffs_over(B);
        return out;
      }
      std::vector<std::string> names;
      std::map<Letter, Letter> map;
      for (Letter c : B) {
        std::string n = A.name(c);
        if (n.front() == '~') {
          n = n.substr(1) + "'";
        }
        while ((A.find(n) && *A.find(n) != c)
               || std::find(names.begin(), names.end(), n) != names.end()
               || S.find_var(n)) {
          n += "'";
        }
        map[c] = static_cast<Letter>(2 * names.size());
        names.push_back(n);
      }
      auto relabel = [&](Word const& w) {
        Word out;
        for (Letter a : w) {
          out.push_back(map.at(a));
        }
        return out;
      };
      InvAlphabet const   R = InvAlphabet::from_base(names);
      LangSystem          out(R, Interp::monoid);
      std::vector<Letter> positive;
      for (std::size_t i = 0; i < names.size(); ++i) {
        positive.push_back(static_cast<Letter>(2 * i));
      }
      out.set_coeffs_over(positive);
      for (std::uint32_t v = 0; v < S.vars().size(); ++v) {
        out.add_var(S.vars()[v], S.slack(v));
      }
      for (auto e : S.equations()) {
        for (LangTerm* t : {&e.lhs, &e.rhs}) {
          WordSet cs;
          for (auto const& c : t->constants) {
            cs.insert(relabel(c));
          }
          t->constants = std::move(cs);
          for (auto& m : t->summands) {
            m.coef = relabel(m.coef);
          }
        }
        out.add_equation(std::move(e));
      }
      return out;
    }

  }  // namespace

  LangSystem normalize_s1(LangSystem const& input) {
    if (input.interp() != Interp::monoid) {
      throw PreconditionError("normalize_s1 expects the monoid interpretation");
    }
    LangSystem const S = inverse_free(input);
    InvAlphabet const& A   = S.alphabet();
    Letter const       d   = first_letter(S);
    LangSystem         out = copy_vars(S, Interp::monoid);
    std::uint32_t const x0 = out.add_var(out.fresh_name("X#0"));
    {
      LangEquation e;
      e.lhs.summands = {Summand{{}, x0}};
      e.rhs.constants = {Word{}};
      out.add_equation(std::move(e));
    }

    std::optional<std::uint32_t> empty_var;
    auto                         nothing = [&]() {
      if (!empty_var) {
        empty_var = out.add_var(out.fresh_name("N#0"));
        out.add_equation(leq(
            Summand{{}, *empty_var}, Summand{{d}, *empty_var},
            Summand{{d}, *empty_var}));
      }
      return Summand{{}, *empty_var};
    };

    // target = t_1 + ... + t_n as inequalities, chained through R#k.
    std::size_t r_count = 0, e_count = 0;
    auto        term_slack = [&](Summand const& s) {
      return static_cast<int>(s.coef.size()) + out.slack(s.var);
    };
    auto define = [&](std::uint32_t target, std::vector<Summand> ts) {
      while (true) {
        Summand const head = ts[0];
        Summand       tail;
        bool          last = ts.size() <= 2;
        if (last) {
          tail = ts.back();
        } else {
          int s = term_slack(ts[1]);
          for (std::size_t i = 2; i < ts.size(); ++i) {
            s = std::max(s, term_slack(ts[i]));
          }
          tail = Summand{
              {},
              out.add_var(out.fresh_name("R#" + std::to_string(r_count++)),
                          s)};
        }
        Summand const x{{}, target};
        out.add_equation(leq(x, head, tail));
        out.add_equation(leq(head, x, x));
        if (!(tail == head)) {
          out.add_equation(leq(tail, x, x));
        }
        if (last) {
          return;
        }
        target = tail.var;
        ts.erase(ts.begin());
      }
    };

    std::map<std::pair<Word, std::uint32_t>, std::uint32_t> memo;
    std::function<Summand(Word const&, std::uint32_t)>      shorten
        = [&](Word const& u, std::uint32_t var) -> Summand {
      if (u.size() <= 1) {
        return Summand{u, var};
      }
      Word const v(u.begin() + 1, u.end());
      auto       it = memo.find({v, var});
      if (it == memo.end()) {
        std::uint32_t const fresh = out.add_var(
            out.fresh_name("[" + A.format(v) + out.vars()[var] + "]"),
            static_cast<int>(v.size()) + out.slack(var));
        it = memo.emplace(std::make_pair(v, var), fresh).first;
        define(fresh, {shorten(v, var)});
      }
      return Summand{{u[0]}, it->second};
    };

    auto side = [&](LangTerm const& t) {
      std::vector<Summand> out_terms;
      for (auto const& u : t.constants) {
        out_terms.push_back(shorten(u, x0));
      }
      for (auto const& s : t.summands) {
        out_terms.push_back(shorten(s.coef, s.var));
      }
      dedupe(out_terms);
      return out_terms;
    };
    auto single_var = [](std::vector<Summand> const& ts) {
      return ts.size() == 1 && ts[0].coef.empty();
    };
    auto as_var = [&](std::vector<Summand> const& ts) {
      if (single_var(ts)) {
        return ts[0].var;
      }
      int s = 0;
      for (auto const& t : ts) {
        s = std::max(s, term_slack(t));
      }
      std::uint32_t e
          = out.add_var(out.fresh_name("E#" + std::to_string(e_count++)), s);
      define(e, ts);
      return e;
    };

    for (auto const& e : S.equations()) {
      if (e.marked) {
        throw PreconditionError("normalize_s1: marked equation");
      }
      if (is_s1_inequality(e, false)) {
        out.add_equation(e);
        continue;
      }
      std::vector<Summand> lhs = side(e.lhs), rhs = side(e.rhs);
      if (rhs.empty()) {
        rhs = {nothing()};
      }
      if (e.inequality) {
        if (lhs.empty()) {
          continue;
        }
        Summand const r{{}, as_var(rhs)};
        if (lhs.size() == 1) {
          out.add_equation(leq(lhs[0], r, r));
        } else {
          Summand const l{{}, as_var(lhs)};
          out.add_equation(leq(l, r, r));
        }
        continue;
      }
      if (lhs.empty()) {
        lhs = {nothing()};
      }
      if (single_var(lhs)) {
        define(lhs[0].var, rhs);
      } else if (single_var(rhs)) {
        define(rhs[0].var, lhs);
      } else {
        std::uint32_t const target = as_var(lhs);
        define(target, rhs);
      }
    }
    return out;
  }

  LangSystem pad_s2(LangSystem const& S1) {
    check_s1_shape(S1, false);
    auto const [A, d] = pad_alphabet(S1);
    auto       B      = S1.coefficient_letters();
    B.push_back(d);
    LangSystem out(A, Interp::monoid);
    out.set_coeffs_over(B);
    for (std::uint32_t v = 0; v < S1.vars().size(); ++v) {
      out.add_var(S1.vars()[v], S1.slack(v) + 1);
    }
    for (auto e : S1.equations()) {
      if (e.inequality) {
        e.rhs.constants = {e.lhs.summands[0].coef};
      } else {
        e.rhs.constants = {Word{}, Word{d}};
      }
      out.add_equation(std::move(e));
    }
    return out;
  }

  LangAssignment pad_forward(LangSystem const&     S1,
                             LangAssignment const& sigma) {
    Letter const   d = pad_alphabet(S1).second;
    LangAssignment out;
    for (auto const& name : S1.vars()) {
      WordSet& P = out[name];
      P.insert(Word{});
      for (auto const& w : sigma.at(name)) {
        Word wd = w;
        wd.push_back(d);
        auto pre = prefixes(wd);
        P.insert(pre.begin(), pre.end());
      }
    }
    return out;
  }

  LangAssignment pad_backward(LangSystem const&     S2,
                              LangAssignment const& sigma) {
    Letter const   d = pad_letter(S2);
    LangAssignment out;
    for (auto const& name : S2.vars()) {
      WordSet& P = out[name];
      for (auto const& w : sigma.at(name)) {
        if (!w.empty() && w.back() == d) {
          P.insert(Word(w.begin(), w.end() - 1));
        }
      }
    }
    return out;
  }

  LangSystem alphabet_control(LangSystem const& S2) {
    check_s1_shape(S2, true);
    auto const B = S2.coefficient_letters();
    if (B.size() < 2) {
      throw InvalidInput("alphabet_control needs two coefficient letters");
    }
    LangSystem split = copy_vars(S2, Interp::monoid);
    for (auto const& e : S2.equations()) {
      LangEquation a = e;
      a.inequality   = true;
      split.add_equation(a);
      if (!e.inequality) {
        std::swap(a.lhs, a.rhs);
        split.add_equation(a);
      }
    }
    LangEquation single = combine_to_single(split).equations().front();
    if (split.equations().size() == 1) {
      for (LangTerm* t : {&single.lhs, &single.rhs}) {
        WordSet cs;
        for (auto const& w : t->constants) {
          cs.insert(concat(Word{B[0]}, w));
        }
        t->constants = std::move(cs);
        for (auto& s : t->summands) {
          s.coef.insert(s.coef.begin(), B[0]);
        }
      }
    }
    LangEquation first;
    first.lhs = single.lhs;
    first.lhs.constants.insert(single.rhs.constants.begin(),
                               single.rhs.constants.end());
    first.lhs.summands.insert(first.lhs.summands.end(),
                              single.rhs.summands.begin(),
                              single.rhs.summands.end());
    first.rhs = single.rhs;
    dedupe(first.lhs.summands);
    dedupe(first.rhs.summands);

    LangSystem out = copy_vars(S2, Interp::monoid);
    int        zs  = 0;
    for (std::uint32_t v = 0; v < S2.vars().size(); ++v) {
      zs = std::max(zs, S2.slack(v));
    }
    std::uint32_t const z = out.add_var(out.fresh_name(control_var), zs);

    std::vector<std::uint32_t> used;
    for (LangTerm const* t : {&first.lhs, &first.rhs}) {
      for (auto const& s : t->summands) {
        used.push_back(s.var);
      }
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());

    LangEquation control;
    control.lhs.constants = {Word{}};
    control.rhs.constants = {Word{}};
    control.lhs.summands.push_back(Summand{{}, z});
    for (Letter b : B) {
      control.lhs.summands.push_back(Summand{{b}, z});
      control.rhs.summands.push_back(Summand{{b}, z});
    }
    for (std::uint32_t v : used) {
      control.lhs.summands.push_back(Summand{{}, v});
    }
    out.add_equation(std::move(first));
    out.add_equation(std::move(control));
    return out;
  }

  TypedSystem fim_encode(LangSystem const& Sprime) {
    if (Sprime.equations().size() != 2) {
      throw PreconditionError("fim_encode expects exactly two equations");
    }
    InvAlphabet const& A = Sprime.alphabet();
    TypedSystem        out(A);
    for (std::uint32_t v = 0; v < Sprime.vars().size(); ++v) {
      out.add_var(Sprime.vars()[v], VarKind::idempotent);
      if (Sprime.slack(v) != 0) {
        out.set_slack(v, Sprime.slack(v));
      }
    }
    auto letters = [](EqWord& into, Word const& w) {
      for (Letter a : w) {
        into.push_back(Token::letter(a));
      }
    };
    auto W = [&](LangTerm const& t) {
      EqWord w;
      for (auto const& u : t.constants) {
        letters(w, u);
        letters(w, involute(A, u));
      }
      for (auto const& s : t.summands) {
        letters(w, s.coef);
        w.push_back(Token::var(s.var));
        letters(w, involute(A, s.coef));
      }
      return w;
    };
    for (auto const& e : Sprime.equations()) {
      if (e.inequality || e.marked) {
        throw PreconditionError("fim_encode expects plain equations");
      }
      out.add_equation(W(e.lhs), W(e.rhs));
    }
    return out;
  }

  namespace {

    template <typename F>
    auto staged(char const* stage, F&& f) {
      try {
        return f();
      } catch (PreconditionError const& e) {
        throw PreconditionError(std::string(stage) + ": " + e.what());
      } catch (InvalidInput const& e) {
        throw InvalidInput(std::string(stage) + ": " + e.what());
      } catch (Error const& e) {
        throw Error(std::string(stage) + ": " + e.what());
      }
    }

  }  // namespace

  HardnessChain full_hardness_chain(LangSystem const& S) {
    HardnessChain out;
    LangSystem    s1 = staged("s1", [&] { return normalize_s1(S); });
    out.reports.push_back(
        SurgeryReport{"s1", S, s1, fresh_vars(S.vars(), s1.vars())});
    LangSystem s2 = staged("s2", [&] { return pad_s2(s1); });
    out.reports.push_back(
        SurgeryReport{"s2", s1, s2, fresh_vars(s1.vars(), s2.vars())});
    LangSystem sp = staged("sprime", [&] { return alphabet_control(s2); });
    out.reports.push_back(
        SurgeryReport{"sprime", s2, sp, fresh_vars(s2.vars(), sp.vars())});
    out.result = staged("fim", [&] { return fim_encode(sp); });
    out.reports.push_back(SurgeryReport{"fim", sp, out.result, {}});
    return out;
  }

}  // namespace fimeq
