#include "fimeq/json_io.hpp"

#include "fimeq/error.hpp"

namespace fimeq {

  namespace {

    template <typename F>
    auto guarded(char const* what, F&& f) -> decltype(f()) {
      try {
        return f();
      } catch (json::exception const& e) {
        throw InvalidInput(std::string(what) + ": " + e.what());
      }
    }

    json words(InvAlphabet const& A, WordSet const& P) {
      json out = json::array();
      for (auto const& w : P) {
        out.push_back(A.format(w));
      }
      return out;
    }

    WordSet words_from(InvAlphabet const& A, json const& j) {
      WordSet out;
      for (auto const& w : j) {
        out.insert(A.parse_word(w.get<std::string>()));
      }
      return out;
    }

    char const* kind_name(VarKind k) {
      return to_string(k);
    }

    VarKind kind_from(std::string const& s) {
      for (VarKind k :
           {VarKind::general, VarKind::idempotent, VarKind::reduced}) {
        if (s == to_string(k)) {
          return k;
        }
      }
      throw InvalidInput("unknown variable kind '" + s + "'");
    }

    json term(LangSystem const& S, LangTerm const& t) {
      json sums = json::array();
      for (auto const& s : t.summands) {
        sums.push_back({{"coef", S.alphabet().format(s.coef)},
                        {"var", S.vars()[s.var]}});
      }
      return {{"constants", words(S.alphabet(), t.constants)},
              {"summands", sums}};
    }

    LangTerm term_from(LangSystem const& S, json const& j) {
      LangTerm t;
      t.constants = words_from(S.alphabet(), j.at("constants"));
      for (auto const& s : j.at("summands")) {
        auto name = s.at("var").get<std::string>();
        auto v    = S.find_var(name);
        if (!v) {
          throw InvalidInput("undeclared variable '" + name + "'");
        }
        t.summands.push_back(
            Summand{S.alphabet().parse_word(s.at("coef").get<std::string>()),
                    *v});
      }
      return t;
    }

  }  // namespace

  json to_json(InvAlphabet const& A) {
    return {{"letters", A.names()}, {"bar", A.bars()}};
  }

  InvAlphabet alphabet_from_json(json const& j) {
    return guarded("alphabet", [&] {
      return InvAlphabet(j.at("letters").get<std::vector<std::string>>(),
                         j.at("bar").get<std::vector<Letter>>());
    });
  }

  json to_json(TypedSystem const& S) {
    InvAlphabet const& A    = S.alphabet();
    json               vars = json::array();
    for (std::uint32_t i = 0; i < S.vars().size(); ++i) {
      json v = {{"name", S.vars()[i].name}, {"kind", kind_name(S.vars()[i].kind)}};
      if (S.slack(i) != 0) {
        v["slack"] = S.slack(i);
      }
      vars.push_back(v);
    }
    auto side = [&](EqWord const& w) {
      json out = json::array();
      for (auto const& t : w) {
        if (t.is_var) {
          out.push_back({{"var", S.vars()[t.index].name},
                         {"inverted", t.inverted}});
        } else {
          out.push_back({{"letter", A.name(static_cast<Letter>(t.index))}});
        }
      }
      return out;
    };
    json eqs = json::array();
    for (auto const& e : S.equations()) {
      eqs.push_back({{"lhs", side(e.lhs)}, {"rhs", side(e.rhs)}});
    }
    return {{"alphabet", to_json(A)}, {"vars", vars}, {"equations", eqs}};
  }

  TypedSystem typed_system_from_json(json const& j) {
    return guarded("typed system", [&] {
      TypedSystem S(alphabet_from_json(j.at("alphabet")));
      for (auto const& v : j.at("vars")) {
        auto i = S.add_var(v.at("name").get<std::string>(),
                           kind_from(v.at("kind").get<std::string>()));
        if (v.contains("slack")) {
          S.set_slack(i, v.at("slack").get<int>());
        }
      }
      auto side = [&](json const& a) {
        EqWord w;
        for (auto const& t : a) {
          if (t.contains("letter")) {
            auto l = S.alphabet().find(t.at("letter").get<std::string>());
            if (!l) {
              throw InvalidInput("unknown letter " + t.at("letter").dump());
            }
            w.push_back(Token::letter(*l));
            continue;
          }
          auto name = t.at("var").get<std::string>();
          auto v    = S.find_var(name);
          if (!v) {
            throw InvalidInput("undeclared variable '" + name + "'");
          }
          w.push_back(Token::var(*v, t.value("inverted", false)));
        }
        return w;
      };
      for (auto const& e : j.at("equations")) {
        S.add_equation(side(e.at("lhs")), side(e.at("rhs")));
      }
      return S;
    });
  }

  json to_json(LangSystem const& S) {
    InvAlphabet const& A = S.alphabet();
    json               B = json::array();
    for (Letter a : S.coeffs_over()) {
      B.push_back(A.name(a));
    }
    json vars = json::array();
    for (std::uint32_t i = 0; i < S.vars().size(); ++i) {
      json v = {{"name", S.vars()[i]}};
      if (S.slack(i) != 0) {
        v["slack"] = S.slack(i);
      }
      vars.push_back(v);
    }
    json eqs = json::array();
    for (auto const& e : S.equations()) {
      eqs.push_back({{"lhs", term(S, e.lhs)},
                     {"rhs", term(S, e.rhs)},
                     {"marked", e.marked},
                     {"inequality", e.inequality}});
    }
    return {{"alphabet", to_json(A)},
            {"interp", to_string(S.interp())},
            {"coeffs_over", B},
            {"vars", vars},
            {"equations", eqs}};
  }

  LangSystem lang_system_from_json(json const& j) {
    return guarded("language system", [&] {
      auto        A      = alphabet_from_json(j.at("alphabet"));
      std::string interp = j.value("interp", "monoid");
      if (interp != "monoid" && interp != "group") {
        throw InvalidInput("unknown interpretation '" + interp + "'");
      }
      LangSystem S(A, interp == "group" ? Interp::group : Interp::monoid);
      std::vector<Letter> B;
      for (auto const& n : j.value("coeffs_over", json::array())) {
        auto a = A.find(n.get<std::string>());
        if (!a) {
          throw InvalidInput("unknown letter " + n.dump());
        }
        B.push_back(*a);
      }
      S.set_coeffs_over(B);
      for (auto const& v : j.at("vars")) {
        S.add_var(v.at("name").get<std::string>(), v.value("slack", 0));
      }
      for (auto const& e : j.at("equations")) {
        LangEquation eq;
        eq.lhs        = term_from(S, e.at("lhs"));
        eq.rhs        = term_from(S, e.at("rhs"));
        eq.marked     = e.value("marked", false);
        eq.inequality = e.value("inequality", false);
        S.add_equation(std::move(eq));
      }
      return S;
    });
  }

  json to_json(InvAlphabet const& A, ScheiblichPair const& x) {
    return {{"P", words(A, x.tree())}, {"g", A.format(x.group().word())}};
  }

  ScheiblichPair pair_from_json(InvAlphabet const& A, json const& j) {
    return guarded("pair", [&] {
      return ScheiblichPair(
          A, words_from(A, j.at("P")),
          ReducedWord(A, A.parse_word(j.at("g").get<std::string>())));
    });
  }

  json to_json(InvAlphabet const& A, Assignment const& s) {
    json out = json::object();
    for (auto const& [name, value] : s.values()) {
      if (auto const* p = std::get_if<ScheiblichPair>(&value)) {
        out[name] = to_json(A, *p);
      } else {
        out[name] = {
            {"reduced", A.format(std::get<ReducedWord>(value).word())}};
      }
    }
    return out;
  }

  Assignment assignment_from_json(InvAlphabet const& A, json const& j) {
    return guarded("assignment", [&] {
      Assignment out;
      for (auto const& [name, value] : j.items()) {
        if (value.contains("reduced")) {
          out.set(name,
                  ReducedWord(A, A.parse_word(
                                     value.at("reduced").get<std::string>())));
        } else {
          out.set(name, pair_from_json(A, value));
        }
      }
      return out;
    });
  }

  json to_json(InvAlphabet const& A, LangAssignment const& s) {
    json out = json::object();
    for (auto const& [name, set] : s) {
      out[name] = words(A, set);
    }
    return out;
  }

  LangAssignment lang_assignment_from_json(InvAlphabet const& A,
                                           json const&        j) {
    return guarded("assignment", [&] {
      LangAssignment out;
      for (auto const& [name, value] : j.items()) {
        out[name] = words_from(A, value);
      }
      return out;
    });
  }

  json to_json(LangSystem const& S, Verdict const& v) {
    json out = {{"status", to_string(v.status)}, {"trace", v.trace}};
    if (v.witness) {
      out["witness"] = to_json(S.alphabet(), *v.witness);
    }
    return out;
  }

  json to_json(InvAlphabet const& A, FimVerdict const& v) {
    json out = {{"status", to_string(v.status)}, {"trace", v.trace}};
    if (v.witness) {
      out["witness"] = to_json(A, *v.witness);
    }
    return out;
  }

  json to_json(InvAlphabet const& A, OnevarVerdict const& v) {
    json out = {{"status", to_string(v.status)}, {"trace", v.trace}};
    if (v.witness) {
      out["witness"] = to_json(A, *v.witness);
    }
    if (v.power) {
      out["power"] = {{"r", A.format(v.power->r.word())},
                      {"p", A.format(v.power->p.word())},
                      {"s", A.format(v.power->s.word())},
                      {"j", v.power->j},
                      {"m", v.power->m}};
    }
    return out;
  }

  json to_json(SurgeryReport const& r) {
    json out = {{"stage", r.stage},
                {"input", to_json(r.input)},
                {"fresh", r.fresh}};
    std::visit([&](auto const& sys) { out["output"] = to_json(sys); },
               r.output);
    out["output_kind"] =
        std::holds_alternative<LangSystem>(r.output) ? "lang" : "typed";
    return out;
  }

}  // namespace fimeq
