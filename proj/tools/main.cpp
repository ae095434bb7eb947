#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "fimeq/error.hpp"
#include "fimeq/json_io.hpp"
#include "fimeq/text_io.hpp"

namespace {

  using namespace fimeq;

  // Exit codes.
  constexpr int ok_true    = 0;
  constexpr int ok_false   = 1;
  constexpr int unknown    = 2;
  constexpr int usage      = 64;
  constexpr int data_error = 65;
  constexpr int internal   = 70;

  struct Config {
    std::string format = "text";
    int         max_len = 3;
    std::size_t max_branches = 10000;
    long        time_limit_ms = 0;
    std::uint64_t seed = 0;

    std::string letters;
    std::string strategy = "marking";
    std::string interp;
    std::string witness = "text";
    bool        trace   = false;
    std::string stage   = "all";
    std::string report  = "text";
    std::size_t C       = 4;
    std::size_t max_x_len = 0;

    std::vector<std::string> args;
  };

  SolverBudget budget(Config const& c) {
    SolverBudget b;
    b.max_len      = c.max_len;
    b.max_branches = c.max_branches;
    b.time_limit   = std::chrono::milliseconds(c.time_limit_ms);
    return b;
  }

  bool json_out(Config const& c) {
    return c.format == "json";
  }

  int exit_for(Status s) {
    switch (s) {
      case Status::sat: return ok_true;
      case Status::unsat_within_bound: return ok_false;
      case Status::unknown: return unknown;
    }
    return unknown;
  }

  IdemStrategy strategy(Config const& c) {
    return c.strategy == "direct" ? IdemStrategy::direct
                                  : IdemStrategy::marking;
  }

  void print_json(json j, Config const& c) {
    j["seed"] = c.seed;
    std::cout << j.dump(2) << "\n";
  }

  void print_trace(std::vector<std::string> const& trace) {
    for (auto const& t : trace) {
      std::cout << "# " << t << "\n";
    }
  }

  // Files whose first non-blank character is '{' are read as JSON.
  bool is_json(std::string const& text) {
    auto i = text.find_first_not_of(" \t\r\n");
    return i != std::string::npos && text[i] == '{';
  }

  json parse_json_text(std::string const& text) {
    try {
      return json::parse(text);
    } catch (json::exception const& e) {
      throw InvalidInput(std::string("bad JSON: ") + e.what());
    }
  }

  TypedSystem load_typed(std::string const& path) {
    auto text = read_file(path);
    return is_json(text) ? typed_system_from_json(parse_json_text(text))
                         : parse_typed_system(text);
  }

  LangSystem load_lang(std::string const& path) {
    auto text = read_file(path);
    return is_json(text) ? lang_system_from_json(parse_json_text(text))
                         : parse_lang_system(text);
  }

  // --letters "a b", or the distinct characters of the words.
  InvAlphabet word_alphabet(Config const& c) {
    if (!c.letters.empty()) {
      return parse_letters(c.letters);
    }
    std::set<std::string> base;
    for (auto const& w : c.args) {
      if (w == "eps" || w == "1") {
        continue;
      }
      for (char ch : w) {
        if (ch != '~' && ch != '.' && ch != ' ') {
          base.insert(std::string(1, ch));
        }
      }
    }
    return InvAlphabet::from_base({base.begin(), base.end()});
  }

  int fim_eval(Config const& c) {
    InvAlphabet    A = word_alphabet(c);
    ScheiblichPair x = psi(A, A.parse_word(c.args.at(0)));
    if (json_out(c)) {
      print_json(to_json(A, x), c);
    } else {
      std::cout << to_string(A, x) << "\n";
    }
    return ok_true;
  }

  int fim_eq(Config const& c) {
    InvAlphabet A     = word_alphabet(c);
    bool        equal = word_problem(A, A.parse_word(c.args.at(0)),
                                     A.parse_word(c.args.at(1)));
    if (json_out(c)) {
      print_json({{"equal", equal}}, c);
    } else {
      std::cout << (equal ? "EQUAL" : "DIFFER") << "\n";
    }
    return equal ? ok_true : ok_false;
  }

  int report_fim(Config const& c, InvAlphabet const& A, FimVerdict const& v) {
    if (json_out(c)) {
      print_json(to_json(A, v), c);
    } else {
      std::cout << to_string(v.status) << "\n";
      if (v.witness) {
        std::cout << format_assignment(A, *v.witness);
      }
      if (c.trace) {
        print_trace(v.trace);
      }
    }
    return exit_for(v.status);
  }

  int fim_solve_idem(Config const& c) {
    TypedSystem S = load_typed(c.args.at(0));
    return report_fim(c, S.alphabet(),
                      decide_idempotent_system(S, budget(c), strategy(c)));
  }

  int fim_lift(Config const& c) {
    TypedSystem     S     = load_typed(c.args.at(0));
    GroupAssignment gamma = parse_gamma(S.alphabet(), read_file(c.args.at(1)));
    return report_fim(c, S.alphabet(),
                      decide_lifting(S, gamma, budget(c), strategy(c)));
  }

  int langeq_solve(Config const& c) {
    LangSystem S = load_lang(c.args.at(0));
    if (c.interp == "group") {
      S.set_interp(Interp::group);
    } else if (c.interp == "monoid") {
      S.set_interp(Interp::monoid);
    }
    Verdict v = S.interp() == Interp::group
                    ? solve_over_group(S, budget(c))
                    : brute_force(S, budget(c));
    if (json_out(c)) {
      print_json(to_json(S, v), c);
      return exit_for(v.status);
    }
    std::cout << to_string(v.status) << "\n";
    if (v.witness) {
      if (c.witness == "json") {
        std::cout << to_json(S.alphabet(), *v.witness).dump(2) << "\n";
      } else {
        std::cout << format_assignment(S.alphabet(), *v.witness);
      }
    }
    if (c.trace) {
      print_trace(v.trace);
    }
    return exit_for(v.status);
  }

  int surgery_run(Config const& c) {
    LangSystem S     = load_lang(c.args.at(0));
    auto       chain = full_hardness_chain(S);
    static const std::vector<std::string> stages = {"s1", "s2", "sprime",
                                                    "fim"};
    std::vector<SurgeryReport const*> chosen;
    for (auto const& r : chain.reports) {
      if (c.stage == "all" || r.stage == c.stage) {
        chosen.push_back(&r);
      }
    }
    if (c.report == "json" || json_out(c)) {
      json out = json::array();
      for (auto const* r : chosen) {
        out.push_back(to_json(*r));
      }
      print_json({{"reports", out}}, c);
      return ok_true;
    }
    for (auto const* r : chosen) {
      if (c.stage == "all") {
        std::cout << "# stage " << r->stage << "\n";
      }
      std::visit(
          [](auto const& sys) {
            if constexpr (std::is_same_v<std::decay_t<decltype(sys)>,
                                         LangSystem>) {
              std::cout << format_lang_system(sys);
            } else {
              std::cout << format_typed_system(sys);
            }
          },
          r->output);
    }
    return ok_true;
  }

  bool is_untyped(TypedSystem const& S) {
    return S.has_kind(VarKind::general);
  }

  int onevar_classify(Config const& c) {
    TypedSystem S = load_typed(c.args.at(0));
    json        rows = json::array();
    std::string best = "balanced";
    for (auto const& e : S.equations()) {
      std::string kind;
      if (is_untyped(S)) {
        kind = is_unbalanced_untyped(S, e) ? "unbalanced" : "balanced";
      } else {
        StrongKind k = strong_unbalance_kind(S, e);
        kind = k == StrongKind::none ? "not-strongly-unbalanced"
                                     : std::string("strongly-unbalanced ")
                                           + to_string(k);
      }
      if (kind != "balanced" && kind != "not-strongly-unbalanced") {
        best = kind;
      } else if (best == "balanced") {
        best = kind;
      }
      rows.push_back({{"equation", S.format(e)}, {"kind", kind}});
    }
    if (is_untyped(S) && best == "unbalanced") {
      StrongReduction r = reduce_to_strong(S);
      best += std::string(" (") + r.rule + ", " + to_string(r.kind) + ")";
    }
    if (json_out(c)) {
      print_json({{"equations", rows}, {"system", best}}, c);
    } else {
      for (auto const& row : rows) {
        std::cout << row["kind"].get<std::string>() << ": "
                  << row["equation"].get<std::string>() << "\n";
      }
      std::cout << "system: " << best << "\n";
    }
    return ok_true;
  }

  int onevar_solve(Config const& c) {
    TypedSystem   S = load_typed(c.args.at(0));
    OnevarOptions opts;
    opts.families.C = c.C;
    opts.strategy   = strategy(c);
    if (c.max_x_len > 0) {
      opts.max_reduced_len = c.max_x_len;
    }
    OnevarVerdict v = is_untyped(S) ? decide_onevar_untyped(S, budget(c), opts)
                                    : decide_onevar(S, budget(c), opts);
    if (json_out(c)) {
      print_json(to_json(S.alphabet(), v), c);
      return exit_for(v.status);
    }
    std::cout << to_string(v.status) << "\n";
    if (v.power) {
      InvAlphabet const& A = S.alphabet();
      std::cout << "x = " << A.format(v.power->r.word()) << " ("
                << A.format(v.power->p.word()) << ")^" << v.power->j << " "
                << A.format(v.power->s.word()) << "\n";
    }
    if (v.witness) {
      std::cout << format_assignment(S.alphabet(), *v.witness);
    }
    if (c.trace) {
      print_trace(v.trace);
    }
    return exit_for(v.status);
  }

}  // namespace

int main(int argc, char** argv) {
  Config   c;
  CLI::App app{"Equations over free inverse monoids and language equations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-len", c.max_len, "Bound on solution word length")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-branches", c.max_branches, "Marking branch cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--time-limit-ms", c.time_limit_ms,
                 "Wall-clock limit, 0 for none")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", c.seed, "Seed, echoed in JSON output");
  app.add_flag("--trace", c.trace, "Print the solver trace");
  app.add_option("--strategy", c.strategy, "Idempotent solver strategy")
      ->check(CLI::IsMember({"marking", "direct"}));

  int (*handler)(Config const&) = nullptr;
  auto on = [&](CLI::App* sub, int (*h)(Config const&)) {
    sub->callback([&handler, h] { handler = h; });
  };

  auto* fim = app.add_subcommand("fim", "Free inverse monoid operations");
  fim->require_subcommand(1);
  auto* eval = fim->add_subcommand("eval", "Print the pair of a word");
  eval->add_option("word", c.args)->required()->expected(1);
  eval->add_option("--letters", c.letters, "Base letters, e.g. \"a b\"");
  on(eval, fim_eval);
  auto* eq = fim->add_subcommand("eq", "Word problem; exit 0 iff equal");
  eq->add_option("words", c.args)->required()->expected(2);
  eq->add_option("--letters", c.letters, "Base letters, e.g. \"a b\"");
  on(eq, fim_eq);
  auto* idem = fim->add_subcommand("solve-idem",
                                   "Decide a system in idempotent variables");
  idem->add_option("file", c.args)->required()->expected(1);
  on(idem, fim_solve_idem);
  auto* lift = fim->add_subcommand("lift", "Decide a lifting problem");
  lift->add_option("files", c.args, "System file and gamma file")
      ->required()->expected(2);
  on(lift, fim_lift);

  auto* langeq = app.add_subcommand("langeq", "Language equations");
  langeq->require_subcommand(1);
  auto* solve = langeq->add_subcommand("solve", "Bounded solver");
  solve->add_option("file", c.args)->required()->expected(1);
  solve->add_option("--interp", c.interp, "Override the interpretation")
      ->check(CLI::IsMember({"group", "monoid"}));
  solve->add_option("--witness", c.witness, "Witness format")
      ->check(CLI::IsMember({"text", "json"}));
  on(solve, langeq_solve);

  auto* surgery = app.add_subcommand("surgery", "Hardness chain");
  surgery->require_subcommand(1);
  auto* run = surgery->add_subcommand("run", "Run the chain");
  run->add_option("file", c.args)->required()->expected(1);
  run->add_option("--stage", c.stage, "Stage to print")
      ->check(CLI::IsMember({"s1", "s2", "sprime", "fim", "all"}));
  run->add_option("--report", c.report, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
  on(run, surgery_run);

  auto* onevar = app.add_subcommand("onevar", "One-variable equations");
  onevar->require_subcommand(1);
  auto* classify = onevar->add_subcommand("classify", "Balance and kind");
  classify->add_option("file", c.args)->required()->expected(1);
  on(classify, onevar_classify);
  auto* osolve = onevar->add_subcommand("solve", "Decide");
  osolve->add_option("file", c.args)->required()->expected(1);
  osolve->add_option("--C", c.C, "Family length constant")
      ->check(CLI::PositiveNumber);
  osolve->add_option("--max-x-len", c.max_x_len,
                     "Only try values of x up to this length");
  on(osolve, onevar_solve);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return usage;
  }
  if (handler == nullptr) {
    std::cerr << app.help();
    return usage;
  }
  try {
    return handler(c);
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return data_error;
  } catch (InvalidInput const& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return data_error;
  } catch (PreconditionError const& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return data_error;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return internal;
  }
}
