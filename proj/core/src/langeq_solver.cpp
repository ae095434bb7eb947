#include "fimeq/langeq_solver.hpp"

#include <algorithm>

#include "fimeq/error.hpp"
#include "solver_detail.hpp"

namespace fimeq {

  namespace {

    constexpr std::size_t max_trace_lines = 2000;

    LangTerm single(Word coef, std::uint32_t var) {
      return LangTerm{{}, {Summand{std::move(coef), var}}};
    }

    bool is_single_var(LangTerm const& t) {
      return t.constants.empty() && t.summands.size() == 1
             && t.summands[0].coef.empty();
    }

  }  // namespace

  LangEquation to_equation(SimpleEq const& e) {
    LangEquation out;
    out.lhs = single({}, e.x);
    switch (e.kind) {
      case SimpleEq::Kind::one:
        out.rhs.constants = {Word{}};
        break;
      case SimpleEq::Kind::one_plus:
        out.rhs = LangTerm{{Word{}}, {Summand{{}, e.x}}};
        break;
      case SimpleEq::Kind::sum:
        out.rhs.summands = {Summand{{}, e.y}, Summand{{}, e.z}};
        break;
      case SimpleEq::Kind::linear:
        out.rhs = LangTerm{prefixes(e.u), {Summand{e.u, e.y}}};
        break;
    }
    return out;
  }

  std::optional<SimpleEq> classify_simple(LangEquation const& e) {
    if (e.inequality || !is_single_var(e.lhs)) {
      return std::nullopt;
    }
    std::uint32_t const x   = e.lhs.summands[0].var;
    LangTerm const&     rhs = e.rhs;
    WordSet const       eps{Word{}};
    if (rhs.summands.empty() && rhs.constants == eps) {
      return SimpleEq{SimpleEq::Kind::one, x};
    }
    if (rhs.constants == eps && rhs.summands.size() == 1
        && rhs.summands[0].coef.empty() && rhs.summands[0].var == x) {
      return SimpleEq{SimpleEq::Kind::one_plus, x};
    }
    if (rhs.constants.empty() && rhs.summands.size() == 2
        && rhs.summands[0].coef.empty() && rhs.summands[1].coef.empty()) {
      return SimpleEq{
          SimpleEq::Kind::sum, x, rhs.summands[0].var, rhs.summands[1].var};
    }
    if (rhs.summands.size() == 1
        && rhs.constants == prefixes(rhs.summands[0].coef)) {
      return SimpleEq{SimpleEq::Kind::linear,
                      x,
                      rhs.summands[0].var,
                      0,
                      rhs.summands[0].coef};
    }
    return std::nullopt;
  }

  LangSystem to_group_normal_form(LangSystem const& S) {
    if (S.interp() != Interp::group) {
      throw PreconditionError("expected a system over the group");
    }
    InvAlphabet const& A = S.alphabet();
    LangSystem         out(A, Interp::group);
    out.set_coeffs_over(S.coeffs_over());
    for (std::uint32_t v = 0; v < S.vars().size(); ++v) {
      out.add_var(S.vars()[v], S.slack(v));
    }
    auto normal = [&](LangTerm const& t) {
      LangTerm r;
      r.constants = reduce_each(A, t.constants);
      for (auto const& s : t.summands) {
        r.summands.push_back(Summand{reduce(A, s.coef), s.var});
      }
      if (r.constants.empty() || !is_prefix_closed(r.constants)) {
        throw PreconditionError(
            "constants must form a nonempty prefix-closed set");
      }
      for (auto const& s : r.summands) {
        if (!r.constants.contains(s.coef)) {
          throw PreconditionError("coefficient '" + A.format(s.coef)
                                  + "' is not among the constants of its side");
        }
      }
      return r;
    };
    for (auto const& e : S.equations()) {
      if (e.marked) {
        throw PreconditionError("marked equation in group normal form input");
      }
      LangEquation n;
      n.rhs = normal(e.rhs);
      if (e.inequality) {
        n.lhs = n.rhs;
        LangTerm l = normal(e.lhs);
        n.lhs.constants.insert(l.constants.begin(), l.constants.end());
        n.lhs.summands.insert(
            n.lhs.summands.end(), l.summands.begin(), l.summands.end());
      } else {
        n.lhs = normal(e.lhs);
      }
      out.add_equation(std::move(n));
    }
    return out;
  }

  LangSystem decompose_simple(LangSystem const& input) {
    LangSystem const S = to_group_normal_form(input);
    LangSystem       out(S.alphabet(), Interp::group);
    out.set_coeffs_over(S.coeffs_over());
    for (std::uint32_t v = 0; v < S.vars().size(); ++v) {
      out.add_var(S.vars()[v], S.slack(v));
    }
    std::uint32_t const x0 = out.add_var(out.fresh_name("X#0"));
    out.add_equation(to_equation(SimpleEq{SimpleEq::Kind::one, x0}));

    std::size_t t_count = 0, r_count = 0;
    auto        fresh   = [&](std::string const& stem, std::size_t& n, int s) {
      return out.add_var(out.fresh_name(stem + std::to_string(n++)), s);
    };
    // target = v_0 + ... + v_{n-1}, chained through R#k.
    auto emit_sum = [&](std::uint32_t target, std::vector<std::uint32_t> vs) {
      while (true) {
        if (vs.size() <= 2) {
          out.add_equation(to_equation(SimpleEq{
              SimpleEq::Kind::sum, target, vs.front(), vs.back()}));
          return;
        }
        int s = out.slack(vs[1]);
        for (std::size_t i = 2; i < vs.size(); ++i) {
          s = std::max(s, out.slack(vs[i]));
        }
        std::uint32_t r = fresh("R#", r_count, s);
        out.add_equation(
            to_equation(SimpleEq{SimpleEq::Kind::sum, target, vs[0], r}));
        target = r;
        vs.erase(vs.begin());
      }
    };

    for (std::size_t k = 0; k < S.equations().size(); ++k) {
      LangEquation const& e = S.equations()[k];
      std::vector<std::uint32_t> sides[2];
      int                        e_slack = 0;
      LangTerm const*            terms[2] = {&e.lhs, &e.rhs};
      for (int side = 0; side < 2; ++side) {
        std::vector<Summand> all;
        for (auto const& u : terms[side]->constants) {
          all.push_back(Summand{u, x0});
        }
        all.insert(all.end(),
                   terms[side]->summands.begin(),
                   terms[side]->summands.end());
        for (auto const& s : all) {
          int const slack
              = static_cast<int>(s.coef.size()) + out.slack(s.var);
          e_slack = std::max(e_slack, slack);
          std::uint32_t t = fresh("T#", t_count, slack);
          out.add_equation(to_equation(
              SimpleEq{SimpleEq::Kind::linear, t, s.var, 0, s.coef}));
          sides[side].push_back(t);
        }
      }
      std::uint32_t const xe
          = out.add_var(out.fresh_name("E#" + std::to_string(k)), e_slack);
      emit_sum(xe, sides[0]);
      emit_sum(xe, sides[1]);
    }
    for (std::uint32_t v = 0; v < out.vars().size(); ++v) {
      out.add_equation(to_equation(SimpleEq{SimpleEq::Kind::one_plus, v}));
    }
    return out;
  }

  MarkingEnumerator::MarkingEnumerator(LangSystem   S,
                                       SolverBudget budget,
                                       bool         prune)
      : _budget(budget),
        _prune(prune),
        _started(std::chrono::steady_clock::now()) {
    for (auto& e : S.equations()) {
      auto simple = classify_simple(e);
      if (!simple) {
        throw PreconditionError("marking: equation is not simple: "
                                + format_equation(S, e));
      }
      if (simple->kind != SimpleEq::Kind::linear || simple->u.empty()) {
        e.marked = true;
      }
    }
    _stack.push_back(Node{std::move(S), ""});
  }

  void MarkingEnumerator::log(std::string line) {
    if (_trace.size() < max_trace_lines) {
      _trace.push_back(std::move(line));
    }
  }

  std::optional<LangSystem> MarkingEnumerator::next() {
    auto remaining = _budget.time_limit;
    if (remaining.count() > 0) {
      remaining -= std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - _started);
      remaining = std::max(remaining, std::chrono::milliseconds(1));
    }
    detail::Deadline const deadline(remaining);
    auto                   viable = [&](LangSystem const& T) {
      if (!_prune) {
        return true;
      }
      Verdict v = detail::brute_force(T, _budget, {}, deadline);
      return v.status != Status::unsat_within_bound;
    };
    while (!_stack.empty()) {
      if (deadline.expired()) {
        log("marking: time limit");
        return std::nullopt;
      }
      Node node = std::move(_stack.back());
      _stack.pop_back();
      if (!viable(node.system)) {
        ++_pruned;
        log("prune " + (node.path.empty() ? "root" : node.path));
        continue;
      }
      auto& eqs = node.system.equations();
      auto  it  = std::find_if(
          eqs.begin(), eqs.end(), [](auto const& e) { return !e.marked; });
      if (it == eqs.end()) {
        if (_branches >= _budget.max_branches) {
          log("marking: branch limit");
          _stack.clear();
          _truncated = true;
          return std::nullopt;
        }
        ++_branches;
        log("branch " + std::to_string(_branches) + " "
            + (node.path.empty() ? "root" : node.path));
        return std::move(node.system);
      }
      std::size_t const  i = static_cast<std::size_t>(it - eqs.begin());
      SimpleEq const     e = *classify_simple(eqs[i]);
      LangSystem const&  T = node.system;
      InvAlphabet const& A = T.alphabet();
      std::size_t const  k = ++_round;
      Letter const       a = e.u.back();
      Word const         v(e.u.begin(), e.u.end() - 1);
      std::string const  abar = A.name(A.bar(a));
      std::string const  Y    = T.vars()[e.y];
      std::string const  X    = T.vars()[e.x];

      Node in{T, node.path + "[" + abar + " in " + Y + "]"};
      LangSystem& B  = in.system;
      int const   sy = B.slack(e.y), sx = B.slack(e.x);
      auto        fresh = [&](std::string const& base, int s) {
        return B.add_var(B.fresh_name(base + "@" + std::to_string(k)), s);
      };
      std::uint32_t const y1 = fresh(Y + "'", sy);
      std::uint32_t const y2 = fresh(Y + "''", sy);
      std::uint32_t const w  = fresh("W", sy);
      std::uint32_t const x1 = fresh(X + "'", sx);
      std::uint32_t const x2 = fresh(X + "''", sx);
      auto add = [&](SimpleEq const& s, bool marked) {
        LangEquation eq = to_equation(s);
        eq.marked       = marked;
        B.add_equation(std::move(eq));
      };
      B.equations()[i] = to_equation(SimpleEq{SimpleEq::Kind::sum, e.x, x1, x2});
      B.equations()[i].marked = true;
      add(SimpleEq{SimpleEq::Kind::sum, e.y, y1, w}, true);
      add(SimpleEq{SimpleEq::Kind::linear, w, y2, 0, Word{A.bar(a)}}, true);
      add(SimpleEq{SimpleEq::Kind::linear, x1, y1, 0, e.u}, true);
      add(SimpleEq{SimpleEq::Kind::linear, x2, y2, 0, v}, v.empty());
      for (std::uint32_t f : {y1, y2, w, x1, x2}) {
        add(SimpleEq{SimpleEq::Kind::one_plus, f}, true);
      }

      Node out{T, node.path + "[" + abar + " notin " + Y + "]"};
      out.system.equations()[i].marked = true;
      log("round " + std::to_string(k) + ": " + format_equation(T, eqs[i]));
      _stack.push_back(std::move(in));
      _stack.push_back(std::move(out));
    }
    return std::nullopt;
  }

  std::vector<LangSystem> marking_reduction(LangSystem const&   S,
                                            SolverBudget const& budget) {
    MarkingEnumerator       en(S, budget, false);
    std::vector<LangSystem> out;
    while (auto next = en.next()) {
      out.push_back(std::move(*next));
    }
    if (en.truncated()) {
      throw Error("marking_reduction: more than "
                  + std::to_string(budget.max_branches) + " branches");
    }
    return out;
  }

  Verdict solve_over_group(LangSystem const& S, SolverBudget const& budget) {
    detail::Deadline const deadline(budget.time_limit);
    LangSystem const       normal = to_group_normal_form(S);
    LangSystem const       simple = decompose_simple(normal);
    Verdict                out;
    out.trace.push_back("decompose_simple: "
                        + std::to_string(normal.equations().size())
                        + " equations -> "
                        + std::to_string(simple.equations().size()));
    MarkingEnumerator en(simple, budget, true);
    bool              unknown = false;
    while (auto branch = en.next()) {
      branch->set_interp(Interp::monoid);
      Verdict v = detail::brute_force(
          *branch, budget, BruteForceOptions{false, false, true}, deadline);
      if (v.status == Status::unknown) {
        unknown = true;
        continue;
      }
      if (v.status != Status::sat) {
        continue;
      }
      LangAssignment sigma;
      for (auto const& name : S.vars()) {
        WordSet P = prefix_closure(v.witness->at(name));
        sigma[name] = reduce_each(S.alphabet(), P);
      }
      if (!holds(S, sigma)) {
        throw Error("solve_over_group: branch witness does not solve input");
      }
      out.trace.insert(out.trace.end(), en.trace().begin(), en.trace().end());
      out.trace.push_back("SAT in branch " + std::to_string(en.branches()));
      out.status  = Status::sat;
      out.witness = std::move(sigma);
      return out;
    }
    out.trace.insert(out.trace.end(), en.trace().begin(), en.trace().end());
    out.trace.push_back(std::to_string(en.branches()) + " branches, "
                        + std::to_string(en.pruned()) + " pruned");
    out.status = (unknown || en.truncated() || deadline.expired())
                     ? Status::unknown
                     : Status::unsat_within_bound;
    return out;
  }

}  // namespace fimeq
