#include "fimeq/idempotent.hpp"

#include "fimeq/error.hpp"

namespace fimeq {

  namespace {

    void split_side(TypedSystem const&          S,
                    EqWord const&               side,
                    std::vector<Word>&          consts,
                    std::vector<std::uint32_t>& vars) {
      Word cur;
      for (auto const& t : side) {
        if (!t.is_var) {
          cur.push_back(static_cast<Letter>(t.index));
          continue;
        }
        if (S.vars()[t.index].kind != VarKind::idempotent) {
          throw PreconditionError("variable '" + S.vars()[t.index].name
                                  + "' is not idempotent");
        }
        consts.push_back(std::move(cur));
        cur.clear();
        vars.push_back(t.index);
      }
      consts.push_back(std::move(cur));
    }

    Word product(std::vector<Word> const& ws) {
      Word out;
      for (auto const& w : ws) {
        out.insert(out.end(), w.begin(), w.end());
      }
      return out;
    }

    LangTerm side_term(InvAlphabet const&                A,
                       std::vector<Word> const&          consts,
                       std::vector<std::uint32_t> const& vars) {
      LangTerm t;
      Word     p;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        p.insert(p.end(), consts[i].begin(), consts[i].end());
        t.summands.push_back(Summand{reduce(A, p), vars[i]});
      }
      p.insert(p.end(), consts.back().begin(), consts.back().end());
      for (auto const& q : prefixes(p)) {
        t.constants.insert(reduce(A, q));
      }
      return t;
    }

  }  // namespace

  IdemEquation to_idem_equation(TypedSystem const&   S,
                                TypedEquation const& e) {
    IdemEquation out;
    split_side(S, e.lhs, out.u, out.x);
    split_side(S, e.rhs, out.v, out.y);
    return out;
  }

  bool group_consistency(InvAlphabet const& A, IdemEquation const& e) {
    return reduce(A, product(e.u)) == reduce(A, product(e.v));
  }

  LangEquation to_language_equation(InvAlphabet const&  A,
                                    IdemEquation const& e) {
    if (!group_consistency(A, e)) {
      throw PreconditionError("group part of the equation does not hold");
    }
    return LangEquation{side_term(A, e.u, e.x), side_term(A, e.v, e.y)};
  }

  LangSystem to_language_system(TypedSystem const& S) {
    LangSystem out(S.alphabet(), Interp::group);
    for (std::uint32_t v = 0; v < S.vars().size(); ++v) {
      out.add_var(S.vars()[v].name, S.slack(v));
    }
    for (auto const& e : S.equations()) {
      out.add_equation(
          to_language_equation(S.alphabet(), to_idem_equation(S, e)));
    }
    return out;
  }

  FimVerdict decide_idempotent_system(TypedSystem const&  S,
                                      SolverBudget const& budget,
                                      IdemStrategy        strategy) {
    if (S.has_kind(VarKind::general) || S.has_kind(VarKind::reduced)) {
      throw PreconditionError("only idempotent variables are allowed");
    }
    FimVerdict out;
    for (auto const& e : S.equations()) {
      if (!group_consistency(S.alphabet(), to_idem_equation(S, e))) {
        out.status = Status::unsat_within_bound;
        out.trace.push_back("group part fails: " + S.format(e));
        return out;
      }
    }
    LangSystem const L = to_language_system(S);
    Verdict          v;
    if (strategy == IdemStrategy::marking) {
      v = solve_over_group(L, budget);
    } else {
      v = brute_force(L, budget, BruteForceOptions{true, true, false});
    }
    out.status = v.status;
    out.trace  = std::move(v.trace);
    if (v.status != Status::sat) {
      return out;
    }
    Assignment sigma;
    for (auto const& var : S.vars()) {
      sigma.set(var.name,
                ScheiblichPair(S.alphabet(), v.witness->at(var.name), {}));
    }
    if (!check_solution(S, sigma)) {
      throw Error("decide_idempotent_system: witness fails check_solution");
    }
    out.witness = std::move(sigma);
    return out;
  }

  FimVerdict decide_lifting(TypedSystem const&     S,
                            GroupAssignment const& gamma,
                            SolverBudget const&    budget,
                            IdemStrategy           strategy) {
    bool const untyped = S.has_kind(VarKind::general);
    if (untyped
        && (S.has_kind(VarKind::idempotent) || S.has_kind(VarKind::reduced))) {
      throw PreconditionError("mixed general and typed variables");
    }
    TypedSystem     T = untyped ? tau_decompose(S) : S;
    GroupAssignment g;
    for (auto const& [name, w] : gamma) {
      auto v = S.find_var(name);
      if (untyped && v && S.vars()[*v].kind == VarKind::general) {
        g.insert_or_assign("x@" + name, w);
      } else {
        g.insert_or_assign(name, w);
      }
    }
    for (auto const& var : T.vars()) {
      if (var.kind == VarKind::reduced && !g.contains(var.name)) {
        throw InvalidInput("no group value for '" + var.name + "'");
      }
    }
    if (!solves_group_part(T, g)) {
      throw InvalidInput("gamma does not solve the underlying group system");
    }
    TypedSystem const I = substitute_group_solution(T, g);
    FimVerdict        v = decide_idempotent_system(I, budget, strategy);
    if (v.status != Status::sat) {
      return v;
    }
    Assignment typed = *v.witness;
    for (auto const& var : T.vars()) {
      if (var.kind == VarKind::reduced) {
        typed.set(var.name, g.at(var.name));
      }
    }
    Assignment full = untyped ? tau_backward(S, typed) : typed;
    if (!check_solution(S, full)) {
      throw Error("decide_lifting: witness fails check_solution");
    }
    if (untyped) {
      for (auto const& var : S.vars()) {
        auto const& pair = std::get<ScheiblichPair>(*full.find(var.name));
        if (!(eta_to_group(pair) == g.at("x@" + var.name))) {
          throw Error("decide_lifting: witness does not lift gamma");
        }
      }
    }
    v.witness = std::move(full);
    return v;
  }

}  // namespace fimeq
