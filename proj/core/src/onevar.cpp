#include "fimeq/onevar.hpp"

#include <algorithm>
#include <set>

#include "fimeq/error.hpp"

namespace fimeq {

  namespace {

    bool is_x_token(TypedSystem const& S, Token const& t) {
      return t.is_var && S.vars()[t.index].kind != VarKind::idempotent;
    }

    // delta_x after each prefix, starting with the empty prefix.
    std::vector<long> prefix_deltas(TypedSystem const& S, EqWord const& w) {
      std::vector<long> out{0};
      for (auto const& t : w) {
        long d = out.back();
        if (is_x_token(S, t)) {
          d += t.inverted ? -1 : 1;
        }
        out.push_back(d);
      }
      return out;
    }

    bool group_images_differ(TypedSystem const& S, TypedEquation const& e) {
      auto [l, r] = underlying_group_equation(S, e);
      return l != r;
    }

    std::optional<std::uint32_t> reduced_var(TypedSystem const& S) {
      std::optional<std::uint32_t> x;
      for (std::uint32_t v = 0; v < S.vars().size(); ++v) {
        VarKind const k = S.vars()[v].kind;
        if (k == VarKind::general) {
          throw PreconditionError("general variable in a typed system");
        }
        if (k == VarKind::reduced) {
          if (x) {
            throw PreconditionError("more than one reduced variable");
          }
          x = v;
        }
      }
      return x;
    }

    void require_fixed_point_free(InvAlphabet const& A) {
      if (!A.fixed_point_free()) {
        throw PreconditionError(
            "one-variable equations need an involution without fixed points");
      }
    }

    // SU2 for the deltas `sign` * delta_x.
    bool dominates(TypedSystem const&   S,
                   TypedEquation const& e,
                   long                 sign) {
      auto du = prefix_deltas(S, e.lhs);
      auto dv = prefix_deltas(S, e.rhs);
      for (auto& d : du) {
        d *= sign;
      }
      for (auto& d : dv) {
        d *= sign;
      }
      if (*std::max_element(du.begin(), du.end())
          <= *std::max_element(dv.begin(), dv.end())) {
        return false;
      }
      // z an idempotent variable: the best U-prefix before z must beat
      // every V-prefix before z.
      for (std::size_t i = 0; i < e.rhs.size(); ++i) {
        Token const& z = e.rhs[i];
        if (!z.is_var || S.vars()[z.index].kind != VarKind::idempotent) {
          continue;
        }
        bool found = false;
        for (std::size_t j = 0; j < e.lhs.size() && !found; ++j) {
          found = e.lhs[j] == z && du[j] > dv[i];
        }
        if (!found) {
          return false;
        }
      }
      return true;
    }

    EqWord substitute_x(EqWord const&      w,
                        std::uint32_t      z,
                        std::uint32_t      x,
                        bool               x_first) {
      EqWord out;
      for (auto const& t : w) {
        if (!t.is_var) {
          out.push_back(t);
          continue;
        }
        Token const zt = Token::var(z), xt = Token::var(x, t.inverted);
        // X -> x Z, ~X -> Z ~x   or   X -> Z x, ~X -> ~x Z.
        bool const x_left = x_first != t.inverted;
        out.push_back(x_left ? xt : zt);
        out.push_back(x_left ? zt : xt);
      }
      return out;
    }

    bool in_cyclic(InvAlphabet const& A,
                   ReducedWord const& c,
                   ReducedWord const& w) {
      if (c.empty()) {
        return w.empty();
      }
      long const n = static_cast<long>(w.size()) + 1;
      for (long k = -n; k <= n; ++k) {
        if (group_power(A, c, k) == w) {
          return true;
        }
      }
      return false;
    }

    // The family as {c^k t}.
    struct Coset {
      ReducedWord c;
      ReducedWord t;
    };

    Coset to_coset(InvAlphabet const& A, ParametricFamily const& f) {
      ReducedWord c = concat_group(
          A, concat_group(A, f.r, f.q), group_inverse(A, f.r));
      return Coset{f.q.empty() ? ReducedWord{} : c,
                   concat_group(A, f.r, f.s)};
    }

    bool subsumed(InvAlphabet const& A, Coset const& a, Coset const& b) {
      if (b.c.empty()) {
        return a.c.empty() && a.t == b.t;
      }
      return in_cyclic(A, b.c, a.c)
             && in_cyclic(
                 A, b.c, concat_group(A, a.t, group_inverse(A, b.t)));
    }

  }  // namespace

  InvAlphabet const& gamma_alphabet() {
    static InvAlphabet const G = InvAlphabet::from_base({"x"});
    return G;
  }

  BalanceProfile balance_profile(Word const& u) {
    gamma_alphabet().check(u);
    BalanceProfile p;
    for (Letter a : u) {
      p.total += a == 0 ? 1 : -1;
      p.max_prefix = std::max(p.max_prefix, p.total);
      p.min_prefix = std::min(p.min_prefix, p.total);
    }
    return p;
  }

  bool is_balanced(Word const& u, Word const& v) {
    return word_problem(gamma_alphabet(), u, v);
  }

  Word gamma_projection(TypedSystem const& S, EqWord const& w) {
    Word out;
    for (auto const& t : w) {
      if (is_x_token(S, t)) {
        out.push_back(t.inverted ? 1 : 0);
      }
    }
    return out;
  }

  bool is_unbalanced_untyped(TypedSystem const& S, TypedEquation const& e) {
    if (S.vars().size() != 1 || S.vars()[0].kind != VarKind::general) {
      throw InvalidInput(
          "an untyped one-variable system has exactly one general variable");
    }
    bool const cond1 = !is_balanced(gamma_projection(S, e.lhs),
                                    gamma_projection(S, e.rhs));
    return cond1 && group_images_differ(S, e);
  }

  char const* to_string(StrongKind k) noexcept {
    switch (k) {
      case StrongKind::su1:
        return "SU1";
      case StrongKind::su2:
        return "SU2";
      case StrongKind::su3:
        return "SU3";
      case StrongKind::none:
        break;
    }
    return "none";
  }

  StrongKind strong_unbalance_kind(TypedSystem const&   S,
                                   TypedEquation const& e) {
    reduced_var(S);
    if (!group_images_differ(S, e)) {
      return StrongKind::none;
    }
    if (prefix_deltas(S, e.lhs).back() != prefix_deltas(S, e.rhs).back()) {
      return StrongKind::su1;
    }
    if (dominates(S, e, 1)) {
      return StrongKind::su2;
    }
    if (dominates(S, e, -1)) {
      return StrongKind::su3;
    }
    return StrongKind::none;
  }

  StrongReduction reduce_to_strong(TypedSystem const& S) {
    require_fixed_point_free(S.alphabet());
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < S.equations().size() && !idx; ++i) {
      if (is_unbalanced_untyped(S, S.equations()[i])) {
        idx = i;
      }
    }
    if (!idx) {
      throw PreconditionError("no unbalanced equation");
    }
    TypedEquation const& e  = S.equations()[*idx];
    BalanceProfile const pu = balance_profile(gamma_projection(S, e.lhs));
    BalanceProfile const pv = balance_profile(gamma_projection(S, e.rhs));

    struct Candidate {
      bool        x_first;
      bool        swap;
      bool        bar;
      std::string rule;
    };
    std::vector<Candidate> cands;
    if (pu.total != pv.total) {
      cands.push_back({false, false, false, "case 1: X -> Z x"});
    } else if (pu.max_prefix != pv.max_prefix) {
      bool const swap = pu.max_prefix < pv.max_prefix;
      cands.push_back({true, swap, false, "case 2: X -> x Z"});
    } else if (pu.min_prefix != pv.min_prefix) {
      bool const swap = pu.min_prefix > pv.min_prefix;
      cands.push_back({false, swap, true, "case 3: X -> Z x, involuted"});
    }
    for (int m = 0; m < 8; ++m) {
      cands.push_back(
          {(m & 1) != 0, (m & 2) != 0, (m & 4) != 0, "fallback"});
    }

    for (auto const& c : cands) {
      StrongReduction out;
      out.system = TypedSystem(S.alphabet());
      std::uint32_t const z
          = out.system.add_var("Z@" + S.vars()[0].name, VarKind::idempotent);
      std::uint32_t const x
          = out.system.add_var("x@" + S.vars()[0].name, VarKind::reduced);
      for (std::size_t i = 0; i < S.equations().size(); ++i) {
        EqWord l = S.equations()[i].lhs, r = S.equations()[i].rhs;
        if (i == *idx) {
          if (c.bar) {
            l = S.involute(l);
            r = S.involute(r);
          }
          if (c.swap) {
            std::swap(l, r);
          }
        }
        out.system.add_equation(substitute_x(l, z, x, c.x_first),
                                substitute_x(r, z, x, c.x_first));
      }
      out.equation = *idx;
      out.kind     = strong_unbalance_kind(
          out.system, out.system.equations()[*idx]);
      out.x_first = c.x_first;
      out.rule    = c.rule;
      if (out.kind != StrongKind::none) {
        return out;
      }
    }
    throw Error("reduce_to_strong: no strongly unbalanced form found");
  }

  Assignment strong_backward(TypedSystem const&     S,
                             StrongReduction const& r,
                             Assignment const&      typed) {
    InvAlphabet const&   A    = S.alphabet();
    std::string const&   name = S.vars()[0].name;
    VarValue const*      z    = typed.find("Z@" + name);
    VarValue const*      x    = typed.find("x@" + name);
    if (z == nullptr || x == nullptr) {
      throw InvalidInput("strong_backward: missing values");
    }
    ScheiblichPair const zp = std::get<ScheiblichPair>(*z);
    ScheiblichPair const xp = psi_reduced(A, std::get<ReducedWord>(*x));
    Assignment           out;
    out.set(name,
            r.x_first ? fim_multiply(A, xp, zp) : fim_multiply(A, zp, xp));
    return out;
  }

  std::size_t k_bound(std::size_t n, Word const& p) {
    if (p.empty()) {
      throw InvalidInput("k_bound: p must be nonempty");
    }
    return 6 * n * p.size();
  }

  std::string to_string(InvAlphabet const& A, ParametricFamily const& f) {
    return "r=" + A.format(f.r.word()) + " q=" + A.format(f.q.word())
           + " s=" + A.format(f.s.word());
  }

  bool is_group_tautology(TypedSystem const& S) {
    InvAlphabet const& A    = S.alphabet();
    std::size_t const  rank = A.positive_letters().size();
    for (auto const& e : S.equations()) {
      auto [l, r] = underlying_group_equation(S, e);
      if (l == r || rank == 0) {
        continue;
      }
      if (rank >= 2) {
        // Nonabelian free groups satisfy no nontrivial mixed identity.
        return false;
      }
      // Rank one: the group is abelian, compare exponent sums.
      long ex = 0, ea = 0;
      for (auto const* side : {&l, &r}) {
        long const sign = side == &l ? 1 : -1;
        for (auto const& t : *side) {
          if (t.is_var) {
            ex += sign * (t.inverted ? -1 : 1);
          } else {
            ea += sign * (t.index == A.positive_letters()[0] ? 1 : -1);
          }
        }
      }
      if (ex != 0 || ea != 0) {
        return false;
      }
    }
    return true;
  }

  std::optional<std::vector<ParametricFamily>>
  parametric_families(TypedSystem const& S, FamilyOptions const& opts) {
    InvAlphabet const& A = S.alphabet();
    require_fixed_point_free(A);
    auto const xv = reduced_var(S);
    if (!xv) {
      throw PreconditionError("no reduced variable");
    }
    if (is_group_tautology(S)) {
      throw InvalidInput("the underlying group system is a tautology");
    }
    std::string const& xname = S.vars()[*xv].name;
    std::size_t        n     = 0;
    for (auto const& e : S.equations()) {
      n = std::max({n, e.lhs.size(), e.rhs.size()});
    }
    std::size_t const maxl = opts.C * n;

    double count = 0, level = 1;
    for (std::size_t l = 0; l <= maxl; ++l) {
      count += level;
      level *= l == 0 ? A.size() : A.size() - 1;
      if (count > static_cast<double>(opts.max_candidates)) {
        return std::nullopt;
      }
    }

    auto solves = [&](ReducedWord const& w) {
      return solves_group_part(S, GroupAssignment{{xname, w}});
    };
    long const window = 2 * static_cast<long>(S.size()) + 1;

    // r q^k s needs rs and rqs among the solutions of length <= maxl.
    std::vector<Word> sols;
    for (Word const& w : words_up_to(A, maxl, true)) {
      if (solves(ReducedWord(A, w))) {
        sols.push_back(w);
      }
    }
    std::set<Word> const sol_set(sols.begin(), sols.end());

    std::vector<ParametricFamily> kept;
    std::vector<Coset>            cosets;
    auto                          offer = [&](ParametricFamily f) {
      Coset c = to_coset(A, f);
      for (auto const& k : cosets) {
        if (subsumed(A, c, k)) {
          return;
        }
      }
      for (std::size_t i = cosets.size(); i-- > 0;) {
        if (subsumed(A, cosets[i], c)) {
          cosets.erase(cosets.begin() + static_cast<long>(i));
          kept.erase(kept.begin() + static_cast<long>(i));
        }
      }
      cosets.push_back(std::move(c));
      kept.push_back(std::move(f));
    };

    for (Word const& w : sols) {
      offer(ParametricFamily{ReducedWord(A, w), {}, {}});
      for (std::size_t i = 0; i <= w.size(); ++i) {
        for (std::size_t j = i + 1; j <= w.size(); ++j) {
          ReducedWord const r(A, Word(w.begin(), w.begin() + i));
          ReducedWord const q(A, Word(w.begin() + i, w.begin() + j));
          ReducedWord const s(A, Word(w.begin() + j, w.end()));
          if (!sol_set.count(concat_group(A, r, s).word())
              || !is_cyclically_reduced(A, q)
              || !is_reduced(A,
                             concat(concat(r.word(), involute(A, q.word())),
                                    s.word()))) {
            continue;
          }
          bool ok = true;
          for (long k = 2; k <= window && ok; ++k) {
            ok = solves(concat_group(
                A, concat_group(A, r, group_power(A, q, k)), s));
          }
          for (long k = 1; k <= window && ok; ++k) {
            ok = solves(concat_group(
                A, concat_group(A, r, group_power(A, q, -k)), s));
          }
          if (ok) {
            offer(ParametricFamily{r, q, s});
          }
        }
      }
    }
    return kept;
  }

  OnevarVerdict decide_onevar(TypedSystem const&   S,
                              SolverBudget const&  budget,
                              OnevarOptions const& opts) {
    InvAlphabet const& A = S.alphabet();
    require_fixed_point_free(A);
    auto const    xv = reduced_var(S);
    OnevarVerdict out;
    bool          strong = false;
    for (auto const& e : S.equations()) {
      if (strong_unbalance_kind(S, e) != StrongKind::none) {
        strong = true;
        break;
      }
    }
    if (!strong) {
      throw PreconditionError("no strongly unbalanced equation");
    }
    if (is_group_tautology(S)) {
      throw InvalidInput("the underlying group system is a tautology");
    }
    if (!xv) {
      FimVerdict v = decide_idempotent_system(S, budget, opts.strategy);
      out.status   = v.status;
      out.witness  = std::move(v.witness);
      out.trace    = std::move(v.trace);
      return out;
    }
    auto fams = parametric_families(S, opts.families);
    if (!fams) {
      out.trace.push_back("family enumeration exceeds the candidate limit");
      return out;
    }
    out.trace.push_back(std::to_string(fams->size()) + " families");
    std::string const& xname = S.vars()[*xv].name;
    std::size_t        occurrences = 0;
    for (auto const& e : S.equations()) {
      for (auto const* side : {&e.lhs, &e.rhs}) {
        for (auto const& t : *side) {
          occurrences += (t.is_var && t.index == *xv) ? 1 : 0;
        }
      }
    }
    std::set<Word, ShortLex> tried;
    bool                     unknown = false;
    for (auto const& f : *fams) {
      out.trace.push_back("family " + to_string(A, f));
      std::size_t const m
          = S.size() + occurrences * (f.r.size() + f.s.size());
      ReducedWord p;
      long        step = 1, bound = 0;
      if (!f.q.empty()) {
        auto [root, e] = primitive_root(f.q.word());
        p              = ReducedWord(A, root);
        step           = static_cast<long>(e);
        bound          = static_cast<long>(k_bound(m, root));
      }
      for (long t = 0; t * step <= bound; ++t) {
        bool any_short = false;
        for (long sign : {1L, -1L}) {
          if (t == 0 && sign < 0) {
            continue;
          }
          long const        j = sign * t * step;
          ReducedWord const x = concat_group(
              A, concat_group(A, f.r, group_power(A, p, j)), f.s);
          if (opts.max_reduced_len && x.size() > *opts.max_reduced_len) {
            continue;
          }
          any_short = true;
          if (!tried.insert(x.word()).second) {
            continue;
          }
          GroupAssignment const gamma{{xname, x}};
          if (!solves_group_part(S, gamma)) {
            continue;
          }
          FimVerdict v = decide_idempotent_system(
              substitute_group_solution(S, gamma), budget, opts.strategy);
          if (v.status == Status::unknown) {
            unknown = true;
            continue;
          }
          if (v.status != Status::sat) {
            continue;
          }
          Assignment sigma = *v.witness;
          sigma.set(xname, x);
          if (!check_solution(S, sigma)) {
            throw Error("decide_onevar: witness fails check_solution");
          }
          out.trace.push_back("SAT at x = " + A.format(x.word()));
          out.status  = Status::sat;
          out.witness = std::move(sigma);
          out.power   = PowerWitness{f.r, p, f.s, j, m};
          return out;
        }
        // |r p^j s| grows with |j| once j is large.
        if (opts.max_reduced_len && !any_short
            && t * static_cast<long>(p.size())
                   > static_cast<long>(*opts.max_reduced_len + f.r.size()
                                       + f.s.size())) {
          break;
        }
      }
    }
    out.status = unknown ? Status::unknown : Status::unsat_within_bound;
    return out;
  }

  OnevarVerdict decide_onevar_untyped(TypedSystem const&   S,
                                      SolverBudget const&  budget,
                                      OnevarOptions const& opts) {
    StrongReduction const r = reduce_to_strong(S);
    OnevarVerdict         v = decide_onevar(r.system, budget, opts);
    v.trace.insert(v.trace.begin(),
                   r.rule + ", " + to_string(r.kind) + " in equation "
                       + std::to_string(r.equation));
    if (v.witness) {
      v.witness = strong_backward(S, r, *v.witness);
      if (!check_solution(S, *v.witness)) {
        throw Error("decide_onevar_untyped: witness fails check_solution");
      }
    }
    return v;
  }

}  // namespace fimeq
