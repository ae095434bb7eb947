#ifndef FIMEQ_LANGEQ_SOLVER_HPP
#define FIMEQ_LANGEQ_SOLVER_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fimeq/langeq.hpp"

namespace fimeq {

  struct SolverBudget {
    // Maximal word length of a solution set (plus per-variable slack).
    int max_len = 3;
    // Maximal number of marking branches explored.
    std::size_t max_branches = 10000;
    // 0 means no limit.
    std::chrono::milliseconds time_limit{0};
    // Maximal total number of candidate words across all variables.
    std::size_t max_universe = std::size_t{1} << 22;
  };

  enum class Status : std::uint8_t { sat, unsat_within_bound, unknown };

  char const* to_string(Status s) noexcept;

  struct Verdict {
    Status                        status = Status::unknown;
    std::optional<LangAssignment> witness;
    std::vector<std::string>      trace;
  };

  struct BruteForceOptions {
    // Solutions must be prefix-closed.
    bool prefix_closed = false;
    // Solutions must be nonempty.
    bool nonempty = false;
    // Candidate words: reduced words only, even in the monoid.
    bool reduced_universe = false;
  };

  // All words of length <= n over A in shortlex order, reduced ones only if
  // `reduced` is set.
  std::vector<Word>
  words_up_to(InvAlphabet const& A, std::size_t n, bool reduced);

  // All words of length <= n over the given letters, in shortlex order if
  // the letters are sorted.
  std::vector<Word> words_up_to(std::vector<Letter> const& letters,
                                std::size_t                n);

  // Decides whether S has a solution with every sigma(X) a set of words of
  // length <= max_len + slack(X) (reduced words under the group
  // interpretation). Under the monoid interpretation with an explicit
  // coefficient alphabet B the words range over B and the letters occurring
  // in S; dropping words with other letters keeps a solution a solution.
  // Solutions are closed under union, so the search
  // computes the largest one by elimination; the witness is that largest
  // solution.
  Verdict brute_force(LangSystem const&        S,
                      SolverBudget const&      budget,
                      BruteForceOptions const& opts = {});

  //! The four equation shapes of a simple system.
  struct SimpleEq {
    enum class Kind : std::uint8_t { one, one_plus, sum, linear };
    Kind          kind;
    std::uint32_t x;
    std::uint32_t y = 0;
    std::uint32_t z = 0;
    Word          u{};
  };

  // X = 1, X = 1 + X, X = Y + Z, X = uY + pref(u).
  LangEquation to_equation(SimpleEq const& e);
  std::optional<SimpleEq> classify_simple(LangEquation const& e);

  // Reduces constants and coefficients and checks that every equation has
  // the form L + sum u_i X_i = K + sum v_j Y_j with L, K nonempty and
  // prefix-closed, u_i in L and v_j in K. Throws PreconditionError.
  LangSystem to_group_normal_form(LangSystem const& S);

  // Rewrites a system in group normal form into simple equations. Keeps the
  // original variables; fresh ones are X#0, E#k, R#k and T#k.
  LangSystem decompose_simple(LangSystem const& S);

  //! Lazily enumerates the fully marked systems produced by the guessing
  //! rounds, depth first, guessing "~a not in Y" before "~a in Y".
  class MarkingEnumerator {
   public:
    // S must consist of simple equations. With `prune` set, partial systems
    // without a bounded solution are cut off.
    MarkingEnumerator(LangSystem S, SolverBudget budget, bool prune = true);

    // The next fully marked system, or nullopt when exhausted.
    std::optional<LangSystem> next();

    std::size_t branches() const noexcept {
      return _branches;
    }
    std::size_t pruned() const noexcept {
      return _pruned;
    }
    // True if enumeration stopped at budget.max_branches.
    bool truncated() const noexcept {
      return _truncated;
    }
    std::vector<std::string> const& trace() const noexcept {
      return _trace;
    }

   private:
    struct Node {
      LangSystem  system;
      std::string path;
    };

    void log(std::string line);

    SolverBudget             _budget;
    bool                     _prune;
    std::vector<Node>        _stack;
    std::size_t              _round    = 0;
    std::size_t              _branches = 0;
    std::size_t              _pruned   = 0;
    bool                     _truncated = false;
    std::chrono::steady_clock::time_point _started;
    std::vector<std::string> _trace;
  };

  // Every fully marked system reachable from S; throws if more than
  // budget.max_branches would be produced.
  std::vector<LangSystem> marking_reduction(LangSystem const&   S,
                                            SolverBudget const& budget);

  // Decides whether S (group interpretation) has a solution in nonempty
  // prefix-closed sets of reduced words, via decompose_simple, the marking
  // rounds and a bounded monoid search per branch. The witness is verified
  // against S.
  Verdict solve_over_group(LangSystem const& S, SolverBudget const& budget);

}  // namespace fimeq

#endif  // FIMEQ_LANGEQ_SOLVER_HPP
