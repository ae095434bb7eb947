#ifndef FIMEQ_IDEMPOTENT_HPP
#define FIMEQ_IDEMPOTENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "fimeq/langeq_solver.hpp"
#include "fimeq/typed.hpp"

namespace fimeq {

  //! u_0 X_1 u_1 ... X_g u_g = v_0 Y_1 v_1 ... Y_d v_d with idempotent X_i,
  //! Y_j given as variable indices of the owning TypedSystem.
  struct IdemEquation {
    std::vector<Word>          u;  // g + 1 constants
    std::vector<std::uint32_t> x;  // g variables
    std::vector<Word>          v;  // d + 1 constants
    std::vector<std::uint32_t> y;  // d variables
  };

  // Throws PreconditionError if a non-idempotent variable occurs.
  IdemEquation to_idem_equation(TypedSystem const&   S,
                                TypedEquation const& e);

  // u_0 ... u_g = v_0 ... v_d in the free group.
  bool group_consistency(InvAlphabet const& A, IdemEquation const& e);

  // L + sum p_i X_{i+1} = K + sum q_j Y_{j+1} with L, K the reduced prefixes
  // of p_g = u_0...u_g, q_d = v_0...v_d and p_i, q_j the reduced partial
  // products. Summands keep the variable indices of the typed system.
  // Throws PreconditionError if the group part is inconsistent.
  LangEquation to_language_equation(InvAlphabet const&  A,
                                    IdemEquation const& e);

  // The language system over the group with the same variables (and slack)
  // as S, one equation per equation of S.
  LangSystem to_language_system(TypedSystem const& S);

  enum class IdemStrategy : std::uint8_t {
    // decompose_simple, the marking rounds and monoid search per branch.
    marking,
    // Bounded search for prefix-closed nonempty solutions over the group.
    direct
  };

  struct FimVerdict {
    Status                   status = Status::unknown;
    std::optional<Assignment> witness;
    std::vector<std::string> trace;
  };

  // Decides a system in idempotent variables over FIM(A). A SAT witness
  // assigns (P, eps) to every variable and is verified with check_solution.
  FimVerdict decide_idempotent_system(TypedSystem const&  S,
                                      SolverBudget const& budget,
                                      IdemStrategy strategy
                                      = IdemStrategy::marking);

  // Given gamma solving the underlying group system, decides whether some
  // FIM solution sigma has eta(sigma) = gamma on the reduced variables.
  // S may be untyped (general variables and constants, decomposed first;
  // then gamma may be keyed by X or x@X) or typed (idempotent and reduced
  // variables). Throws InvalidInput if gamma does not solve the group part.
  FimVerdict decide_lifting(TypedSystem const&     S,
                            GroupAssignment const& gamma,
                            SolverBudget const&    budget,
                            IdemStrategy strategy = IdemStrategy::marking);

}  // namespace fimeq

#endif  // FIMEQ_IDEMPOTENT_HPP
