#ifndef FIMEQ_ONEVAR_HPP
#define FIMEQ_ONEVAR_HPP

#include <optional>
#include <string>
#include <vector>

#include "fimeq/idempotent.hpp"

namespace fimeq {

  // Gamma = {x, ~x}.
  InvAlphabet const& gamma_alphabet();

  struct BalanceProfile {
    long total      = 0;
    long max_prefix = 0;
    long min_prefix = 0;

    bool operator==(BalanceProfile const&) const = default;
  };

  // delta_x over all prefixes of a word over gamma_alphabet().
  BalanceProfile balance_profile(Word const& u);

  // u = v in FIM(Gamma).
  bool is_balanced(Word const& u, Word const& v);

  // The word over Gamma obtained by keeping only occurrences of general or
  // reduced variables (all of which are read as x).
  Word gamma_projection(TypedSystem const& S, EqWord const& w);

  // Both conditions: the Gamma projections are unbalanced, and the sides
  // differ in the free group over A and Gamma. S must have exactly one
  // general variable and no other variables.
  bool is_unbalanced_untyped(TypedSystem const& S, TypedEquation const& e);

  enum class StrongKind : std::uint8_t { none, su1, su2, su3 };

  char const* to_string(StrongKind k) noexcept;

  // Checks SU1, SU2, SU3 in order, for a typed equation with at most one
  // reduced variable x; z ranges over the idempotent variables and 1.
  StrongKind strong_unbalance_kind(TypedSystem const&   S,
                                   TypedEquation const& e);

  struct StrongReduction {
    TypedSystem system;
    // Index of the strongly unbalanced equation in `system`.
    std::size_t equation = 0;
    StrongKind  kind     = StrongKind::none;
    // X -> x Z@X (true) or X -> Z@X x (false).
    bool        x_first = false;
    std::string rule;
  };

  // Rewrites an untyped one-variable system into a typed one with the
  // idempotent variable Z@X and the reduced variable x@X such that some
  // equation is strongly unbalanced. Throws PreconditionError if no
  // equation is unbalanced.
  StrongReduction reduce_to_strong(TypedSystem const& S);

  // sigma(X) = sigma(Z@X) sigma(x@X), or the other order.
  Assignment strong_backward(TypedSystem const&     S,
                             StrongReduction const& r,
                             Assignment const&      typed);

  // 6 n |p|. Throws InvalidInput for empty p.
  std::size_t k_bound(std::size_t n, Word const& p);

  //! { r q^k s : k in Z }; q = eps encodes the single word rs.
  struct ParametricFamily {
    ReducedWord r;
    ReducedWord q;
    ReducedWord s;

    bool operator==(ParametricFamily const&) const = default;
  };

  std::string to_string(InvAlphabet const& A, ParametricFamily const& f);

  struct FamilyOptions {
    std::size_t C              = 4;
    std::size_t max_candidates = 5'000'000;
  };

  // True iff every x in the free group solves every underlying group
  // equation of S.
  bool is_group_tautology(TypedSystem const& S);

  // Families r q^k s with |rqs| <= C n (n = longest side of an equation)
  // that solve the underlying group equations for all k in [-(2m+1), 2m+1]
  // (m = size of S), with subsumed families removed. Singletons have
  // q = eps. nullopt if more than max_candidates words of length <= C n
  // exist. Throws InvalidInput on tautologies.
  std::optional<std::vector<ParametricFamily>>
  parametric_families(TypedSystem const& S, FamilyOptions const& opts = {});

  struct OnevarOptions {
    FamilyOptions families;
    // Only values of x of at most this length are tried.
    std::optional<std::size_t> max_reduced_len;
    IdemStrategy               strategy = IdemStrategy::marking;
  };

  //! x = r p^j s with p primitive, and m the size of the system after
  //! substituting r x s for x.
  struct PowerWitness {
    ReducedWord r;
    ReducedWord p;
    ReducedWord s;
    long        j = 0;
    std::size_t m = 0;
  };

  struct OnevarVerdict {
    Status                      status = Status::unknown;
    std::optional<Assignment>   witness;
    std::optional<PowerWitness> power;
    std::vector<std::string>    trace;
  };

  // Decides a typed system with idempotent variables and at most one
  // reduced variable, one of whose equations is strongly unbalanced.
  OnevarVerdict decide_onevar(TypedSystem const&   S,
                              SolverBudget const&  budget,
                              OnevarOptions const& opts = {});

  // reduce_to_strong, decide_onevar, and the witness mapped back to X.
  OnevarVerdict decide_onevar_untyped(TypedSystem const&   S,
                                      SolverBudget const&  budget,
                                      OnevarOptions const& opts = {});

}  // namespace fimeq

#endif  // FIMEQ_ONEVAR_HPP
