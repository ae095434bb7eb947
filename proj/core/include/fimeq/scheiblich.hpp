#ifndef FIMEQ_SCHEIBLICH_HPP
#define FIMEQ_SCHEIBLICH_HPP

#include <string>

#include "fimeq/words.hpp"

namespace fimeq {

  //! An element (P, g) of the free inverse monoid FIM(A).
  //!
  //! P is a finite prefix-closed set of reduced words (the vertex set of a
  //! Munn tree) and g in P is the group component. Representatives are
  //! unique, so equality of pairs is equality in FIM(A).
  class ScheiblichPair {
   public:
    // The identity ({eps}, eps).
    ScheiblichPair();

    // Validates: P nonempty, prefix-closed, reduced over A, and g in P.
    ScheiblichPair(InvAlphabet const& A, WordSet P, ReducedWord g);

    WordSet const& tree() const noexcept {
      return _tree;
    }

    ReducedWord const& group() const noexcept {
      return _group;
    }

    bool operator==(ScheiblichPair const&) const = default;
    auto operator<=>(ScheiblichPair const& other) const {
      if (auto c = _group <=> other._group; c != 0) {
        return c;
      }
      return _tree <=> other._tree;
    }

   private:
    friend ScheiblichPair fim_multiply(InvAlphabet const&,
                                       ScheiblichPair const&,
                                       ScheiblichPair const&);
    friend ScheiblichPair fim_inverse(InvAlphabet const&,
                                      ScheiblichPair const&);

    struct Trusted {};
    ScheiblichPair(Trusted, WordSet P, ReducedWord g)
        : _tree(std::move(P)), _group(std::move(g)) {}

    WordSet     _tree;
    ReducedWord _group;
  };

  // (P, g)(Q, h) = (P u gQ, gh).
  ScheiblichPair fim_multiply(InvAlphabet const&    A,
                              ScheiblichPair const& x,
                              ScheiblichPair const& y);

  // (g^-1 P, g^-1).
  ScheiblichPair fim_inverse(InvAlphabet const& A, ScheiblichPair const& x);

  // The canonical morphism A* -> FIM(A), psi(a) = ({eps, a}, a).
  ScheiblichPair psi(InvAlphabet const& A, Word const& w);

  // The value of a reduced word w: (pref(w), w). Equal to psi(w).
  ScheiblichPair psi_reduced(InvAlphabet const& A, ReducedWord const& w);

  // (P, g) -> g, the morphism onto the free group.
  inline ReducedWord const& eta_to_group(ScheiblichPair const& x) {
    return x.group();
  }

  inline bool is_idempotent(ScheiblichPair const& x) {
    return x.group().empty();
  }

  // psi(u) == psi(v).
  bool word_problem(InvAlphabet const& A, Word const& u, Word const& v);

  // "(P={eps,a}; g=a)" with P in shortlex order.
  std::string to_string(InvAlphabet const& A, ScheiblichPair const& x);

  std::string format_set(InvAlphabet const& A, WordSet const& P);

}  // namespace fimeq

#endif  // FIMEQ_SCHEIBLICH_HPP
