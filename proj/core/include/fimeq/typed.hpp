#ifndef FIMEQ_TYPED_HPP
#define FIMEQ_TYPED_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fimeq/scheiblich.hpp"

namespace fimeq {

  //! Variable kinds of a typed system.
  //!
  //! general     X, with a distinct partner ~X; values are arbitrary pairs.
  //! idempotent  Z = ~Z; values are pairs (P, eps).
  //! reduced     x, with a distinct partner ~x; values are reduced words w,
  //!             acting as (pref(w), w).
  enum class VarKind : std::uint8_t { general, idempotent, reduced };

  char const* to_string(VarKind k) noexcept;

  struct VarSymbol {
    std::string name;
    VarKind     kind;

    bool operator==(VarSymbol const&) const = default;
  };

  //! A letter of the constant alphabet or an occurrence of a variable.
  //!
  //! For variables, `inverted` selects the bar partner; it is always false
  //! for idempotent variables.
  struct Token {
    bool          is_var   = false;
    std::uint32_t index    = 0;
    bool          inverted = false;

    static Token letter(Letter a) {
      return Token{false, a, false};
    }
    static Token var(std::uint32_t i, bool inv = false) {
      return Token{true, i, inv};
    }

    bool operator==(Token const&) const = default;
    auto operator<=>(Token const&) const = default;
  };

  using EqWord = std::vector<Token>;

  struct TypedEquation {
    EqWord lhs;
    EqWord rhs;
  };

  //! A system of (typed or untyped) equations over FIM(A).
  class TypedSystem {
   public:
    TypedSystem() = default;
    explicit TypedSystem(InvAlphabet A) : _alphabet(std::move(A)) {}

    InvAlphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    std::vector<VarSymbol> const& vars() const noexcept {
      return _vars;
    }

    std::vector<TypedEquation> const& equations() const noexcept {
      return _equations;
    }

    // Throws InvalidInput on duplicate names or names clashing with letters.
    std::uint32_t add_var(std::string name, VarKind kind);

    std::optional<std::uint32_t> find_var(std::string const& name) const;

    // Validates every token.
    void add_equation(EqWord lhs, EqWord rhs);

    bool has_kind(VarKind k) const;

    // Extra word length granted to a variable by bounded solvers; see
    // SolverBudget. Defaults to 0.
    int slack(std::uint32_t var) const;
    void set_slack(std::uint32_t var, int s);

    // Sum over equations of |U| + |V|.
    std::size_t size() const;

    // The bar of an equation side, i.e. the reversed word with every token
    // involuted.
    EqWord involute(EqWord const& w) const;

    std::string format(EqWord const& w) const;
    std::string format(TypedEquation const& e) const;

    // Equations compared as unordered pairs, in order.
    bool operator==(TypedSystem const& other) const;

   private:
    void check_token(Token const& t) const;

    InvAlphabet                _alphabet;
    std::vector<VarSymbol>     _vars;
    std::vector<TypedEquation> _equations;
    std::map<std::uint32_t, int> _slack;
  };

  using VarValue = std::variant<ScheiblichPair, ReducedWord>;

  //! Values of variables, keyed by name. Partners are derived: ~X maps to
  //! the inverse of the value of X.
  class Assignment {
   public:
    void set(std::string const& name, VarValue v) {
      _values[name] = std::move(v);
    }

    VarValue const* find(std::string const& name) const;

    std::map<std::string, VarValue> const& values() const noexcept {
      return _values;
    }

    bool operator==(Assignment const&) const = default;

   private:
    std::map<std::string, VarValue> _values;
  };

  // Throws InvalidInput on missing values or values of the wrong type
  // (pair for a reduced variable, non-idempotent pair for an idempotent one).
  void check_assignment(TypedSystem const& S, Assignment const& sigma);

  // psi(sigma(w)).
  ScheiblichPair evaluate(TypedSystem const& S,
                          Assignment const&  sigma,
                          EqWord const&      w);

  bool check_solution(TypedSystem const& S, Assignment const& sigma);

  // Replaces every general X by Z@X x@X and ~X by ~x@X Z@X. Only general
  // variables and constants are allowed in the input.
  TypedSystem tau_decompose(TypedSystem const& S);

  // sigma(X) = (P, g)  ->  Z@X = (P, eps), x@X = g.
  Assignment tau_forward(TypedSystem const& S, Assignment const& sigma);

  // Z@X = (P, eps), x@X = g  ->  X = (P u pref(g), g). S is the untyped
  // system tau_decompose was applied to.
  Assignment tau_backward(TypedSystem const& S, Assignment const& typed);

  // Deletes idempotent variables and freely reduces, treating reduced and
  // general variables as free generators with their partners as inverses.
  std::pair<EqWord, EqWord> underlying_group_equation(TypedSystem const&   S,
                                                      TypedEquation const& e);

  // gamma: reduced-variable name -> value.
  using GroupAssignment = std::map<std::string, ReducedWord>;

  // True iff gamma solves every underlying group equation.
  bool solves_group_part(TypedSystem const&     S,
                         GroupAssignment const& gamma);

  // Replaces every reduced variable x by the letters of gamma(x) (and ~x by
  // the involuted word). The result contains only constants and the
  // non-reduced variables of S.
  TypedSystem substitute_group_solution(TypedSystem const&     S,
                                        GroupAssignment const& gamma);

}  // namespace fimeq

#endif  // FIMEQ_TYPED_HPP
