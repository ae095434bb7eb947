#ifndef FIMEQ_LANGEQ_HPP
#define FIMEQ_LANGEQ_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fimeq/words.hpp"

namespace fimeq {

  //! Where the values of a language equation are compared: in finite
  //! subsets of the free monoid A*, or of the free group (reduced words).
  enum class Interp : std::uint8_t { monoid, group };

  char const* to_string(Interp i) noexcept;

  struct Summand {
    Word          coef;
    std::uint32_t var;

    bool operator==(Summand const&) const = default;
  };

  //! constants + sum of coef . var. Duplicate summands are allowed; terms
  //! are evaluated with set union, so duplicates have no effect.
  struct LangTerm {
    WordSet              constants;
    std::vector<Summand> summands;

    bool operator==(LangTerm const&) const = default;
  };

  //! lhs = rhs, or lhs <= rhs (short for lhs + rhs = rhs) when `inequality`
  //! is set. Marked equations must hold in the free monoid as well.
  struct LangEquation {
    LangTerm lhs;
    LangTerm rhs;
    bool     marked     = false;
    bool     inequality = false;

    bool operator==(LangEquation const&) const = default;
  };

  using LangAssignment = std::map<std::string, WordSet>;

  class LangSystem {
   public:
    LangSystem() = default;
    LangSystem(InvAlphabet A, Interp interp)
        : _alphabet(std::move(A)), _interp(interp) {}

    InvAlphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    Interp interp() const noexcept {
      return _interp;
    }
    void set_interp(Interp i) noexcept {
      _interp = i;
    }

    // The coefficient alphabet B; empty means "not declared".
    std::vector<Letter> const& coeffs_over() const noexcept {
      return _coeffs_over;
    }
    void set_coeffs_over(std::vector<Letter> B);

    // B if declared, otherwise the whole alphabet.
    std::vector<Letter> coefficient_letters() const;

    std::vector<std::string> const& vars() const noexcept {
      return _vars;
    }

    std::uint32_t add_var(std::string const& name, int slack = 0);
    std::optional<std::uint32_t> find_var(std::string const& name) const;
    // Finds or adds.
    std::uint32_t var(std::string const& name);

    int slack(std::uint32_t v) const {
      return _slack[v];
    }
    void set_slack(std::uint32_t v, int s) {
      _slack[v] = s;
    }

    std::vector<LangEquation> const& equations() const noexcept {
      return _equations;
    }
    std::vector<LangEquation>& equations() noexcept {
      return _equations;
    }

    // Validates letters and variable indices, and the coefficient alphabet
    // when one is declared.
    void add_equation(LangEquation e);

    // A fresh variable name derived from `hint` that is not in use yet.
    std::string fresh_name(std::string const& hint) const;

    bool operator==(LangSystem const&) const = default;

   private:
    void check_term(LangTerm const& t) const;

    InvAlphabet               _alphabet;
    Interp                    _interp = Interp::monoid;
    std::vector<Letter>       _coeffs_over;
    std::vector<std::string>  _vars;
    std::vector<int>          _slack;
    std::vector<LangEquation> _equations;
  };

  // |A u Omega| + sum over equations of the number of summands, the lengths
  // of all constant words and the lengths of all coefficients.
  std::size_t system_size(LangSystem const& S);

  // constants u union of coef . sigma(var); in the group every product is
  // reduced. Throws InvalidInput if a variable has no value.
  WordSet eval_term(LangSystem const&     S,
                    LangTerm const&       t,
                    LangAssignment const& sigma,
                    Interp                interp);

  bool equation_holds(LangSystem const&     S,
                      LangEquation const&   e,
                      LangAssignment const& sigma,
                      Interp                interp);

  // Every equation holds in S.interp(); marked ones also in the monoid.
  bool holds(LangSystem const& S, LangAssignment const& sigma);

  // Prefix every equation with a distinct word of length ceil(log2 n) over
  // the first two coefficient letters and sum all equations into one. The
  // set of monoid solutions is unchanged. Requires at least two coefficient
  // letters when n > 1, and no marked equations.
  LangSystem combine_to_single(LangSystem const& S);

  // Codewords used by combine_to_single for n equations.
  std::vector<Word> prefix_code(Letter first, Letter second, std::size_t n);

  std::string format_term(LangSystem const& S, LangTerm const& t);
  std::string format_equation(LangSystem const& S, LangEquation const& e);
  std::string format_assignment(InvAlphabet const&    A,
                                LangAssignment const& sigma);

}  // namespace fimeq

#endif  // FIMEQ_LANGEQ_HPP
