#include "fimeq/langeq.hpp"

#include <algorithm>

#include "fimeq/error.hpp"
#include "fimeq/scheiblich.hpp"

namespace fimeq {

  char const* to_string(Interp i) noexcept {
    return i == Interp::group ? "group" : "monoid";
  }

  void LangSystem::set_coeffs_over(std::vector<Letter> B) {
    for (Letter a : B) {
      if (a >= _alphabet.size()) {
        throw InvalidInput("coeffs-over: unknown letter");
      }
    }
    _coeffs_over = std::move(B);
  }

  std::vector<Letter> LangSystem::coefficient_letters() const {
    if (!_coeffs_over.empty()) {
      return _coeffs_over;
    }
    std::vector<Letter> all(_alphabet.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      all[i] = static_cast<Letter>(i);
    }
    return all;
  }

  std::uint32_t LangSystem::add_var(std::string const& name, int slack) {
    if (name.empty() || find_var(name) || _alphabet.find(name)) {
      throw InvalidInput("invalid or duplicate variable '" + name + "'");
    }
    _vars.push_back(name);
    _slack.push_back(slack);
    return static_cast<std::uint32_t>(_vars.size() - 1);
  }

  std::optional<std::uint32_t>
  LangSystem::find_var(std::string const& name) const {
    auto it = std::find(_vars.begin(), _vars.end(), name);
    if (it == _vars.end()) {
      return std::nullopt;
    }
    return static_cast<std::uint32_t>(it - _vars.begin());
  }

  std::uint32_t LangSystem::var(std::string const& name) {
    if (auto v = find_var(name)) {
      return *v;
    }
    return add_var(name);
  }

  void LangSystem::check_term(LangTerm const& t) const {
    auto over_B = [this](Word const& w) {
      if (_coeffs_over.empty()) {
        return true;
      }
      return std::all_of(w.begin(), w.end(), [this](Letter a) {
        return std::find(_coeffs_over.begin(), _coeffs_over.end(), a)
               != _coeffs_over.end();
      });
    };
    for (auto const& w : t.constants) {
      _alphabet.check(w);
      if (!over_B(w)) {
        throw InvalidInput("constant '" + _alphabet.format(w)
                           + "' is not over the coefficient alphabet");
      }
    }
    for (auto const& s : t.summands) {
      _alphabet.check(s.coef);
      if (s.var >= _vars.size()) {
        throw InvalidInput("summand refers to an unknown variable");
      }
      if (!over_B(s.coef)) {
        throw InvalidInput("coefficient '" + _alphabet.format(s.coef)
                           + "' is not over the coefficient alphabet");
      }
    }
  }

  void LangSystem::add_equation(LangEquation e) {
    check_term(e.lhs);
    check_term(e.rhs);
    _equations.push_back(std::move(e));
  }

  std::string LangSystem::fresh_name(std::string const& hint) const {
    if (!find_var(hint)) {
      return hint;
    }
    for (std::size_t i = 1;; ++i) {
      std::string cand = hint + "~" + std::to_string(i);
      if (!find_var(cand)) {
        return cand;
      }
    }
  }

  std::size_t system_size(LangSystem const& S) {
    std::size_t n = S.alphabet().size() + S.vars().size();
    auto        term = [](LangTerm const& t) {
      std::size_t m = t.summands.size();
      for (auto const& w : t.constants) {
        m += w.size();
      }
      for (auto const& s : t.summands) {
        m += s.coef.size();
      }
      return m;
    };
    for (auto const& e : S.equations()) {
      n += term(e.lhs) + term(e.rhs);
    }
    return n;
  }

  WordSet eval_term(LangSystem const&     S,
                    LangTerm const&       t,
                    LangAssignment const& sigma,
                    Interp                interp) {
    InvAlphabet const& A   = S.alphabet();
    WordSet            out;
    auto               add = [&](Word w) {
      out.insert(interp == Interp::group ? reduce(A, w) : std::move(w));
    };
    for (auto const& w : t.constants) {
      add(w);
    }
    for (auto const& s : t.summands) {
      auto it = sigma.find(S.vars()[s.var]);
      if (it == sigma.end()) {
        throw InvalidInput("no value for variable '" + S.vars()[s.var] + "'");
      }
      for (auto const& w : it->second) {
        add(concat(s.coef, w));
      }
    }
    return out;
  }

  bool equation_holds(LangSystem const&     S,
                      LangEquation const&   e,
                      LangAssignment const& sigma,
                      Interp                interp) {
    WordSet lhs = eval_term(S, e.lhs, sigma, interp);
    WordSet rhs = eval_term(S, e.rhs, sigma, interp);
    if (e.inequality) {
      return std::includes(
          rhs.begin(), rhs.end(), lhs.begin(), lhs.end(), ShortLex{});
    }
    return lhs == rhs;
  }

  bool holds(LangSystem const& S, LangAssignment const& sigma) {
    for (auto const& e : S.equations()) {
      if (!equation_holds(S, e, sigma, S.interp())) {
        return false;
      }
      if (e.marked && S.interp() != Interp::monoid
          && !equation_holds(S, e, sigma, Interp::monoid)) {
        return false;
      }
    }
    return true;
  }

  std::vector<Word> prefix_code(Letter first, Letter second, std::size_t n) {
    std::size_t len = 0;
    while ((std::size_t{1} << len) < n) {
      ++len;
    }
    std::vector<Word> out;
    for (std::size_t k = 0; k < n; ++k) {
      Word w(len);
      for (std::size_t i = 0; i < len; ++i) {
        w[i] = ((k >> (len - 1 - i)) & 1) ? second : first;
      }
      out.push_back(std::move(w));
    }
    return out;
  }

  LangSystem combine_to_single(LangSystem const& S) {
    std::size_t const n = S.equations().size();
    auto              B = S.coefficient_letters();
    if (n > 1 && B.size() < 2) {
      throw InvalidInput(
          "combine_to_single: needs two distinct coefficient letters");
    }
    bool const ineq = n > 0 && S.equations().front().inequality;
    for (auto const& e : S.equations()) {
      if (e.marked) {
        throw PreconditionError("combine_to_single: marked equation");
      }
      if (e.inequality != ineq) {
        throw PreconditionError(
            "combine_to_single: cannot mix equations and inequalities");
      }
    }
    LangSystem out(S.alphabet(), S.interp());
    out.set_coeffs_over(S.coeffs_over());
    for (std::uint32_t v = 0; v < S.vars().size(); ++v) {
      out.add_var(S.vars()[v], S.slack(v));
    }
    if (n == 0) {
      return out;
    }
    std::vector<Word> code
        = prefix_code(B[0], B.size() > 1 ? B[1] : B[0], n);
    LangEquation single;
    single.inequality = ineq;
    auto prefixed     = [](LangTerm& into, LangTerm const& t, Word const& p) {
      for (auto const& w : t.constants) {
        into.constants.insert(concat(p, w));
      }
      for (auto const& s : t.summands) {
        into.summands.push_back(Summand{concat(p, s.coef), s.var});
      }
    };
    for (std::size_t k = 0; k < n; ++k) {
      prefixed(single.lhs, S.equations()[k].lhs, code[k]);
      prefixed(single.rhs, S.equations()[k].rhs, code[k]);
    }
    out.add_equation(std::move(single));
    return out;
  }

  std::string format_term(LangSystem const& S, LangTerm const& t) {
    InvAlphabet const&       A = S.alphabet();
    std::vector<std::string> parts;
    if (!t.constants.empty() || t.summands.empty()) {
      parts.push_back(format_set(A, t.constants));
    }
    for (auto const& s : t.summands) {
      parts.push_back(A.format(s.coef) + "." + S.vars()[s.var]);
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      out += (i == 0 ? "" : " + ") + parts[i];
    }
    return out;
  }

  std::string format_equation(LangSystem const& S, LangEquation const& e) {
    return std::string(e.marked ? "! " : "") + format_term(S, e.lhs)
           + (e.inequality ? " <= " : " = ") + format_term(S, e.rhs);
  }

  std::string format_assignment(InvAlphabet const&    A,
                                LangAssignment const& sigma) {
    std::string out;
    for (auto const& [name, set] : sigma) {
      out += name + " = " + format_set(A, set) + "\n";
    }
    return out;
  }

}  // namespace fimeq
