#include "fimeq/typed.hpp"

#include <algorithm>

#include "fimeq/error.hpp"

namespace fimeq {

  char const* to_string(VarKind k) noexcept {
    switch (k) {
      case VarKind::general:
        return "gen";
      case VarKind::idempotent:
        return "idem";
      case VarKind::reduced:
        return "red";
    }
    return "?";
  }

  std::uint32_t TypedSystem::add_var(std::string name, VarKind kind) {
    if (name.empty() || name.front() == '~') {
      throw InvalidInput("invalid variable name '" + name + "'");
    }
    if (find_var(name) || _alphabet.find(name)) {
      throw InvalidInput("duplicate symbol '" + name + "'");
    }
    _vars.push_back(VarSymbol{std::move(name), kind});
    return static_cast<std::uint32_t>(_vars.size() - 1);
  }

  std::optional<std::uint32_t>
  TypedSystem::find_var(std::string const& name) const {
    for (std::size_t i = 0; i < _vars.size(); ++i) {
      if (_vars[i].name == name) {
        return static_cast<std::uint32_t>(i);
      }
    }
    return std::nullopt;
  }

  void TypedSystem::check_token(Token const& t) const {
    if (!t.is_var) {
      if (t.index >= _alphabet.size() || t.inverted) {
        throw InvalidInput("token refers to an unknown letter");
      }
      return;
    }
    if (t.index >= _vars.size()) {
      throw InvalidInput("token refers to an undeclared variable");
    }
    if (t.inverted && _vars[t.index].kind == VarKind::idempotent) {
      throw InvalidInput("idempotent variable '" + _vars[t.index].name
                         + "' cannot carry an inversion flag");
    }
  }

  void TypedSystem::add_equation(EqWord lhs, EqWord rhs) {
    for (auto const& t : lhs) {
      check_token(t);
    }
    for (auto const& t : rhs) {
      check_token(t);
    }
    _equations.push_back(TypedEquation{std::move(lhs), std::move(rhs)});
  }

  bool TypedSystem::has_kind(VarKind k) const {
    return std::any_of(_vars.begin(), _vars.end(), [k](VarSymbol const& v) {
      return v.kind == k;
    });
  }

  int TypedSystem::slack(std::uint32_t var) const {
    auto it = _slack.find(var);
    return it == _slack.end() ? 0 : it->second;
  }

  void TypedSystem::set_slack(std::uint32_t var, int s) {
    _slack[var] = s;
  }

  std::size_t TypedSystem::size() const {
    std::size_t n = 0;
    for (auto const& e : _equations) {
      n += e.lhs.size() + e.rhs.size();
    }
    return n;
  }

  EqWord TypedSystem::involute(EqWord const& w) const {
    EqWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      Token t = *it;
      if (!t.is_var) {
        t.index = _alphabet.bar(static_cast<Letter>(t.index));
      } else if (_vars[t.index].kind != VarKind::idempotent) {
        t.inverted = !t.inverted;
      }
      out.push_back(t);
    }
    return out;
  }

  std::string TypedSystem::format(EqWord const& w) const {
    if (w.empty()) {
      return "eps";
    }
    std::string out;
    for (auto const& t : w) {
      if (!out.empty()) {
        out += ' ';
      }
      if (t.is_var) {
        out += (t.inverted ? "~" : "") + _vars[t.index].name;
      } else {
        out += _alphabet.name(static_cast<Letter>(t.index));
      }
    }
    return out;
  }

  std::string TypedSystem::format(TypedEquation const& e) const {
    return format(e.lhs) + " = " + format(e.rhs);
  }

  bool TypedSystem::operator==(TypedSystem const& other) const {
    if (!(_alphabet == other._alphabet) || _vars != other._vars
        || _equations.size() != other._equations.size()) {
      return false;
    }
    for (std::size_t i = 0; i < _equations.size(); ++i) {
      auto const& a = _equations[i];
      auto const& b = other._equations[i];
      if (!((a.lhs == b.lhs && a.rhs == b.rhs)
            || (a.lhs == b.rhs && a.rhs == b.lhs))) {
        return false;
      }
    }
    return true;
  }

  VarValue const* Assignment::find(std::string const& name) const {
    auto it = _values.find(name);
    return it == _values.end() ? nullptr : &it->second;
  }

  void check_assignment(TypedSystem const& S, Assignment const& sigma) {
    for (auto const& v : S.vars()) {
      VarValue const* val = sigma.find(v.name);
      if (val == nullptr) {
        throw InvalidInput("no value for variable '" + v.name + "'");
      }
      switch (v.kind) {
        case VarKind::reduced:
          if (!std::holds_alternative<ReducedWord>(*val)) {
            throw InvalidInput("reduced variable '" + v.name
                               + "' needs a reduced word");
          }
          S.alphabet().check(std::get<ReducedWord>(*val).word());
          break;
        case VarKind::idempotent:
          if (!std::holds_alternative<ScheiblichPair>(*val)
              || !is_idempotent(std::get<ScheiblichPair>(*val))) {
            throw InvalidInput("idempotent variable '" + v.name
                               + "' needs a pair (P, eps)");
          }
          break;
        case VarKind::general:
          if (!std::holds_alternative<ScheiblichPair>(*val)) {
            throw InvalidInput("general variable '" + v.name
                               + "' needs a Scheiblich pair");
          }
          break;
      }
    }
  }

  namespace {
    ScheiblichPair value_of(TypedSystem const& S,
                            Assignment const&  sigma,
                            Token const&       t) {
      InvAlphabet const& A = S.alphabet();
      if (!t.is_var) {
        return psi(A, Word{static_cast<Letter>(t.index)});
      }
      auto const&     v   = S.vars()[t.index];
      VarValue const* val = sigma.find(v.name);
      if (val == nullptr) {
        throw InvalidInput("no value for variable '" + v.name + "'");
      }
      ScheiblichPair x = std::holds_alternative<ReducedWord>(*val)
                             ? psi_reduced(A, std::get<ReducedWord>(*val))
                             : std::get<ScheiblichPair>(*val);
      return t.inverted ? fim_inverse(A, x) : x;
    }
  }  // namespace

  ScheiblichPair evaluate(TypedSystem const& S,
                          Assignment const&  sigma,
                          EqWord const&      w) {
    ScheiblichPair acc;
    for (auto const& t : w) {
      acc = fim_multiply(S.alphabet(), acc, value_of(S, sigma, t));
    }
    return acc;
  }

  bool check_solution(TypedSystem const& S, Assignment const& sigma) {
    check_assignment(S, sigma);
    for (auto const& e : S.equations()) {
      if (evaluate(S, sigma, e.lhs) != evaluate(S, sigma, e.rhs)) {
        return false;
      }
    }
    return true;
  }

  TypedSystem tau_decompose(TypedSystem const& S) {
    if (S.has_kind(VarKind::idempotent) || S.has_kind(VarKind::reduced)) {
      throw PreconditionError(
          "tau_decompose: input already contains typed variables");
    }
    TypedSystem                                          out(S.alphabet());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> image;
    for (auto const& v : S.vars()) {
      auto z = out.add_var("Z@" + v.name, VarKind::idempotent);
      auto x = out.add_var("x@" + v.name, VarKind::reduced);
      image.emplace_back(z, x);
    }
    auto map_side = [&](EqWord const& w) {
      EqWord r;
      for (auto const& t : w) {
        if (!t.is_var) {
          r.push_back(t);
          continue;
        }
        auto [z, x] = image[t.index];
        if (t.inverted) {
          r.push_back(Token::var(x, true));
          r.push_back(Token::var(z));
        } else {
          r.push_back(Token::var(z));
          r.push_back(Token::var(x));
        }
      }
      return r;
    };
    for (auto const& e : S.equations()) {
      out.add_equation(map_side(e.lhs), map_side(e.rhs));
    }
    return out;
  }

  Assignment tau_forward(TypedSystem const& S, Assignment const& sigma) {
    Assignment out;
    for (auto const& v : S.vars()) {
      VarValue const* val = sigma.find(v.name);
      if (val == nullptr || !std::holds_alternative<ScheiblichPair>(*val)) {
        throw InvalidInput("tau_forward: missing pair for '" + v.name + "'");
      }
      auto const& x = std::get<ScheiblichPair>(*val);
      out.set("Z@" + v.name,
              ScheiblichPair(S.alphabet(), x.tree(), ReducedWord()));
      out.set("x@" + v.name, x.group());
    }
    return out;
  }

  Assignment tau_backward(TypedSystem const& S, Assignment const& typed) {
    Assignment out;
    for (auto const& v : S.vars()) {
      VarValue const* z = typed.find("Z@" + v.name);
      VarValue const* x = typed.find("x@" + v.name);
      if (z == nullptr || x == nullptr
          || !std::holds_alternative<ScheiblichPair>(*z)
          || !std::holds_alternative<ReducedWord>(*x)) {
        throw InvalidInput("tau_backward: missing values for '" + v.name
                           + "'");
      }
      auto const& g    = std::get<ReducedWord>(*x);
      WordSet     tree = std::get<ScheiblichPair>(*z).tree();
      tree.merge(prefixes(g.word()));
      out.set(v.name, ScheiblichPair(S.alphabet(), std::move(tree), g));
    }
    return out;
  }

  namespace {
    Token inverse_token(TypedSystem const& S, Token t) {
      if (!t.is_var) {
        t.index = S.alphabet().bar(static_cast<Letter>(t.index));
      } else {
        t.inverted = !t.inverted;
      }
      return t;
    }

    EqWord group_image(TypedSystem const& S, EqWord const& w) {
      EqWord stack;
      for (auto const& t : w) {
        if (t.is_var && S.vars()[t.index].kind == VarKind::idempotent) {
          continue;
        }
        if (!stack.empty() && stack.back() == inverse_token(S, t)) {
          stack.pop_back();
        } else {
          stack.push_back(t);
        }
      }
      return stack;
    }
  }  // namespace

  std::pair<EqWord, EqWord> underlying_group_equation(TypedSystem const&   S,
                                                      TypedEquation const& e) {
    return {group_image(S, e.lhs), group_image(S, e.rhs)};
  }

  namespace {
    Word substitute_word(TypedSystem const&     S,
                         GroupAssignment const& gamma,
                         EqWord const&          w) {
      Word out;
      for (auto const& t : w) {
        if (!t.is_var) {
          out.push_back(static_cast<Letter>(t.index));
          continue;
        }
        auto const& v = S.vars()[t.index];
        if (v.kind == VarKind::idempotent) {
          continue;
        }
        auto it = gamma.find(v.name);
        if (it == gamma.end()) {
          throw InvalidInput("no group value for '" + v.name + "'");
        }
        Word const& g = it->second.word();
        Word        piece = t.inverted ? involute(S.alphabet(), g) : g;
        out.insert(out.end(), piece.begin(), piece.end());
      }
      return out;
    }
  }  // namespace

  bool solves_group_part(TypedSystem const&     S,
                         GroupAssignment const& gamma) {
    for (auto const& e : S.equations()) {
      if (reduce(S.alphabet(), substitute_word(S, gamma, e.lhs))
          != reduce(S.alphabet(), substitute_word(S, gamma, e.rhs))) {
        return false;
      }
    }
    return true;
  }

  TypedSystem substitute_group_solution(TypedSystem const&     S,
                                        GroupAssignment const& gamma) {
    for (auto const& [name, g] : gamma) {
      if (!is_reduced(S.alphabet(), g.word())) {
        throw InvalidInput("group value for '" + name + "' is not reduced");
      }
    }
    TypedSystem                               out(S.alphabet());
    std::vector<std::optional<std::uint32_t>> image(S.vars().size());
    for (std::uint32_t i = 0; i < S.vars().size(); ++i) {
      auto const& v = S.vars()[i];
      if (v.kind != VarKind::reduced) {
        image[i] = out.add_var(v.name, v.kind);
        out.set_slack(*image[i], S.slack(i));
      }
    }
    auto map_side = [&](EqWord const& w) {
      EqWord r;
      for (auto const& t : w) {
        if (!t.is_var) {
          r.push_back(t);
          continue;
        }
        auto const& v = S.vars()[t.index];
        if (v.kind != VarKind::reduced) {
          r.push_back(Token::var(*image[t.index], t.inverted));
          continue;
        }
        auto it = gamma.find(v.name);
        if (it == gamma.end()) {
          throw InvalidInput("no group value for '" + v.name + "'");
        }
        Word const& g     = it->second.word();
        Word        piece = t.inverted ? involute(S.alphabet(), g) : g;
        for (Letter a : piece) {
          r.push_back(Token::letter(a));
        }
      }
      return r;
    };
    for (auto const& e : S.equations()) {
      out.add_equation(map_side(e.lhs), map_side(e.rhs));
    }
    return out;
  }

}  // namespace fimeq
