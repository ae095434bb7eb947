#include "fimeq/text_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>

#include "fimeq/error.hpp"

namespace fimeq {

  namespace {

    //! A piece of input with its position in the original text.
    struct Span {
      std::string_view text;
      std::size_t      line   = 1;
      std::size_t      column = 1;

      Span sub(std::size_t pos, std::size_t n = std::string_view::npos) const {
        return Span{text.substr(pos, n), line, column + pos};
      }

      [[noreturn]] void fail(std::string const& msg,
                             std::size_t        offset = 0) const {
        throw ParseError(msg, line, column + offset);
      }
    };

    bool is_space(char c) {
      return std::isspace(static_cast<unsigned char>(c)) != 0;
    }

    Span trim(Span s) {
      std::size_t b = 0;
      std::size_t e = s.text.size();
      while (b < e && is_space(s.text[b])) {
        ++b;
      }
      while (e > b && is_space(s.text[e - 1])) {
        --e;
      }
      return s.sub(b, e - b);
    }

    // '#' opens a comment at the start of a line or after whitespace, so
    // names such as X#0 survive.
    std::vector<Span> content_lines(std::string_view text) {
      std::vector<Span> out;
      std::size_t       line  = 1;
      std::size_t       start = 0;
      while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
          end = text.size();
        }
        std::string_view raw = text.substr(start, end - start);
        for (std::size_t i = 0; i < raw.size(); ++i) {
          if (raw[i] == '#' && (i == 0 || is_space(raw[i - 1]))) {
            raw = raw.substr(0, i);
            break;
          }
        }
        Span s = trim(Span{raw, line, 1});
        if (!s.text.empty()) {
          out.push_back(s);
        }
        ++line;
        start = end + 1;
      }
      return out;
    }

    std::vector<Span> split_ws(Span s) {
      std::vector<Span> out;
      std::size_t       i = 0;
      while (i < s.text.size()) {
        while (i < s.text.size() && is_space(s.text[i])) {
          ++i;
        }
        std::size_t b = i;
        while (i < s.text.size() && !is_space(s.text[i])) {
          ++i;
        }
        if (i > b) {
          out.push_back(s.sub(b, i - b));
        }
      }
      return out;
    }

    // Splits at `sep` outside braces.
    std::vector<Span> split_top(Span s, char sep) {
      std::vector<Span> out;
      int               depth = 0;
      std::size_t       b     = 0;
      for (std::size_t i = 0; i < s.text.size(); ++i) {
        char c = s.text[i];
        if (c == '{') {
          ++depth;
        } else if (c == '}') {
          --depth;
        } else if (c == sep && depth == 0) {
          out.push_back(s.sub(b, i - b));
          b = i + 1;
        }
      }
      out.push_back(s.sub(b));
      return out;
    }

    //! "key: payload" for the known header keys.
    struct Header {
      std::string key;
      Span        payload;
    };

    std::optional<Header> header(Span s,
                                 std::initializer_list<char const*> keys) {
      std::size_t colon = s.text.find(':');
      if (colon == std::string_view::npos) {
        return std::nullopt;
      }
      Span key = trim(s.sub(0, colon));
      for (char const* k : keys) {
        if (key.text == k) {
          return Header{std::string(key.text), trim(s.sub(colon + 1))};
        }
      }
      return std::nullopt;
    }

    template <typename F>
    auto at(Span const& s, F&& f) -> decltype(f()) {
      try {
        return f();
      } catch (ParseError const&) {
        throw;
      } catch (Error const& e) {
        s.fail(e.what());
      }
    }

    Word word_at(InvAlphabet const& A, Span s) {
      return at(s, [&] { return A.parse_word(s.text); });
    }

    InvAlphabet letters_at(Span s) {
      std::vector<std::string> base;
      for (Span t : split_ws(s)) {
        base.emplace_back(t.text);
      }
      if (base.empty()) {
        s.fail("empty alphabet");
      }
      return at(s, [&] { return InvAlphabet::from_base(base); });
    }

    int int_at(Span s) {
      int  v = 0;
      auto r = std::from_chars(s.text.data(), s.text.data() + s.text.size(), v);
      if (r.ec != std::errc{} || r.ptr != s.text.data() + s.text.size()) {
        s.fail("expected an integer, got '" + std::string(s.text) + "'");
      }
      return v;
    }

    // "X=2 Y=1"
    template <typename Sys>
    void slack_at(Sys& S, Span s) {
      for (Span t : split_ws(s)) {
        std::size_t eq = t.text.find('=');
        if (eq == std::string_view::npos) {
          t.fail("expected NAME=INT");
        }
        auto v = S.find_var(std::string(t.text.substr(0, eq)));
        if (!v) {
          t.fail("unknown variable '" + std::string(t.text.substr(0, eq))
                 + "'");
        }
        S.set_slack(*v, int_at(t.sub(eq + 1)));
      }
    }

    // Consumes a leading "letters:" line.
    std::optional<InvAlphabet> letters_header(std::vector<Span>& lines) {
      if (lines.empty()) {
        throw ParseError("empty input", 1, 1);
      }
      auto h = header(lines.front(), {"letters"});
      if (!h) {
        return std::nullopt;
      }
      InvAlphabet A = letters_at(h->payload);
      lines.erase(lines.begin());
      return A;
    }

  }  // namespace

  std::string read_file(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw InvalidInput("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  InputKind detect_kind(std::string_view text) {
    for (Span s : content_lines(text)) {
      if (header(s, {"interp", "coeffs-over"})
          || s.text.find('{') != std::string_view::npos
          || s.text.find("<=") != std::string_view::npos) {
        return InputKind::lang;
      }
    }
    return InputKind::typed;
  }

  InvAlphabet parse_letters(std::string_view names) {
    return letters_at(trim(Span{names}));
  }

  namespace {

    WordSet word_set_at(InvAlphabet const& A, Span s) {
      s = trim(s);
      if (s.text.size() < 2 || s.text.front() != '{' || s.text.back() != '}') {
        s.fail("expected '{w1,w2,...}'");
      }
      WordSet out;
      Span    body = trim(s.sub(1, s.text.size() - 2));
      if (body.text.empty()) {
        return out;
      }
      std::size_t b = 0;
      while (true) {
        std::size_t e = body.text.find(',', b);
        Span        item =
            trim(body.sub(b, e == std::string_view::npos ? e : e - b));
        if (item.text.empty()) {
          item.fail("empty set element; write 'eps' for the empty word");
        }
        out.insert(word_at(A, item));
        if (e == std::string_view::npos) {
          break;
        }
        b = e + 1;
      }
      return out;
    }

    EqWord eq_word_at(TypedSystem const& S, Span s) {
      s = trim(s);
      if (s.text == "eps" || s.text == "1") {
        return {};
      }
      if (s.text.empty()) {
        s.fail("empty side; write 'eps' for the empty word");
      }
      std::vector<std::pair<std::string, Token>> names;
      InvAlphabet const& A = S.alphabet();
      for (std::size_t a = 0; a < A.size(); ++a) {
        names.emplace_back(A.name(static_cast<Letter>(a)),
                           Token::letter(static_cast<Letter>(a)));
      }
      for (std::uint32_t i = 0; i < S.vars().size(); ++i) {
        auto const& v = S.vars()[i];
        names.emplace_back(v.name, Token::var(i));
        if (v.kind != VarKind::idempotent) {
          names.emplace_back("~" + v.name, Token::var(i, true));
        }
      }
      EqWord      out;
      std::size_t i = 0;
      while (i < s.text.size()) {
        if (is_space(s.text[i]) || s.text[i] == '.') {
          ++i;
          continue;
        }
        std::size_t best = 0;
        Token       tok;
        for (auto const& [n, t] : names) {
          if (n.size() > best && s.text.substr(i, n.size()) == n) {
            best = n.size();
            tok  = t;
          }
        }
        if (best == 0) {
          s.fail("unknown symbol", i);
        }
        out.push_back(tok);
        i += best;
      }
      return out;
    }

    std::optional<VarKind> kind_of(std::string_view k) {
      if (k == "gen" || k == "general") {
        return VarKind::general;
      }
      if (k == "idem" || k == "idempotent") {
        return VarKind::idempotent;
      }
      if (k == "red" || k == "reduced") {
        return VarKind::reduced;
      }
      return std::nullopt;
    }

    char const* short_kind(VarKind k) {
      switch (k) {
        case VarKind::general: return "gen";
        case VarKind::idempotent: return "idem";
        case VarKind::reduced: return "red";
      }
      return "gen";
    }

  }  // namespace

  WordSet parse_word_set(InvAlphabet const& A, std::string_view text) {
    return word_set_at(A, Span{text});
  }

  EqWord parse_eq_word(TypedSystem const& S, std::string_view text) {
    return eq_word_at(S, Span{text});
  }

  namespace {

    // Characters of the sides not covered by variable names.
    InvAlphabet infer_typed_letters(std::vector<Span> const&    equations,
                                    std::vector<VarSymbol> const& vars) {
      std::vector<std::string> names;
      for (auto const& v : vars) {
        names.push_back(v.name);
        if (v.kind != VarKind::idempotent) {
          names.push_back("~" + v.name);
        }
      }
      std::set<std::string> letters;
      for (Span s : equations) {
        for (Span side : split_top(s, '=')) {
          std::string_view t = trim(side).text;
          if (t == "eps" || t == "1") {
            continue;
          }
          std::size_t i = 0;
          while (i < t.size()) {
            if (is_space(t[i]) || t[i] == '.' || t[i] == '~') {
              ++i;
              continue;
            }
            std::size_t best = 0;
            for (auto const& n : names) {
              if (n.size() > best && t.substr(i, n.size()) == n) {
                best = n.size();
              }
            }
            if (best == 0) {
              letters.insert(std::string(1, t[i]));
              best = 1;
            }
            i += best;
          }
        }
      }
      return InvAlphabet::from_base({letters.begin(), letters.end()});
    }

  }  // namespace

  TypedSystem parse_typed_system(std::string_view text) {
    auto                   lines    = content_lines(text);
    auto                   declared = letters_header(lines);
    std::vector<VarSymbol> vars;
    std::vector<Span>      var_spans;
    std::vector<Span>      slack;
    std::vector<Span>      equations;
    for (Span s : lines) {
      auto h = header(s, {"vars", "slack"});
      if (!h) {
        std::size_t eq = s.text.find('=');
        if (eq == std::string_view::npos
            || s.text.find('=', eq + 1) != std::string_view::npos) {
          s.fail("expected 'U = V'");
        }
        equations.push_back(s);
      } else if (h->key == "slack") {
        slack.push_back(h->payload);
      } else {
        for (Span t : split_ws(h->payload)) {
          std::size_t colon = t.text.find(':');
          VarKind     kind  = VarKind::general;
          if (colon != std::string_view::npos) {
            auto k = kind_of(t.text.substr(colon + 1));
            if (!k) {
              t.fail("unknown variable kind '"
                         + std::string(t.text.substr(colon + 1)) + "'",
                     colon + 1);
            }
            kind = *k;
          }
          vars.push_back({std::string(t.text.substr(0, colon)), kind});
          var_spans.push_back(t);
        }
      }
    }
    TypedSystem S(declared ? *declared : infer_typed_letters(equations, vars));
    for (std::size_t i = 0; i < vars.size(); ++i) {
      at(var_spans[i], [&] { return S.add_var(vars[i].name, vars[i].kind); });
    }
    for (Span s : slack) {
      slack_at(S, s);
    }
    for (Span s : equations) {
      std::size_t eq  = s.text.find('=');
      EqWord      lhs = eq_word_at(S, s.sub(0, eq));
      EqWord      rhs = eq_word_at(S, s.sub(eq + 1));
      at(s, [&] {
        S.add_equation(std::move(lhs), std::move(rhs));
        return 0;
      });
    }
    return S;
  }

  GroupAssignment parse_gamma(InvAlphabet const& A, std::string_view text) {
    GroupAssignment out;
    for (Span s : content_lines(text)) {
      std::size_t eq = s.text.find('=');
      if (eq == std::string_view::npos) {
        s.fail("expected 'x = word'");
      }
      std::string name(trim(s.sub(0, eq)).text);
      if (name.empty()) {
        s.fail("missing variable name");
      }
      Span w = trim(s.sub(eq + 1));
      out[name] =
          at(w, [&] { return ReducedWord(A, A.parse_word(w.text)); });
    }
    return out;
  }

  ScheiblichPair parse_pair(InvAlphabet const& A, std::string_view text) {
    Span s = trim(Span{text});
    if (s.text.size() < 2 || s.text.front() != '(' || s.text.back() != ')') {
      s.fail("expected '(P={...}; g=word)'");
    }
    Span        body = s.sub(1, s.text.size() - 2);
    std::size_t semi = body.text.find(';');
    if (semi == std::string_view::npos) {
      body.fail("expected ';' between P and g");
    }
    auto field = [&](Span f, char const* key) {
      f              = trim(f);
      std::size_t eq = f.text.find('=');
      if (eq == std::string_view::npos || trim(f.sub(0, eq)).text != key) {
        f.fail(std::string("expected '") + key + "='");
      }
      return trim(f.sub(eq + 1));
    };
    Span    p = field(body.sub(0, semi), "P");
    Span    g = field(body.sub(semi + 1), "g");
    WordSet P = word_set_at(A, p);
    Word    w = word_at(A, g);
    return at(s, [&] { return ScheiblichPair(A, P, ReducedWord(A, w)); });
  }

  namespace {

    bool starts_var(char c) {
      return std::isupper(static_cast<unsigned char>(c)) != 0 || c == '[';
    }

    //! A summand: a constant set, a constant word, or coef.VAR.
    struct SummandText {
      bool                set = false;
      Span                word;
      std::optional<Span> var;
    };

    SummandText split_summand(Span part) {
      part = trim(part);
      if (part.text.empty()) {
        part.fail("empty summand");
      }
      if (part.text.front() == '{') {
        return SummandText{true, part, std::nullopt};
      }
      std::size_t cut = part.text.rfind('.');
      if (cut != std::string_view::npos) {
        Span after = trim(part.sub(cut + 1));
        if (!after.text.empty() && starts_var(after.text.front())) {
          return SummandText{false, trim(part.sub(0, cut)), after};
        }
      }
      for (std::size_t i = 0; i < part.text.size(); ++i) {
        if (starts_var(part.text[i])) {
          return SummandText{false, trim(part.sub(0, i)), trim(part.sub(i))};
        }
      }
      return SummandText{false, part, std::nullopt};
    }

    //! A parsed equation line before the alphabet is applied.
    struct EquationText {
      bool              marked     = false;
      bool              inequality = false;
      std::vector<Span> lhs;
      std::vector<Span> rhs;
    };

    EquationText split_equation(Span s) {
      EquationText e;
      if (s.text.front() == '!') {
        e.marked = true;
        s        = trim(s.sub(1));
      }
      auto sides = split_top(s, '=');
      if (sides.size() != 2) {
        s.fail("expected 'L = R' or 'L <= R'");
      }
      Span lhs = sides[0];
      if (!lhs.text.empty() && lhs.text.back() == '<') {
        e.inequality = true;
        lhs          = lhs.sub(0, lhs.text.size() - 1);
      }
      e.lhs = split_top(lhs, '+');
      e.rhs = split_top(sides[1], '+');
      return e;
    }

    LangTerm term_at(LangSystem& S, std::vector<Span> const& parts) {
      LangTerm t;
      for (Span part : parts) {
        SummandText st = split_summand(part);
        if (st.set) {
          t.constants.merge(word_set_at(S.alphabet(), st.word));
        } else if (!st.var) {
          t.constants.insert(word_at(S.alphabet(), st.word));
        } else {
          Word w = st.word.text.empty() ? Word{}
                                        : word_at(S.alphabet(), st.word);
          t.summands.push_back(Summand{w, S.var(std::string(st.var->text))});
        }
      }
      return t;
    }

    // Letters of a constant word written without an alphabet: every
    // character other than '~', '.' and blanks.
    void collect_letters(std::string_view w, std::set<std::string>& out) {
      if (w == "eps" || w == "1") {
        return;
      }
      for (char c : w) {
        if (c != '~' && c != '.' && !is_space(c)) {
          out.insert(std::string(1, c));
        }
      }
    }

    InvAlphabet infer_lang_letters(std::vector<Span> const& lines) {
      std::set<std::string> letters;
      for (Span s : lines) {
        if (auto h = header(s, {"interp", "coeffs-over", "vars", "slack"})) {
          if (h->key == "coeffs-over") {
            for (Span t : split_ws(h->payload)) {
              letters.insert(std::string(t.text));
            }
          }
          continue;
        }
        EquationText e = split_equation(s);
        for (auto const* side : {&e.lhs, &e.rhs}) {
          for (Span part : *side) {
            SummandText st = split_summand(part);
            if (!st.set) {
              collect_letters(st.word.text, letters);
              continue;
            }
            Span body = trim(st.word.sub(1, st.word.text.size() - 2));
            for (Span item : split_top(body, ',')) {
              collect_letters(trim(item).text, letters);
            }
          }
        }
      }
      return InvAlphabet::from_base({letters.begin(), letters.end()});
    }

  }  // namespace

  LangSystem parse_lang_system(std::string_view text) {
    auto        lines = content_lines(text);
    auto declared = letters_header(lines);
    InvAlphabet A = declared ? *declared : infer_lang_letters(lines);
    LangSystem  S(A, Interp::monoid);
    for (std::size_t li = 0; li < lines.size(); ++li) {
      Span s = lines[li];
      if (auto h = header(s, {"interp", "coeffs-over", "vars", "slack"})) {
        if (h->key == "interp") {
          if (h->payload.text == "group") {
            S.set_interp(Interp::group);
          } else if (h->payload.text == "monoid") {
            S.set_interp(Interp::monoid);
          } else {
            h->payload.fail("expected 'group' or 'monoid'");
          }
        } else if (h->key == "coeffs-over") {
          std::vector<Letter> B;
          for (Span t : split_ws(h->payload)) {
            auto a = A.find(t.text);
            if (!a) {
              t.fail("unknown letter '" + std::string(t.text) + "'");
            }
            B.push_back(*a);
          }
          at(h->payload, [&] {
            S.set_coeffs_over(B);
            return 0;
          });
        } else if (h->key == "vars") {
          for (Span t : split_ws(h->payload)) {
            at(t, [&] { return S.add_var(std::string(t.text)); });
          }
        } else {
          slack_at(S, h->payload);
        }
        continue;
      }
      EquationText et = split_equation(s);
      LangEquation e;
      e.marked     = et.marked;
      e.inequality = et.inequality;
      e.lhs        = term_at(S, et.lhs);
      e.rhs        = term_at(S, et.rhs);
      at(s, [&] {
        S.add_equation(std::move(e));
        return 0;
      });
    }
    return S;
  }

  std::string format_letters(InvAlphabet const& A) {
    std::vector<std::string> base;
    for (Letter a : A.positive_letters()) {
      base.push_back(A.name(a));
    }
    if (!(InvAlphabet::from_base(base) == A)) {
      throw InvalidInput("alphabet is not of the form {a, ~a, ...}");
    }
    std::string out = "letters:";
    for (auto const& b : base) {
      out += " " + b;
    }
    return out;
  }

  namespace {

    template <typename Sys, typename Name>
    std::string slack_line(Sys const& S, std::size_t n, Name name) {
      std::string out;
      for (std::uint32_t i = 0; i < n; ++i) {
        if (int k = S.slack(i); k != 0) {
          out += " " + name(i) + "=" + std::to_string(k);
        }
      }
      return out.empty() ? out : "slack:" + out + "\n";
    }

  }  // namespace

  std::string format_typed_system(TypedSystem const& S) {
    std::string out = format_letters(S.alphabet()) + "\n";
    if (!S.vars().empty()) {
      out += "vars:";
      for (auto const& v : S.vars()) {
        out += " " + v.name + ":" + short_kind(v.kind);
      }
      out += "\n";
    }
    out += slack_line(S, S.vars().size(),
                      [&](std::uint32_t i) { return S.vars()[i].name; });
    for (auto const& e : S.equations()) {
      out += S.format(e) + "\n";
    }
    return out;
  }

  std::string format_lang_system(LangSystem const& S) {
    InvAlphabet const& A   = S.alphabet();
    std::string        out = format_letters(A) + "\n";
    out += std::string("interp: ") + to_string(S.interp()) + "\n";
    if (!S.coeffs_over().empty()) {
      out += "coeffs-over:";
      for (Letter a : S.coeffs_over()) {
        out += " " + A.name(a);
      }
      out += "\n";
    }
    if (!S.vars().empty()) {
      out += "vars:";
      for (auto const& v : S.vars()) {
        out += " " + v;
      }
      out += "\n";
    }
    out += slack_line(S, S.vars().size(),
                      [&](std::uint32_t i) { return S.vars()[i]; });
    for (auto const& e : S.equations()) {
      out += format_equation(S, e) + "\n";
    }
    return out;
  }

  std::string format_assignment(InvAlphabet const& A, Assignment const& s) {
    std::string out;
    for (auto const& [name, value] : s.values()) {
      out += name + " = ";
      if (auto const* p = std::get_if<ScheiblichPair>(&value)) {
        out += to_string(A, *p);
      } else {
        out += A.format(std::get<ReducedWord>(value).word());
      }
      out += "\n";
    }
    return out;
  }

}  // namespace fimeq
