#include "fimeq/alphabet.hpp"

#include <cctype>
#include <unordered_set>

#include "fimeq/error.hpp"

namespace fimeq {

  InvAlphabet::InvAlphabet(std::vector<std::string> names,
                           std::vector<Letter>      bar)
      : _names(std::move(names)), _bar(std::move(bar)) {
    if (_names.size() != _bar.size()) {
      throw InvalidInput("alphabet: names and involution differ in size");
    }
    if (_names.size() > 0xFFFF) {
      throw InvalidInput("alphabet: too many letters");
    }
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < _names.size(); ++i) {
      if (_names[i].empty()) {
        throw InvalidInput("alphabet: empty letter name");
      }
      if (!seen.insert(_names[i]).second) {
        throw InvalidInput("alphabet: duplicate letter name '" + _names[i]
                           + "'");
      }
      if (_bar[i] >= _names.size() || _bar[_bar[i]] != i) {
        throw InvalidInput("alphabet: bar is not an involution at '"
                           + _names[i] + "'");
      }
      if (_bar[i] == i) {
        _fixed_point_free = false;
      }
    }
  }

  InvAlphabet InvAlphabet::from_base(std::vector<std::string> const& base) {
    std::vector<std::string> names;
    std::vector<Letter>      bar;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (base[i].empty() || base[i].front() == '~') {
        throw InvalidInput("alphabet: invalid base letter '" + base[i] + "'");
      }
      names.push_back(base[i]);
      names.push_back("~" + base[i]);
      bar.push_back(static_cast<Letter>(2 * i + 1));
      bar.push_back(static_cast<Letter>(2 * i));
    }
    return InvAlphabet(std::move(names), std::move(bar));
  }

  std::optional<Letter> InvAlphabet::find(std::string_view name) const {
    for (std::size_t i = 0; i < _names.size(); ++i) {
      if (_names[i] == name) {
        return static_cast<Letter>(i);
      }
    }
    return std::nullopt;
  }

  std::vector<Letter> InvAlphabet::positive_letters() const {
    std::vector<Letter> out;
    for (std::size_t i = 0; i < _names.size(); ++i) {
      if (i <= _bar[i]) {
        out.push_back(static_cast<Letter>(i));
      }
    }
    return out;
  }

  bool InvAlphabet::contains(Word const& w) const noexcept {
    for (Letter a : w) {
      if (a >= _names.size()) {
        return false;
      }
    }
    return true;
  }

  void InvAlphabet::check(Word const& w) const {
    if (!contains(w)) {
      throw InvalidInput("word contains a letter outside the alphabet");
    }
  }

  std::string InvAlphabet::format(Word const& w) const {
    if (w.empty()) {
      return "eps";
    }
    std::string out;
    for (Letter a : w) {
      out += _names.at(a);
    }
    return out;
  }

  Word InvAlphabet::parse_word(std::string_view text) const {
    Word        out;
    std::size_t i = 0;
    auto        skip = [&] {
      while (i < text.size()
             && (std::isspace(static_cast<unsigned char>(text[i]))
                 || text[i] == '.')) {
        ++i;
      }
    };
    skip();
    if (text.substr(i) == "eps" || text.substr(i) == "1") {
      return out;
    }
    while (i < text.size()) {
      bool inverted = false;
      if (text[i] == '~') {
        if (i + 1 < text.size() && text[i + 1] == '~') {
          throw InvalidInput("word: '~~' at offset " + std::to_string(i));
        }
        inverted = true;
        ++i;
      }
      std::size_t best_len = 0;
      Letter      best     = 0;
      for (std::size_t l = 0; l < _names.size(); ++l) {
        auto const& n = _names[l];
        if (n.size() > best_len && text.substr(i, n.size()) == n) {
          best_len = n.size();
          best     = static_cast<Letter>(l);
        }
      }
      if (best_len == 0) {
        throw InvalidInput("word: unknown letter at offset "
                           + std::to_string(i) + " in '" + std::string(text)
                           + "'");
      }
      if (inverted && _names[best].front() == '~') {
        throw InvalidInput("word: '~~' at offset " + std::to_string(i - 1));
      }
      out.push_back(inverted ? _bar[best] : best);
      i += best_len;
      skip();
    }
    return out;
  }

}  // namespace fimeq
