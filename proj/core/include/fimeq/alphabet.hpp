#ifndef FIMEQ_ALPHABET_HPP
#define FIMEQ_ALPHABET_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fimeq {

  using Letter = std::uint16_t;
  using Word   = std::vector<Letter>;

  //! A finite alphabet with an involution a -> bar(a).
  //!
  //! Letters are the indices 0, ..., size() - 1. Every letter has a printable
  //! name; names are unique. The involution may have fixed points, but
  //! several operations (the counting function delta, everything in the
  //! one-variable solver) refuse alphabets where fixed_point_free() is false.
  class InvAlphabet {
   public:
    InvAlphabet() = default;

    // Throws InvalidInput unless bar is an involution on [0, names.size())
    // and the names are unique and nonempty.
    InvAlphabet(std::vector<std::string> names, std::vector<Letter> bar);

    // {a, ~a, b, ~b, ...}: base letter i gets index 2i, its inverse 2i + 1.
    static InvAlphabet from_base(std::vector<std::string> const& base);

    std::size_t size() const noexcept {
      return _names.size();
    }

    Letter bar(Letter a) const {
      return _bar[a];
    }

    std::string const& name(Letter a) const {
      return _names[a];
    }

    std::vector<std::string> const& names() const noexcept {
      return _names;
    }

    std::vector<Letter> const& bars() const noexcept {
      return _bar;
    }

    bool fixed_point_free() const noexcept {
      return _fixed_point_free;
    }

    std::optional<Letter> find(std::string_view name) const;

    // Letters a with a <= bar(a), i.e. one representative per orbit.
    std::vector<Letter> positive_letters() const;

    bool contains(Word const& w) const noexcept;

    // Throws InvalidInput if some letter of w is not in the alphabet.
    void check(Word const& w) const;

    // Concatenated letter names; the empty word is written "eps".
    std::string format(Word const& w) const;

    // Inverse of format(). Letters are matched greedily by longest name, an
    // optional "~" prefix applies the involution, whitespace and '.' are
    // ignored. "~~a" is rejected.
    Word parse_word(std::string_view text) const;

    bool operator==(InvAlphabet const&) const = default;

   private:
    std::vector<std::string> _names;
    std::vector<Letter>      _bar;
    bool                     _fixed_point_free = true;
  };

}  // namespace fimeq

#endif  // FIMEQ_ALPHABET_HPP
