#ifndef FIMEQ_TEXT_IO_HPP
#define FIMEQ_TEXT_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "fimeq/langeq.hpp"
#include "fimeq/typed.hpp"

//! Line-based text formats. `#` starts a comment; blank lines are ignored.
//!
//! Typed systems:
//!
//!     letters: a b
//!     vars: X:gen Z:idem x:red
//!     a X ~a = Z x
//!
//! Language systems (variables start with an upper-case letter or are
//! written after a '.'; a leading '!' marks an equation):
//!
//!     letters: a b
//!     interp: group
//!     coeffs-over: a b
//!     {eps,a~a} + a~a.X + b~b.Y = {b~b} + a~a.Y + b~b.X
//!     aX <= b.Y + {eps}

namespace fimeq {

  enum class InputKind : std::uint8_t { typed, lang };

  std::string read_file(std::filesystem::path const& path);

  // "lang" if an `interp:` header or a constant set occurs, else "typed".
  InputKind detect_kind(std::string_view text);

  // "letters: a b" payload.
  InvAlphabet parse_letters(std::string_view names);

  TypedSystem parse_typed_system(std::string_view text);
  LangSystem  parse_lang_system(std::string_view text);

  // One side of a typed equation, with the variables of S.
  EqWord parse_eq_word(TypedSystem const& S, std::string_view text);

  // "x = a~b" lines.
  GroupAssignment parse_gamma(InvAlphabet const& A, std::string_view text);

  // "(P={eps,a}; g=a)".
  ScheiblichPair parse_pair(InvAlphabet const& A, std::string_view text);

  // "{eps,a,ab}".
  WordSet parse_word_set(InvAlphabet const& A, std::string_view text);

  std::string format_letters(InvAlphabet const& A);
  std::string format_typed_system(TypedSystem const& S);
  std::string format_lang_system(LangSystem const& S);
  std::string format_assignment(InvAlphabet const& A, Assignment const& s);

}  // namespace fimeq

#endif  // FIMEQ_TEXT_IO_HPP
