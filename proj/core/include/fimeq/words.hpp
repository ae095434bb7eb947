#ifndef FIMEQ_WORDS_HPP
#define FIMEQ_WORDS_HPP

#include <compare>
#include <cstddef>
#include <set>
#include <utility>

#include "fimeq/alphabet.hpp"

namespace fimeq {

  // Length first, then lexicographic by letter index.
  struct ShortLex {
    bool operator()(Word const& u, Word const& v) const noexcept {
      if (u.size() != v.size()) {
        return u.size() < v.size();
      }
      return u < v;
    }
  };

  using WordSet = std::set<Word, ShortLex>;

  //! A word without factors a bar(a); the canonical representative of an
  //! element of the free group (free product with Z/2 factors when the
  //! involution has fixed points) over the alphabet.
  class ReducedWord {
   public:
    ReducedWord() = default;

    // Throws InvalidInput if w is not reduced over A.
    ReducedWord(InvAlphabet const& A, Word w);

    // The reduced form of an arbitrary word.
    static ReducedWord of(InvAlphabet const& A, Word const& w);

    Word const& word() const noexcept {
      return _word;
    }

    std::size_t size() const noexcept {
      return _word.size();
    }

    bool empty() const noexcept {
      return _word.empty();
    }

    bool operator==(ReducedWord const&) const = default;
    auto operator<=>(ReducedWord const& other) const {
      if (_word.size() != other._word.size()) {
        return _word.size() <=> other._word.size();
      }
      return _word <=> other._word;
    }

   private:
    struct Trusted {};
    ReducedWord(Trusted, Word w) : _word(std::move(w)) {}
    Word _word;
  };

  // bar of each letter in reverse order.
  Word involute(InvAlphabet const& A, Word const& w);

  // Stack-based free reduction, linear time.
  Word reduce(InvAlphabet const& A, Word const& w);

  bool is_reduced(InvAlphabet const& A, Word const& w);

  Word concat(Word const& u, Word const& v);

  // Multiplication in the free group.
  ReducedWord concat_group(InvAlphabet const&  A,
                           ReducedWord const& u,
                           ReducedWord const& v);

  ReducedWord group_inverse(InvAlphabet const& A, ReducedWord const& u);

  // u^k in the group, k may be negative.
  ReducedWord group_power(InvAlphabet const& A, ReducedWord const& u, long k);

  bool is_prefix(Word const& p, Word const& w) noexcept;

  // All prefixes of w including the empty word and w itself.
  WordSet prefixes(Word const& w);

  WordSet prefix_closure(WordSet const& L);

  bool is_prefix_closed(WordSet const& L);

  // {reduce(p) : p in P}. P must be prefix-closed (PreconditionError
  // otherwise); the result is again prefix-closed, which is checked.
  WordSet reduce_set(InvAlphabet const& A, WordSet const& P);

  // Elementwise reduction without the prefix-closure requirement.
  WordSet reduce_each(InvAlphabet const& A, WordSet const& P);

  // Number of (possibly overlapping) occurrences of the nonempty word p as a
  // factor of u. Throws InvalidInput if p is empty.
  std::size_t count_factor(Word const& u, Word const& p);

  // |u|_p - |u|_{bar p}. Requires a fixed-point-free alphabet.
  long delta(InvAlphabet const& A, Word const& u, Word const& p);

  // q q is reduced. The empty word is cyclically reduced.
  bool is_cyclically_reduced(InvAlphabet const& A, ReducedWord const& q);

  // (p, e) with u = p^e and p primitive. Throws InvalidInput if u is empty.
  std::pair<Word, std::size_t> primitive_root(Word const& u);

  bool is_primitive(Word const& u);

}  // namespace fimeq

#endif  // FIMEQ_WORDS_HPP
