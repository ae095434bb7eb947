#include "fimeq/words.hpp"

#include <algorithm>

#include "fimeq/error.hpp"

namespace fimeq {

  ReducedWord::ReducedWord(InvAlphabet const& A, Word w) : _word(std::move(w)) {
    A.check(_word);
    if (!is_reduced(A, _word)) {
      throw InvalidInput("word '" + A.format(_word) + "' is not reduced");
    }
  }

  ReducedWord ReducedWord::of(InvAlphabet const& A, Word const& w) {
    return ReducedWord(Trusted{}, reduce(A, w));
  }

  Word involute(InvAlphabet const& A, Word const& w) {
    A.check(w);
    Word out(w.size());
    std::transform(w.rbegin(), w.rend(), out.begin(), [&A](Letter a) {
      return A.bar(a);
    });
    return out;
  }

  Word reduce(InvAlphabet const& A, Word const& w) {
    A.check(w);
    Word stack;
    stack.reserve(w.size());
    for (Letter a : w) {
      if (!stack.empty() && stack.back() == A.bar(a)) {
        stack.pop_back();
      } else {
        stack.push_back(a);
      }
    }
    return stack;
  }

  bool is_reduced(InvAlphabet const& A, Word const& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i] == A.bar(w[i - 1])) {
        return false;
      }
    }
    return true;
  }

  Word concat(Word const& u, Word const& v) {
    Word out;
    out.reserve(u.size() + v.size());
    out.insert(out.end(), u.begin(), u.end());
    out.insert(out.end(), v.begin(), v.end());
    return out;
  }

  ReducedWord concat_group(InvAlphabet const&  A,
                           ReducedWord const& u,
                           ReducedWord const& v) {
    // Both factors are reduced, so only the seam can cancel.
    Word const& x = u.word();
    Word const& y = v.word();
    std::size_t k = 0;
    while (k < x.size() && k < y.size()
           && y[k] == A.bar(x[x.size() - 1 - k])) {
      ++k;
    }
    Word out(x.begin(), x.end() - k);
    out.insert(out.end(), y.begin() + k, y.end());
    return ReducedWord::of(A, out);
  }

  ReducedWord group_inverse(InvAlphabet const& A, ReducedWord const& u) {
    return ReducedWord::of(A, involute(A, u.word()));
  }

  ReducedWord group_power(InvAlphabet const& A, ReducedWord const& u, long k) {
    ReducedWord base = k < 0 ? group_inverse(A, u) : u;
    ReducedWord out;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) {
      out = concat_group(A, out, base);
    }
    return out;
  }

  bool is_prefix(Word const& p, Word const& w) noexcept {
    return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
  }

  WordSet prefixes(Word const& w) {
    WordSet out;
    for (std::size_t i = 0; i <= w.size(); ++i) {
      out.emplace(w.begin(), w.begin() + i);
    }
    return out;
  }

  WordSet prefix_closure(WordSet const& L) {
    WordSet out;
    for (auto const& w : L) {
      for (std::size_t i = 0; i <= w.size(); ++i) {
        out.emplace(w.begin(), w.begin() + i);
      }
    }
    return out;
  }

  bool is_prefix_closed(WordSet const& L) {
    for (auto const& w : L) {
      if (!w.empty() && !L.contains(Word(w.begin(), w.end() - 1))) {
        return false;
      }
    }
    return true;
  }

  WordSet reduce_each(InvAlphabet const& A, WordSet const& P) {
    WordSet out;
    for (auto const& p : P) {
      out.insert(reduce(A, p));
    }
    return out;
  }

  WordSet reduce_set(InvAlphabet const& A, WordSet const& P) {
    if (!is_prefix_closed(P)) {
      throw PreconditionError("reduce_set: input is not prefix-closed");
    }
    WordSet out = reduce_each(A, P);
    if (!is_prefix_closed(out)) {
      throw Error("reduce_set: result is not prefix-closed");
    }
    return out;
  }

  std::size_t count_factor(Word const& u, Word const& p) {
    if (p.empty()) {
      throw InvalidInput("count_factor: empty pattern");
    }
    if (p.size() > u.size()) {
      return 0;
    }
    std::size_t n = 0;
    for (std::size_t i = 0; i + p.size() <= u.size(); ++i) {
      if (std::equal(p.begin(), p.end(), u.begin() + i)) {
        ++n;
      }
    }
    return n;
  }

  long delta(InvAlphabet const& A, Word const& u, Word const& p) {
    if (!A.fixed_point_free()) {
      throw PreconditionError(
          "delta: the involution of the alphabet has fixed points");
    }
    return static_cast<long>(count_factor(u, p))
           - static_cast<long>(count_factor(u, involute(A, p)));
  }

  bool is_cyclically_reduced(InvAlphabet const& A, ReducedWord const& q) {
    auto const& w = q.word();
    return w.empty() || w.front() != A.bar(w.back());
  }

  std::pair<Word, std::size_t> primitive_root(Word const& u) {
    if (u.empty()) {
      throw InvalidInput("primitive_root: empty word");
    }
    std::size_t const n = u.size();
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d != 0) {
        continue;
      }
      bool periodic = true;
      for (std::size_t i = d; i < n && periodic; ++i) {
        periodic = u[i] == u[i - d];
      }
      if (periodic) {
        return {Word(u.begin(), u.begin() + d), n / d};
      }
    }
    return {u, 1};  // unreachable: d = n always succeeds
  }

  bool is_primitive(Word const& u) {
    return !u.empty() && primitive_root(u).second == 1;
  }

}  // namespace fimeq
