#include "fimeq/scheiblich.hpp"

#include "fimeq/error.hpp"

namespace fimeq {

  ScheiblichPair::ScheiblichPair() : _tree{Word{}}, _group() {}

  ScheiblichPair::ScheiblichPair(InvAlphabet const& A,
                                 WordSet            P,
                                 ReducedWord        g)
      : _tree(std::move(P)), _group(std::move(g)) {
    if (_tree.empty() || !_tree.contains(Word{})) {
      throw InvalidInput("Scheiblich pair: tree must contain eps");
    }
    for (auto const& w : _tree) {
      A.check(w);
      if (!is_reduced(A, w)) {
        throw InvalidInput("Scheiblich pair: '" + A.format(w)
                           + "' is not reduced");
      }
    }
    if (!is_prefix_closed(_tree)) {
      throw InvalidInput("Scheiblich pair: tree is not prefix-closed");
    }
    if (!_tree.contains(_group.word())) {
      throw InvalidInput("Scheiblich pair: group component not in tree");
    }
  }

  ScheiblichPair fim_multiply(InvAlphabet const&    A,
                              ScheiblichPair const& x,
                              ScheiblichPair const& y) {
    WordSet tree = x._tree;
    for (auto const& q : y._tree) {
      tree.insert(concat_group(A, x._group, ReducedWord::of(A, q)).word());
    }
#ifndef NDEBUG
    if (!is_prefix_closed(tree)) {
      throw Error("fim_multiply: product tree is not prefix-closed");
    }
#endif
    return ScheiblichPair(ScheiblichPair::Trusted{},
                          std::move(tree),
                          concat_group(A, x._group, y._group));
  }

  ScheiblichPair fim_inverse(InvAlphabet const& A, ScheiblichPair const& x) {
    ReducedWord inv = group_inverse(A, x._group);
    WordSet     tree;
    for (auto const& p : x._tree) {
      tree.insert(concat_group(A, inv, ReducedWord::of(A, p)).word());
    }
    return ScheiblichPair(
        ScheiblichPair::Trusted{}, std::move(tree), std::move(inv));
  }

  ScheiblichPair psi(InvAlphabet const& A, Word const& w) {
    A.check(w);
    // Walk the Cayley graph: the tree is the set of visited vertices.
    WordSet tree{Word{}};
    Word    pos;
    for (Letter a : w) {
      if (!pos.empty() && pos.back() == A.bar(a)) {
        pos.pop_back();
      } else {
        pos.push_back(a);
        tree.insert(pos);
      }
    }
    return ScheiblichPair(A, std::move(tree), ReducedWord(A, pos));
  }

  ScheiblichPair psi_reduced(InvAlphabet const& A, ReducedWord const& w) {
    return ScheiblichPair(A, prefixes(w.word()), w);
  }

  bool word_problem(InvAlphabet const& A, Word const& u, Word const& v) {
    return psi(A, u) == psi(A, v);
  }

  std::string format_set(InvAlphabet const& A, WordSet const& P) {
    std::string out = "{";
    bool        first = true;
    for (auto const& w : P) {
      if (!first) {
        out += ",";
      }
      first = false;
      out += A.format(w);
    }
    return out + "}";
  }

  std::string to_string(InvAlphabet const& A, ScheiblichPair const& x) {
    return "(P=" + format_set(A, x.tree()) + "; g=" + A.format(x.group().word())
           + ")";
  }

}  // namespace fimeq
