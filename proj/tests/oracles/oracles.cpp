#include "oracles/oracles.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>

namespace oracle {

  using namespace fimeq;

  Word slow_reduce(InvAlphabet const& A, Word w) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i + 1] == A.bar(w[i])) {
          w.erase(w.begin() + static_cast<long>(i),
                  w.begin() + static_cast<long>(i) + 2);
          changed = true;
          break;
        }
      }
    }
    return w;
  }

  namespace {

    // u v for reduced u and v: cancel across the border only.
    Word mul(InvAlphabet const& A, Word u, Word const& v) {
      std::size_t k = 0;
      while (k < v.size() && !u.empty() && u.back() == A.bar(v[k])) {
        u.pop_back();
        ++k;
      }
      u.insert(u.end(), v.begin() + static_cast<long>(k), v.end());
      return u;
    }

    Word inv(InvAlphabet const& A, Word const& u) {
      Word out(u.rbegin(), u.rend());
      for (auto& a : out) {
        a = A.bar(a);
      }
      return out;
    }

    Walk inverse(InvAlphabet const& A, Walk const& x) {
      Walk out;
      out.end = inv(A, x.end);
      for (auto const& p : x.visited) {
        out.visited.insert(mul(A, out.end, p));
      }
      return out;
    }

  }  // namespace

  Walk munn_walk(InvAlphabet const& A, Word const& w) {
    Walk out;
    out.visited.insert(Word{});
    for (Letter a : w) {
      if (!out.end.empty() && out.end.back() == A.bar(a)) {
        out.end.pop_back();
      } else {
        out.end.push_back(a);
      }
      out.visited.insert(out.end);
    }
    return out;
  }

  Walk compose(InvAlphabet const& A, Walk const& x, Walk const& y) {
    Walk out = x;
    for (auto const& p : y.visited) {
      out.visited.insert(mul(A, x.end, p));
    }
    out.end = mul(A, x.end, y.end);
    return out;
  }

  Walk fold(TypedSystem const&      S,
            OracleAssignment const& sigma,
            EqWord const&           w) {
    InvAlphabet const& A = S.alphabet();
    Walk               acc{{Word{}}, {}};
    for (auto const& t : w) {
      Walk step;
      if (!t.is_var) {
        step = munn_walk(A, Word{static_cast<Letter>(t.index)});
      } else {
        auto it = sigma.find(S.vars()[t.index].name);
        if (it == sigma.end()) {
          throw std::invalid_argument("oracle: unassigned variable");
        }
        step = t.inverted ? inverse(A, it->second) : it->second;
      }
      acc = compose(A, acc, step);
    }
    return acc;
  }

  bool solves(TypedSystem const& S, OracleAssignment const& sigma) {
    return std::all_of(S.equations().begin(), S.equations().end(),
                       [&](TypedEquation const& e) {
                         return fold(S, sigma, e.lhs) == fold(S, sigma, e.rhs);
                       });
  }

  std::vector<Word> all_words(InvAlphabet const& A, int L) {
    std::vector<Word> out{Word{}};
    std::size_t       begin = 0;
    for (int n = 1; n <= L; ++n) {
      std::size_t end = out.size();
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t a = 0; a < A.size(); ++a) {
          Word w = out[i];
          w.push_back(static_cast<Letter>(a));
          out.push_back(w);
        }
      }
      begin = end;
    }
    return out;
  }

  std::vector<Word> all_reduced(InvAlphabet const& A, int L) {
    std::vector<Word> out;
    for (auto const& w : all_words(A, L)) {
      if (slow_reduce(A, w) == w) {
        out.push_back(w);
      }
    }
    return out;
  }

  std::vector<WordSet> all_trees(InvAlphabet const& A, int L) {
    std::vector<Word> words = all_reduced(A, L);
    std::vector<WordSet> out;
    WordSet              current{Word{}};
    // words[0] is eps; parents precede children.
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == words.size()) {
        out.push_back(current);
        return;
      }
      Word parent(words[i].begin(), words[i].end() - 1);
      if (current.count(parent) != 0) {
        current.insert(words[i]);
        self(self, i + 1);
        current.erase(words[i]);
      }
      self(self, i + 1);
    };
    rec(rec, 1);
    return out;
  }

  namespace {

    std::shared_ptr<IdempotentSearch::Trees const> cached_trees(
        InvAlphabet const& A, int L) {
      static std::vector<std::pair<std::pair<InvAlphabet, int>,
                                   std::shared_ptr<IdempotentSearch::Trees const>>>
          cache;
      for (auto const& [key, t] : cache) {
        if (key.first == A && key.second == L) {
          return t;
        }
      }
      auto t   = std::make_shared<IdempotentSearch::Trees>();
      t->sets  = all_trees(A, L);
      t->words = all_reduced(A, L);
      std::map<Word, std::size_t> pos;
      for (std::size_t i = 0; i < t->words.size(); ++i) {
        pos.emplace(t->words[i], i);
      }
      for (auto const& P : t->sets) {
        std::vector<std::size_t> m;
        for (auto const& w : P) {
          m.push_back(pos.at(w));
        }
        t->members.push_back(std::move(m));
      }
      cache.emplace_back(std::make_pair(A, L), t);
      return t;
    }

  }  // namespace

  IdempotentSearch::IdempotentSearch(TypedSystem const& S, int L)
      : _system(S), _trees(cached_trees(S.alphabet(), L)) {
    for (auto const& v : S.vars()) {
      if (v.kind != VarKind::idempotent) {
        throw std::invalid_argument("oracle: idempotent variables only");
      }
    }
  }

  namespace {

    //! One side: the walk of its constants and where the variables sit.
    struct Side {
      WordSet                                     constants;
      Word                                        end;
      std::vector<std::pair<Word, std::uint32_t>> occurrences;
    };

    Side analyse(InvAlphabet const& A, EqWord const& w) {
      Side s;
      s.constants.insert(Word{});
      for (auto const& t : w) {
        if (t.is_var) {
          s.occurrences.emplace_back(s.end, t.index);
          continue;
        }
        Letter a = static_cast<Letter>(t.index);
        if (!s.end.empty() && s.end.back() == A.bar(a)) {
          s.end.pop_back();
        } else {
          s.end.push_back(a);
        }
        s.constants.insert(s.end);
      }
      return s;
    }

  }  // namespace

  // Each side of each equation is a bit set over the vertices it visits.
  // Layout of a "row": for every equation, W words for the left side then W
  // for the right side.
  std::optional<OracleAssignment> IdempotentSearch::solve() const {
    InvAlphabet const& A     = _system.alphabet();
    std::size_t const  nvars = _system.vars().size();
    Trees const&       T     = *_trees;
    std::size_t const  ntree = T.sets.size();

    std::vector<std::pair<Side, Side>> sides;
    for (auto const& e : _system.equations()) {
      sides.emplace_back(analyse(A, e.lhs), analyse(A, e.rhs));
      if (sides.back().first.end != sides.back().second.end) {
        return std::nullopt;
      }
    }

    std::map<Word, std::size_t> index;
    auto bit = [&](Word const& w) {
      return index.emplace(w, index.size()).first->second;
    };
    // shift[g][i] = bit of g * words[i].
    std::map<Word, std::vector<std::size_t>> shift;
    for (auto const& [l, r] : sides) {
      for (auto const* s : {&l, &r}) {
        for (auto const& w : s->constants) {
          bit(w);
        }
        for (auto const& [g, v] : s->occurrences) {
          auto& row = shift[g];
          if (row.empty()) {
            for (auto const& p : T.words) {
              row.push_back(bit(mul(A, g, p)));
            }
          }
        }
      }
    }
    std::size_t const W   = (index.size() + 63) / 64;
    std::size_t const row = sides.size() * 2 * W;
    auto set = [&](std::uint64_t* r, std::size_t e, int side, std::size_t b) {
      r[(2 * e + static_cast<std::size_t>(side)) * W + b / 64] |=
          std::uint64_t{1} << (b % 64);
    };

    std::vector<std::uint64_t> base(row, 0);
    std::vector<std::vector<std::uint64_t>> contrib(nvars);
    std::vector<std::size_t>                active;
    for (std::size_t e = 0; e < sides.size(); ++e) {
      for (int side = 0; side < 2; ++side) {
        Side const& s = side == 0 ? sides[e].first : sides[e].second;
        for (auto const& w : s.constants) {
          set(base.data(), e, side, index.at(w));
        }
        for (auto const& [g, v] : s.occurrences) {
          auto& c = contrib[v];
          if (c.empty()) {
            c.assign(ntree * row, 0);
            active.push_back(v);
          }
          auto const& sh = shift.at(g);
          for (std::size_t t = 0; t < ntree; ++t) {
            for (std::size_t i : T.members[t]) {
              set(c.data() + t * row, e, side, sh[i]);
            }
          }
        }
      }
    }

    std::vector<std::size_t> choice(nvars, 0);
    auto found = [&] {
      OracleAssignment sigma;
      for (std::size_t v = 0; v < nvars; ++v) {
        sigma[_system.vars()[v].name] = Walk{T.sets[choice[v]], {}};
      }
      return sigma;
    };
    auto equal = [&](std::uint64_t const* acc) {
      for (std::size_t e = 0; e < sides.size(); ++e) {
        std::uint64_t const* l = acc + 2 * e * W;
        for (std::size_t i = 0; i < W; ++i) {
          if (l[i] != l[W + i]) {
            return false;
          }
        }
      }
      return true;
    };
    if (active.empty()) {
      return equal(base.data()) ? std::optional(found()) : std::nullopt;
    }

    // acc[d] = base | contributions of active[0..d).
    std::vector<std::vector<std::uint64_t>> acc(active.size() + 1, base);
    std::vector<std::uint64_t>              last(row);
    auto search = [&](auto&& self, std::size_t d) -> bool {
      std::size_t const v    = active[d];
      bool const        leaf = d + 1 == active.size();
      for (std::size_t t = 0; t < ntree; ++t) {
        std::uint64_t const* c = contrib[v].data() + t * row;
        std::uint64_t*       o = leaf ? last.data() : acc[d + 1].data();
        for (std::size_t i = 0; i < row; ++i) {
          o[i] = acc[d][i] | c[i];
        }
        choice[v] = t;
        if (leaf ? equal(o) : self(self, d + 1)) {
          return true;
        }
      }
      return false;
    };
    if (search(search, 0)) {
      return found();
    }
    return std::nullopt;
  }

  WordSet naive_eval(LangSystem const&     S,
                    LangTerm const&       t,
                    LangAssignment const& sigma,
                    Interp                interp) {
    InvAlphabet const& A = S.alphabet();
    auto norm = [&](Word w) {
      return interp == Interp::group ? slow_reduce(A, std::move(w)) : w;
    };
    WordSet out;
    for (auto const& c : t.constants) {
      out.insert(norm(c));
    }
    for (auto const& s : t.summands) {
      auto it = sigma.find(S.vars()[s.var]);
      if (it == sigma.end()) {
        continue;
      }
      for (auto const& w : it->second) {
        Word x = s.coef;
        x.insert(x.end(), w.begin(), w.end());
        out.insert(norm(std::move(x)));
      }
    }
    return out;
  }

  bool lang_holds(LangSystem const& S, LangAssignment const& sigma) {
    for (auto const& e : S.equations()) {
      std::vector<Interp> modes{S.interp()};
      if (e.marked && S.interp() != Interp::monoid) {
        modes.push_back(Interp::monoid);
      }
      for (Interp m : modes) {
        WordSet l = naive_eval(S, e.lhs, sigma, m);
        WordSet r = naive_eval(S, e.rhs, sigma, m);
        bool    ok = e.inequality
                         ? std::includes(r.begin(), r.end(), l.begin(),
                                         l.end(), fimeq::ShortLex{})
                         : l == r;
        if (!ok) {
          return false;
        }
      }
    }
    return true;
  }

  std::optional<LangAssignment>
  lang_search(LangSystem const& S, int L, LangSearchOptions opts) {
    InvAlphabet const& A = S.alphabet();
    std::size_t const  n = S.vars().size();
    std::vector<std::vector<WordSet>> candidates(n);
    double                            total = 1;
    for (std::uint32_t v = 0; v < n; ++v) {
      int  len = L + S.slack(v);
      auto universe = (opts.reduced || S.interp() == Interp::group)
                          ? all_reduced(A, len)
                          : all_words(A, len);
      if (universe.size() > 20) {
        throw std::invalid_argument("oracle: universe too large");
      }
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << universe.size());
           ++mask) {
        WordSet set;
        for (std::size_t i = 0; i < universe.size(); ++i) {
          if ((mask >> i) & 1U) {
            set.insert(universe[i]);
          }
        }
        if (opts.nonempty && set.empty()) {
          continue;
        }
        if (opts.prefix_closed) {
          bool closed = std::all_of(set.begin(), set.end(), [&](Word const& w) {
            return w.empty() || set.count(Word(w.begin(), w.end() - 1)) != 0;
          });
          if (!closed) {
            continue;
          }
        }
        candidates[v].push_back(std::move(set));
      }
      total *= static_cast<double>(candidates[v].size());
    }
    if (total > 5e7) {
      throw std::invalid_argument("oracle: search space too large");
    }
    std::vector<std::size_t> choice(n, 0);
    while (true) {
      LangAssignment sigma;
      for (std::uint32_t v = 0; v < n; ++v) {
        sigma[S.vars()[v]] = candidates[v][choice[v]];
      }
      if (lang_holds(S, sigma)) {
        return sigma;
      }
      std::size_t v = 0;
      while (v < n && ++choice[v] == candidates[v].size()) {
        choice[v] = 0;
        ++v;
      }
      if (v == n) {
        return std::nullopt;
      }
    }
  }

  Word random_word(std::mt19937_64&           rng,
                   std::vector<Letter> const& letters,
                   std::size_t                lo,
                   std::size_t                hi) {
    std::uniform_int_distribution<std::size_t> len(lo, hi);
    std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
    Word                                       w(len(rng));
    for (auto& a : w) {
      a = letters[pick(rng)];
    }
    return w;
  }

  Word random_reduced(std::mt19937_64& rng, InvAlphabet const& A, std::size_t n) {
    std::uniform_int_distribution<std::size_t> pick(0, A.size() - 1);
    Word                                       w;
    while (w.size() < n) {
      Letter a = static_cast<Letter>(pick(rng));
      if (w.empty() || w.back() != A.bar(a)) {
        w.push_back(a);
      }
    }
    return w;
  }

  long occurrences(Word const& u, Word const& p) {
    long c = 0;
    for (std::size_t i = 0; i + p.size() <= u.size(); ++i) {
      if (std::equal(p.begin(), p.end(), u.begin() + static_cast<long>(i))) {
        ++c;
      }
    }
    return c;
  }

}  // namespace oracle
