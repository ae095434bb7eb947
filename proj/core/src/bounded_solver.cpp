#include <array>
#include <algorithm>
#include <map>

#include "fimeq/error.hpp"
#include "fimeq/langeq_solver.hpp"
#include "solver_detail.hpp"

namespace fimeq {

  char const* to_string(Status s) noexcept {
    switch (s) {
      case Status::sat:
        return "SAT";
      case Status::unsat_within_bound:
        return "UNSAT_WITHIN_BOUND";
      case Status::unknown:
        break;
    }
    return "UNKNOWN";
  }

  std::vector<Word>
  words_up_to(InvAlphabet const& A, std::size_t n, bool reduced) {
    std::vector<Word> out{Word{}};
    std::size_t       level = 0;
    for (std::size_t len = 1; len <= n; ++len) {
      std::size_t const end = out.size();
      for (std::size_t i = level; i < end; ++i) {
        for (Letter a = 0; a < A.size(); ++a) {
          if (reduced && !out[i].empty() && out[i].back() == A.bar(a)) {
            continue;
          }
          Word w = out[i];
          w.push_back(a);
          out.push_back(std::move(w));
        }
      }
      level = end;
    }
    return out;
  }

  std::vector<Word> words_up_to(std::vector<Letter> const& letters,
                                std::size_t                n) {
    std::vector<Word> out{Word{}};
    std::size_t       level = 0;
    for (std::size_t len = 1; len <= n; ++len) {
      std::size_t const end = out.size();
      for (std::size_t i = level; i < end; ++i) {
        for (Letter a : letters) {
          Word w = out[i];
          w.push_back(a);
          out.push_back(std::move(w));
        }
      }
      level = end;
    }
    return out;
  }

  namespace {

    std::vector<Letter> monoid_letters(LangSystem const& S) {
      std::vector<Letter> out = S.coefficient_letters();
      auto add = [&](Word const& w) {
        out.insert(out.end(), w.begin(), w.end());
      };
      for (auto const& e : S.equations()) {
        for (LangTerm const* t : {&e.lhs, &e.rhs}) {
          for (auto const& c : t->constants) {
            add(c);
          }
          for (auto const& m : t->summands) {
            add(m.coef);
          }
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }

    struct Source {
      std::uint32_t var;
      std::uint32_t index;
    };

    struct Elem {
      std::array<std::uint32_t, 2>        count{0, 0};
      std::array<bool, 2>                 constant{false, false};
      std::array<std::vector<Source>, 2> sources;

      bool live(int side) const {
        return constant[side] || count[side] > 0;
      }
    };

    struct Instance {
      bool              inequality;
      std::vector<Elem> elems;
    };

    struct Occurrence {
      std::uint32_t inst;
      std::uint32_t elem;
      int           side;
    };

    class Eliminator {
     public:
      Eliminator(LangSystem const&        S,
                 SolverBudget const&      budget,
                 BruteForceOptions const& opts,
                 detail::Deadline const&  deadline)
          : _S(S), _opts(opts), _deadline(deadline) {
        build_universe(budget);
      }

      Verdict run();

     private:
      void build_universe(SolverBudget const& budget);
      void build_instances();
      void add_instance(LangEquation const& e, Interp interp);
      bool check(std::uint32_t inst, std::uint32_t elem);
      bool kill(Source s);
      bool drain();

      LangSystem const&        _S;
      BruteForceOptions const& _opts;
      detail::Deadline const&  _deadline;

      std::size_t                                 _total = 0;
      bool                                        _too_big = false;
      std::vector<std::vector<Word>>              _universe;
      std::vector<std::vector<char>>              _alive;
      std::vector<std::vector<std::vector<std::uint32_t>>> _children;
      std::vector<std::vector<std::vector<Occurrence>>>    _occ;
      std::vector<Instance>                       _instances;
      std::vector<Source>                         _kill_stack;
      std::vector<std::pair<std::uint32_t, std::uint32_t>> _check_stack;
      bool                                        _unsat   = false;
      bool                                        _timeout = false;
      std::size_t                                 _steps   = 0;
      std::size_t                                 _removed = 0;
    };

    void Eliminator::build_universe(SolverBudget const& budget) {
      InvAlphabet const& A       = _S.alphabet();
      bool const         reduced = _S.interp() == Interp::group
                           || _opts.reduced_universe;
      std::vector<Letter> letters;
      if (!reduced && !_S.coeffs_over().empty()) {
        letters = monoid_letters(_S);
      }
      std::size_t const width = letters.empty() ? A.size() : letters.size();
      std::map<std::size_t, std::vector<Word>> cache;
      std::size_t const                        nv = _S.vars().size();
      _universe.resize(nv);
      _alive.resize(nv);
      _children.resize(nv);
      _occ.resize(nv);
      for (std::uint32_t v = 0; v < nv; ++v) {
        int const   b = budget.max_len + _S.slack(v);
        std::size_t n = b < 0 ? 0 : static_cast<std::size_t>(b);
        auto        it = cache.find(n);
        if (it == cache.end()) {
          // Estimate the size before materialising anything.
          double est = 0, level = 1;
          for (std::size_t k = 0; k <= n; ++k) {
            est += level;
            level *= (k == 0 || !reduced) ? width : width - 1;
          }
          if (est + _total > static_cast<double>(budget.max_universe)) {
            _too_big = true;
            return;
          }
          it = cache
                   .emplace(n, letters.empty() ? words_up_to(A, n, reduced)
                                               : words_up_to(letters, n))
                   .first;
        }
        _universe[v] = it->second;
        _total += _universe[v].size();
        if (_total > budget.max_universe) {
          _too_big = true;
          return;
        }
        _alive[v].assign(_universe[v].size(), 1);
        _occ[v].resize(_universe[v].size());
        if (_opts.prefix_closed) {
          std::map<Word, std::uint32_t, ShortLex> index;
          for (std::uint32_t j = 0; j < _universe[v].size(); ++j) {
            index.emplace(_universe[v][j], j);
          }
          _children[v].resize(_universe[v].size());
          for (std::uint32_t j = 1; j < _universe[v].size(); ++j) {
            Word parent = _universe[v][j];
            parent.pop_back();
            _children[v][index.at(parent)].push_back(j);
          }
        }
      }
    }

    void Eliminator::add_instance(LangEquation const& e, Interp interp) {
      InvAlphabet const& A    = _S.alphabet();
      auto const         inst = static_cast<std::uint32_t>(_instances.size());
      _instances.push_back(Instance{e.inequality, {}});
      std::map<Word, std::uint32_t, ShortLex> ids;
      auto id = [&](Word w) {
        if (interp == Interp::group) {
          w = reduce(A, w);
        }
        auto [it, fresh] = ids.emplace(
            std::move(w),
            static_cast<std::uint32_t>(_instances[inst].elems.size()));
        if (fresh) {
          _instances[inst].elems.emplace_back();
        }
        return it->second;
      };
      LangTerm const* sides[2] = {&e.lhs, &e.rhs};
      for (int side = 0; side < 2; ++side) {
        for (auto const& c : sides[side]->constants) {
          _instances[inst].elems[id(c)].constant[side] = true;
        }
        for (auto const& s : sides[side]->summands) {
          auto const& U = _universe[s.var];
          for (std::uint32_t j = 0; j < U.size(); ++j) {
            std::uint32_t el = id(concat(s.coef, U[j]));
            Elem&         E  = _instances[inst].elems[el];
            E.count[side]++;
            E.sources[side].push_back(Source{s.var, j});
            _occ[s.var][j].push_back(Occurrence{inst, el, side});
          }
        }
      }
      for (std::uint32_t el = 0; el < _instances[inst].elems.size(); ++el) {
        _check_stack.emplace_back(inst, el);
      }
    }

    void Eliminator::build_instances() {
      for (auto const& e : _S.equations()) {
        add_instance(e, _S.interp());
        if (e.marked && _S.interp() != Interp::monoid) {
          add_instance(e, Interp::monoid);
        }
      }
    }

    // False on a contradiction with a constant.
    bool Eliminator::check(std::uint32_t inst, std::uint32_t elem) {
      Instance& I = _instances[inst];
      Elem&     E = I.elems[elem];
      for (int side = 0; side < 2; ++side) {
        bool const needs = side == 0 || !I.inequality;
        if (!needs || !E.live(side) || E.live(1 - side)) {
          continue;
        }
        if (E.constant[side]) {
          return false;
        }
        for (auto const& s : E.sources[side]) {
          _kill_stack.push_back(s);
        }
      }
      return true;
    }

    bool Eliminator::kill(Source s) {
      if (!_alive[s.var][s.index]) {
        return true;
      }
      _alive[s.var][s.index] = 0;
      ++_removed;
      for (auto const& o : _occ[s.var][s.index]) {
        Elem& E = _instances[o.inst].elems[o.elem];
        if (--E.count[o.side] == 0 && !E.constant[o.side]) {
          _check_stack.emplace_back(o.inst, o.elem);
        }
      }
      if (_opts.prefix_closed) {
        for (std::uint32_t c : _children[s.var][s.index]) {
          _kill_stack.push_back(Source{s.var, c});
        }
      }
      return true;
    }

    bool Eliminator::drain() {
      while (!_kill_stack.empty() || !_check_stack.empty()) {
        if ((++_steps & 0xfff) == 0 && _deadline.expired()) {
          _timeout = true;
          return false;
        }
        if (!_kill_stack.empty()) {
          Source s = _kill_stack.back();
          _kill_stack.pop_back();
          kill(s);
          continue;
        }
        auto [inst, el] = _check_stack.back();
        _check_stack.pop_back();
        if (!check(inst, el)) {
          _unsat = true;
          return false;
        }
      }
      return true;
    }

    Verdict Eliminator::run() {
      Verdict out;
      if (_too_big) {
        out.trace.push_back("brute_force: candidate universe exceeds budget");
        return out;
      }
      build_instances();
      drain();
      out.trace.push_back("brute_force: " + std::to_string(_total)
                          + " candidates, " + std::to_string(_removed)
                          + " eliminated");
      if (_timeout) {
        out.trace.push_back("brute_force: time limit");
        return out;
      }
      if (_unsat) {
        out.status = Status::unsat_within_bound;
        return out;
      }
      LangAssignment sigma;
      for (std::uint32_t v = 0; v < _S.vars().size(); ++v) {
        WordSet& set = sigma[_S.vars()[v]];
        for (std::uint32_t j = 0; j < _universe[v].size(); ++j) {
          if (_alive[v][j]) {
            set.insert(_universe[v][j]);
          }
        }
        if (_opts.nonempty && set.empty()) {
          out.status = Status::unsat_within_bound;
          return out;
        }
      }
      if (!holds(_S, sigma)) {
        throw Error("brute_force: elimination fixpoint is not a solution");
      }
      out.status  = Status::sat;
      out.witness = std::move(sigma);
      return out;
    }

  }  // namespace

  Verdict detail::brute_force(LangSystem const&        S,
                              SolverBudget const&      budget,
                              BruteForceOptions const& opts,
                              Deadline const&          deadline) {
    if (budget.max_len < 0) {
      throw InvalidInput("max_len must be nonnegative");
    }
    return Eliminator(S, budget, opts, deadline).run();
  }

  Verdict brute_force(LangSystem const&        S,
                      SolverBudget const&      budget,
                      BruteForceOptions const& opts) {
    return detail::brute_force(
        S, budget, opts, detail::Deadline(budget.time_limit));
  }

}  // namespace fimeq
