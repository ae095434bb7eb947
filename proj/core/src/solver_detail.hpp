#ifndef FIMEQ_SRC_SOLVER_DETAIL_HPP
#define FIMEQ_SRC_SOLVER_DETAIL_HPP

#include "deadline.hpp"
#include "fimeq/langeq_solver.hpp"

namespace fimeq::detail {

  Verdict brute_force(LangSystem const&        S,
                      SolverBudget const&      budget,
                      BruteForceOptions const& opts,
                      Deadline const&          deadline);

}  // namespace fimeq::detail

#endif  // FIMEQ_SRC_SOLVER_DETAIL_HPP
