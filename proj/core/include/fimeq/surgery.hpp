#ifndef FIMEQ_SURGERY_HPP
#define FIMEQ_SURGERY_HPP

#include <string>
#include <variant>
#include <vector>

#include "fimeq/langeq.hpp"
#include "fimeq/typed.hpp"

namespace fimeq {

  //! One stage of the hardness chain.
  struct SurgeryReport {
    std::string                            stage;
    LangSystem                             input;
    std::variant<LangSystem, TypedSystem> output;
    std::vector<std::string>               fresh;
  };

  // X#0 = 1 together with inequalities a X <= b Y + c Z where a, b, c are
  // words of length <= 1 over B. Coefficients longer than one letter are
  // split through fresh variables [vX] = vX. Sat-equivalent to S over the
  // free monoid. Requires the monoid interpretation.
  LangSystem normalize_s1(LangSystem const& S);

  // Replaces X#0 = 1 by X#0 = 1 + d, d the first letter of B, and each
  // a X <= b Y + c Z by a X <= a + b Y + c Z. Every variable gets one more
  // unit of slack.
  LangSystem pad_s2(LangSystem const& S1);

  // sigma'(X) = 1 + pref(sigma(X) d): solutions of S1 to nonempty
  // prefix-closed solutions of pad_s2(S1).
  LangAssignment pad_forward(LangSystem const&     S1,
                             LangAssignment const& sigma);

  // sigma(X) = { u : u d in sigma'(X) }.
  LangAssignment pad_backward(LangSystem const&     S2,
                              LangAssignment const& sigma);

  // Two equations: the combined system L + sum u_i X_i = K + sum v_j X_j
  // with nonempty coefficients, and the control equation
  // 1 + Z + sum_b bZ + sum_k X_k = 1 + sum_b bZ with Z = Z#ctl. Needs at
  // least two letters in B.
  LangSystem alphabet_control(LangSystem const& S2);

  // The variable of alphabet_control's control equation.
  inline constexpr char const* control_var = "Z#ctl";

  // W(T) = prod_{u in L} u ~u . prod_i u_i X_i ~u_i for each side of the
  // two equations, with idempotent X_i.
  TypedSystem fim_encode(LangSystem const& Sprime);

  // normalize_s1, pad_s2, alphabet_control, fim_encode in sequence.
  struct HardnessChain {
    TypedSystem                result;
    std::vector<SurgeryReport> reports;
  };

  HardnessChain full_hardness_chain(LangSystem const& S);

}  // namespace fimeq

#endif  // FIMEQ_SURGERY_HPP
