#ifndef FIMEQ_JSON_IO_HPP
#define FIMEQ_JSON_IO_HPP

#include <nlohmann/json.hpp>

#include "fimeq/idempotent.hpp"
#include "fimeq/langeq_solver.hpp"
#include "fimeq/onevar.hpp"
#include "fimeq/surgery.hpp"

//! JSON mirrors of the model types. Words are strings in the letter names
//! of the alphabet ("eps" for the empty word). Every *_from_json function
//! throws InvalidInput on malformed documents and inverts the matching
//! to_json.

namespace fimeq {

  using nlohmann::json;

  json        to_json(InvAlphabet const& A);
  InvAlphabet alphabet_from_json(json const& j);

  json        to_json(TypedSystem const& S);
  TypedSystem typed_system_from_json(json const& j);

  json       to_json(LangSystem const& S);
  LangSystem lang_system_from_json(json const& j);

  json           to_json(InvAlphabet const& A, ScheiblichPair const& x);
  ScheiblichPair pair_from_json(InvAlphabet const& A, json const& j);

  // Pairs as {"P": [...], "g": w}; reduced words as {"reduced": w}.
  json       to_json(InvAlphabet const& A, Assignment const& s);
  Assignment assignment_from_json(InvAlphabet const& A, json const& j);

  json           to_json(InvAlphabet const& A, LangAssignment const& s);
  LangAssignment lang_assignment_from_json(InvAlphabet const& A,
                                           json const&        j);

  json to_json(LangSystem const& S, Verdict const& v);
  json to_json(InvAlphabet const& A, FimVerdict const& v);
  json to_json(InvAlphabet const& A, OnevarVerdict const& v);
  json to_json(SurgeryReport const& r);

}  // namespace fimeq

#endif  // FIMEQ_JSON_IO_HPP
