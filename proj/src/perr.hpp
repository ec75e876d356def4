// Safety error DFA (P_err): guard formulas over named send actions, the
// .perr text format, and on-the-fly composition of a model with the DFA
// into a property LTS with a single merged error state pi.
#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "semantics.hpp"

namespace agc {

struct GuardFormula;
using GuardPtr = std::shared_ptr<const GuardFormula>;

struct GuardFormula {
  enum class Kind { True, Atom, Not, And, Or };
  Kind kind = Kind::True;
  std::string atom;     // Kind::Atom: references ErrDfa::atoms by name
  GuardPtr lhs, rhs;    // Not uses lhs only

  static GuardPtr truth();
  static GuardPtr make_atom(std::string name);
  static GuardPtr negate(GuardPtr g);
  static GuardPtr conj(GuardPtr a, GuardPtr b);
  static GuardPtr disj(GuardPtr a, GuardPtr b);
};

// a |= g, with atoms resolved through `atoms`.
bool guard_satisfied(const GuardFormula& g,
                     const std::map<std::string, SendAction>& atoms,
                     const SendAction& a);

struct DfaEdge {
  int src = 0;
  GuardPtr guard;
  int dst = 0;
};

struct ErrDfa {
  int num_states = 0;  // includes pi
  int initial = 0;
  int pi = 0;
  std::map<std::string, SendAction> atoms;
  std::vector<DfaEdge> edges;
};

// Thrown on malformed or invalid .perr input.
struct PerrError {
  std::string message;
  std::string what() const { return message; }
};

// Parse and validate (determinism + totality over each atom's action and a
// representative non-atom action, for every non-pi state).
ErrDfa parse_perr(const std::string& text);

// Unique successor of q under action a (q must not be pi).
int dfa_step(const ErrDfa& d, int q, const SendAction& a);

// Property LTS: reachable (GlobalState, dfa state) pairs plus one merged pi
// state. The DFA advances on every send of a take-step in statement order; a
// step whose send prefix reaches pi becomes a transition into pi labeled
// with the taker and that prefix, and pi is not expanded. Sends listed in
// `dfa_silent` stay in the labels but do not advance the DFA; assumption
// generation uses this for the synthetic chain self-sends of the interface
// actor, which have no counterpart in any real composition.
Lts compose_property_lts(const Model& m, const ErrDfa& d,
                         size_t state_cap = kDefaultStateCap,
                         const std::set<SendAction>& dfa_silent = {});

}  // namespace agc
