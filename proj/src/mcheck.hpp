// Candidate-component checking: the wild-environment interaction LTS T_M,
// hiding of non-interface sends, trace inclusion against an assumption, and
// monolithic verification of a closed system for cross-validation.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "assume.hpp"
#include "compliance.hpp"

namespace agc {

// Complement actor M^c: capacity 1, variable l, single method m_c that
// nondeterministically sends one of M's messages, re-triggers itself, and
// resets l.
ActorDef synthesize_mc(const ActorDef& actorM);

// T_M: explore M composed with M^c and capacity-0 dummies for the open
// actors, then rename: M's take-steps keep their send sequences (empty ones
// become tau) and M^c's steps become Rcv(m).
Lts derive_tm(const ActorDef& actorM, const std::set<std::string>& o_ids,
              size_t state_cap = kDefaultStateCap);

// c3: within sequence labels drop sends outside the assumption alphabet;
// labels left empty become tau; Rcv labels pass through.
Lts hide_c3(const Lts& l, const std::vector<std::string>& alphabet_ta);

struct ComponentVerdict {
  enum class Kind { Accepted, RejectedNonCompliant, RejectedTraceEscape };
  Kind kind = Kind::Accepted;
  ComplianceViolation violation;  // RejectedNonCompliant
  Trace counterexample;           // RejectedTraceEscape
};

// Two-step check: compliance with Info, then trace inclusion of the hidden,
// flattened T_M in the assumption.
ComponentVerdict check_component(const ActorDef& actorM, const Model& open_model,
                                 const InfoSpec& info,
                                 const AssumptionOutcome& ta,
                                 size_t state_cap = kDefaultStateCap);

struct VerifyResult {
  bool holds = true;
  Trace witness;  // shortest label path into pi when violated
};

// Ground truth on a closed system: is pi unreachable in the property LTS?
VerifyResult verify_monolithic(const Model& closed, const ErrDfa& d,
                               size_t state_cap = kDefaultStateCap);

}  // namespace agc
