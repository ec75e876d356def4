// Compliance of a candidate component with an interface specification:
// variable-abstracted message-flow LTSs, backward trace extraction, and the
// per-method response check against Info.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "info.hpp"

namespace agc {

// Flow LTS of method m of actorM: states are (pending statements, queue of
// self-sent messages); assignments and both conditional branches are silent,
// external sends are labeled Snd(m')::y, self-sends enqueue. The result is
// weak-trace reduced; its end state (empty pending, empty queue) is marked
// via the theta slot. Throws std::runtime_error when the self-send queue
// exceeds actorM's own capacity.
Lts build_mf(const ActorDef& actorM, const std::string& m);

struct BackwardOutcome {
  bool overflow = false;
  std::set<Trace> traces;
};

// Depth-first backward traversal from the end state to the initial state,
// accumulating send labels; a trace violating the per-target capacity bound
// sets `overflow` and aborts with the traces found so far.
BackwardOutcome backward_traces(const Lts& mf,
                                const std::map<std::string, std::int64_t>& capacities);

struct ComplianceViolation {
  std::string method;
  Trace trace;          // offending response (empty for structural failures)
  std::string target;   // failing target actor, when applicable
  std::string detail;   // human-readable reason

  std::string text() const;  // "method=<m> trace=<z> target=<y>"
};

// Compliant iff every interface message (Info key) is a method of actorM
// whose backward traces all match some Info entry target-by-target.
std::optional<ComplianceViolation> check_compliance(const ActorDef& actorM,
                                                    const InfoSpec& info,
                                                    const Model& open_model);

// projection: messages of z sent to y, in order.
std::vector<std::string> project_trace(const Trace& z, const std::string& y);

}  // namespace agc
