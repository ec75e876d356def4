// Interface specifications (Info): parsing, response-shuffle computation,
// and synthesis of the over-approximating interface actor InfM.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ast.hpp"
#include "semantics.hpp"

namespace agc {

// One response: a message sequence delivered to one target actor.
struct InfoResponse {
  std::vector<std::string> messages;
  std::string target;

  bool operator==(const InfoResponse& o) const {
    return messages == o.messages && target == o.target;
  }
};

// One (m, I) entry; multiple entries for the same m are kept separate.
struct InfoEntry {
  std::string message;
  std::vector<InfoResponse> responses;
};

struct InfoSpec {
  std::string component_id;  // the missing component the spec describes
  std::vector<InfoEntry> entries;  // file order

  std::vector<std::string> warnings;  // non-fatal findings from parsing
};

struct InfoError {
  std::string message;
  std::string what() const { return message; }
};

// Parse and validate a .info text against the open model. The missing
// component id is taken from the open model's undeclared send targets.
InfoSpec parse_info(const std::string& text, const Model& open_model);

// All cross-target interleavings of the responses, each a send-statement
// sequence; per-target message order is preserved. shuffle of an empty
// response set is empty.
std::vector<std::vector<SendAction>> shuffle(
    const std::vector<InfoResponse>& responses);

// Interleavings of two single sequences (order within each preserved).
std::vector<std::vector<SendAction>> hshuffle(
    const std::vector<SendAction>& a, const std::vector<SendAction>& b);

// Build the InfM actor: one method per distinct message, nondeterministic
// dispatch over entries and shuffles, send chains threaded through
// self-sends with chain methods named m__j_i_g. Single-alternative
// nondeterminism is elided and length-1 chains are inlined. Capacity
// defaults to (sum of open-model capacities + number of main sends).
ActorDef synthesize_infm(const InfoSpec& info, const Model& open_model,
                         std::optional<std::int64_t> capacity = std::nullopt);

}  // namespace agc
