// Coarse operational semantics for AML models: global states, the initial
// configuration derived from the main block, atomic take-steps (one
// transition per taker and complete send sequence), and bounded
// breadth-first state-space exploration.
#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "ast.hpp"
#include "lts.hpp"

namespace agc {

// A single send action, printed "Snd(<message>)::<receiver>".
struct SendAction {
  std::string message;
  std::string receiver;

  bool operator==(const SendAction& o) const {
    return message == o.message && receiver == o.receiver;
  }
  bool operator<(const SendAction& o) const {
    if (message != o.message) return message < o.message;
    return receiver < o.receiver;
  }
  std::string text() const { return "Snd(" + message + ")::" + receiver; }
};

// Label of a coarse transition: the taking actor and the complete sequence
// of send actions its body performed, in statement order.
struct CoarseLabel {
  std::string taker;
  std::vector<SendAction> sends;

  // "(t_<taker>, <Snd(a)::x,Snd(b)::y>)"; empty sequence prints "<>".
  std::string text() const;
};

CoarseLabel parse_coarse_label(const std::string& text);

// ---------------------------------------------------------------------------
// Global states
// ---------------------------------------------------------------------------

struct ActorState {
  std::vector<Value> vars;          // aligned with ActorDef::vars
  std::deque<std::string> mailbox;  // FIFO of method names
};

struct GlobalState {
  std::vector<ActorState> actors;  // aligned with ModelIndex order

  std::string key() const;  // canonical serialization for interning
};

// Resolved view of a model: actor order fixed, ids resolved to indices.
struct ModelIndex {
  const Model* model = nullptr;
  std::map<std::string, int> actor_index;

  explicit ModelIndex(const Model& m);
  const ActorDef& actor(int i) const { return model->actors[i]; }
  int index_of(const std::string& id) const;  // -1 when unknown
  size_t num_actors() const { return model->actors.size(); }
};

// Initial configuration: all variables 0, each mailbox holding the messages
// the main block sends to that actor, in main-block order. Throws AmlError
// if the main block overfills a finite mailbox.
GlobalState initial_state(const ModelIndex& mi);

// All coarse successors of `g`, sorted by label text. Each entry is one
// complete take-step (taker pops its mailbox head, the method body runs
// atomically under one nondeterministic resolution). A send into a full
// finite mailbox blocks that resolution; sends to capacity-0 actors always
// succeed and are discarded (the send action is still recorded).
struct Successor {
  CoarseLabel label;
  GlobalState state;
};
std::vector<Successor> successors(const ModelIndex& mi, const GlobalState& g);

// Thrown when exploration exceeds the state cap.
struct StateCapExceeded {
  size_t cap = 0;
  std::string what() const;
};

inline constexpr size_t kDefaultStateCap = 1000000;

// Reachable coarse state space; states numbered breadth-first with
// successors in label-text order.
Lts explore(const Model& m, size_t state_cap = kDefaultStateCap);

}  // namespace agc
