// Assumption generation: hiding of internal open-system communication,
// chain reconfiguration, and the end-to-end pipeline producing the
// weakest-assumption automaton (or an early AlwaysHolds/NeverHolds verdict).
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "info.hpp"
#include "perr.hpp"

namespace agc {

// h: drop from each coarse label the sends the taker's side keeps internal.
// The missing component (m_id) hides its self-chains; open-system actors
// (o_ids) hide their sends to each other, leaving only traffic with m_id.
Lts hide_internal_c1(const Lts& l, const std::set<std::string>& o_ids,
                     const std::string& m_id);

// psi: O-to-M send sequences become chains of Rcv(m_i) through fresh states;
// single M-to-O sends become Snd(m)::y; empty labels become tau. Throws
// std::runtime_error on labels outside these shapes.
Lts reconfigure_psi(const Lts& l, const std::set<std::string>& o_ids,
                    const std::string& m_id);

struct AssumeConfig {
  size_t state_cap = kDefaultStateCap;
  std::optional<std::int64_t> infm_capacity;
  bool trace_pipeline = false;
  std::string trace_dir;  // where intermediate .aut files go when tracing
};

struct PipelineTrace {
  // (stage name, snapshot) in pipeline order.
  std::vector<std::pair<std::string, Lts>> stages;
};

struct AssumptionOutcome {
  enum class Kind { AlwaysHolds, NeverHolds, Assumption };
  Kind kind = Kind::Assumption;
  Lts ta;                             // deterministic, tau- and pi-free
  std::vector<std::string> alphabet;  // alpha(T_A), sorted
  PipelineTrace trace;                // populated when config.trace_pipeline
};

// Full pipeline. `infm_override` replaces the synthesized InfM when given.
AssumptionOutcome generate_assumption(const Model& open_model,
                                      const InfoSpec& info, const ErrDfa& d,
                                      const std::optional<ActorDef>& infm_override,
                                      const AssumeConfig& config = {});

// The assumption alphabet: Rcv(m) for every externally receivable method of
// the interface actor (synthesized chain methods excluded) plus every send
// action occurring in Info responses.
std::vector<std::string> assumption_alphabet(const InfoSpec& info,
                                             const ActorDef& infm);

}  // namespace agc
