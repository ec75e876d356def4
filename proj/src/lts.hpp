// Generic labeled transition systems and the algebra used by the
// assumption-generation pipeline: renaming, chain reconfiguration (psi),
// weak-trace reduction, backward pi propagation, determinization/completion,
// trace inclusion, and Aldebaran (.aut) / DOT serialization.
#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace agc {

inline const std::string kTau = "tau";

struct Lts {
  int initial = 0;
  int pi = -1;     // error state, no outgoing transitions
  int theta = -1;  // completion sink
  std::vector<std::string> labels;
  // adj[s] = list of (label index, dst), kept sorted by (label text, dst).
  std::vector<std::vector<std::pair<int, int>>> adj;

  int add_state();
  int label_id(const std::string& text);          // interns
  const std::string& label(int id) const { return labels[id]; }
  void add_transition(int src, const std::string& label, int dst);
  void sort_edges();  // restore (label text, dst) edge order after edits

  size_t num_states() const { return adj.size(); }
  size_t num_transitions() const;
  bool has_label(int state, const std::string& text) const;
};

using Trace = std::vector<std::string>;

std::string format_trace(const Trace& t);

// --- construction/compare helpers -----------------------------------------

// Breadth-first renumbering with successors visited in (label text, dst)
// order; unreachable states dropped. Canonical form for golden comparisons.
Lts canonical_renumber(const Lts& l);

// Structural equality (same numbering, labels, transitions, markers).
bool lts_equal(const Lts& a, const Lts& b);

// Isomorphism via canonical renumbering of both sides.
bool lts_isomorphic(const Lts& a, const Lts& b);

// --- pipeline operators -----------------------------------------------------

Lts rename(const Lts& l, const std::function<std::string(const std::string&)>& f);

// Split compound labels (comma-separated action sequences) into chains of
// fresh intermediate states carrying one action each; "tau" kept as is.
// Used both by psi (after coarse labels have been mapped to action text) and
// for flattening candidate LTSs before trace comparison.
Lts split_compound_labels(const Lts& l);

// Weak-trace reduction: collapses tau-cycles, contracts states whose only
// transition is a single tau, and merges states with identical outgoing
// edge sets. Trace language and error traces are preserved.
Lts reduce_weak_trace(const Lts& l);

struct BackwardResult {
  Lts lts;
  bool initial_is_pi = false;
};

// Merge every state that reaches pi via tau-only paths into pi, then prune
// states that are not backward-reachable from pi (the initial state is kept).
BackwardResult backward_propagate_pi(const Lts& l);

bool pi_reachable(const Lts& l);

// Subset construction over `alphabet` (tau-closure), completion to a theta
// sink; subsets containing pi collapse to a single pi state with no outgoing
// transitions. Deterministic BFS ordering.
Lts determinize_complete(const Lts& l, const std::vector<std::string>& alphabet);

// Language-preserving DFA minimization (Moore partition refinement) of a
// deterministic automaton in which pi is the only rejecting state. Keeps the
// pi/theta markers. Input must be total over its own label set.
Lts minimize_dfa(const Lts& l);

// Delete pi and its incoming transitions.
Lts remove_pi(const Lts& l);

struct InclusionResult {
  bool holds = true;
  Trace counterexample;  // shortest, then lexicographically least
};

// Tr(cand) ⊆ Tr(ta)? `ta` must be deterministic; tau on `cand` is read as
// epsilon. Labels of cand must be single actions (flatten first).
InclusionResult trace_included(const Lts& cand, const Lts& ta);

// All traces of length ≤ n (tau skipped), for brute-force oracles.
std::set<Trace> traces_upto(const Lts& l, size_t n);

// Error traces (ending in pi) of length ≤ n.
std::set<Trace> error_traces_upto(const Lts& l, size_t n);

// --- serialization ----------------------------------------------------------

void write_aut(const Lts& l, const std::string& path);
Lts read_aut(const std::string& path);
void write_dot(const Lts& l, const std::string& path);

// .meta sidecar path for a given .aut path.
std::string meta_path_for(const std::string& aut_path);

// Alphabet metadata round-trips through the .meta sidecar (alphabet= line).
void write_aut_with_alphabet(const Lts& l, const std::string& path,
                             const std::vector<std::string>& alphabet);
std::vector<std::string> read_meta_alphabet(const std::string& aut_path);

}  // namespace agc
