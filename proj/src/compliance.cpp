// Message-flow construction and the compliance decision procedure.
#include "compliance.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace agc {

namespace {

// A flow state: flattened pending statements (pointers into the actor's
// AST, stable for the lifetime of the check) and the self-send queue.
struct FlowState {
  std::vector<const Stmt*> pending;
  std::vector<std::string> queue;

  std::string key() const {
    std::ostringstream os;
    for (const Stmt* s : pending) os << s << ";";
    os << "/";
    for (const auto& m : queue) os << m << ",";
    return os.str();
  }
};

}  // namespace

Lts build_mf(const ActorDef& actorM, const std::string& m) {
  const Method* entry = actorM.find_method(m);
  if (!entry)
    throw std::runtime_error("actor '" + actorM.id + "' has no method '" + m +
                             "'");
  auto body_of = [&](const std::string& name) -> std::vector<const Stmt*> {
    const Method* meth = actorM.find_method(name);
    if (!meth)
      throw std::runtime_error("self-send to unknown method '" + name + "'");
    std::vector<const Stmt*> out;
    for (const auto& st : meth->body) out.push_back(&st);
    return out;
  };

  Lts lts;
  std::unordered_map<std::string, int> ids;
  std::deque<FlowState> queue;
  FlowState init;
  init.queue.push_back(m);
  ids.emplace(init.key(), lts.add_state());
  lts.initial = 0;
  queue.push_back(std::move(init));

  FlowState end;  // (empty, empty)
  auto intern = [&](FlowState f) {
    auto [it, inserted] = ids.emplace(f.key(), -1);
    if (inserted) {
      it->second = lts.add_state();
      queue.push_back(std::move(f));
    }
    return it->second;
  };

  while (!queue.empty()) {
    FlowState f = queue.front();
    queue.pop_front();
    int src = ids.at(f.key());
    if (f.pending.empty()) {
      if (f.queue.empty()) continue;  // end state, no outgoing
      // Inv: take the queue head and run its body.
      FlowState next;
      next.pending = body_of(f.queue.front());
      next.queue.assign(f.queue.begin() + 1, f.queue.end());
      lts.add_transition(src, kTau, intern(std::move(next)));
      continue;
    }
    const Stmt& st = *f.pending.front();
    FlowState rest;
    rest.pending.assign(f.pending.begin() + 1, f.pending.end());
    rest.queue = f.queue;
    switch (st.kind) {
      case Stmt::Kind::Assign:
      case Stmt::Kind::NonDet:
        // Variables are abstracted away: silent step.
        lts.add_transition(src, kTau, intern(std::move(rest)));
        break;
      case Stmt::Kind::Cond: {
        // Both branches, silently.
        for (const StmtList* branch : {&st.then_branch, &st.else_branch}) {
          FlowState next;
          for (const auto& bs : *branch) next.pending.push_back(&bs);
          next.pending.insert(next.pending.end(), rest.pending.begin(),
                              rest.pending.end());
          next.queue = rest.queue;
          lts.add_transition(src, kTau, intern(std::move(next)));
        }
        break;
      }
      case Stmt::Kind::Send: {
        bool to_self = st.target == "self" || st.target == actorM.id;
        if (to_self) {
          rest.queue.push_back(st.message);
          if (static_cast<std::int64_t>(rest.queue.size()) > actorM.capacity)
            throw std::runtime_error(
                "unbounded self-send: flow queue of method '" + m +
                "' exceeds capacity " + std::to_string(actorM.capacity));
          lts.add_transition(src, kTau, intern(std::move(rest)));
        } else {
          lts.add_transition(src, SendAction{st.message, st.target}.text(),
                             intern(std::move(rest)));
        }
        break;
      }
    }
  }
  // Mark the end state through the theta slot so reduction keeps it apart.
  auto end_it = ids.find(end.key());
  if (end_it != ids.end()) lts.theta = end_it->second;
  lts.sort_edges();
  return reduce_weak_trace(lts);
}

// ---------------------------------------------------------------------------
// Backward traversal
// ---------------------------------------------------------------------------

namespace {

bool is_wellformed(const Trace& z,
                   const std::map<std::string, std::int64_t>& capacities) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& a : z) {
    // Labels here are single send actions "Snd(msg)::receiver".
    size_t close = a.find(')');
    size_t sep = a.find("::");
    SendAction act{a.substr(4, close - 4), a.substr(sep + 2)};
    std::int64_t& c = counts[act.receiver];
    ++c;
    auto it = capacities.find(act.receiver);
    std::int64_t cap = it == capacities.end() ? 0 : it->second;
    if (c > cap) return false;
  }
  return true;
}

struct BackwardCtx {
  const Lts* mf;
  const std::map<std::string, std::int64_t>* capacities;
  std::vector<std::vector<std::pair<int, int>>> pred;  // (label, src)
  BackwardOutcome out;
  std::vector<bool> on_path;
  bool aborted = false;

  void dfs(int state, Trace suffix) {
    if (aborted) return;
    if (!is_wellformed(suffix, *capacities)) {
      out.overflow = true;
      aborted = true;
      return;
    }
    if (state == mf->initial) out.traces.insert(suffix);
    on_path[state] = true;
    for (const auto& [lid, src] : pred[state]) {
      if (on_path[src]) continue;  // cycle guard
      Trace next = suffix;
      if (mf->labels[lid] != kTau)
        next.insert(next.begin(), mf->labels[lid]);
      dfs(src, std::move(next));
      if (aborted) break;
    }
    on_path[state] = false;
  }
};

}  // namespace

BackwardOutcome backward_traces(
    const Lts& mf, const std::map<std::string, std::int64_t>& capacities) {
  if (mf.theta < 0) {
    // No end state: the method never finishes processing; no finite traces.
    return {};
  }
  BackwardCtx ctx;
  ctx.mf = &mf;
  ctx.capacities = &capacities;
  ctx.pred.resize(mf.num_states());
  for (size_t s = 0; s < mf.num_states(); ++s)
    for (const auto& [lid, dst] : mf.adj[s])
      ctx.pred[dst].emplace_back(lid, static_cast<int>(s));
  ctx.on_path.assign(mf.num_states(), false);
  ctx.dfs(mf.theta, {});
  return std::move(ctx.out);
}

// ---------------------------------------------------------------------------
// Compliance
// ---------------------------------------------------------------------------

std::vector<std::string> project_trace(const Trace& z, const std::string& y) {
  std::vector<std::string> out;
  for (const auto& a : z) {
    size_t close = a.find(')');
    size_t sep = a.find("::");
    if (sep != std::string::npos && a.substr(sep + 2) == y)
      out.push_back(a.substr(4, close - 4));
  }
  return out;
}

std::string ComplianceViolation::text() const {
  std::string out = "method=" + method + " trace=<" + format_trace(trace) +
                    "> target=" + target;
  if (!detail.empty()) out += " (" + detail + ")";
  return out;
}

std::optional<ComplianceViolation> check_compliance(const ActorDef& actorM,
                                                    const InfoSpec& info,
                                                    const Model& open_model) {
  std::map<std::string, std::int64_t> capacities;
  for (const auto& a : open_model.actors) capacities[a.id] = a.capacity;

  // Distinct interface messages in file order.
  std::vector<std::string> keys;
  for (const auto& e : info.entries)
    if (std::find(keys.begin(), keys.end(), e.message) == keys.end())
      keys.push_back(e.message);

  for (const auto& m : keys) {
    if (!actorM.find_method(m))
      return ComplianceViolation{m, {}, "", "component has no method '" + m + "'"};
    Lts mf = build_mf(actorM, m);
    BackwardOutcome back = backward_traces(mf, capacities);
    if (back.overflow)
      return ComplianceViolation{m, {}, "",
                                 "response overflows a target mailbox"};
    for (const Trace& z : back.traces) {
      bool matched = false;
      std::string failing_target;
      for (const auto& e : info.entries) {
        if (e.message != m) continue;
        bool ok = true;
        for (const auto& y : open_model.actors) {
          std::vector<std::string> proj = project_trace(z, y.id);
          bool has_pair = false, exact = false;
          for (const auto& r : e.responses) {
            if (r.target != y.id) continue;
            has_pair = true;
            if (r.messages == proj) exact = true;
          }
          bool entry_ok = exact || (!has_pair && proj.empty());
          if (!entry_ok) {
            ok = false;
            failing_target = y.id;
            break;
          }
        }
        if (ok) {
          matched = true;
          break;
        }
      }
      if (!matched)
        return ComplianceViolation{m, z, failing_target,
                                   "response not covered by interface"};
    }
  }
  return std::nullopt;
}

}  // namespace agc
