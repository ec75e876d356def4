// T_M derivation and the two-step component check.
#include "mcheck.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace agc {

namespace {

Stmt send_stmt(const std::string& target, const std::string& message) {
  Stmt s;
  s.kind = Stmt::Kind::Send;
  s.target = target;
  s.message = message;
  return s;
}

}  // namespace

ActorDef synthesize_mc(const ActorDef& actorM) {
  if (actorM.methods.empty())
    throw std::runtime_error("component '" + actorM.id +
                             "' has no methods; cannot build complement");
  ActorDef mc;
  mc.id = actorM.id + "__c";
  mc.capacity = 1;
  mc.vars.push_back("l");
  Method body;
  body.name = "m_c";
  {
    Stmt nd;
    nd.kind = Stmt::Kind::NonDet;
    nd.var = "l";
    for (size_t i = 1; i <= actorM.methods.size(); ++i)
      nd.choices.push_back(Expr::literal(static_cast<std::int64_t>(i)));
    body.body.push_back(std::move(nd));
  }
  for (size_t i = 0; i < actorM.methods.size(); ++i) {
    Stmt guard;
    guard.kind = Stmt::Kind::Cond;
    guard.cond = Expr::binary(BinOp::Eq, Expr::variable("l"),
                              Expr::literal(static_cast<std::int64_t>(i + 1)));
    guard.then_branch.push_back(send_stmt(actorM.id, actorM.methods[i].name));
    body.body.push_back(std::move(guard));
  }
  body.body.push_back(send_stmt("self", "m_c"));
  {
    Stmt reset;
    reset.kind = Stmt::Kind::Assign;
    reset.var = "l";
    reset.expr = Expr::literal(0);
    body.body.push_back(std::move(reset));
  }
  mc.methods.push_back(std::move(body));
  return mc;
}

Lts derive_tm(const ActorDef& actorM, const std::set<std::string>& o_ids,
              size_t state_cap) {
  Model sys;
  sys.actors.push_back(actorM);
  ActorDef mc = synthesize_mc(actorM);
  sys.actors.push_back(mc);
  for (const auto& o : o_ids) {
    ActorDef dummy;
    dummy.id = o;
    dummy.capacity = 0;
    sys.actors.push_back(dummy);
  }
  sys.main_sends.push_back(MainSend{mc.id, "m_c"});

  Lts raw = explore(sys, state_cap);
  return rename(raw, [&](const std::string& text) -> std::string {
    CoarseLabel cl = parse_coarse_label(text);
    if (cl.taker == actorM.id) {
      if (cl.sends.empty()) return kTau;
      std::string out;
      for (size_t i = 0; i < cl.sends.size(); ++i) {
        if (i) out += ",";
        out += cl.sends[i].text();
      }
      return out;
    }
    if (cl.taker == mc.id) {
      if (cl.sends.size() == 2 && cl.sends[0].receiver == actorM.id &&
          cl.sends[1].receiver == mc.id && cl.sends[1].message == "m_c")
        return "Rcv(" + cl.sends[0].message + ")";
      throw std::runtime_error("unexpected complement-actor label: " + text);
    }
    throw std::runtime_error("unexpected taker in T_M label: " + text);
  });
}

Lts hide_c3(const Lts& l, const std::vector<std::string>& alphabet_ta) {
  std::set<std::string> alpha(alphabet_ta.begin(), alphabet_ta.end());
  return rename(l, [&](const std::string& text) -> std::string {
    if (text == kTau || text.rfind("Rcv(", 0) == 0) return text;
    std::string out;
    std::string cur;
    auto flush = [&]() {
      if (!cur.empty() && alpha.count(cur)) {
        if (!out.empty()) out += ",";
        out += cur;
      }
      cur.clear();
    };
    for (char c : text) {
      if (c == ',')
        flush();
      else
        cur += c;
    }
    flush();
    return out.empty() ? kTau : out;
  });
}

ComponentVerdict check_component(const ActorDef& actorM, const Model& open_model,
                                 const InfoSpec& info,
                                 const AssumptionOutcome& ta,
                                 size_t state_cap) {
  ComponentVerdict verdict;
  auto violation = check_compliance(actorM, info, open_model);
  if (violation) {
    verdict.kind = ComponentVerdict::Kind::RejectedNonCompliant;
    verdict.violation = *violation;
    return verdict;
  }
  std::set<std::string> o_ids;
  for (const auto& a : open_model.actors) o_ids.insert(a.id);
  Lts tm = derive_tm(actorM, o_ids, state_cap);
  Lts hidden = hide_c3(tm, ta.alphabet);
  Lts flat = split_compound_labels(hidden);
  InclusionResult inc = trace_included(flat, ta.ta);
  if (inc.holds) {
    verdict.kind = ComponentVerdict::Kind::Accepted;
  } else {
    verdict.kind = ComponentVerdict::Kind::RejectedTraceEscape;
    verdict.counterexample = inc.counterexample;
  }
  return verdict;
}

VerifyResult verify_monolithic(const Model& closed, const ErrDfa& d,
                               size_t state_cap) {
  Lts prop = compose_property_lts(closed, d, state_cap);
  VerifyResult res;
  if (prop.pi < 0) return res;
  // Shortest path to pi; edges examined in sorted label order, so the first
  // path found is also lexicographically least among the shortest.
  std::vector<int> pred_state(prop.num_states(), -1);
  std::vector<int> pred_label(prop.num_states(), -1);
  std::vector<bool> seen(prop.num_states(), false);
  std::deque<int> queue{prop.initial};
  seen[prop.initial] = true;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    if (s == prop.pi) {
      res.holds = false;
      Trace t;
      for (int u = s; u != prop.initial; u = pred_state[u])
        t.insert(t.begin(), prop.labels[pred_label[u]]);
      res.witness = std::move(t);
      return res;
    }
    for (const auto& [lid, dst] : prop.adj[s]) {
      if (seen[dst]) continue;
      seen[dst] = true;
      pred_state[dst] = s;
      pred_label[dst] = lid;
      queue.push_back(dst);
    }
  }
  return res;
}

}  // namespace agc
