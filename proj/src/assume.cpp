// The assumption-generation pipeline.
#include "assume.hpp"

#include <algorithm>
#include <filesystem>
#include <stdexcept>

namespace agc {

Lts hide_internal_c1(const Lts& l, const std::set<std::string>& o_ids,
                     const std::string& m_id) {
  return rename(l, [&](const std::string& text) {
    CoarseLabel cl = parse_coarse_label(text);
    CoarseLabel out;
    out.taker = cl.taker;
    bool taker_is_m = cl.taker == m_id;
    for (const auto& a : cl.sends) {
      bool internal = taker_is_m ? a.receiver == m_id
                                 : o_ids.count(a.receiver) > 0;
      if (!internal) out.sends.push_back(a);
    }
    return out.text();
  });
}

Lts reconfigure_psi(const Lts& l, const std::set<std::string>& o_ids,
                    const std::string& m_id) {
  // First map each coarse label to either tau, a single send action, or a
  // comma-joined Rcv chain; then split the chains into fresh states.
  Lts mapped = rename(l, [&](const std::string& text) -> std::string {
    CoarseLabel cl = parse_coarse_label(text);
    if (cl.sends.empty()) return kTau;
    if (cl.taker == m_id) {
      if (cl.sends.size() == 1 && o_ids.count(cl.sends[0].receiver))
        return cl.sends[0].text();
      throw std::runtime_error(
          "psi: inadmissible label (interface actor with multiple or "
          "non-open sends): " + text);
    }
    if (!o_ids.count(cl.taker))
      throw std::runtime_error("psi: unknown taker in label: " + text);
    std::string chain;
    for (size_t i = 0; i < cl.sends.size(); ++i) {
      if (cl.sends[i].receiver != m_id)
        throw std::runtime_error(
            "psi: inadmissible label (open-system send not directed at the "
            "interface actor): " + text);
      if (i) chain += ",";
      chain += "Rcv(" + cl.sends[i].message + ")";
    }
    return chain;
  });
  return split_compound_labels(mapped);
}

std::vector<std::string> assumption_alphabet(const InfoSpec& info,
                                             const ActorDef& infm) {
  std::set<std::string> out;
  for (const auto& meth : infm.methods)
    if (meth.name.find("__") == std::string::npos)
      out.insert("Rcv(" + meth.name + ")");
  for (const auto& e : info.entries)
    for (const auto& r : e.responses)
      for (const auto& msg : r.messages)
        out.insert(SendAction{msg, r.target}.text());
  return {out.begin(), out.end()};
}

AssumptionOutcome generate_assumption(const Model& open_model,
                                      const InfoSpec& info, const ErrDfa& d,
                                      const std::optional<ActorDef>& infm_override,
                                      const AssumeConfig& config) {
  AssumptionOutcome out;
  auto record = [&](const std::string& name, const Lts& l) {
    if (!config.trace_pipeline) return;
    out.trace.stages.emplace_back(name, l);
    if (!config.trace_dir.empty()) {
      std::filesystem::create_directories(config.trace_dir);
      write_aut(l, config.trace_dir + "/" + name + ".aut");
    }
  };

  ActorDef infm = infm_override
                      ? *infm_override
                      : synthesize_infm(info, open_model, config.infm_capacity);
  Model composed = open_model;
  composed.actors.push_back(infm);
  {
    auto diags = check_wellformed(composed);
    if (!diags.empty())
      throw std::runtime_error("open model + interface actor is ill-formed: " +
                               format_diagnostics(diags));
  }
  std::set<std::string> o_ids;
  for (const auto& a : open_model.actors) o_ids.insert(a.id);

  // Chain methods serialize multi-send responses through self-sends; those
  // synthetic actions exist only in the interface actor, never in a real
  // component, so the property DFA must not react to them.
  std::set<SendAction> chain_sends;
  for (const auto& meth : infm.methods)
    if (meth.name.find("__") != std::string::npos)
      chain_sends.insert(SendAction{meth.name, infm.id});

  Lts property =
      compose_property_lts(composed, d, config.state_cap, chain_sends);
  record("01-property", property);

  Lts hidden = hide_internal_c1(property, o_ids, infm.id);
  record("02-hide", hidden);

  Lts psi = reconfigure_psi(hidden, o_ids, infm.id);
  record("03-psi", psi);

  Lts reduced = reduce_weak_trace(psi);
  record("04-reduce", reduced);

  if (!pi_reachable(reduced)) {
    out.kind = AssumptionOutcome::Kind::AlwaysHolds;
    return out;
  }

  BackwardResult back = backward_propagate_pi(reduced);
  record("05-backward", back.lts);
  if (back.initial_is_pi) {
    out.kind = AssumptionOutcome::Kind::NeverHolds;
    return out;
  }

  out.alphabet = assumption_alphabet(info, infm);
  Lts det = minimize_dfa(determinize_complete(back.lts, out.alphabet));
  record("06-determinize", det);

  Lts ta = canonical_renumber(remove_pi(det));
  record("07-assumption", ta);

  out.kind = AssumptionOutcome::Kind::Assumption;
  out.ta = std::move(ta);
  return out;
}

}  // namespace agc
