// Coarse semantics: atomic take-steps and bounded breadth-first exploration.
#include "semantics.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace agc {

std::string CoarseLabel::text() const {
  std::string out = "(t_" + taker + ", <";
  for (size_t i = 0; i < sends.size(); ++i) {
    if (i) out += ",";
    out += sends[i].text();
  }
  out += ">)";
  return out;
}

CoarseLabel parse_coarse_label(const std::string& text) {
  CoarseLabel l;
  if (text.rfind("(t_", 0) != 0)
    throw std::runtime_error("not a coarse label: " + text);
  size_t sep = text.find(", <");
  if (sep == std::string::npos || text.size() < sep + 5 ||
      text.substr(text.size() - 2) != ">)")
    throw std::runtime_error("not a coarse label: " + text);
  l.taker = text.substr(3, sep - 3);
  std::string body = text.substr(sep + 3, text.size() - sep - 5);
  size_t pos = 0;
  while (pos < body.size()) {
    size_t comma = body.find(',', pos);
    std::string item =
        comma == std::string::npos ? body.substr(pos) : body.substr(pos, comma - pos);
    size_t close = item.find(')');
    size_t sep2 = item.find("::");
    if (item.rfind("Snd(", 0) != 0 || close == std::string::npos ||
        sep2 == std::string::npos)
      throw std::runtime_error("bad send action in label: " + text);
    l.sends.push_back(
        SendAction{item.substr(4, close - 4), item.substr(sep2 + 2)});
    pos = comma == std::string::npos ? body.size() : comma + 1;
  }
  return l;
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

std::string GlobalState::key() const {
  std::ostringstream os;
  for (const auto& a : actors) {
    os << "|";
    for (const auto& v : a.vars) {
      if (v.is_id)
        os << "#" << v.id << ";";
      else
        os << v.num << ";";
    }
    os << "/";
    for (const auto& m : a.mailbox) os << m << ",";
  }
  return os.str();
}

ModelIndex::ModelIndex(const Model& m) : model(&m) {
  for (size_t i = 0; i < m.actors.size(); ++i)
    actor_index.emplace(m.actors[i].id, static_cast<int>(i));
}

int ModelIndex::index_of(const std::string& id) const {
  auto it = actor_index.find(id);
  return it == actor_index.end() ? -1 : it->second;
}

GlobalState initial_state(const ModelIndex& mi) {
  GlobalState g;
  g.actors.resize(mi.num_actors());
  for (size_t i = 0; i < mi.num_actors(); ++i)
    g.actors[i].vars.assign(mi.actor(i).vars.size(), Value::of_int(0));
  for (const auto& s : mi.model->main_sends) {
    int r = mi.index_of(s.target);
    if (r < 0)
      throw AmlError{"main sends to undeclared actor '" + s.target + "'",
                     s.line, s.col};
    const ActorDef& a = mi.actor(r);
    if (a.capacity == 0) continue;  // accept-and-drop
    if (static_cast<std::int64_t>(g.actors[r].mailbox.size()) >= a.capacity)
      throw AmlError{"main block overfills mailbox of '" + s.target + "'",
                     s.line, s.col};
    g.actors[r].mailbox.push_back(s.message);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Take-steps
// ---------------------------------------------------------------------------

namespace {

struct ExecCtx {
  const ModelIndex* mi;
  int self_index;
  const std::string* self_id;
  std::vector<Successor>* out;
};

// Execute `stmts[from..]` under one nondeterministic resolution; recursion
// branches at NonDet statements. `pending` holds continuations for enclosing
// statement lists (used when descending into Cond branches).
void exec_stmts(const ExecCtx& ctx, GlobalState g,
                std::vector<SendAction> sends,
                std::vector<std::pair<const StmtList*, size_t>> stack) {
  while (!stack.empty()) {
    auto& [list, idx] = stack.back();
    if (idx >= list->size()) {
      stack.pop_back();
      continue;
    }
    const Stmt& st = (*list)[idx++];
    ActorState& self = g.actors[ctx.self_index];
    const ActorDef& self_def = ctx.mi->actor(ctx.self_index);
    auto env = [&]() {
      std::vector<std::pair<std::string, Value>> e;
      for (size_t i = 0; i < self_def.vars.size(); ++i)
        e.emplace_back(self_def.vars[i], self.vars[i]);
      return e;
    };
    auto set_var = [&](const std::string& name, const Value& v) {
      for (size_t i = 0; i < self_def.vars.size(); ++i)
        if (self_def.vars[i] == name) {
          self.vars[i] = v;
          return;
        }
      throw AmlError{"assignment to undeclared variable '" + name + "'",
                     st.line, st.col};
    };
    switch (st.kind) {
      case Stmt::Kind::Assign:
        set_var(st.var, eval_expr(*st.expr, env(), *ctx.self_id));
        break;
      case Stmt::Kind::NonDet: {
        // Branch: one recursive continuation per choice.
        auto e = env();
        for (const auto& choice : st.choices) {
          GlobalState g2 = g;
          Value v = eval_expr(*choice, e, *ctx.self_id);
          for (size_t i = 0; i < self_def.vars.size(); ++i)
            if (self_def.vars[i] == st.var) g2.actors[ctx.self_index].vars[i] = v;
          exec_stmts(ctx, std::move(g2), sends, stack);
        }
        return;
      }
      case Stmt::Kind::Cond: {
        const StmtList& branch =
            eval_expr(*st.cond, env(), *ctx.self_id).truthy() ? st.then_branch
                                                              : st.else_branch;
        stack.emplace_back(&branch, 0);
        break;
      }
      case Stmt::Kind::Send: {
        std::string target =
            st.target == "self" ? *ctx.self_id : st.target;
        // A variable holding an actor id may also be a target.
        if (ctx.mi->index_of(target) < 0) {
          for (size_t i = 0; i < self_def.vars.size(); ++i)
            if (self_def.vars[i] == st.target && self.vars[i].is_id)
              target = self.vars[i].id;
        }
        int r = ctx.mi->index_of(target);
        if (r < 0)
          throw AmlError{"send to undeclared actor '" + target + "'", st.line,
                         st.col};
        const ActorDef& recv = ctx.mi->actor(r);
        if (recv.capacity > 0) {
          if (static_cast<std::int64_t>(g.actors[r].mailbox.size()) >=
              recv.capacity)
            return;  // blocked: this resolution yields no transition
          g.actors[r].mailbox.push_back(st.message);
        }
        sends.push_back(SendAction{st.message, target});
        break;
      }
    }
  }
  ctx.out->push_back(Successor{CoarseLabel{*ctx.self_id, std::move(sends)},
                               std::move(g)});
}

}  // namespace

std::vector<Successor> successors(const ModelIndex& mi, const GlobalState& g) {
  std::vector<Successor> out;
  for (size_t x = 0; x < mi.num_actors(); ++x) {
    if (g.actors[x].mailbox.empty()) continue;
    const ActorDef& a = mi.actor(x);
    std::string msg = g.actors[x].mailbox.front();
    const Method* method = a.find_method(msg);
    if (!method)
      throw AmlError{"actor '" + a.id + "' cannot take message '" + msg + "'",
                     a.line, a.col};
    GlobalState g2 = g;
    g2.actors[x].mailbox.pop_front();
    ExecCtx ctx{&mi, static_cast<int>(x), &a.id, &out};
    exec_stmts(ctx, std::move(g2), {}, {{&method->body, 0}});
  }
  // Sort by label text; drop duplicate (label, state) pairs.
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.label.text() < b.label.text();
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const auto& a, const auto& b) {
                          return a.label.text() == b.label.text() &&
                                 a.state.key() == b.state.key();
                        }),
            out.end());
  return out;
}

std::string StateCapExceeded::what() const {
  return "state cap exceeded (" + std::to_string(cap) + " states)";
}

Lts explore(const Model& m, size_t state_cap) {
  ModelIndex mi(m);
  Lts lts;
  std::unordered_map<std::string, int> ids;
  std::deque<GlobalState> queue;

  GlobalState init = initial_state(mi);
  ids.emplace(init.key(), lts.add_state());
  lts.initial = 0;
  queue.push_back(std::move(init));
  while (!queue.empty()) {
    GlobalState g = queue.front();
    queue.pop_front();
    int src = ids.at(g.key());
    for (auto& succ : successors(mi, g)) {
      std::string k = succ.state.key();
      auto it = ids.find(k);
      int dst;
      if (it == ids.end()) {
        if (lts.num_states() >= state_cap) throw StateCapExceeded{state_cap};
        dst = lts.add_state();
        ids.emplace(std::move(k), dst);
        queue.push_back(std::move(succ.state));
      } else {
        dst = it->second;
      }
      lts.add_transition(src, succ.label.text(), dst);
    }
  }
  lts.sort_edges();
  return lts;
}

}  // namespace agc
