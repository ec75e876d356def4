// Info parsing, shuffles, and InfM synthesis.
#include "info.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace agc {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Split on commas that are outside brackets.
std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

// Does any send statement (or main send) in the model target `id` with
// message `msg`?
bool model_sends(const Model& m, const std::string& id,
                 const std::string& msg) {
  std::function<bool(const StmtList&)> scan = [&](const StmtList& l) {
    for (const auto& st : l) {
      if (st.kind == Stmt::Kind::Send && st.target == id && st.message == msg)
        return true;
      if (st.kind == Stmt::Kind::Cond &&
          (scan(st.then_branch) || scan(st.else_branch)))
        return true;
    }
    return false;
  };
  for (const auto& a : m.actors)
    for (const auto& meth : a.methods)
      if (scan(meth.body)) return true;
  for (const auto& s : m.main_sends)
    if (s.target == id && s.message == msg) return true;
  return false;
}

}  // namespace

InfoSpec parse_info(const std::string& text, const Model& open_model) {
  InfoSpec spec;
  std::vector<std::string> unknown = unknown_receivers(open_model);
  if (unknown.size() != 1)
    throw InfoError{"open model must have exactly one undeclared receiver, got " +
                    std::to_string(unknown.size())};
  spec.component_id = unknown[0];

  std::istringstream is(text);
  std::string line;
  bool saw_header = false, done = false;
  while (std::getline(is, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (done) throw InfoError{"content after 'end' in .info"};
    if (!saw_header) {
      if (line != "info") throw InfoError{"expected 'info' header"};
      saw_header = true;
      continue;
    }
    if (line == "end") {
      done = true;
      continue;
    }
    size_t arrow = line.find("->");
    if (arrow == std::string::npos)
      throw InfoError{"malformed .info line: " + line};
    InfoEntry entry;
    entry.message = trim(line.substr(0, arrow));
    if (entry.message.empty())
      throw InfoError{"missing message name in line: " + line};
    std::string rest = trim(line.substr(arrow + 2));
    for (const std::string& part : split_top(rest)) {
      size_t colon = part.find(':');
      size_t open_b = part.find('[');
      size_t close_b = part.rfind(']');
      if (colon == std::string::npos || open_b == std::string::npos ||
          close_b == std::string::npos || close_b < open_b)
        throw InfoError{"malformed response '" + part + "' in line: " + line};
      InfoResponse resp;
      resp.target = trim(part.substr(0, colon));
      std::string inner = part.substr(open_b + 1, close_b - open_b - 1);
      for (const std::string& msg : split_top(inner))
        resp.messages.push_back(msg);
      const ActorDef* target = open_model.find_actor(resp.target);
      if (!target)
        throw InfoError{"response targets unknown actor '" + resp.target + "'"};
      if (static_cast<std::int64_t>(resp.messages.size()) > target->capacity)
        throw InfoError{"response to '" + resp.target + "' has " +
                        std::to_string(resp.messages.size()) +
                        " messages, exceeding capacity " +
                        std::to_string(target->capacity)};
      for (const auto& msg : resp.messages)
        if (!target->find_method(msg))
          throw InfoError{"actor '" + resp.target + "' has no method '" + msg +
                          "'"};
      entry.responses.push_back(std::move(resp));
    }
    if (!model_sends(open_model, spec.component_id, entry.message))
      spec.warnings.push_back("open system never sends '" + entry.message +
                              "' to " + spec.component_id);
    spec.entries.push_back(std::move(entry));
  }
  if (!saw_header) throw InfoError{"missing 'info' header"};
  if (!done) throw InfoError{"missing 'end' footer"};
  return spec;
}

// ---------------------------------------------------------------------------
// Shuffles
// ---------------------------------------------------------------------------

std::vector<std::vector<SendAction>> hshuffle(
    const std::vector<SendAction>& a, const std::vector<SendAction>& b) {
  if (a.empty()) return {b};
  if (b.empty()) return {a};
  std::vector<std::vector<SendAction>> out;
  std::vector<SendAction> ra(a.begin() + 1, a.end());
  for (auto& tail : hshuffle(ra, b)) {
    tail.insert(tail.begin(), a.front());
    out.push_back(std::move(tail));
  }
  std::vector<SendAction> rb(b.begin() + 1, b.end());
  for (auto& tail : hshuffle(a, rb)) {
    tail.insert(tail.begin(), b.front());
    out.push_back(std::move(tail));
  }
  return out;
}

std::vector<std::vector<SendAction>> shuffle(
    const std::vector<InfoResponse>& responses) {
  if (responses.empty()) return {};
  std::vector<std::vector<SendAction>> acc;
  bool first = true;
  for (const auto& r : responses) {
    std::vector<SendAction> seq;
    for (const auto& msg : r.messages)
      seq.push_back(SendAction{msg, r.target});
    if (first) {
      acc.push_back(std::move(seq));
      first = false;
      continue;
    }
    std::vector<std::vector<SendAction>> next;
    for (const auto& prev : acc)
      for (auto& mixed : hshuffle(prev, seq)) next.push_back(std::move(mixed));
    acc = std::move(next);
  }
  // Deduplicate preserving first occurrence (identical sequences arise when
  // targets repeat a message).
  std::vector<std::vector<SendAction>> out;
  for (auto& s : acc)
    if (std::find(out.begin(), out.end(), s) == out.end())
      out.push_back(std::move(s));
  return out;
}

// ---------------------------------------------------------------------------
// InfM synthesis
// ---------------------------------------------------------------------------

namespace {

Stmt send_stmt(const std::string& target, const std::string& message) {
  Stmt s;
  s.kind = Stmt::Kind::Send;
  s.target = target;
  s.message = message;
  return s;
}

Stmt nondet_stmt(const std::string& var, int from, int to) {
  Stmt s;
  s.kind = Stmt::Kind::NonDet;
  s.var = var;
  for (int v = from; v <= to; ++v) s.choices.push_back(Expr::literal(v));
  return s;
}

Stmt cond_stmt(const std::string& var, int value, StmtList then_b,
               StmtList else_b) {
  Stmt s;
  s.kind = Stmt::Kind::Cond;
  s.cond = Expr::binary(BinOp::Eq, Expr::variable(var), Expr::literal(value));
  s.then_branch = std::move(then_b);
  s.else_branch = std::move(else_b);
  return s;
}

}  // namespace

ActorDef synthesize_infm(const InfoSpec& info, const Model& open_model,
                         std::optional<std::int64_t> capacity) {
  ActorDef actor;
  actor.id = info.component_id;
  if (capacity) {
    actor.capacity = *capacity;
  } else {
    actor.capacity = static_cast<std::int64_t>(open_model.main_sends.size());
    for (const auto& a : open_model.actors) actor.capacity += a.capacity;
  }

  // Group entries per message, keeping file order of first occurrence.
  std::vector<std::pair<std::string, std::vector<const InfoEntry*>>> grouped;
  for (const auto& e : info.entries) {
    auto it = std::find_if(grouped.begin(), grouped.end(),
                           [&](const auto& g) { return g.first == e.message; });
    if (it == grouped.end())
      grouped.push_back({e.message, {&e}});
    else
      it->second.push_back(&e);
  }

  bool uses_l = false;
  std::vector<Method> chains;

  // Emit the statements realizing one shuffle sequence: inline when the
  // chain has a single send, otherwise dispatch into self-sent chain methods.
  auto emit_sequence = [&](const std::string& m, size_t j, size_t i,
                           const std::vector<SendAction>& seq) -> StmtList {
    if (seq.empty()) return {};
    if (seq.size() == 1) return {send_stmt(seq[0].receiver, seq[0].message)};
    std::string base = m + "__" + std::to_string(j) + "_" + std::to_string(i);
    for (size_t g = 0; g < seq.size(); ++g) {
      Method cm;
      cm.name = base + "_" + std::to_string(g + 1);
      cm.body.push_back(send_stmt(seq[g].receiver, seq[g].message));
      if (g + 1 < seq.size())
        cm.body.push_back(send_stmt("self", base + "_" + std::to_string(g + 2)));
      chains.push_back(std::move(cm));
    }
    return {send_stmt("self", base + "_1")};
  };

  // Nondeterministic dispatch over alternatives built as nested if/else so
  // the selector variable can be reused by inner dispatches.
  auto dispatch = [&](std::vector<StmtList> alts) -> StmtList {
    if (alts.empty()) return {};
    if (alts.size() == 1) return std::move(alts[0]);
    uses_l = true;
    StmtList out;
    out.push_back(nondet_stmt("l", 1, static_cast<int>(alts.size())));
    StmtList tail = std::move(alts.back());
    for (size_t v = alts.size() - 1; v-- > 0;)
      tail = {cond_stmt("l", static_cast<int>(v + 1), std::move(alts[v]),
                        std::move(tail))};
    for (auto& s : tail) out.push_back(std::move(s));
    return out;
  };

  for (size_t gi = 0; gi < grouped.size(); ++gi) {
    const auto& [m, entries] = grouped[gi];
    std::vector<StmtList> entry_alts;
    for (size_t j = 0; j < entries.size(); ++j) {
      auto shuffles = shuffle(entries[j]->responses);
      std::vector<StmtList> shuffle_alts;
      for (size_t i = 0; i < shuffles.size(); ++i)
        shuffle_alts.push_back(emit_sequence(m, j + 1, i + 1, shuffles[i]));
      entry_alts.push_back(dispatch(std::move(shuffle_alts)));
    }
    Method method;
    method.name = m;
    method.body = dispatch(std::move(entry_alts));
    actor.methods.push_back(std::move(method));
  }
  for (auto& cm : chains) actor.methods.push_back(std::move(cm));
  if (uses_l) actor.vars.push_back("l");
  return actor;
}

}  // namespace agc
