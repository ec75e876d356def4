// Error-DFA parsing/validation and the model x DFA property composition.
#include "perr.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace agc {

GuardPtr GuardFormula::truth() {
  auto g = std::make_shared<GuardFormula>();
  g->kind = Kind::True;
  return g;
}
GuardPtr GuardFormula::make_atom(std::string name) {
  auto g = std::make_shared<GuardFormula>();
  g->kind = Kind::Atom;
  g->atom = std::move(name);
  return g;
}
GuardPtr GuardFormula::negate(GuardPtr x) {
  auto g = std::make_shared<GuardFormula>();
  g->kind = Kind::Not;
  g->lhs = std::move(x);
  return g;
}
GuardPtr GuardFormula::conj(GuardPtr a, GuardPtr b) {
  auto g = std::make_shared<GuardFormula>();
  g->kind = Kind::And;
  g->lhs = std::move(a);
  g->rhs = std::move(b);
  return g;
}
GuardPtr GuardFormula::disj(GuardPtr a, GuardPtr b) {
  auto g = std::make_shared<GuardFormula>();
  g->kind = Kind::Or;
  g->lhs = std::move(a);
  g->rhs = std::move(b);
  return g;
}

bool guard_satisfied(const GuardFormula& g,
                     const std::map<std::string, SendAction>& atoms,
                     const SendAction& a) {
  switch (g.kind) {
    case GuardFormula::Kind::True:
      return true;
    case GuardFormula::Kind::Atom: {
      auto it = atoms.find(g.atom);
      if (it == atoms.end())
        throw PerrError{"unknown atom '" + g.atom + "' in guard"};
      return it->second == a;
    }
    case GuardFormula::Kind::Not:
      return !guard_satisfied(*g.lhs, atoms, a);
    case GuardFormula::Kind::And:
      return guard_satisfied(*g.lhs, atoms, a) &&
             guard_satisfied(*g.rhs, atoms, a);
    case GuardFormula::Kind::Or:
      return guard_satisfied(*g.lhs, atoms, a) ||
             guard_satisfied(*g.rhs, atoms, a);
  }
  return false;
}

// ---------------------------------------------------------------------------
// .perr parsing
// ---------------------------------------------------------------------------

namespace {

// Recursive-descent guard parser: or < and < unary.
struct GuardParser {
  const std::string& s;
  size_t pos = 0;

  explicit GuardParser(const std::string& text) : s(text) {}
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (start == pos) throw PerrError{"expected identifier in guard '" + s + "'"};
    return s.substr(start, pos - start);
  }
  GuardPtr parse() {
    GuardPtr g = parse_or();
    skip();
    if (pos != s.size()) throw PerrError{"trailing input in guard '" + s + "'"};
    return g;
  }
  GuardPtr parse_or() {
    GuardPtr l = parse_and();
    while (eat('|')) l = GuardFormula::disj(l, parse_and());
    return l;
  }
  GuardPtr parse_and() {
    GuardPtr l = parse_unary();
    while (eat('&')) l = GuardFormula::conj(l, parse_unary());
    return l;
  }
  GuardPtr parse_unary() {
    if (eat('!')) return GuardFormula::negate(parse_unary());
    if (eat('(')) {
      GuardPtr g = parse_or();
      if (!eat(')')) throw PerrError{"missing ')' in guard '" + s + "'"};
      return g;
    }
    std::string name = ident();
    if (name == "true") return GuardFormula::truth();
    return GuardFormula::make_atom(name);
  }
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

void validate(const ErrDfa& d) {
  // Representative actions: each atom's action plus one guaranteed non-atom.
  std::vector<SendAction> probes;
  for (const auto& [name, act] : d.atoms) probes.push_back(act);
  SendAction other{"__other__", "__other__"};
  while (std::any_of(d.atoms.begin(), d.atoms.end(), [&](const auto& kv) {
    return kv.second == other;
  }))
    other.message += "_";
  probes.push_back(other);

  for (int q = 0; q < d.num_states; ++q) {
    if (q == d.pi) {
      for (const auto& e : d.edges)
        if (e.src == q)
          throw PerrError{"pi state " + std::to_string(q) +
                          " must have no outgoing edges"};
      continue;
    }
    for (const auto& a : probes) {
      int count = 0;
      std::vector<std::string> hits;
      for (const auto& e : d.edges) {
        if (e.src != q) continue;
        if (guard_satisfied(*e.guard, d.atoms, a)) {
          ++count;
          hits.push_back("-> " + std::to_string(e.dst));
        }
      }
      std::string probe_name = a == other ? "<non-atom action>" : a.text();
      if (count == 0)
        throw PerrError{"state " + std::to_string(q) +
                        " is partial: no guard satisfied by " + probe_name};
      if (count > 1)
        throw PerrError{"state " + std::to_string(q) +
                        " is nondeterministic on " + probe_name + " (" +
                        hits[0] + " and " + hits[1] + ")"};
    }
  }
}

}  // namespace

ErrDfa parse_perr(const std::string& text) {
  ErrDfa d;
  std::istringstream is(text);
  std::string line;
  bool saw_header = false, saw_states = false, saw_init = false, done = false;
  std::map<std::string, int> state_ids;
  auto state_of = [&](const std::string& name) {
    auto it = state_ids.find(name);
    if (it == state_ids.end())
      throw PerrError{"unknown state '" + name + "' in .perr"};
    return it->second;
  };
  while (std::getline(is, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (done) throw PerrError{"content after 'end' in .perr"};
    if (!saw_header) {
      if (line != "perr") throw PerrError{"expected 'perr' header"};
      saw_header = true;
      continue;
    }
    if (line == "end") {
      done = true;
      continue;
    }
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "actions") {
      continue;  // section marker, lines that follow are `name = msg -> actor`
    } else if (kw == "states") {
      std::string tok;
      while (ls >> tok) {
        if (state_ids.count(tok))
          throw PerrError{"duplicate state '" + tok + "'"};
        state_ids.emplace(tok, d.num_states++);
        if (tok == "pi") d.pi = d.num_states - 1;
      }
      if (!state_ids.count("pi"))
        throw PerrError{"states line must include 'pi'"};
      saw_states = true;
    } else if (kw == "init") {
      std::string tok;
      ls >> tok;
      d.initial = state_of(tok);
      saw_init = true;
    } else if (kw == "trans") {
      // trans <q> : <guard> -> <q'>
      std::string rest;
      std::getline(ls, rest);
      size_t colon = rest.find(':');
      size_t arrow = rest.rfind("->");
      if (colon == std::string::npos || arrow == std::string::npos ||
          arrow < colon)
        throw PerrError{"malformed trans line: " + line};
      int src = state_of(trim(rest.substr(0, colon)));
      std::string guard_text = trim(rest.substr(colon + 1, arrow - colon - 1));
      int dst = state_of(trim(rest.substr(arrow + 2)));
      GuardParser gp(guard_text);
      d.edges.push_back(DfaEdge{src, gp.parse(), dst});
    } else {
      // atom definition: name = <msg> -> <actor>
      size_t eq = line.find('=');
      size_t arrow = line.find("->");
      if (eq == std::string::npos || arrow == std::string::npos || arrow < eq)
        throw PerrError{"malformed .perr line: " + line};
      std::string name = trim(line.substr(0, eq));
      std::string msg = trim(line.substr(eq + 1, arrow - eq - 1));
      std::string actor = trim(line.substr(arrow + 2));
      if (name.empty() || msg.empty() || actor.empty() || name == "true")
        throw PerrError{"malformed action definition: " + line};
      if (d.atoms.count(name))
        throw PerrError{"duplicate action name '" + name + "'"};
      d.atoms.emplace(name, SendAction{msg, actor});
    }
  }
  if (!saw_header) throw PerrError{"missing 'perr' header"};
  if (!saw_states) throw PerrError{"missing 'states' line"};
  if (!saw_init) throw PerrError{"missing 'init' line"};
  if (!done) throw PerrError{"missing 'end' footer"};
  validate(d);
  return d;
}

int dfa_step(const ErrDfa& d, int q, const SendAction& a) {
  for (const auto& e : d.edges)
    if (e.src == q && guard_satisfied(*e.guard, d.atoms, a)) return e.dst;
  throw PerrError{"dfa_step: no guard satisfied at state " +
                  std::to_string(q) + " (DFA not validated?)"};
}

// ---------------------------------------------------------------------------
// Property LTS
// ---------------------------------------------------------------------------

Lts compose_property_lts(const Model& m, const ErrDfa& d, size_t state_cap,
                         const std::set<SendAction>& dfa_silent) {
  ModelIndex mi(m);
  Lts lts;
  std::unordered_map<std::string, int> ids;
  struct Item {
    GlobalState g;
    int q;
  };
  std::deque<Item> queue;
  int pi_state = -1;
  auto ensure_pi = [&]() {
    if (pi_state < 0) {
      pi_state = lts.add_state();
      lts.pi = pi_state;
    }
    return pi_state;
  };

  GlobalState init = initial_state(mi);
  std::string init_key = init.key() + "@" + std::to_string(d.initial);
  ids.emplace(init_key, lts.add_state());
  lts.initial = 0;
  queue.push_back(Item{std::move(init), d.initial});
  while (!queue.empty()) {
    Item it = queue.front();
    queue.pop_front();
    int src = ids.at(it.g.key() + "@" + std::to_string(it.q));
    for (auto& succ : successors(mi, it.g)) {
      // Drive the DFA through the send sequence in statement order.
      int q = it.q;
      size_t taken = 0;
      bool to_pi = false;
      for (const auto& a : succ.label.sends) {
        if (dfa_silent.count(a)) {
          ++taken;
          continue;
        }
        q = dfa_step(d, q, a);
        ++taken;
        if (q == d.pi) {
          to_pi = true;
          break;
        }
      }
      if (to_pi) {
        CoarseLabel prefix{succ.label.taker,
                          {succ.label.sends.begin(),
                           succ.label.sends.begin() + taken}};
        lts.add_transition(src, prefix.text(), ensure_pi());
        continue;
      }
      std::string k = succ.state.key() + "@" + std::to_string(q);
      auto found = ids.find(k);
      int dst;
      if (found == ids.end()) {
        if (lts.num_states() >= state_cap) throw StateCapExceeded{state_cap};
        dst = lts.add_state();
        ids.emplace(std::move(k), dst);
        queue.push_back(Item{std::move(succ.state), q});
      } else {
        dst = found->second;
      }
      lts.add_transition(src, succ.label.text(), dst);
    }
  }
  lts.sort_edges();
  return lts;
}

}  // namespace agc
