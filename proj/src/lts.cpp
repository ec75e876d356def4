// Implementation of the LTS algebra.
#include "lts.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace agc {

int Lts::add_state() {
  adj.emplace_back();
  return static_cast<int>(adj.size()) - 1;
}

int Lts::label_id(const std::string& text) {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == text) return static_cast<int>(i);
  labels.push_back(text);
  return static_cast<int>(labels.size()) - 1;
}

void Lts::add_transition(int src, const std::string& lbl, int dst) {
  int id = label_id(lbl);
  auto& edges = adj[src];
  for (const auto& e : edges)
    if (e.first == id && e.second == dst) return;  // dedupe
  edges.emplace_back(id, dst);
}

void Lts::sort_edges() {
  for (auto& edges : adj) {
    std::sort(edges.begin(), edges.end(), [&](const auto& a, const auto& b) {
      if (labels[a.first] != labels[b.first])
        return labels[a.first] < labels[b.first];
      return a.second < b.second;
    });
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
}

size_t Lts::num_transitions() const {
  size_t n = 0;
  for (const auto& e : adj) n += e.size();
  return n;
}

bool Lts::has_label(int state, const std::string& text) const {
  for (const auto& [lid, dst] : adj[state])
    if (labels[lid] == text) return true;
  return false;
}

std::string format_trace(const Trace& t) {
  std::string out;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) out += " ";
    out += t[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Renumbering and comparison
// ---------------------------------------------------------------------------

Lts canonical_renumber(const Lts& l) {
  Lts out;
  std::vector<int> map(l.num_states(), -1);
  std::deque<int> queue;
  map[l.initial] = out.add_state();
  out.initial = 0;
  queue.push_back(l.initial);
  std::vector<std::pair<int, int>> sorted;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    sorted = l.adj[s];
    std::sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
      if (l.labels[a.first] != l.labels[b.first])
        return l.labels[a.first] < l.labels[b.first];
      return a.second < b.second;
    });
    for (const auto& [lid, dst] : sorted) {
      if (map[dst] < 0) {
        map[dst] = out.add_state();
        queue.push_back(dst);
      }
    }
    for (const auto& [lid, dst] : sorted)
      out.add_transition(map[s], l.labels[lid], map[dst]);
  }
  if (l.pi >= 0 && map[l.pi] >= 0) out.pi = map[l.pi];
  if (l.theta >= 0 && map[l.theta] >= 0) out.theta = map[l.theta];
  out.sort_edges();
  return out;
}

bool lts_equal(const Lts& a, const Lts& b) {
  if (a.num_states() != b.num_states() || a.initial != b.initial ||
      a.pi != b.pi || a.theta != b.theta)
    return false;
  for (size_t s = 0; s < a.num_states(); ++s) {
    std::set<std::pair<std::string, int>> ea, eb;
    for (const auto& [lid, dst] : a.adj[s]) ea.insert({a.labels[lid], dst});
    for (const auto& [lid, dst] : b.adj[s]) eb.insert({b.labels[lid], dst});
    if (ea != eb) return false;
  }
  return true;
}

bool lts_isomorphic(const Lts& a, const Lts& b) {
  return lts_equal(canonical_renumber(a), canonical_renumber(b));
}

// ---------------------------------------------------------------------------
// rename / split
// ---------------------------------------------------------------------------

Lts rename(const Lts& l,
           const std::function<std::string(const std::string&)>& f) {
  Lts out;
  out.initial = l.initial;
  out.pi = l.pi;
  out.theta = l.theta;
  for (size_t s = 0; s < l.num_states(); ++s) out.add_state();
  for (size_t s = 0; s < l.num_states(); ++s)
    for (const auto& [lid, dst] : l.adj[s])
      out.add_transition(static_cast<int>(s), f(l.labels[lid]), dst);
  out.sort_edges();
  return out;
}

static std::vector<std::string> split_label(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

Lts split_compound_labels(const Lts& l) {
  Lts out;
  out.initial = l.initial;
  out.pi = l.pi;
  out.theta = l.theta;
  for (size_t s = 0; s < l.num_states(); ++s) out.add_state();
  for (size_t s = 0; s < l.num_states(); ++s) {
    for (const auto& [lid, dst] : l.adj[s]) {
      auto parts = split_label(l.labels[lid]);
      int cur = static_cast<int>(s);
      for (size_t i = 0; i + 1 < parts.size(); ++i) {
        int mid = out.add_state();
        out.add_transition(cur, parts[i], mid);
        cur = mid;
      }
      out.add_transition(cur, parts.back(), dst);
    }
  }
  out.sort_edges();
  return out;
}

// ---------------------------------------------------------------------------
// Weak-trace reduction
// ---------------------------------------------------------------------------

namespace {

// Union-find over state indices.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }  // a joins b
};

// Rebuild an LTS from a union-find quotient.
Lts quotient(const Lts& l, UnionFind& uf) {
  std::vector<int> newid(l.num_states(), -1);
  Lts out;
  for (size_t s = 0; s < l.num_states(); ++s) {
    int r = uf.find(static_cast<int>(s));
    if (newid[r] < 0) newid[r] = out.add_state();
  }
  auto mapped = [&](int s) { return newid[uf.find(s)]; };
  for (size_t s = 0; s < l.num_states(); ++s)
    for (const auto& [lid, dst] : l.adj[s]) {
      int a = mapped(static_cast<int>(s)), b = mapped(dst);
      const std::string& lbl = l.labels[lid];
      if (a == b && lbl == kTau) continue;  // drop tau self-loops
      out.add_transition(a, lbl, b);
    }
  out.initial = mapped(l.initial);
  if (l.pi >= 0) out.pi = mapped(l.pi);
  if (l.theta >= 0) out.theta = mapped(l.theta);
  out.sort_edges();
  return out;
}

// Collapse strongly connected components of the tau-subgraph.
Lts collapse_tau_sccs(const Lts& l) {
  size_t n = l.num_states();
  std::vector<std::vector<int>> tau_succ(n);
  for (size_t s = 0; s < n; ++s)
    for (const auto& [lid, dst] : l.adj[s])
      if (l.labels[lid] == kTau) tau_succ[s].push_back(dst);

  // Iterative Tarjan.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stk;
  int next_index = 0, next_comp = 0;
  struct Frame { int v; size_t edge; };
  for (size_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> frames{{static_cast<int>(root), 0}};
    index[root] = low[root] = next_index++;
    stk.push_back(static_cast<int>(root));
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < tau_succ[f.v].size()) {
        int w = tau_succ[f.v][f.edge++];
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stk.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          for (;;) {
            int w = stk.back();
            stk.pop_back();
            on_stack[w] = false;
            comp[w] = next_comp;
            if (w == f.v) break;
          }
          ++next_comp;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  UnionFind uf(n);
  std::vector<int> rep(next_comp, -1);
  for (size_t s = 0; s < n; ++s) {
    if (rep[comp[s]] < 0)
      rep[comp[s]] = static_cast<int>(s);
    else
      uf.unite(static_cast<int>(s), rep[comp[s]]);
  }
  return quotient(l, uf);
}

}  // namespace

Lts reduce_weak_trace(const Lts& l) {
  Lts cur = collapse_tau_sccs(l);
  bool changed = true;
  while (changed) {
    changed = false;
    size_t n = cur.num_states();
    UnionFind uf(n);
    // (a) a state whose only transition is a single tau edge is trace
    // equivalent to its successor; contract it forward.
    for (size_t s = 0; s < n; ++s) {
      if (static_cast<int>(s) == cur.pi || static_cast<int>(s) == cur.theta)
        continue;
      if (cur.adj[s].size() == 1 && cur.labels[cur.adj[s][0].first] == kTau &&
          cur.adj[s][0].second != static_cast<int>(s)) {
        uf.unite(static_cast<int>(s), cur.adj[s][0].second);
        changed = true;
      }
    }
    if (changed) {
      cur = quotient(cur, uf);
      continue;
    }
    // (b) merge states with identical outgoing edge sets (never across the
    // pi/theta markers).
    std::map<std::pair<std::vector<std::pair<std::string, int>>, int>, int>
        seen;
    UnionFind uf2(n);
    for (size_t s = 0; s < n; ++s) {
      std::vector<std::pair<std::string, int>> sig;
      for (const auto& [lid, dst] : cur.adj[s])
        sig.emplace_back(cur.labels[lid], dst);
      std::sort(sig.begin(), sig.end());
      int marker = static_cast<int>(s) == cur.pi      ? 1
                   : static_cast<int>(s) == cur.theta ? 2
                                                      : 0;
      auto key = std::make_pair(std::move(sig), marker);
      auto [it, inserted] = seen.emplace(key, static_cast<int>(s));
      if (!inserted) {
        uf2.unite(static_cast<int>(s), it->second);
        changed = true;
      }
    }
    if (changed) cur = quotient(cur, uf2);
  }
  return canonical_renumber(cur);
}

// ---------------------------------------------------------------------------
// Backward pi propagation
// ---------------------------------------------------------------------------

bool pi_reachable(const Lts& l) {
  if (l.pi < 0) return false;
  std::vector<bool> seen(l.num_states(), false);
  std::deque<int> queue{l.initial};
  seen[l.initial] = true;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    if (s == l.pi) return true;
    for (const auto& [lid, dst] : l.adj[s])
      if (!seen[dst]) {
        seen[dst] = true;
        queue.push_back(dst);
      }
  }
  return false;
}

BackwardResult backward_propagate_pi(const Lts& l) {
  BackwardResult res;
  if (l.pi < 0) {
    res.lts = l;
    return res;
  }
  size_t n = l.num_states();
  // Backward closure over tau edges into pi.
  std::vector<std::vector<int>> tau_pred(n);
  for (size_t s = 0; s < n; ++s)
    for (const auto& [lid, dst] : l.adj[s])
      if (l.labels[lid] == kTau) tau_pred[dst].push_back(static_cast<int>(s));
  std::vector<bool> silent(n, false);
  std::deque<int> queue{l.pi};
  silent[l.pi] = true;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int p : tau_pred[s])
      if (!silent[p]) {
        silent[p] = true;
        queue.push_back(p);
      }
  }
  UnionFind uf(n);
  for (size_t s = 0; s < n; ++s)
    if (silent[s]) uf.unite(static_cast<int>(s), l.pi);
  Lts merged = l;
  // States merged into pi lose their outgoing transitions (pi is terminal).
  for (size_t s = 0; s < n; ++s)
    if (silent[s]) merged.adj[s].clear();
  merged = quotient(merged, uf);
  res.initial_is_pi = merged.initial == merged.pi;
  if (res.initial_is_pi) {
    res.lts = merged;
    return res;
  }
  // Prune states that cannot reach pi (initial always kept).
  size_t m = merged.num_states();
  std::vector<std::vector<int>> pred(m);
  for (size_t s = 0; s < m; ++s)
    for (const auto& [lid, dst] : merged.adj[s])
      pred[dst].push_back(static_cast<int>(s));
  std::vector<bool> keep(m, false);
  queue.assign(1, merged.pi);
  keep[merged.pi] = true;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int p : pred[s])
      if (!keep[p]) {
        keep[p] = true;
        queue.push_back(p);
      }
  }
  keep[merged.initial] = true;
  Lts out;
  std::vector<int> map(m, -1);
  for (size_t s = 0; s < m; ++s)
    if (keep[s]) map[s] = out.add_state();
  for (size_t s = 0; s < m; ++s) {
    if (!keep[s]) continue;
    for (const auto& [lid, dst] : merged.adj[s])
      if (keep[dst]) out.add_transition(map[s], merged.labels[lid], map[dst]);
  }
  out.initial = map[merged.initial];
  out.pi = map[merged.pi];
  if (merged.theta >= 0 && map[merged.theta] >= 0) out.theta = map[merged.theta];
  out.sort_edges();
  res.lts = canonical_renumber(out);
  return res;
}

// ---------------------------------------------------------------------------
// Determinization / completion / minimization
// ---------------------------------------------------------------------------

namespace {

std::vector<int> tau_closure(const Lts& l, const std::vector<int>& seed) {
  std::vector<bool> in(l.num_states(), false);
  std::deque<int> queue;
  for (int s : seed)
    if (!in[s]) {
      in[s] = true;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (const auto& [lid, dst] : l.adj[s])
      if (l.labels[lid] == kTau && !in[dst]) {
        in[dst] = true;
        queue.push_back(dst);
      }
  }
  std::vector<int> out;
  for (size_t s = 0; s < l.num_states(); ++s)
    if (in[s]) out.push_back(static_cast<int>(s));
  return out;
}

}  // namespace

Lts determinize_complete(const Lts& l,
                         const std::vector<std::string>& alphabet) {
  std::vector<std::string> sigma = alphabet;
  std::sort(sigma.begin(), sigma.end());
  sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
  for (const auto& lbl : l.labels)
    if (lbl != kTau &&
        !std::binary_search(sigma.begin(), sigma.end(), lbl)) {
      bool used = false;
      for (size_t s = 0; s < l.num_states() && !used; ++s)
        for (const auto& [lid, dst] : l.adj[s])
          if (l.labels[lid] == lbl) { used = true; break; }
      if (used)
        throw std::runtime_error("determinize_complete: label '" + lbl +
                                 "' not in alphabet");
    }

  Lts out;
  std::map<std::vector<int>, int> ids;
  std::deque<std::vector<int>> queue;
  int pi_state = -1, theta_state = -1;
  auto contains_pi = [&](const std::vector<int>& set) {
    return l.pi >= 0 &&
           std::binary_search(set.begin(), set.end(), l.pi);
  };
  auto intern = [&](const std::vector<int>& set) -> int {
    if (contains_pi(set)) {
      if (pi_state < 0) {
        pi_state = out.add_state();
        out.pi = pi_state;
      }
      return pi_state;
    }
    auto [it, inserted] = ids.emplace(set, -1);
    if (inserted) {
      it->second = out.add_state();
      queue.push_back(set);
    }
    return it->second;
  };

  std::vector<int> start = tau_closure(l, {l.initial});
  out.initial = intern(start);
  while (!queue.empty()) {
    std::vector<int> set = queue.front();
    queue.pop_front();
    int src = ids.at(set);
    for (const auto& a : sigma) {
      std::vector<int> succ;
      for (int s : set)
        for (const auto& [lid, dst] : l.adj[s])
          if (l.labels[lid] == a) succ.push_back(dst);
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
      int target;
      if (succ.empty()) {
        if (theta_state < 0) {
          theta_state = out.add_state();
          out.theta = theta_state;
        }
        target = theta_state;
      } else {
        target = intern(tau_closure(l, succ));
      }
      out.add_transition(src, a, target);
    }
  }
  if (theta_state >= 0)
    for (const auto& a : sigma) out.add_transition(theta_state, a, theta_state);
  out.sort_edges();
  return out;
}

Lts minimize_dfa(const Lts& l) {
  size_t n = l.num_states();
  // Alphabet = all labels in use.
  std::vector<std::string> sigma;
  for (const auto& lbl : l.labels)
    if (lbl != kTau) sigma.push_back(lbl);
  std::sort(sigma.begin(), sigma.end());

  // Initial partition: pi vs rest.
  std::vector<int> cls(n, 0);
  if (l.pi >= 0) cls[l.pi] = 1;
  int num_classes = l.pi >= 0 ? 2 : 1;
  for (;;) {
    std::map<std::vector<int>, int> sigs;
    std::vector<int> next(n);
    for (size_t s = 0; s < n; ++s) {
      std::vector<int> sig{cls[s]};
      for (const auto& a : sigma) {
        int target_cls = -1;
        for (const auto& [lid, dst] : l.adj[s])
          if (l.labels[lid] == a) { target_cls = cls[dst]; break; }
        sig.push_back(target_cls);
      }
      auto [it, inserted] =
          sigs.emplace(std::move(sig), static_cast<int>(sigs.size()));
      next[s] = it->second;
    }
    bool stable = static_cast<int>(sigs.size()) == num_classes;
    num_classes = static_cast<int>(sigs.size());
    cls = next;
    if (stable) break;
  }

  Lts out;
  std::vector<int> rep(num_classes, -1);
  std::vector<int> newid(num_classes, -1);
  for (size_t s = 0; s < n; ++s)
    if (rep[cls[s]] < 0) rep[cls[s]] = static_cast<int>(s);
  for (int c = 0; c < num_classes; ++c) newid[c] = out.add_state();
  for (int c = 0; c < num_classes; ++c)
    for (const auto& [lid, dst] : l.adj[rep[c]])
      out.add_transition(newid[c], l.labels[lid], newid[cls[dst]]);
  out.initial = newid[cls[l.initial]];
  if (l.pi >= 0) out.pi = newid[cls[l.pi]];
  if (l.theta >= 0) out.theta = newid[cls[l.theta]];
  out.sort_edges();
  return canonical_renumber(out);
}

Lts remove_pi(const Lts& l) {
  if (l.pi < 0) return l;
  Lts out;
  std::vector<int> map(l.num_states(), -1);
  for (size_t s = 0; s < l.num_states(); ++s)
    if (static_cast<int>(s) != l.pi) map[s] = out.add_state();
  for (size_t s = 0; s < l.num_states(); ++s) {
    if (static_cast<int>(s) == l.pi) continue;
    for (const auto& [lid, dst] : l.adj[s])
      if (dst != l.pi) out.add_transition(map[s], l.labels[lid], map[dst]);
  }
  out.initial = map[l.initial];
  if (l.theta >= 0) out.theta = map[l.theta];
  out.sort_edges();
  return out;
}

// ---------------------------------------------------------------------------
// Trace inclusion
// ---------------------------------------------------------------------------

InclusionResult trace_included(const Lts& cand, const Lts& ta) {
  for (const auto& lbl : cand.labels)
    if (lbl.find(',') != std::string::npos)
      throw std::runtime_error(
          "trace_included: candidate has compound label '" + lbl +
          "' (flatten first)");

  // Dijkstra over (cand state, ta state) pairs keyed by (length, trace) so
  // the first escaping trace found is shortest then lexicographically least.
  using Key = std::pair<size_t, Trace>;
  struct Entry {
    Key key;
    int c, t;
    bool operator>(const Entry& o) const { return key > o.key; }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
  std::map<std::pair<int, int>, Key> best;
  auto push = [&](int c, int t, const Key& key) {
    auto it = best.find({c, t});
    if (it != best.end() && it->second <= key) return;
    best[{c, t}] = key;
    pq.push(Entry{key, c, t});
  };
  push(cand.initial, ta.initial, {0, {}});
  std::optional<Key> escape;
  while (!pq.empty()) {
    Entry e = pq.top();
    pq.pop();
    auto it = best.find({e.c, e.t});
    if (it == best.end() || it->second < e.key) continue;
    if (escape && e.key >= *escape) continue;
    for (const auto& [lid, dst] : cand.adj[e.c]) {
      const std::string& a = cand.labels[lid];
      if (a == kTau) {
        push(dst, e.t, e.key);
        continue;
      }
      int succ = -1;
      for (const auto& [tlid, tdst] : ta.adj[e.t])
        if (ta.labels[tlid] == a) { succ = tdst; break; }
      Key next{e.key.first + 1, e.key.second};
      next.second.push_back(a);
      if (succ < 0) {
        if (!escape || next < *escape) escape = next;
      } else {
        push(dst, succ, next);
      }
    }
  }
  InclusionResult res;
  if (escape) {
    res.holds = false;
    res.counterexample = escape->second;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Trace enumeration (oracles)
// ---------------------------------------------------------------------------

namespace {

void collect_traces(const Lts& l, int s, size_t depth, Trace& prefix,
                    std::set<Trace>& out, std::set<Trace>* err) {
  std::vector<int> closure = tau_closure(l, {s});
  out.insert(prefix);
  if (err && l.pi >= 0 &&
      std::binary_search(closure.begin(), closure.end(), l.pi))
    err->insert(prefix);
  if (depth == 0) return;
  for (int u : closure) {
    if (u == l.pi) continue;
    for (const auto& [lid, dst] : l.adj[u]) {
      const std::string& a = l.labels[lid];
      if (a == kTau) continue;
      prefix.push_back(a);
      collect_traces(l, dst, depth - 1, prefix, out, err);
      prefix.pop_back();
    }
  }
}

}  // namespace

std::set<Trace> traces_upto(const Lts& l, size_t n) {
  std::set<Trace> out;
  Trace prefix;
  collect_traces(l, l.initial, n, prefix, out, nullptr);
  return out;
}

std::set<Trace> error_traces_upto(const Lts& l, size_t n) {
  std::set<Trace> out, err;
  Trace prefix;
  collect_traces(l, l.initial, n, prefix, out, &err);
  return err;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string meta_path_for(const std::string& aut_path) {
  return aut_path + ".meta";
}

static void write_aut_impl(const Lts& l, const std::string& path,
                           const std::vector<std::string>* alphabet) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "des (" << l.initial << "," << l.num_transitions() << ","
     << l.num_states() << ")\n";
  for (size_t s = 0; s < l.num_states(); ++s) {
    auto edges = l.adj[s];
    std::sort(edges.begin(), edges.end(), [&](const auto& a, const auto& b) {
      if (l.labels[a.first] != l.labels[b.first])
        return l.labels[a.first] < l.labels[b.first];
      return a.second < b.second;
    });
    for (const auto& [lid, dst] : edges)
      os << "(" << s << ",\"" << l.labels[lid] << "\"," << dst << ")\n";
  }
  if (l.pi >= 0 || l.theta >= 0 || alphabet) {
    std::ofstream ms(meta_path_for(path));
    if (!ms) throw std::runtime_error("cannot write " + meta_path_for(path));
    if (l.pi >= 0) ms << "pi=" << l.pi << "\n";
    if (l.theta >= 0) ms << "theta=" << l.theta << "\n";
    if (alphabet) {
      ms << "alphabet=";
      for (size_t i = 0; i < alphabet->size(); ++i) {
        if (i) ms << ";";
        ms << (*alphabet)[i];
      }
      ms << "\n";
    }
  }
}

void write_aut(const Lts& l, const std::string& path) {
  write_aut_impl(l, path, nullptr);
}

void write_aut_with_alphabet(const Lts& l, const std::string& path,
                             const std::vector<std::string>& alphabet) {
  write_aut_impl(l, path, &alphabet);
}

Lts read_aut(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("empty .aut file " + path);
  long init = 0, ntrans = 0, nstates = 0;
  if (std::sscanf(line.c_str(), "des (%ld,%ld,%ld)", &init, &ntrans,
                  &nstates) != 3)
    throw std::runtime_error("malformed .aut header in " + path);
  Lts l;
  for (long i = 0; i < nstates; ++i) l.add_state();
  l.initial = static_cast<int>(init);
  long seen = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    size_t q1 = line.find('"');
    size_t q2 = line.rfind('"');
    if (line.front() != '(' || q1 == std::string::npos || q2 <= q1)
      throw std::runtime_error("malformed .aut line: " + line);
    int src = std::stoi(line.substr(1, q1 - 2));
    std::string lbl = line.substr(q1 + 1, q2 - q1 - 1);
    int dst = std::stoi(line.substr(q2 + 2, line.size() - q2 - 3));
    if (src < 0 || src >= nstates || dst < 0 || dst >= nstates)
      throw std::runtime_error("state out of range in .aut line: " + line);
    l.add_transition(src, lbl, dst);
    ++seen;
  }
  if (seen != ntrans)
    throw std::runtime_error("transition count mismatch in " + path);
  std::ifstream ms(meta_path_for(path));
  if (ms) {
    while (std::getline(ms, line)) {
      if (line.rfind("pi=", 0) == 0) l.pi = std::stoi(line.substr(3));
      if (line.rfind("theta=", 0) == 0) l.theta = std::stoi(line.substr(6));
    }
  }
  l.sort_edges();
  return l;
}

std::vector<std::string> read_meta_alphabet(const std::string& aut_path) {
  std::vector<std::string> out;
  std::ifstream ms(meta_path_for(aut_path));
  std::string line;
  while (ms && std::getline(ms, line)) {
    if (line.rfind("alphabet=", 0) == 0) {
      std::string rest = line.substr(9);
      std::string cur;
      for (char c : rest) {
        if (c == ';') {
          if (!cur.empty()) out.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      if (!cur.empty()) out.push_back(cur);
    }
  }
  return out;
}

void write_dot(const Lts& l, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "digraph lts {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  init [shape=point];\n  init -> s" << l.initial << ";\n";
  for (size_t s = 0; s < l.num_states(); ++s) {
    os << "  s" << s << " [label=\"" << s << "\"";
    if (static_cast<int>(s) == l.pi)
      os << ", shape=doublecircle, color=red, label=\"pi\"";
    if (static_cast<int>(s) == l.theta)
      os << ", style=dashed, label=\"theta\"";
    os << "];\n";
  }
  for (size_t s = 0; s < l.num_states(); ++s)
    for (const auto& [lid, dst] : l.adj[s])
      os << "  s" << s << " -> s" << dst << " [label=\"" << l.labels[lid]
         << "\"];\n";
  os << "}\n";
}

}  // namespace agc
