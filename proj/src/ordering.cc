// Copyright 2026 The Regroup Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "regroup/ordering.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <limits>
#include <stdexcept>
#include <set>
#include <unordered_map>

namespace regroup {

DependencyGraph BuildDependencyGraph(const Netlist& netlist,
                                     const RegisterGroup& group) {
  DependencyGraph graph;
  graph.nodes = group.members;
  graph.self_deps.assign(group.members.size(), false);

  std::unordered_map<CellId, size_t> member_of;
  for (size_t i = 0; i < group.members.size(); ++i) {
    member_of.emplace(group.members[i].dff, i);
  }

  std::set<Edge> edges;
  for (size_t y = 0; y < group.members.size(); ++y) {
    const EnabledDff& member = group.members[y];
    std::vector<WireId> starts;
    if (member.next_function && !member.next.valid()) {
      starts = member.next_function->inputs;
    } else {
      starts.push_back(member.next);
    }
    for (WireId start : starts) {
      for (CellId c : UpwardDfs(netlist, start)) {
        if (!netlist.cell(c).is_dff()) continue;
        auto it = member_of.find(c);
        if (it == member_of.end()) continue;
        if (it->second == y) {
          graph.self_deps[y] = true;
        } else {
          edges.emplace(it->second, y);
        }
      }
    }
  }
  graph.edges.assign(edges.begin(), edges.end());
  return graph;
}

namespace {

// Tarjan's algorithm, iterative. Returns the component index of every node.
std::vector<size_t> StronglyConnected(size_t n,
                                      const std::vector<std::vector<size_t>>& adj,
                                      size_t* count) {
  constexpr size_t kUnset = static_cast<size_t>(-1);
  std::vector<size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<size_t> stack;
  size_t next_index = 0;
  *count = 0;
  struct Frame {
    size_t v;
    size_t child;
  };
  for (size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < adj[f.v].size()) {
        size_t w = adj[f.v][f.child++];
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      size_t v = f.v;
      frames.pop_back();
      if (!frames.empty()) {
        low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
      if (low[v] == index[v]) {
        while (true) {
          size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = *count;
          if (w == v) break;
        }
        ++*count;
      }
    }
  }
  return comp;
}

// Edges that lie on some cycle: both ends in one nontrivial component.
std::vector<Edge> CycleEdges(size_t n, const std::set<Edge>& edges) {
  std::vector<std::vector<size_t>> adj(n);
  for (auto [u, v] : edges) adj[u].push_back(v);
  size_t count = 0;
  std::vector<size_t> comp = StronglyConnected(n, adj, &count);
  std::vector<Edge> out;
  for (const Edge& e : edges) {
    if (comp[e.first] == comp[e.second]) out.push_back(e);
  }
  return out;
}

size_t MinimumFeedbackOver(size_t n, const std::set<Edge>& edges) {
  std::vector<Edge> list(edges.begin(), edges.end());
  return MinimumFeedbackEdges(n, list);
}

}  // namespace

size_t MinimumFeedbackEdges(size_t node_count, std::span<const Edge> edges) {
  if (node_count == 0) return 0;
  // Only components matter; solve each independently.
  std::vector<std::vector<size_t>> adj(node_count);
  for (auto [u, v] : edges) {
    if (u != v) adj[u].push_back(v);
  }
  size_t count = 0;
  std::vector<size_t> comp = StronglyConnected(node_count, adj, &count);
  std::vector<std::vector<size_t>> members(count);
  for (size_t v = 0; v < node_count; ++v) members[comp[v]].push_back(v);

  size_t total = 0;
  for (const auto& group : members) {
    const size_t m = group.size();
    if (m < 2) continue;
    if (m > 24) {
      throw std::invalid_argument("MinimumFeedbackEdges: component too large");
    }
    std::unordered_map<size_t, size_t> local;
    for (size_t i = 0; i < m; ++i) local.emplace(group[i], i);
    std::vector<uint32_t> out(m, 0);
    for (auto [u, v] : edges) {
      if (u == v) continue;
      auto iu = local.find(u);
      auto iv = local.find(v);
      if (iu == local.end() || iv == local.end()) continue;
      out[iu->second] |= 1u << iv->second;
    }
    // best[S]: fewest backward edges when S occupies the first |S| slots.
    // Appending v after S breaks every edge from v into S.
    const uint32_t full = (1u << m) - 1;
    std::vector<uint32_t> best(size_t{1} << m,
                               std::numeric_limits<uint32_t>::max());
    best[0] = 0;
    for (uint32_t s = 0; s < full; ++s) {
      if (best[s] == std::numeric_limits<uint32_t>::max()) continue;
      for (size_t v = 0; v < m; ++v) {
        if (s & (1u << v)) continue;
        uint32_t cost =
            best[s] + static_cast<uint32_t>(std::popcount(out[v] & s));
        uint32_t& slot = best[s | (1u << v)];
        slot = std::min(slot, cost);
      }
    }
    total += best[full];
  }
  return total;
}

OrderResult OrderByDependencies(size_t node_count, std::span<const Edge> edges,
                                std::span<const std::string> labels) {
  auto label_less = [&](size_t a, size_t b) {
    if (labels[a] != labels[b]) return NaturalLess(labels[a], labels[b]);
    return a < b;
  };
  auto edge_less = [&](const Edge& a, const Edge& b) {
    if (a.first != b.first) return label_less(a.first, b.first);
    if (a.second != b.second) return label_less(a.second, b.second);
    return false;
  };

  std::set<Edge> remaining;
  for (const Edge& e : edges) {
    if (e.first != e.second) remaining.insert(e);
  }

  OrderResult result;
  while (true) {
    std::vector<Edge> cyclic = CycleEdges(node_count, remaining);
    if (cyclic.empty()) break;
    std::sort(cyclic.begin(), cyclic.end(), edge_less);

    // The component holding the smallest cycle edge decides the method.
    std::vector<std::vector<size_t>> adj(node_count);
    for (auto [u, v] : remaining) adj[u].push_back(v);
    size_t count = 0;
    std::vector<size_t> comp = StronglyConnected(node_count, adj, &count);
    std::vector<size_t> sizes(count, 0);
    for (size_t c : comp) ++sizes[c];

    Edge pick = cyclic.front();
    const size_t target = comp[pick.first];
    if (sizes[target] <= kExactCycleBreakLimit) {
      std::set<Edge> local;
      for (const Edge& e : remaining) {
        if (comp[e.first] == target && comp[e.second] == target) {
          local.insert(e);
        }
      }
      const size_t optimum = MinimumFeedbackOver(node_count, local);
      for (const Edge& e : cyclic) {
        if (comp[e.first] != target) continue;
        std::set<Edge> trial = local;
        trial.erase(e);
        if (MinimumFeedbackOver(node_count, trial) + 1 == optimum) {
          pick = e;
          break;
        }
      }
    }
    remaining.erase(pick);
    result.removed.push_back(pick);
  }

  std::vector<std::vector<size_t>> succ(node_count);
  std::vector<size_t> indegree(node_count, 0);
  for (auto [u, v] : remaining) {
    succ[u].push_back(v);
    ++indegree[v];
  }
  std::set<size_t, decltype(label_less)> ready(label_less);
  for (size_t v = 0; v < node_count; ++v) {
    if (indegree[v] == 0) ready.insert(v);
  }
  while (!ready.empty()) {
    size_t v = *ready.begin();
    ready.erase(ready.begin());
    result.order.push_back(v);
    for (size_t w : succ[v]) {
      if (--indegree[w] == 0) ready.insert(w);
    }
  }
  return result;
}

std::string RegisterName(const Netlist& netlist,
                         std::span<const EnabledDff> members, WireId enable) {
  std::string prefix;
  if (!members.empty()) {
    prefix = netlist.wire_name(members[0].q);
    bool cut = false;
    for (const EnabledDff& m : members.subspan(1)) {
      const std::string& name = netlist.wire_name(m.q);
      size_t n = 0;
      while (n < prefix.size() && n < name.size() && prefix[n] == name[n]) ++n;
      if (n < prefix.size() || n < name.size()) cut = true;
      prefix.resize(n);
    }
    // "r10".."r19" share "r1"; drop a digit run the cut went through.
    if (cut && members.size() > 1) {
      bool split_digits = false;
      for (const EnabledDff& m : members) {
        const std::string& name = netlist.wire_name(m.q);
        if (!prefix.empty() && name.size() > prefix.size() &&
            std::isdigit(static_cast<unsigned char>(prefix.back())) &&
            std::isdigit(static_cast<unsigned char>(name[prefix.size()]))) {
          split_digits = true;
        }
      }
      if (split_digits) {
        while (!prefix.empty() &&
               std::isdigit(static_cast<unsigned char>(prefix.back()))) {
          prefix.pop_back();
        }
      }
    }
    while (!prefix.empty() &&
           !std::isalnum(static_cast<unsigned char>(prefix.back()))) {
      prefix.pop_back();
    }
  }
  if (prefix.empty()) prefix = "reg_" + netlist.wire_name(enable);
  return prefix;
}

Register OrderRegister(const Netlist& netlist, const DependencyGraph& graph,
                       WireId enable, Polarity polarity,
                       std::string_view name_hint) {
  std::vector<std::string> labels;
  labels.reserve(graph.nodes.size());
  for (const EnabledDff& node : graph.nodes) {
    labels.push_back(netlist.wire_name(node.q));
  }
  OrderResult ordered =
      OrderByDependencies(graph.nodes.size(), graph.edges, labels);

  Register reg;
  reg.enable = enable;
  reg.polarity = polarity;
  for (size_t i : ordered.order) reg.bits.push_back(graph.nodes[i]);
  for (auto [x, y] : ordered.removed) {
    reg.removed_edges.emplace_back(graph.nodes[x].q, graph.nodes[y].q);
  }
  reg.name = name_hint.empty() ? RegisterName(netlist, graph.nodes, enable)
                               : std::string(name_hint);
  return reg;
}

}  // namespace regroup
