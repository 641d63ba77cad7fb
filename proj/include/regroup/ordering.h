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

#ifndef REGROUP_ORDERING_H_
#define REGROUP_ORDERING_H_

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "regroup/enable.h"
#include "regroup/netlist.h"

namespace regroup {

using Edge = std::pair<size_t, size_t>;

// Dependencies among the members of one register group. Edge (x, y) means
// the next value of y reads the current value of x, so x precedes y.
struct DependencyGraph {
  std::vector<EnabledDff> nodes;
  std::vector<Edge> edges;  // sorted, unique, no self edges
  std::vector<bool> self_deps;
};

DependencyGraph BuildDependencyGraph(const Netlist& netlist,
                                     const RegisterGroup& group);

struct Register {
  std::string name;
  std::vector<EnabledDff> bits;  // bits[0] is the LSB
  WireId enable;
  Polarity polarity = Polarity::kActiveHigh;
  // Dependency edges dropped to break cycles, as (source q, dest q).
  std::vector<std::pair<WireId, WireId>> removed_edges;

  size_t width() const { return bits.size(); }
};

struct OrderResult {
  std::vector<size_t> order;
  std::vector<Edge> removed;
};

// Strongly connected components small enough for an exact minimum feedback
// edge set; larger ones fall back to greedy removal.
inline constexpr size_t kExactCycleBreakLimit = 12;

// Orders `node_count` nodes so that every edge (x, y) has x before y. Ties
// among ready nodes go to the smallest label. Cycles are broken first by
// removing, one at a time, the smallest-labelled cycle edge whose removal
// keeps the feedback set minimum (exact up to kExactCycleBreakLimit nodes per
// component, plain smallest-label greedy above).
OrderResult OrderByDependencies(size_t node_count, std::span<const Edge> edges,
                                std::span<const std::string> labels);

// Register name from the longest common prefix of the member Q names,
// falling back to reg_<enable>.
std::string RegisterName(const Netlist& netlist,
                         std::span<const EnabledDff> members, WireId enable);

Register OrderRegister(const Netlist& netlist, const DependencyGraph& graph,
                       WireId enable, Polarity polarity,
                       std::string_view name_hint = {});

// Minimum number of edges whose removal makes the graph acyclic, by
// dynamic programming over vertex subsets. Exponential; intended for small
// graphs.
size_t MinimumFeedbackEdges(size_t node_count, std::span<const Edge> edges);

}  // namespace regroup

#endif  // REGROUP_ORDERING_H_
