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

#include "regroup/design.h"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "regroup/rtl.h"

namespace regroup {

size_t DecompiledDesign::dff_in_registers() const {
  size_t n = 0;
  for (const Register& r : registers) n += r.width();
  return n;
}

size_t DecompiledDesign::dff_in_memories() const {
  size_t n = 0;
  for (const MemoryBlock& m : memories) n += m.rows * m.width;
  return n;
}

NetlistBuilder ToBuilder(const Netlist& netlist) {
  NetlistBuilder b(netlist.name());
  b.set_clock(netlist.clock());
  b.set_dangling_policy(DanglingPolicy::kAllow);
  for (const Wire& w : netlist.wires()) b.wire(w.name);
  for (const Cell& c : netlist.cells()) {
    switch (c.kind) {
      case CellKind::kLut:
        b.add_lut(c.inputs, c.output, c.table, c.cover);
        break;
      case CellKind::kDff:
        b.add_dff(c.inputs[0], c.output, c.init);
        break;
      default:
        b.add_cell(c.kind, c.inputs, c.output);
    }
  }
  for (WireId w : netlist.inputs()) b.add_input(w);
  for (WireId w : netlist.outputs()) b.add_output(w);
  for (WireId w : netlist.externals()) b.mark_external(w);
  for (WireId w : netlist.sinks()) b.mark_sink(w);
  return b;
}

namespace {

// Builder over the wire table of `netlist` holding only the cells in `keep`.
NetlistBuilder SubsetBuilder(const Netlist& netlist,
                             const std::vector<bool>& keep) {
  NetlistBuilder b(netlist.name());
  b.set_clock(netlist.clock());
  b.set_dangling_policy(DanglingPolicy::kAllow);
  for (const Wire& w : netlist.wires()) b.wire(w.name);
  for (const Cell& c : netlist.cells()) {
    if (!keep[c.id.index()]) continue;
    switch (c.kind) {
      case CellKind::kLut:
        b.add_lut(c.inputs, c.output, c.table, c.cover);
        break;
      case CellKind::kDff:
        b.add_dff(c.inputs[0], c.output, c.init);
        break;
      default:
        b.add_cell(c.kind, c.inputs, c.output);
    }
  }
  for (WireId w : netlist.inputs()) b.add_input(w);
  for (WireId w : netlist.outputs()) b.add_output(w);
  return b;
}

std::string UniqueWireName(const NetlistBuilder& b, const std::string& base) {
  if (!b.find_wire(base)) return base;
  for (int k = 2;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!b.find_wire(candidate)) return candidate;
  }
}

// Gives every LUT-folded next function a wire of its own.
Netlist Materialize(const Netlist& netlist,
                    std::vector<RegisterGroup>& groups) {
  bool any = false;
  for (const RegisterGroup& g : groups) {
    for (const EnabledDff& m : g.members) any |= m.next_function.has_value();
  }
  if (!any) return netlist;
  NetlistBuilder b = ToBuilder(netlist);
  for (RegisterGroup& g : groups) {
    for (EnabledDff& m : g.members) {
      if (!m.next_function || m.next.valid()) continue;
      WireId out =
          b.wire(UniqueWireName(b, netlist.wire_name(m.q) + "$next"));
      b.add_lut(m.next_function->inputs, out, m.next_function->table);
      m.next = out;
    }
  }
  return std::move(b).Build();
}

std::string Plural(size_t n, std::string_view word) {
  return std::to_string(n) + " " + std::string(word) + (n == 1 ? "" : "s");
}

}  // namespace

Netlist RemoveDeadCells(const Netlist& netlist) {
  const auto cells = netlist.cells();
  std::vector<bool> keep(cells.size(), true);
  std::vector<size_t> live_readers(netlist.wires().size(), 0);
  for (const Cell& c : cells) {
    for (WireId in : c.inputs) ++live_readers[in.index()];
  }
  auto dead = [&](const Cell& c) {
    return !c.is_dff() && live_readers[c.output.index()] == 0 &&
           !netlist.is_output(c.output) && !netlist.is_sink(c.output);
  };
  std::vector<CellId> work;
  for (const Cell& c : cells) {
    if (dead(c)) work.push_back(c.id);
  }
  while (!work.empty()) {
    CellId id = work.back();
    work.pop_back();
    const Cell& c = netlist.cell(id);
    if (!keep[id.index()] || !dead(c)) continue;
    keep[id.index()] = false;
    for (WireId in : c.inputs) {
      if (--live_readers[in.index()] == 0) {
        if (auto d = netlist.driver(in)) work.push_back(*d);
      }
    }
  }
  NetlistBuilder b = SubsetBuilder(netlist, keep);
  for (WireId w : netlist.externals()) b.mark_external(w);
  for (WireId w : netlist.sinks()) b.mark_sink(w);
  return std::move(b).Build();
}

DecompiledDesign Decompile(const Netlist& input,
                           const DecompileOptions& options) {
  DecompiledDesign design;
  design.name = input.name();

  Netlist prepared = options.optimize ? RemoveDeadCells(input) : input;
  std::vector<RegisterGroup> groups =
      PartitionByEnable(prepared, options.patterns);
  design.source = Materialize(prepared, groups);
  const Netlist& source = design.source;
  design.group_count = groups.size();

  // Per-group ordering is independent; slots keep the result order fixed.
  std::vector<Register> ordered(groups.size());
  auto order_one = [&](size_t i) {
    DependencyGraph graph = BuildDependencyGraph(source, groups[i]);
    ordered[i] = OrderRegister(source, graph, groups[i].enable,
                               groups[i].polarity);
  };
  const size_t jobs = std::max<size_t>(1, options.jobs);
  if (jobs == 1 || groups.size() < 2) {
    for (size_t i = 0; i < groups.size(); ++i) order_one(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t t = 0; t < std::min(jobs, groups.size()); ++t) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < groups.size(); i = next++) order_one(i);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  std::unordered_set<std::string> taken;
  for (const Wire& w : source.wires()) taken.insert(w.name);
  auto claim = [&](std::string name) {
    if (taken.count(name)) {
      std::string base = name + "_reg";
      name = base;
      for (int k = 2; taken.count(name); ++k) {
        name = base + std::to_string(k);
      }
    }
    taken.insert(name);
    return name;
  };
  for (Register& reg : ordered) {
    for (auto [x, y] : reg.removed_edges) {
      design.diagnostics.push_back(
          {"removed-edge", "register " + reg.name + ": dropped dependency " +
                               source.wire_name(x) + " -> " +
                               source.wire_name(y) + " to break a cycle"});
    }
  }

  // Memory aggregation consumes registers; failures leave them intact.
  std::vector<bool> in_memory(ordered.size(), false);
  if (options.memory) {
    for (const MemoryCandidateGroup& group :
         FindMemoryGroups(source, ordered)) {
      const size_t rows = group.registers.size();
      const std::string head =
          "grouped " + Plural(rows, "register") + " of width " +
          std::to_string(ordered[group.registers[0]].width()) +
          " under enable " + source.wire_name(group.shared_enable_input);
      try {
        AddressRecovery address = RecoverAddress(source, group);
        WritePortRecovery write = RecoverWritePort(source, group, ordered);
        ReadPortRecovery read =
            RecoverReadPort(source, group, ordered, address, write);
        design.memories.push_back(
            AssembleMemory(source, group, ordered, address, write, read));
        for (size_t r : group.registers) in_memory[r] = true;
      } catch (const MemoryError& e) {
        const bool address_failure =
            e.kind() == MemoryErrorKind::kNotPureDecode ||
            e.kind() == MemoryErrorKind::kNonUniqueAddress ||
            e.kind() == MemoryErrorKind::kMultipleAddresses;
        design.diagnostics.push_back(
            {"memory-fallback",
             head + (address_failure ? ", no unique address" : "") +
                 "; kept as registers (" + e.what() + ")"});
      }
    }
  }
  for (size_t i = 0; i < ordered.size(); ++i) {
    if (!in_memory[i]) design.registers.push_back(std::move(ordered[i]));
  }
  for (Register& reg : design.registers) reg.name = claim(reg.name);
  for (MemoryBlock& mem : design.memories) {
    mem.name = claim(mem.name);
    for (Register& row : mem.row_registers) row.name = claim(row.name);
  }

  if (options.inject_swap) {
    for (Register& reg : design.registers) {
      if (reg.width() < 2) continue;
      std::swap(reg.bits[0].next, reg.bits[1].next);
      design.diagnostics.push_back(
          {"mutation", "swapped next values of bits 0 and 1 of " + reg.name});
      break;
    }
  }

  // Consumption: storage cells go, then support logic whose every reader
  // went too.
  std::vector<bool> removed(source.cells().size(), false);
  std::vector<bool> is_sink(source.wires().size(), false);
  std::set<CellId> candidates;
  auto sink = [&](WireId w) { is_sink[w.index()] = true; };
  for (const Register& reg : design.registers) {
    sink(reg.enable);
    for (const EnabledDff& bit : reg.bits) {
      removed[bit.dff.index()] = true;
      sink(bit.next);
      candidates.insert(bit.pattern_cells.begin(), bit.pattern_cells.end());
    }
  }
  for (const MemoryBlock& mem : design.memories) {
    sink(mem.enable);
    for (WireId w : mem.addr) sink(w);
    for (WireId w : mem.write_port) sink(w);
    for (const Register& row : mem.row_registers) {
      for (const EnabledDff& bit : row.bits) removed[bit.dff.index()] = true;
    }
    // The memory drives its read port now; the tree roots go.
    for (WireId w : mem.read_port) removed[source.driver(w)->index()] = true;
    candidates.insert(mem.support_cells.begin(), mem.support_cells.end());
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (CellId c : candidates) {
      if (removed[c.index()]) continue;
      const Cell& cell = source.cell(c);
      if (source.is_output(cell.output) || is_sink[cell.output.index()]) {
        continue;
      }
      auto readers = source.readers(cell.output);
      bool all_gone = std::all_of(readers.begin(), readers.end(),
                                  [&](CellId r) { return removed[r.index()]; });
      if (all_gone) {
        removed[c.index()] = true;
        changed = true;
      }
    }
  }

  std::vector<bool> keep(removed.size());
  for (size_t i = 0; i < removed.size(); ++i) keep[i] = !removed[i];
  NetlistBuilder b = SubsetBuilder(source, keep);
  std::set<WireId> externals;
  std::set<WireId> sinks;
  for (const Register& reg : design.registers) {
    sinks.insert(reg.enable);
    for (const EnabledDff& bit : reg.bits) {
      externals.insert(bit.q);
      sinks.insert(bit.next);
    }
  }
  for (const MemoryBlock& mem : design.memories) {
    sinks.insert(mem.enable);
    sinks.insert(mem.addr.begin(), mem.addr.end());
    sinks.insert(mem.write_port.begin(), mem.write_port.end());
    externals.insert(mem.read_port.begin(), mem.read_port.end());
  }
  for (WireId w : externals) b.mark_external(w);
  for (WireId w : sinks) b.mark_sink(w);
  design.residual = std::move(b).Build();

  for (CellId d : source.dffs()) {
    const Cell& c = source.cell(d);
    if (c.init == InitValue::kUnknown) {
      design.diagnostics.push_back(
          {"unknown-init", source.wire_name(c.output) +
                               " has an unknown initial value; simulated as 0"});
    }
  }
  for (const auto& [from, to] : RtlNameMap(design)) {
    design.diagnostics.push_back({"rename", from + " -> " + to});
  }
  return design;
}

void CheckDesignInvariants(const DecompiledDesign& design) {
  const Netlist& source = design.source;
  std::vector<int> owner(source.cells().size(), 0);
  auto claim = [&](CellId c) {
    if (++owner[c.index()] > 1) {
      throw InvariantError("DFF " + source.wire_name(source.cell(c).output) +
                           " is claimed twice");
    }
  };
  for (const Register& reg : design.registers) {
    for (const EnabledDff& bit : reg.bits) claim(bit.dff);
  }
  for (const MemoryBlock& mem : design.memories) {
    for (const Register& row : mem.row_registers) {
      for (const EnabledDff& bit : row.bits) claim(bit.dff);
    }
  }
  for (CellId d : design.residual.dffs()) {
    auto q = source.find_wire(design.residual.wire_name(
        design.residual.cell(d).output));
    if (!q || !source.driver(*q)) {
      throw InvariantError("residual DFF missing from the source");
    }
    claim(*source.driver(*q));
  }
  if (design.dff_total() != design.dff_in_registers() +
                                design.dff_in_memories() +
                                design.dff_residual()) {
    throw InvariantError("DFF accounting does not add up");
  }

  const bool mutated = std::any_of(
      design.diagnostics.begin(), design.diagnostics.end(),
      [](const Diagnostic& d) { return d.kind == "mutation"; });
  if (mutated) return;
  for (const Register& reg : design.registers) {
    RegisterGroup group{reg.enable, reg.polarity, reg.bits};
    DependencyGraph graph = BuildDependencyGraph(source, group);
    std::set<std::pair<WireId, WireId>> dropped(reg.removed_edges.begin(),
                                                reg.removed_edges.end());
    for (auto [x, y] : graph.edges) {
      if (dropped.count({reg.bits[x].q, reg.bits[y].q})) continue;
      if (x >= y) {
        throw InvariantError("register " + reg.name + " places " +
                             source.wire_name(reg.bits[x].q) + " after " +
                             source.wire_name(reg.bits[y].q));
      }
    }
  }
}

}  // namespace regroup
