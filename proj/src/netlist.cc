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

#include "regroup/netlist.h"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

namespace regroup {

std::string_view CellKindName(CellKind kind) {
  switch (kind) {
    case CellKind::kAnd:
      return "and";
    case CellKind::kOr:
      return "or";
    case CellKind::kNot:
      return "not";
    case CellKind::kXor:
      return "xor";
    case CellKind::kNand:
      return "nand";
    case CellKind::kNor:
      return "nor";
    case CellKind::kBuf:
      return "buf";
    case CellKind::kMux:
      return "mux";
    case CellKind::kLut:
      return "lut";
    case CellKind::kConst0:
      return "const0";
    case CellKind::kConst1:
      return "const1";
    case CellKind::kDff:
      return "dff";
  }
  return "?";
}

std::optional<size_t> CellArity(CellKind kind) {
  switch (kind) {
    case CellKind::kNot:
    case CellKind::kBuf:
    case CellKind::kDff:
      return 1;
    case CellKind::kAnd:
    case CellKind::kOr:
    case CellKind::kXor:
    case CellKind::kNand:
    case CellKind::kNor:
      return 2;
    case CellKind::kMux:
      return 3;
    case CellKind::kConst0:
    case CellKind::kConst1:
      return 0;
    case CellKind::kLut:
      return std::nullopt;
  }
  return std::nullopt;
}

TruthTable TruthTable::FromFunction(size_t arity,
                                    const std::function<bool(uint32_t)>& f) {
  TruthTable table(arity);
  for (uint32_t row = 0; row < table.rows(); ++row) {
    table.set(row, f(row));
  }
  return table;
}

TruthTable TruthTable::ForGate(CellKind kind) {
  auto bit = [](uint32_t row, int j) { return ((row >> j) & 1u) != 0; };
  switch (kind) {
    case CellKind::kAnd:
      return FromFunction(2, [&](uint32_t r) { return bit(r, 0) && bit(r, 1); });
    case CellKind::kOr:
      return FromFunction(2, [&](uint32_t r) { return bit(r, 0) || bit(r, 1); });
    case CellKind::kXor:
      return FromFunction(2, [&](uint32_t r) { return bit(r, 0) != bit(r, 1); });
    case CellKind::kNand:
      return FromFunction(2,
                          [&](uint32_t r) { return !(bit(r, 0) && bit(r, 1)); });
    case CellKind::kNor:
      return FromFunction(2,
                          [&](uint32_t r) { return !(bit(r, 0) || bit(r, 1)); });
    case CellKind::kNot:
      return FromFunction(1, [&](uint32_t r) { return !bit(r, 0); });
    case CellKind::kBuf:
      return FromFunction(1, [&](uint32_t r) { return bit(r, 0); });
    case CellKind::kMux:
      return FromFunction(
          3, [&](uint32_t r) { return bit(r, 0) ? bit(r, 2) : bit(r, 1); });
    case CellKind::kConst0:
      return FromFunction(0, [](uint32_t) { return false; });
    case CellKind::kConst1:
      return FromFunction(0, [](uint32_t) { return true; });
    case CellKind::kLut:
    case CellKind::kDff:
      break;
  }
  throw std::logic_error("no fixed truth table for cell kind");
}

std::string TruthTable::ToBinaryString() const {
  std::string out;
  out.reserve(rows());
  for (size_t row = rows(); row-- > 0;) {
    out.push_back(bits_[row] ? '1' : '0');
  }
  return out;
}

std::string_view NetlistErrorKindName(NetlistErrorKind kind) {
  switch (kind) {
    case NetlistErrorKind::kMultipleDrivers:
      return "MultipleDrivers";
    case NetlistErrorKind::kDanglingWire:
      return "DanglingWire";
    case NetlistErrorKind::kUndrivenWire:
      return "UndrivenWire";
    case NetlistErrorKind::kCombinationalLoop:
      return "CombinationalLoop";
    case NetlistErrorKind::kBadArity:
      return "BadArity";
    case NetlistErrorKind::kUnknownWire:
      return "UnknownWire";
  }
  return "?";
}

NetlistError::NetlistError(NetlistErrorKind kind, std::string message,
                           std::vector<std::string> witness)
    : std::runtime_error(std::string(NetlistErrorKindName(kind)) + ": " +
                         message),
      kind_(kind),
      witness_(std::move(witness)) {}

std::optional<WireId> Netlist::find_wire(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<CellId> Netlist::driver(WireId wire) const {
  CellId id = driver_[wire.index()];
  if (!id.valid()) return std::nullopt;
  return id;
}

NetlistBuilder::NetlistBuilder(std::string name) : name_(std::move(name)) {}

WireId NetlistBuilder::wire(std::string_view name) {
  auto [it, inserted] = by_name_.try_emplace(
      std::string(name), WireId(static_cast<uint32_t>(wires_.size())));
  if (inserted) wires_.emplace_back(name);
  return it->second;
}

std::optional<WireId> NetlistBuilder::find_wire(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

void NetlistBuilder::add_input(WireId wire) { inputs_.push_back(wire); }
void NetlistBuilder::add_output(WireId wire) { outputs_.push_back(wire); }
void NetlistBuilder::mark_unused(WireId wire) { unused_.push_back(wire); }
void NetlistBuilder::mark_external(WireId wire) { externals_.push_back(wire); }
void NetlistBuilder::mark_sink(WireId wire) { sinks_.push_back(wire); }

CellId NetlistBuilder::add_cell(CellKind kind, std::vector<WireId> inputs,
                                WireId output) {
  Cell cell;
  cell.id = CellId(static_cast<uint32_t>(cells_.size()));
  cell.kind = kind;
  cell.inputs = std::move(inputs);
  cell.output = output;
  cells_.push_back(std::move(cell));
  return cells_.back().id;
}

CellId NetlistBuilder::add_lut(std::vector<WireId> inputs, WireId output,
                               TruthTable table,
                               std::vector<std::string> cover) {
  CellId id = add_cell(CellKind::kLut, std::move(inputs), output);
  cells_.back().table = table;
  cells_.back().cover = std::move(cover);
  return id;
}

CellId NetlistBuilder::add_dff(WireId d, WireId q, InitValue init) {
  CellId id = add_cell(CellKind::kDff, {d}, q);
  cells_.back().init = init;
  return id;
}

WireId NetlistBuilder::gate(CellKind kind,
                            std::initializer_list<std::string_view> inputs,
                            std::string_view output) {
  std::vector<WireId> ins;
  for (std::string_view in : inputs) ins.push_back(wire(in));
  WireId out = wire(output);
  add_cell(kind, std::move(ins), out);
  return out;
}

WireId NetlistBuilder::input(std::string_view name) {
  WireId id = wire(name);
  add_input(id);
  return id;
}

WireId NetlistBuilder::output(std::string_view name) {
  WireId id = wire(name);
  add_output(id);
  return id;
}

namespace {

void CheckArity(const Cell& cell, const std::vector<std::string>& names) {
  size_t got = cell.inputs.size();
  if (cell.kind == CellKind::kLut) {
    if (got > kMaxLutInputs || cell.table.arity() != got) {
      throw NetlistError(NetlistErrorKind::kBadArity,
                         "LUT driving '" + names[cell.output.index()] +
                             "' has " + std::to_string(got) +
                             " inputs but a table of arity " +
                             std::to_string(cell.table.arity()));
    }
    return;
  }
  size_t want = *CellArity(cell.kind);
  if (got != want) {
    throw NetlistError(NetlistErrorKind::kBadArity,
                       std::string(CellKindName(cell.kind)) + " driving '" +
                           names[cell.output.index()] + "' expects " +
                           std::to_string(want) + " inputs, got " +
                           std::to_string(got));
  }
}

}  // namespace

Netlist NetlistBuilder::Build() && {
  Netlist n;
  n.name_ = std::move(name_);
  n.clock_ = std::move(clock_);
  const size_t wire_count = wires_.size();

  for (const Cell& cell : cells_) {
    if (!cell.output.valid() || cell.output.index() >= wire_count) {
      throw NetlistError(NetlistErrorKind::kUnknownWire,
                         "cell has no valid output wire");
    }
    for (WireId in : cell.inputs) {
      if (!in.valid() || in.index() >= wire_count) {
        throw NetlistError(NetlistErrorKind::kUnknownWire,
                           "cell driving '" + wires_[cell.output.index()] +
                               "' reads an unknown wire");
      }
    }
    CheckArity(cell, wires_);
  }

  n.flags_.assign(wire_count, 0);
  auto flag_all = [&](const std::vector<WireId>& ids, uint8_t flag) {
    for (WireId id : ids) n.flags_[id.index()] |= flag;
  };
  flag_all(inputs_, Netlist::kInputFlag);
  flag_all(outputs_, Netlist::kOutputFlag);
  flag_all(externals_, Netlist::kExternalFlag);
  flag_all(sinks_, Netlist::kSinkFlag);
  std::vector<bool> unused(wire_count, false);
  for (WireId id : unused_) unused[id.index()] = true;

  n.driver_.assign(wire_count, CellId());
  n.fanout_.assign(wire_count, {});
  for (const Cell& cell : cells_) {
    const uint32_t out = cell.output.index();
    const std::string& name = wires_[out];
    if (n.driver_[out].valid()) {
      throw NetlistError(NetlistErrorKind::kMultipleDrivers,
                         "wire '" + name + "' has more than one driver",
                         {name});
    }
    if (n.flags_[out] & (Netlist::kInputFlag | Netlist::kExternalFlag)) {
      throw NetlistError(NetlistErrorKind::kMultipleDrivers,
                         "wire '" + name +
                             "' is driven both externally and by a cell",
                         {name});
    }
    n.driver_[out] = cell.id;
    for (WireId in : cell.inputs) {
      auto& readers = n.fanout_[in.index()];
      if (readers.empty() || readers.back() != cell.id) {
        readers.push_back(cell.id);
      }
    }
  }

  for (uint32_t i = 0; i < wire_count; ++i) {
    const bool driven =
        n.driver_[i].valid() ||
        (n.flags_[i] & (Netlist::kInputFlag | Netlist::kExternalFlag));
    const bool read = !n.fanout_[i].empty() ||
                      (n.flags_[i] & (Netlist::kOutputFlag | Netlist::kSinkFlag));
    if (read && !driven) {
      throw NetlistError(NetlistErrorKind::kUndrivenWire,
                         "wire '" + wires_[i] + "' is read but never driven",
                         {wires_[i]});
    }
    if (dangling_ == DanglingPolicy::kReject && n.driver_[i].valid() &&
        !read && !unused[i]) {
      throw NetlistError(NetlistErrorKind::kDanglingWire,
                         "wire '" + wires_[i] + "' is driven but never read",
                         {wires_[i]});
    }
  }

  // Kahn over the combinational cells; DFF outputs are sources.
  std::vector<uint32_t> pending(cells_.size(), 0);
  std::vector<CellId> ready;
  for (const Cell& cell : cells_) {
    if (cell.is_dff()) {
      n.dffs_.push_back(cell.id);
      continue;
    }
    for (WireId in : cell.inputs) {
      CellId d = n.driver_[in.index()];
      if (d.valid() && !cells_[d.index()].is_dff()) ++pending[cell.id.index()];
    }
    if (pending[cell.id.index()] == 0) ready.push_back(cell.id);
  }
  // Process in insertion order among ready cells for determinism.
  std::reverse(ready.begin(), ready.end());
  while (!ready.empty()) {
    CellId id = ready.back();
    ready.pop_back();
    n.comb_order_.push_back(id);
    const Cell& cell = cells_[id.index()];
    std::vector<CellId> released;
    for (CellId reader : n.fanout_[cell.output.index()]) {
      const Cell& r = cells_[reader.index()];
      if (r.is_dff()) continue;
      uint32_t uses = static_cast<uint32_t>(
          std::count(r.inputs.begin(), r.inputs.end(), cell.output));
      pending[reader.index()] -= uses;
      if (pending[reader.index()] == 0) released.push_back(reader);
    }
    for (auto it = released.rbegin(); it != released.rend(); ++it) {
      ready.push_back(*it);
    }
  }
  if (n.comb_order_.size() + n.dffs_.size() != cells_.size()) {
    // Walk predecessors inside the unresolved set until a cell repeats.
    CellId start;
    for (const Cell& cell : cells_) {
      if (!cell.is_dff() && pending[cell.id.index()] > 0) {
        start = cell.id;
        break;
      }
    }
    std::vector<CellId> path;
    std::unordered_map<uint32_t, size_t> seen;
    CellId at = start;
    while (!seen.count(at.index())) {
      seen[at.index()] = path.size();
      path.push_back(at);
      for (WireId in : cells_[at.index()].inputs) {
        CellId d = n.driver_[in.index()];
        if (d.valid() && !cells_[d.index()].is_dff() &&
            pending[d.index()] > 0) {
          at = d;
          break;
        }
      }
    }
    std::vector<std::string> witness;
    for (size_t i = seen[at.index()]; i < path.size(); ++i) {
      witness.push_back(wires_[cells_[path[i].index()].output.index()]);
    }
    std::reverse(witness.begin(), witness.end());
    std::string joined;
    for (const std::string& w : witness) joined += (joined.empty() ? "" : " -> ") + w;
    throw NetlistError(NetlistErrorKind::kCombinationalLoop,
                       "combinational cycle through " + joined, witness);
  }

  n.wires_.reserve(wire_count);
  for (uint32_t i = 0; i < wire_count; ++i) {
    Wire w;
    w.id = WireId(i);
    w.name = std::move(wires_[i]);
    CellId d = n.driver_[i];
    if (n.flags_[i] & Netlist::kInputFlag) {
      w.kind = WireKind::kPrimaryInput;
    } else if (n.flags_[i] & Netlist::kOutputFlag) {
      w.kind = WireKind::kPrimaryOutput;
    } else if (d.valid() && (cells_[d.index()].kind == CellKind::kConst0 ||
                             cells_[d.index()].kind == CellKind::kConst1)) {
      w.kind = WireKind::kConstant;
    }
    n.wires_.push_back(std::move(w));
  }
  n.by_name_ = std::move(by_name_);
  n.cells_ = std::move(cells_);
  n.inputs_ = std::move(inputs_);
  n.outputs_ = std::move(outputs_);
  n.externals_ = std::move(externals_);
  n.sinks_ = std::move(sinks_);
  return n;
}

Netlist BuildNetlist(std::string name, std::span<const CellSpec> cells,
                     std::span<const std::string> inputs,
                     std::span<const std::string> outputs,
                     std::span<const std::string> unused) {
  NetlistBuilder b(std::move(name));
  for (const std::string& in : inputs) b.add_input(b.wire(in));
  for (const std::string& out : outputs) b.add_output(b.wire(out));
  for (const CellSpec& spec : cells) {
    std::vector<WireId> ins;
    for (const std::string& in : spec.inputs) ins.push_back(b.wire(in));
    WireId out = b.wire(spec.output);
    if (spec.kind == CellKind::kLut) {
      b.add_lut(std::move(ins), out, spec.table);
    } else if (spec.kind == CellKind::kDff) {
      if (ins.size() != 1) {
        throw NetlistError(NetlistErrorKind::kBadArity,
                           "dff driving '" + spec.output + "' expects 1 input");
      }
      b.add_dff(ins[0], out, spec.init);
    } else {
      b.add_cell(spec.kind, std::move(ins), out);
    }
  }
  for (const std::string& u : unused) b.mark_unused(b.wire(u));
  return std::move(b).Build();
}

std::vector<CellId> UpwardDfs(const Netlist& netlist, WireId start,
                              const std::function<bool(const Cell&)>& stop) {
  std::vector<CellId> order;
  std::vector<bool> visited(netlist.cells().size(), false);
  std::vector<CellId> stack;
  if (auto d = netlist.driver(start)) stack.push_back(*d);
  while (!stack.empty()) {
    CellId id = stack.back();
    stack.pop_back();
    if (visited[id.index()]) continue;
    visited[id.index()] = true;
    order.push_back(id);
    const Cell& cell = netlist.cell(id);
    if (cell.is_dff() || (stop && stop(cell))) continue;
    for (auto it = cell.inputs.rbegin(); it != cell.inputs.rend(); ++it) {
      if (auto d = netlist.driver(*it); d && !visited[d->index()]) {
        stack.push_back(*d);
      }
    }
  }
  return order;
}

std::optional<std::vector<SplitNode>> SplitViewOrder(const Netlist& netlist) {
  // Node index: cells map to their index; DFF next-nodes are offset by the
  // cell count.
  const size_t cells = netlist.cells().size();
  auto node_of_driver = [&](WireId w) -> std::optional<size_t> {
    auto d = netlist.driver(w);
    if (!d) return std::nullopt;
    return d->index();  // current(d) for DFFs, the cell itself otherwise
  };
  std::vector<std::vector<size_t>> succ(2 * cells);
  std::vector<uint32_t> indeg(2 * cells, 0);
  std::vector<bool> present(2 * cells, false);
  for (const Cell& cell : netlist.cells()) {
    present[cell.id.index()] = true;
    size_t sink = cell.id.index();
    if (cell.is_dff()) {
      sink = cells + cell.id.index();
      present[sink] = true;
    }
    for (WireId in : cell.inputs) {
      if (auto src = node_of_driver(in)) {
        succ[*src].push_back(sink);
        ++indeg[sink];
      }
    }
  }
  std::vector<size_t> ready;
  for (size_t i = 2 * cells; i-- > 0;) {
    if (present[i] && indeg[i] == 0) ready.push_back(i);
  }
  std::vector<SplitNode> order;
  while (!ready.empty()) {
    size_t node = ready.back();
    ready.pop_back();
    order.push_back({CellId(static_cast<uint32_t>(node % cells)), node >= cells});
    for (size_t s : succ[node]) {
      if (--indeg[s] == 0) ready.push_back(s);
    }
  }
  size_t expected = cells + netlist.dffs().size();
  if (order.size() != expected) return std::nullopt;
  return order;
}

TruthTable CellFunction(const Cell& cell) {
  if (cell.kind == CellKind::kLut) return cell.table;
  return TruthTable::ForGate(cell.kind);
}

std::string CanonicalForm(const Netlist& netlist) {
  std::vector<std::string> lines;
  for (WireId in : netlist.inputs()) {
    lines.push_back("input " + netlist.wire_name(in));
  }
  for (WireId out : netlist.outputs()) {
    lines.push_back("output " + netlist.wire_name(out));
  }
  for (const Cell& cell : netlist.cells()) {
    std::string line;
    if (cell.is_dff()) {
      line = "dff " + netlist.wire_name(cell.output) + " <- " +
             netlist.wire_name(cell.inputs[0]) + " init=" +
             std::to_string(static_cast<int>(cell.init));
    } else {
      line = "comb " + netlist.wire_name(cell.output) + " = " +
             CellFunction(cell).ToBinaryString() + " (";
      for (size_t i = 0; i < cell.inputs.size(); ++i) {
        if (i) line += ' ';
        line += netlist.wire_name(cell.inputs[i]);
      }
      line += ')';
    }
    lines.push_back(std::move(line));
  }
  // I/O declaration order is significant; cell order is not.
  size_t io = netlist.inputs().size() + netlist.outputs().size();
  std::sort(lines.begin() + static_cast<ptrdiff_t>(io), lines.end());
  std::string out = "model " + netlist.name() + "\n";
  for (const std::string& line : lines) out += line + '\n';
  return out;
}

bool NaturalLess(std::string_view a, std::string_view b) {
  size_t i = 0;
  size_t j = 0;
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)); };
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      size_t ie = i;
      while (ie < a.size() && is_digit(a[ie])) ++ie;
      size_t je = j;
      while (je < b.size() && is_digit(b[je])) ++je;
      std::string_view da = a.substr(i, ie - i);
      std::string_view db = b.substr(j, je - j);
      while (da.size() > 1 && da.front() == '0') da.remove_prefix(1);
      while (db.size() > 1 && db.front() == '0') db.remove_prefix(1);
      if (da.size() != db.size()) return da.size() < db.size();
      if (da != db) return da < db;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
  return a < b;
}

}  // namespace regroup
