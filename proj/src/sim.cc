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

#include "regroup/sim.h"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include "regroup/design.h"

namespace regroup {

struct Simulator::Impl {
  struct Op {
    bool memory_read = false;
    uint32_t index = 0;  // cell index or memory index
  };
  struct Flop {
    uint32_t q = 0;
    uint32_t d = 0;
    uint32_t en = 0;
    bool gated = false;
    bool active_high = true;
    size_t slot = 0;
  };
  struct Mem {
    std::vector<uint32_t> addr, wdata, rdata;
    uint32_t en = 0;
    size_t width = 0;
    std::vector<int32_t> write_row;  // per address, -1 when unmapped
    std::vector<uint32_t> read_row;
    size_t base = 0;
  };

  std::vector<Cell> cells;
  std::vector<Op> order;
  std::vector<Flop> flops;
  std::vector<Mem> mems;
  std::vector<uint32_t> inputs, outputs;
  std::vector<std::string> input_names, output_names;
  std::unordered_map<std::string, uint32_t> by_name;
  std::vector<uint8_t> values;
  std::vector<uint8_t> state, init, next_state;
  std::vector<uint8_t> before, after;
  bool unknown_init = false;

  void Load() {
    for (const Flop& f : flops) values[f.q] = state[f.slot];
  }

  uint32_t Address(const Mem& m) const {
    uint32_t a = 0;
    for (size_t j = 0; j < m.addr.size(); ++j) {
      if (values[m.addr[j]]) a |= 1u << j;
    }
    return a;
  }

  void Evaluate() {
    Load();
    for (const Op& op : order) {
      if (op.memory_read) {
        const Mem& m = mems[op.index];
        const size_t row = m.read_row[Address(m)];
        for (size_t b = 0; b < m.width; ++b) {
          values[m.rdata[b]] = state[m.base + row * m.width + b];
        }
        continue;
      }
      const Cell& c = cells[op.index];
      auto in = [&](size_t k) { return values[c.inputs[k].index()]; };
      uint8_t v = 0;
      switch (c.kind) {
        case CellKind::kAnd: v = in(0) & in(1); break;
        case CellKind::kOr: v = in(0) | in(1); break;
        case CellKind::kXor: v = in(0) ^ in(1); break;
        case CellKind::kNand: v = !(in(0) & in(1)); break;
        case CellKind::kNor: v = !(in(0) | in(1)); break;
        case CellKind::kNot: v = !in(0); break;
        case CellKind::kBuf: v = in(0); break;
        case CellKind::kMux: v = in(0) ? in(2) : in(1); break;
        case CellKind::kConst0: v = 0; break;
        case CellKind::kConst1: v = 1; break;
        case CellKind::kLut: {
          uint32_t row = 0;
          for (size_t k = 0; k < c.inputs.size(); ++k) {
            if (in(k)) row |= 1u << k;
          }
          v = c.table.at(row);
          break;
        }
        case CellKind::kDff:
          break;
      }
      values[c.output.index()] = v;
    }
  }

  void Commit() {
    next_state = state;
    for (const Flop& f : flops) {
      if (!f.gated || static_cast<bool>(values[f.en]) == f.active_high) {
        next_state[f.slot] = values[f.d];
      }
    }
    for (const Mem& m : mems) {
      if (!values[m.en]) continue;
      const int32_t row = m.write_row[Address(m)];
      if (row < 0) continue;
      for (size_t b = 0; b < m.width; ++b) {
        next_state[m.base + static_cast<size_t>(row) * m.width + b] =
            values[m.wdata[b]];
      }
    }
    state.swap(next_state);
  }

  void Sample(std::vector<uint8_t>& into) const {
    into.resize(outputs.size());
    for (size_t i = 0; i < outputs.size(); ++i) into[i] = values[outputs[i]];
  }

  void SetPorts(const Netlist& n) {
    values.assign(n.wires().size(), 0);
    for (const Wire& w : n.wires()) by_name.emplace(w.name, w.id.index());
    for (WireId w : n.inputs()) {
      inputs.push_back(w.index());
      input_names.push_back(n.wire_name(w));
    }
    for (WireId w : n.outputs()) {
      outputs.push_back(w.index());
      output_names.push_back(n.wire_name(w));
    }
  }

  size_t AddFlop(uint32_t q, uint32_t d, InitValue value) {
    Flop f;
    f.q = q;
    f.d = d;
    f.slot = init.size();
    init.push_back(value == InitValue::kOne);
    unknown_init |= value == InitValue::kUnknown;
    flops.push_back(f);
    return flops.size() - 1;
  }
};

Simulator::Simulator(const Netlist& netlist) : impl_(std::make_unique<Impl>()) {
  Impl& s = *impl_;
  s.SetPorts(netlist);
  s.cells.assign(netlist.cells().begin(), netlist.cells().end());
  for (CellId c : netlist.combinational_order()) {
    s.order.push_back({false, c.index()});
  }
  for (CellId d : netlist.dffs()) {
    const Cell& c = netlist.cell(d);
    s.AddFlop(c.output.index(), c.inputs[0].index(), c.init);
  }
  Reset();
}

Simulator::Simulator(const DecompiledDesign& design)
    : impl_(std::make_unique<Impl>()) {
  Impl& s = *impl_;
  const Netlist& n = design.residual;
  s.SetPorts(n);
  s.cells.assign(n.cells().begin(), n.cells().end());
  for (CellId d : n.dffs()) {
    const Cell& c = n.cell(d);
    s.AddFlop(c.output.index(), c.inputs[0].index(), c.init);
  }
  for (const Register& reg : design.registers) {
    for (const EnabledDff& bit : reg.bits) {
      size_t i = s.AddFlop(bit.q.index(), bit.next.index(),
                           design.source.cell(bit.dff).init);
      s.flops[i].gated = true;
      s.flops[i].en = reg.enable.index();
      s.flops[i].active_high = reg.polarity == Polarity::kActiveHigh;
    }
  }
  for (const MemoryBlock& mem : design.memories) {
    Impl::Mem m;
    for (WireId w : mem.addr) m.addr.push_back(w.index());
    for (WireId w : mem.write_port) m.wdata.push_back(w.index());
    for (WireId w : mem.read_port) m.rdata.push_back(w.index());
    m.en = mem.enable.index();
    m.width = mem.width;
    m.write_row.assign(size_t{1} << mem.addr.size(), -1);
    for (size_t r = 0; r < mem.rows; ++r) {
      m.write_row[mem.row_address[r]] = static_cast<int32_t>(r);
    }
    m.read_row = mem.read_alias;
    m.base = s.init.size();
    for (const Register& row : mem.row_registers) {
      for (const EnabledDff& bit : row.bits) {
        InitValue v = design.source.cell(bit.dff).init;
        s.init.push_back(v == InitValue::kOne);
        s.unknown_init |= v == InitValue::kUnknown;
      }
    }
    s.mems.push_back(std::move(m));
  }

  // Residual cells and memory reads share one topological order.
  std::vector<Impl::Op> ops;
  for (CellId c : n.combinational_order()) ops.push_back({false, c.index()});
  for (size_t m = 0; m < s.mems.size(); ++m) {
    ops.push_back({true, static_cast<uint32_t>(m)});
  }
  std::unordered_map<uint32_t, size_t> driver;
  auto op_inputs = [&](const Impl::Op& op) {
    std::vector<uint32_t> in;
    if (op.memory_read) {
      in = s.mems[op.index].addr;
    } else {
      for (WireId w : s.cells[op.index].inputs) in.push_back(w.index());
    }
    return in;
  };
  for (size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].memory_read) {
      for (uint32_t w : s.mems[ops[i].index].rdata) driver[w] = i;
    } else {
      driver[s.cells[ops[i].index].output.index()] = i;
    }
  }
  std::vector<size_t> pending(ops.size(), 0);
  std::vector<std::vector<size_t>> succ(ops.size());
  for (size_t i = 0; i < ops.size(); ++i) {
    for (uint32_t w : op_inputs(ops[i])) {
      auto it = driver.find(w);
      if (it == driver.end()) continue;
      ++pending[i];
      succ[it->second].push_back(i);
    }
  }
  std::vector<size_t> ready;
  for (size_t i = ops.size(); i-- > 0;) {
    if (pending[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    size_t i = ready.back();
    ready.pop_back();
    s.order.push_back(ops[i]);
    std::vector<size_t> released;
    for (size_t j : succ[i]) {
      if (--pending[j] == 0) released.push_back(j);
    }
    std::sort(released.rbegin(), released.rend());
    for (size_t j : released) ready.push_back(j);
  }
  if (s.order.size() != ops.size()) {
    throw std::logic_error("memory read port closes a combinational loop");
  }
  Reset();
}

Simulator::~Simulator() = default;
Simulator::Simulator(Simulator&&) noexcept = default;
Simulator& Simulator::operator=(Simulator&&) noexcept = default;

const std::vector<std::string>& Simulator::input_names() const {
  return impl_->input_names;
}
const std::vector<std::string>& Simulator::output_names() const {
  return impl_->output_names;
}
bool Simulator::unknown_init() const { return impl_->unknown_init; }

void Simulator::Reset() {
  impl_->state = impl_->init;
  std::fill(impl_->values.begin(), impl_->values.end(), 0);
  impl_->before.clear();
  impl_->after.clear();
}

void Simulator::Step(const std::vector<uint8_t>& inputs) {
  Impl& s = *impl_;
  for (size_t i = 0; i < s.inputs.size(); ++i) {
    s.values[s.inputs[i]] = inputs[i] ? 1 : 0;
  }
  s.Evaluate();
  s.Sample(s.before);
  s.Commit();
  s.Evaluate();
  s.Sample(s.after);
}

const std::vector<uint8_t>& Simulator::before() const { return impl_->before; }
const std::vector<uint8_t>& Simulator::after() const { return impl_->after; }

std::vector<uint8_t> Simulator::Snapshot() const { return impl_->state; }
void Simulator::Restore(const std::vector<uint8_t>& state) {
  impl_->state = state;
}

std::optional<bool> Simulator::Peek(std::string_view wire) const {
  auto it = impl_->by_name.find(std::string(wire));
  if (it == impl_->by_name.end()) return std::nullopt;
  return impl_->values[it->second] != 0;
}

namespace {

// Column of each simulator input within the stimulus.
std::vector<size_t> Columns(const Simulator& sim, const Stimulus& stim) {
  std::unordered_map<std::string, size_t> col;
  for (size_t i = 0; i < stim.inputs.size(); ++i) col.emplace(stim.inputs[i], i);
  std::vector<size_t> out;
  for (const std::string& name : sim.input_names()) {
    auto it = col.find(name);
    if (it == col.end()) {
      throw SimError(SimErrorKind::kUnassignedInput,
                     "cycle 0: input " + name + " is not assigned");
    }
    out.push_back(it->second);
  }
  return out;
}

std::vector<uint8_t> Row(const std::vector<size_t>& columns,
                         const Stimulus& stim, size_t cycle) {
  const auto& values = stim.cycles[cycle];
  std::vector<uint8_t> row(columns.size());
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] >= values.size()) {
      throw SimError(SimErrorKind::kUnassignedInput,
                     "cycle " + std::to_string(cycle) + ": input " +
                         stim.inputs[columns[i]] + " is not assigned");
    }
    row[i] = values[columns[i]];
  }
  return row;
}

Trace Run(Simulator& sim, const Stimulus& stim, bool record_storage) {
  std::vector<size_t> columns = Columns(sim, stim);
  Trace trace;
  trace.outputs = sim.output_names();
  trace.unknown_init = sim.unknown_init();
  for (size_t c = 0; c < stim.length(); ++c) {
    sim.Step(Row(columns, stim, c));
    trace.before.push_back(sim.before());
    trace.values.push_back(sim.after());
    if (record_storage) trace.storage.push_back(sim.Snapshot());
  }
  return trace;
}

void CheckSignature(const Simulator& a, const Simulator& b) {
  std::vector<std::string> ia = a.input_names();
  std::vector<std::string> ib = b.input_names();
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  if (ia != ib) {
    throw SimError(SimErrorKind::kSignatureMismatch,
                   "primary inputs differ between the designs");
  }
  if (a.output_names() != b.output_names()) {
    throw SimError(SimErrorKind::kSignatureMismatch,
                   "primary outputs differ between the designs");
  }
}

std::optional<std::pair<size_t, bool>> FirstDifference(
    const std::vector<uint8_t>& expected, const std::vector<uint8_t>& got) {
  for (size_t i = 0; i < expected.size(); ++i) {
    if (expected[i] != got[i]) return std::make_pair(i, expected[i] != 0);
  }
  return std::nullopt;
}

}  // namespace

Trace Simulate(const Netlist& netlist, const Stimulus& stim,
               bool record_storage) {
  Simulator sim(netlist);
  return Run(sim, stim, record_storage);
}

Trace Simulate(const DecompiledDesign& design, const Stimulus& stim,
               bool record_storage) {
  Simulator sim(design);
  return Run(sim, stim, record_storage);
}

Stimulus RandomStimulus(const std::vector<std::string>& inputs, size_t cycles,
                        uint64_t seed, const std::set<std::string>& enables) {
  Stimulus stim;
  stim.inputs = inputs;
  stim.seed = seed;
  std::mt19937_64 rng(seed);
  std::vector<bool> biased(inputs.size());
  for (size_t i = 0; i < inputs.size(); ++i) {
    biased[i] = enables.count(inputs[i]) > 0;
  }
  stim.cycles.reserve(cycles);
  for (size_t c = 0; c < cycles; ++c) {
    std::vector<uint8_t> row(inputs.size());
    for (size_t i = 0; i < inputs.size(); ++i) {
      const uint64_t r = rng();
      row[i] = biased[i] ? ((r & 3u) != 0) : (r & 1u);
    }
    stim.cycles.push_back(std::move(row));
  }
  return stim;
}

std::set<std::string> EnableInputs(const DecompiledDesign& design) {
  std::set<std::string> out;
  const Netlist& n = design.source;
  auto add = [&](WireId w) {
    if (n.is_input(w)) out.insert(n.wire_name(w));
  };
  for (const Register& r : design.registers) add(r.enable);
  for (const MemoryBlock& m : design.memories) add(m.enable);
  return out;
}

Verdict CompareOn(const Netlist& original, const DecompiledDesign& design,
                  const Stimulus& stim) {
  Simulator a(original);
  Simulator b(design);
  CheckSignature(a, b);
  std::vector<size_t> ca = Columns(a, stim);
  std::vector<size_t> cb = Columns(b, stim);
  Verdict verdict;
  for (size_t c = 0; c < stim.length(); ++c) {
    a.Step(Row(ca, stim, c));
    b.Step(Row(cb, stim, c));
    auto diff = FirstDifference(a.before(), b.before());
    if (!diff) diff = FirstDifference(a.after(), b.after());
    if (!diff) continue;
    Counterexample cex;
    cex.cycle = c;
    cex.output = a.output_names()[diff->first];
    cex.expected = diff->second;
    cex.got = !diff->second;
    cex.stimulus.inputs = stim.inputs;
    cex.stimulus.seed = stim.seed;
    cex.stimulus.cycles.assign(stim.cycles.begin(),
                               stim.cycles.begin() + static_cast<long>(c) + 1);
    verdict.equivalent = false;
    verdict.counterexample = std::move(cex);
    break;
  }
  return verdict;
}

Verdict CheckEquivalence(const Netlist& original,
                         const DecompiledDesign& design, size_t cycles,
                         uint64_t seed) {
  Simulator probe(original);
  Stimulus stim = RandomStimulus(probe.input_names(), cycles, seed,
                                 EnableInputs(design));
  return CompareOn(original, design, stim);
}

Verdict CheckEquivalenceExhaustive(const Netlist& original,
                                   const DecompiledDesign& design,
                                   size_t depth) {
  Simulator a(original);
  Simulator b(design);
  CheckSignature(a, b);
  const std::vector<std::string>& names = a.input_names();
  if (names.size() > 16) {
    throw std::invalid_argument("exhaustive check limited to 16 inputs");
  }
  std::vector<size_t> cb;
  {
    Stimulus shape;
    shape.inputs = names;
    cb = Columns(b, shape);
  }
  using Pair = std::pair<std::vector<uint8_t>, std::vector<uint8_t>>;
  struct Node {
    Pair state;
    std::vector<std::vector<uint8_t>> path;
  };
  std::map<Pair, bool> seen;
  std::vector<Node> frontier{{{a.Snapshot(), b.Snapshot()}, {}}};
  seen.emplace(frontier[0].state, true);
  const uint32_t combos = 1u << names.size();
  Verdict verdict;
  for (size_t level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (uint32_t v = 0; v < combos; ++v) {
        std::vector<uint8_t> row(names.size());
        for (size_t i = 0; i < names.size(); ++i) row[i] = (v >> i) & 1u;
        std::vector<uint8_t> row_b(names.size());
        for (size_t i = 0; i < names.size(); ++i) row_b[i] = row[cb[i]];
        a.Restore(node.state.first);
        b.Restore(node.state.second);
        a.Step(row);
        b.Step(row_b);
        auto diff = FirstDifference(a.before(), b.before());
        if (!diff) diff = FirstDifference(a.after(), b.after());
        if (diff) {
          Counterexample cex;
          cex.cycle = level;
          cex.output = a.output_names()[diff->first];
          cex.expected = diff->second;
          cex.got = !diff->second;
          cex.stimulus.inputs = names;
          cex.stimulus.cycles = node.path;
          cex.stimulus.cycles.push_back(row);
          verdict.equivalent = false;
          verdict.counterexample = std::move(cex);
          return verdict;
        }
        Pair state{a.Snapshot(), b.Snapshot()};
        if (seen.emplace(state, true).second) {
          Node child{std::move(state), node.path};
          child.path.push_back(row);
          next.push_back(std::move(child));
        }
      }
    }
    frontier = std::move(next);
  }
  return verdict;
}

std::string TraceToVcd(const Trace& trace, const std::string& module) {
  std::ostringstream out;
  out << "$timescale 1ns $end\n";
  out << "$scope module " << module << " $end\n";
  auto code = [](size_t i) {
    std::string s;
    do {
      s += static_cast<char>('!' + i % 94);
      i /= 94;
    } while (i);
    return s;
  };
  for (size_t i = 0; i < trace.outputs.size(); ++i) {
    out << "$var wire 1 " << code(i) << " " << trace.outputs[i] << " $end\n";
  }
  out << "$upscope $end\n$enddefinitions $end\n";
  for (size_t c = 0; c < trace.values.size(); ++c) {
    out << "#" << c << "\n";
    for (size_t i = 0; i < trace.outputs.size(); ++i) {
      out << static_cast<int>(trace.values[c][i]) << code(i) << "\n";
    }
  }
  return out.str();
}

}  // namespace regroup
