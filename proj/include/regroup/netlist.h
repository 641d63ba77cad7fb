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

#ifndef REGROUP_NETLIST_H_
#define REGROUP_NETLIST_H_

#include <bitset>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace regroup {

// Typed index into one of the netlist tables. Ids are dense and stable for the
// lifetime of the netlist that issued them.
template <typename Tag>
class Id {
 public:
  static constexpr uint32_t kInvalid = std::numeric_limits<uint32_t>::max();

  constexpr Id() = default;
  constexpr explicit Id(uint32_t index) : index_(index) {}

  constexpr uint32_t index() const { return index_; }
  constexpr bool valid() const { return index_ != kInvalid; }

  friend constexpr auto operator<=>(Id, Id) = default;

 private:
  uint32_t index_ = kInvalid;
};

struct WireTag {};
struct CellTag {};
using WireId = Id<WireTag>;
using CellId = Id<CellTag>;

enum class WireKind { kPrimaryInput, kPrimaryOutput, kInternal, kConstant };

enum class CellKind {
  kAnd,
  kOr,
  kNot,
  kXor,
  kNand,
  kNor,
  kBuf,
  kMux,  // inputs (sel, a, b): a when sel = 0, b when sel = 1
  kLut,
  kConst0,
  kConst1,
  kDff,
};

enum class InitValue { kZero, kOne, kUnknown };

std::string_view CellKindName(CellKind kind);

// Expected input count for fixed-arity kinds, nullopt for LUTs.
std::optional<size_t> CellArity(CellKind kind);

inline constexpr size_t kMaxLutInputs = 8;

// Truth table over up to kMaxLutInputs inputs. Row index bit j carries the
// value of input j.
class TruthTable {
 public:
  TruthTable() = default;
  explicit TruthTable(size_t arity) : arity_(arity) {}

  static TruthTable FromFunction(size_t arity,
                                 const std::function<bool(uint32_t)>& f);
  // Table computed by a primitive gate kind (not LUT, not DFF).
  static TruthTable ForGate(CellKind kind);

  size_t arity() const { return arity_; }
  size_t rows() const { return size_t{1} << arity_; }
  bool at(uint32_t row) const { return bits_[row]; }
  void set(uint32_t row, bool value) { bits_[row] = value; }

  // Bits as a string, row (rows()-1) first, row 0 last.
  std::string ToBinaryString() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  size_t arity_ = 0;
  std::bitset<size_t{1} << kMaxLutInputs> bits_;
};

struct Wire {
  WireId id;
  std::string name;
  WireKind kind = WireKind::kInternal;
};

struct Cell {
  CellId id;
  CellKind kind = CellKind::kBuf;
  std::vector<WireId> inputs;
  WireId output;
  TruthTable table;                // LUT only
  InitValue init = InitValue::kZero;  // DFF only
  std::vector<std::string> cover;  // LUT only: source cover rows, if any

  bool is_dff() const { return kind == CellKind::kDff; }
};

enum class NetlistErrorKind {
  kMultipleDrivers,
  kDanglingWire,
  kUndrivenWire,
  kCombinationalLoop,
  kBadArity,
  kUnknownWire,
};

std::string_view NetlistErrorKindName(NetlistErrorKind kind);

class NetlistError : public std::runtime_error {
 public:
  NetlistError(NetlistErrorKind kind, std::string message,
               std::vector<std::string> witness = {});

  NetlistErrorKind kind() const { return kind_; }
  // Offending wire names; for loops, the wires along one cycle.
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  NetlistErrorKind kind_;
  std::vector<std::string> witness_;
};

// Immutable bit-level netlist. Built through NetlistBuilder; every query is
// const and the object is safe to share across threads.
class Netlist {
 public:
  const std::string& name() const { return name_; }
  // Name of the implicit global clock, empty when the source named none.
  const std::string& clock() const { return clock_; }

  std::span<const Wire> wires() const { return wires_; }
  std::span<const Cell> cells() const { return cells_; }
  const Wire& wire(WireId id) const { return wires_[id.index()]; }
  const Cell& cell(CellId id) const { return cells_[id.index()]; }
  const std::string& wire_name(WireId id) const { return wire(id).name; }

  std::span<const WireId> inputs() const { return inputs_; }
  std::span<const WireId> outputs() const { return outputs_; }
  // Wires driven from outside the cell graph (aggregated storage).
  std::span<const WireId> externals() const { return externals_; }
  // Wires consumed outside the cell graph (aggregated storage).
  std::span<const WireId> sinks() const { return sinks_; }

  std::optional<WireId> find_wire(std::string_view name) const;
  std::optional<CellId> driver(WireId wire) const;
  std::span<const CellId> readers(WireId wire) const {
    return fanout_[wire.index()];
  }
  bool is_input(WireId wire) const { return flags_[wire.index()] & kInputFlag; }
  bool is_output(WireId wire) const {
    return flags_[wire.index()] & kOutputFlag;
  }
  bool is_external(WireId wire) const {
    return flags_[wire.index()] & kExternalFlag;
  }
  bool is_sink(WireId wire) const { return flags_[wire.index()] & kSinkFlag; }

  // DFF cells in insertion order.
  std::span<const CellId> dffs() const { return dffs_; }
  // Combinational cells in a topological order of the split view: DFF outputs
  // act as sources and DFF inputs as sinks.
  std::span<const CellId> combinational_order() const { return comb_order_; }

 private:
  friend class NetlistBuilder;

  static constexpr uint8_t kInputFlag = 1;
  static constexpr uint8_t kOutputFlag = 2;
  static constexpr uint8_t kExternalFlag = 4;
  static constexpr uint8_t kSinkFlag = 8;

  std::string name_;
  std::string clock_;
  std::vector<Wire> wires_;
  std::vector<Cell> cells_;
  std::vector<WireId> inputs_;
  std::vector<WireId> outputs_;
  std::vector<WireId> externals_;
  std::vector<WireId> sinks_;
  std::vector<uint8_t> flags_;
  std::vector<CellId> driver_;
  std::vector<std::vector<CellId>> fanout_;
  std::vector<CellId> dffs_;
  std::vector<CellId> comb_order_;
  std::unordered_map<std::string, WireId> by_name_;
};

enum class DanglingPolicy { kReject, kAllow };

class NetlistBuilder {
 public:
  explicit NetlistBuilder(std::string name = "top");

  // Returns the wire with this name, creating it on first use.
  WireId wire(std::string_view name);
  std::optional<WireId> find_wire(std::string_view name) const;
  const std::string& wire_name(WireId id) const { return wires_[id.index()]; }

  void add_input(WireId wire);
  void add_output(WireId wire);
  void mark_unused(WireId wire);
  void mark_external(WireId wire);
  void mark_sink(WireId wire);
  void set_clock(std::string clock) { clock_ = std::move(clock); }
  void set_dangling_policy(DanglingPolicy policy) { dangling_ = policy; }

  CellId add_cell(CellKind kind, std::vector<WireId> inputs, WireId output);
  CellId add_lut(std::vector<WireId> inputs, WireId output, TruthTable table,
                 std::vector<std::string> cover = {});
  CellId add_dff(WireId d, WireId q, InitValue init = InitValue::kZero);

  // Name-based conveniences used by fixture generators and tests.
  WireId gate(CellKind kind, std::initializer_list<std::string_view> inputs,
              std::string_view output);
  WireId input(std::string_view name);
  WireId output(std::string_view name);

  size_t cell_count() const { return cells_.size(); }

  // Validates and freezes the netlist. Throws NetlistError.
  Netlist Build() &&;

 private:
  std::string name_;
  std::string clock_;
  DanglingPolicy dangling_ = DanglingPolicy::kReject;
  std::vector<std::string> wires_;
  std::unordered_map<std::string, WireId> by_name_;
  std::vector<Cell> cells_;
  std::vector<WireId> inputs_;
  std::vector<WireId> outputs_;
  std::vector<WireId> unused_;
  std::vector<WireId> externals_;
  std::vector<WireId> sinks_;
};

// Name-level cell description for build_netlist.
struct CellSpec {
  CellKind kind = CellKind::kBuf;
  std::vector<std::string> inputs;
  std::string output;
  TruthTable table;
  InitValue init = InitValue::kZero;
};

Netlist BuildNetlist(std::string name, std::span<const CellSpec> cells,
                     std::span<const std::string> inputs,
                     std::span<const std::string> outputs,
                     std::span<const std::string> unused = {});

// Cells in the fan-in cone of `start`, cut at DFF boundaries: a DFF is
// visited but its D input is not followed. Cells for which `stop` returns
// true are likewise visited without expansion. Visit order is depth-first,
// following input-list order.
std::vector<CellId> UpwardDfs(
    const Netlist& netlist, WireId start,
    const std::function<bool(const Cell&)>& stop = nullptr);

// Topological order over the split view: one node per combinational cell,
// plus current(d) and next(d) per DFF. Returns the order as cell ids with
// DFFs appearing twice (first as current, last as next); nullopt on a cycle.
struct SplitNode {
  CellId cell;
  bool next = false;  // DFF next-value node
};
std::optional<std::vector<SplitNode>> SplitViewOrder(const Netlist& netlist);

// Structural serialization independent of cell insertion order and of how a
// function is represented (gate vs equivalent LUT). Two netlists are
// isomorphic (same names, same functions) iff their canonical forms match.
std::string CanonicalForm(const Netlist& netlist);

// Function computed by a combinational cell, as a truth table over its
// inputs.
TruthTable CellFunction(const Cell& cell);

// Total order on names that compares embedded digit runs numerically
// ("r2" < "r10"), falling back to plain lexicographic comparison.
bool NaturalLess(std::string_view a, std::string_view b);

}  // namespace regroup

template <typename Tag>
struct std::hash<regroup::Id<Tag>> {
  size_t operator()(regroup::Id<Tag> id) const noexcept {
    return std::hash<uint32_t>{}(id.index());
  }
};

#endif  // REGROUP_NETLIST_H_
