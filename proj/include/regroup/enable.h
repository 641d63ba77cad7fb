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

#ifndef REGROUP_ENABLE_H_
#define REGROUP_ENABLE_H_

#include <optional>
#include <span>
#include <vector>

#include "regroup/netlist.h"

namespace regroup {

enum class Polarity { kActiveHigh, kActiveLow };

std::string_view PolarityName(Polarity polarity);

// A 2:1 multiplexer recognized in the netlist: out = sel ? when1 : when0.
struct MuxView {
  WireId out;
  WireId sel;
  WireId when0;
  WireId when1;
  // Cells that implement the multiplexer. An inverter on the select line is
  // not included; decoders commonly share it.
  std::vector<CellId> cells;
};

// Recognizes a native MUX, a 3-input LUT computing a multiplexer under any
// input permutation, and the two-level decompositions
// (s & b) | (~s & a) and ~(~(s & b) & ~(~s & a)) in any commutative
// arrangement.
std::optional<MuxView> MatchMux(const Netlist& netlist, WireId out);

enum class EnablePattern { kMux, kGates, kLut };

// Next-value logic folded into a LUT together with the enable. The pipeline
// materializes it as a fresh LUT cell so that `next` names a real wire.
struct NextFunction {
  std::vector<WireId> inputs;
  TruthTable table;
};

struct EnabledDff {
  CellId dff;
  WireId q;
  WireId next;  // invalid until materialized when next_function is set
  WireId enable;
  Polarity polarity = Polarity::kActiveHigh;
  EnablePattern pattern = EnablePattern::kMux;
  // Cells forming the enable multiplexer in front of D.
  std::vector<CellId> pattern_cells;
  std::optional<NextFunction> next_function;
};

struct EnablePatterns {
  bool mux = true;
  bool gates = true;
  bool lut = true;
};

// Largest LUT for which the enable/next input assignment is searched.
inline constexpr size_t kMaxEnableLutInputs = 6;

// Returns the enable structure feeding `dff`, or nullopt when D is not of the
// form enable ? next : q for any recognized pattern.
std::optional<EnabledDff> DetectEnable(const Netlist& netlist, CellId dff,
                                       const EnablePatterns& patterns = {});

struct RegisterGroup {
  WireId enable;
  Polarity polarity = Polarity::kActiveHigh;
  std::vector<EnabledDff> members;  // DFF insertion order
};

// One group per distinct (enable wire, polarity), ordered by enable name.
std::vector<RegisterGroup> PartitionByEnable(
    const Netlist& netlist, std::span<const EnabledDff> detected);

// Runs DetectEnable over every DFF and partitions the hits.
std::vector<RegisterGroup> PartitionByEnable(
    const Netlist& netlist, const EnablePatterns& patterns = {});

}  // namespace regroup

#endif  // REGROUP_ENABLE_H_
