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

#ifndef REGROUP_DESIGN_H_
#define REGROUP_DESIGN_H_

#include <string>
#include <vector>

#include "regroup/enable.h"
#include "regroup/memory.h"
#include "regroup/netlist.h"
#include "regroup/ordering.h"

namespace regroup {

struct Diagnostic {
  std::string kind;  // removed-edge, memory-fallback, unknown-init, rename...
  std::string message;
};

struct DecompileOptions {
  bool memory = true;
  // Drop combinational cells nobody reads before analysis.
  bool optimize = false;
  size_t jobs = 1;
  EnablePatterns patterns;
  // Test hook: swap the next-value wires of bits 0 and 1 of the first
  // register wider than one bit.
  bool inject_swap = false;
};

struct DecompiledDesign {
  std::string name;
  // Netlist the analysis ran on: the input, plus a LUT per enable folded
  // into a LUT together with next-value logic. Ids in `registers` and
  // `memories` refer to it.
  Netlist source;
  // Unconsumed cells over the same wire table as `source`. Register Q wires
  // and memory read ports are externals; register next/enable wires and
  // memory ports are sinks.
  Netlist residual;
  std::vector<Register> registers;
  std::vector<MemoryBlock> memories;
  std::vector<Diagnostic> diagnostics;
  size_t group_count = 0;

  size_t dff_total() const { return source.dffs().size(); }
  size_t dff_in_registers() const;
  size_t dff_in_memories() const;
  size_t dff_residual() const { return residual.dffs().size(); }
};

DecompiledDesign Decompile(const Netlist& netlist,
                           const DecompileOptions& options = {});

// Removes combinational cells whose output is neither read nor a primary
// output, to a fixpoint. Wire names are kept.
Netlist RemoveDeadCells(const Netlist& netlist);

// Rebuilds `netlist` into a builder with identical wire ids, so that cells
// can be appended.
NetlistBuilder ToBuilder(const Netlist& netlist);

// Thrown when a pipeline invariant breaks (conservation, ordering validity).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Checks conservation of DFFs and ordering validity; throws InvariantError.
void CheckDesignInvariants(const DecompiledDesign& design);

}  // namespace regroup

#endif  // REGROUP_DESIGN_H_
