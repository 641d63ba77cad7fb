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

#ifndef REGROUP_MEMORY_H_
#define REGROUP_MEMORY_H_

#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "regroup/netlist.h"
#include "regroup/ordering.h"

namespace regroup {

enum class MemoryErrorKind {
  kNotPureDecode,
  kNonUniqueAddress,
  kMultipleAddresses,
  kInconsistentWriteData,
  kNoMuxTree,
  kSelectNotAddress,
  kDepthMismatch,
  // Decode, tree or row outputs read by logic outside the memory.
  kSharedLogic,
};

std::string_view MemoryErrorKindName(MemoryErrorKind kind);

class MemoryError : public std::runtime_error {
 public:
  MemoryError(MemoryErrorKind kind, const std::string& detail);
  MemoryErrorKind kind() const { return kind_; }

 private:
  MemoryErrorKind kind_;
};

struct Literal {
  WireId wire;
  bool positive = true;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// A wire (under a sign) expanded as a conjunction of literals through BUF,
// NOT, AND, NOR, and by De Morgan NAND/OR under negation, plus LUTs whose
// on-set (or off-set, under negation) is a single cube.
struct Product {
  std::vector<Literal> literals;  // sorted, one per wire
  std::vector<CellId> cells;      // cells expanded, sorted
  std::vector<WireId> positive;   // wires reached with positive sign, sorted
};

// nullopt when the product is contradictory or exceeds kMaxProductLiterals.
std::optional<Product> DecomposeProduct(const Netlist& netlist, WireId wire,
                                        bool positive);

inline constexpr size_t kMaxProductLiterals = 64;
inline constexpr size_t kMaxAddressBits = 20;

struct MemoryCandidateGroup {
  std::vector<size_t> registers;  // indices into the register list
  // Leaf wire, positive in every row's enable product and never negated in
  // any register of the width class.
  WireId shared_enable_input;
  std::vector<Product> row_products;  // parallel to `registers`
};

// Candidate groups over registers of equal width, largest first. A register
// joins at most one group.
std::vector<MemoryCandidateGroup> FindMemoryGroups(
    const Netlist& netlist, std::span<const Register> registers);

struct AddressRecovery {
  WireId enable;
  std::vector<WireId> addr;            // LSB first
  std::vector<uint32_t> row_address;   // parallel to group.registers
  std::vector<CellId> decode_cells;    // decode logic below the enable
};

AddressRecovery RecoverAddress(const Netlist& netlist,
                               const MemoryCandidateGroup& group);

struct WritePortRecovery {
  std::vector<WireId> data;  // memory bit order
  // bit_of[r][i]: index into register r's bits holding memory bit i.
  std::vector<std::vector<size_t>> bit_of;
};

WritePortRecovery RecoverWritePort(const Netlist& netlist,
                                   const MemoryCandidateGroup& group,
                                   std::span<const Register> registers);

struct ReadPortRecovery {
  std::vector<WireId> data;
  // Address reordered so the tree level nearest the read port is the MSB.
  std::vector<WireId> addr;
  std::vector<uint32_t> row_address;
  // For each of the 2^a address values, the row (index into the group) the
  // read tree selects.
  std::vector<uint32_t> read_alias;
  std::vector<CellId> tree_cells;
};

ReadPortRecovery RecoverReadPort(const Netlist& netlist,
                                 const MemoryCandidateGroup& group,
                                 std::span<const Register> registers,
                                 const AddressRecovery& address,
                                 const WritePortRecovery& write);

struct MemoryBlock {
  std::string name;
  size_t rows = 0;
  size_t width = 0;
  std::vector<WireId> addr;  // LSB first
  std::vector<WireId> write_port;
  std::vector<WireId> read_port;
  WireId enable;
  // Rows sorted by address; each row register's bits follow memory bit
  // order.
  std::vector<Register> row_registers;
  std::vector<uint32_t> row_address;
  // For every address value, the index of the row the read port returns.
  std::vector<uint32_t> read_alias;
  // Logic that implemented the memory besides the row DFFs: enable
  // multiplexers, decode and read tree. Consumed where exclusive.
  std::vector<CellId> support_cells;

  // Row index written at `address`, or nullopt for an unmapped address.
  std::optional<size_t> RowAt(uint32_t address) const;
};

MemoryBlock AssembleMemory(const Netlist& netlist,
                           const MemoryCandidateGroup& group,
                           std::span<const Register> registers,
                           const AddressRecovery& address,
                           const WritePortRecovery& write,
                           const ReadPortRecovery& read);

}  // namespace regroup

#endif  // REGROUP_MEMORY_H_
