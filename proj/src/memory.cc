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

#include "regroup/memory.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "regroup/enable.h"

namespace regroup {

std::string_view MemoryErrorKindName(MemoryErrorKind kind) {
  switch (kind) {
    case MemoryErrorKind::kNotPureDecode:
      return "NotPureDecode";
    case MemoryErrorKind::kNonUniqueAddress:
      return "NonUniqueAddress";
    case MemoryErrorKind::kMultipleAddresses:
      return "MultipleAddresses";
    case MemoryErrorKind::kInconsistentWriteData:
      return "InconsistentWriteData";
    case MemoryErrorKind::kNoMuxTree:
      return "NoMuxTree";
    case MemoryErrorKind::kSelectNotAddress:
      return "SelectNotAddress";
    case MemoryErrorKind::kDepthMismatch:
      return "DepthMismatch";
    case MemoryErrorKind::kSharedLogic:
      return "SharedLogic";
  }
  return "?";
}

MemoryError::MemoryError(MemoryErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(MemoryErrorKindName(kind)) + ": " +
                         detail),
      kind_(kind) {}

namespace {

struct NameLess {
  const Netlist& netlist;
  bool operator()(WireId a, WireId b) const {
    return NaturalLess(netlist.wire_name(a), netlist.wire_name(b));
  }
};

// Single-cube on-set (or off-set) of a LUT: returns per-input fixed values,
// nullopt if the set is empty or not a cube.
std::optional<std::vector<std::optional<bool>>> LutCube(const Cell& lut,
                                                        bool on_set) {
  const size_t k = lut.inputs.size();
  std::vector<uint32_t> rows;
  for (uint32_t row = 0; row < lut.table.rows(); ++row) {
    if (lut.table.at(row) == on_set) rows.push_back(row);
  }
  if (rows.empty()) return std::nullopt;
  std::vector<std::optional<bool>> fixed(k);
  size_t free = 0;
  for (size_t j = 0; j < k; ++j) {
    bool first = (rows[0] >> j) & 1u;
    bool same = std::all_of(rows.begin(), rows.end(), [&](uint32_t r) {
      return static_cast<bool>((r >> j) & 1u) == first;
    });
    if (same) {
      fixed[j] = first;
    } else {
      ++free;
    }
  }
  if (rows.size() != (size_t{1} << free)) return std::nullopt;
  return fixed;
}

}  // namespace

std::optional<Product> DecomposeProduct(const Netlist& netlist, WireId wire,
                                        bool positive) {
  std::map<WireId, bool> literals;
  std::set<CellId> cells;
  std::set<WireId> pos;
  std::set<std::pair<WireId, bool>> visited;
  std::vector<std::pair<WireId, bool>> stack{{wire, positive}};

  while (!stack.empty()) {
    auto [w, s] = stack.back();
    stack.pop_back();
    if (!visited.emplace(w, s).second) continue;
    if (s) pos.insert(w);

    auto expand = [&](const Cell& c, std::initializer_list<bool> signs) {
      cells.insert(c.id);
      auto it = signs.begin();
      for (WireId in : c.inputs) stack.emplace_back(in, *it++);
    };
    bool leaf = true;
    if (auto d = netlist.driver(w)) {
      const Cell& c = netlist.cell(*d);
      leaf = false;
      switch (c.kind) {
        case CellKind::kBuf:
          expand(c, {s});
          break;
        case CellKind::kNot:
          expand(c, {!s});
          break;
        case CellKind::kAnd:
          if (s) expand(c, {true, true}); else leaf = true;
          break;
        case CellKind::kNor:
          if (s) expand(c, {false, false}); else leaf = true;
          break;
        case CellKind::kNand:
          if (!s) expand(c, {true, true}); else leaf = true;
          break;
        case CellKind::kOr:
          if (!s) expand(c, {false, false}); else leaf = true;
          break;
        case CellKind::kLut:
          if (auto cube = LutCube(c, s)) {
            cells.insert(c.id);
            for (size_t j = 0; j < c.inputs.size(); ++j) {
              if ((*cube)[j]) stack.emplace_back(c.inputs[j], *(*cube)[j]);
            }
          } else {
            leaf = true;
          }
          break;
        default:
          leaf = true;
      }
    }
    if (!leaf) continue;
    auto [it, inserted] = literals.emplace(w, s);
    if (!inserted && it->second != s) return std::nullopt;
    if (literals.size() > kMaxProductLiterals) return std::nullopt;
  }

  Product p;
  for (auto [w, s] : literals) p.literals.push_back({w, s});
  p.cells.assign(cells.begin(), cells.end());
  p.positive.assign(pos.begin(), pos.end());
  return p;
}

std::vector<MemoryCandidateGroup> FindMemoryGroups(
    const Netlist& netlist, std::span<const Register> registers) {
  std::map<size_t, std::vector<size_t>> by_width;
  for (size_t i = 0; i < registers.size(); ++i) {
    if (registers[i].width() > 0) by_width[registers[i].width()].push_back(i);
  }

  std::vector<MemoryCandidateGroup> groups;
  for (const auto& [width, members] : by_width) {
    if (members.size() < 2) continue;
    std::map<size_t, Product> products;
    std::unordered_set<WireId> negated;
    for (size_t r : members) {
      const Register& reg = registers[r];
      auto p = DecomposeProduct(netlist, reg.enable,
                                reg.polarity == Polarity::kActiveHigh);
      if (!p) continue;
      for (const Literal& l : p->literals) {
        if (!l.positive) negated.insert(l.wire);
      }
      products.emplace(r, std::move(*p));
    }

    std::map<WireId, std::vector<size_t>> buckets;
    for (const auto& [r, p] : products) {
      if (p.literals.size() < 2) continue;
      for (const Literal& l : p.literals) {
        if (l.positive && !negated.count(l.wire)) buckets[l.wire].push_back(r);
      }
    }

    std::unordered_set<size_t> taken;
    while (true) {
      WireId best;
      size_t best_count = 1;
      for (const auto& [wire, regs] : buckets) {
        size_t count = std::count_if(regs.begin(), regs.end(), [&](size_t r) {
          return !taken.count(r);
        });
        if (count > best_count ||
            (count == best_count && best.valid() && count > 1 &&
             NaturalLess(netlist.wire_name(wire), netlist.wire_name(best)))) {
          best = wire;
          best_count = count;
        }
      }
      if (!best.valid()) break;
      MemoryCandidateGroup group;
      group.shared_enable_input = best;
      for (size_t r : buckets[best]) {
        if (taken.count(r)) continue;
        taken.insert(r);
        group.registers.push_back(r);
        group.row_products.push_back(products.at(r));
      }
      groups.push_back(std::move(group));
    }
  }
  return groups;
}

AddressRecovery RecoverAddress(const Netlist& netlist,
                               const MemoryCandidateGroup& group) {
  const size_t rows = group.registers.size();
  std::set<Literal> common(group.row_products[0].literals.begin(),
                           group.row_products[0].literals.end());
  std::set<WireId> common_pos(group.row_products[0].positive.begin(),
                              group.row_products[0].positive.end());
  for (size_t r = 1; r < rows; ++r) {
    const Product& p = group.row_products[r];
    std::set<Literal> lits(p.literals.begin(), p.literals.end());
    std::set<WireId> ps(p.positive.begin(), p.positive.end());
    std::erase_if(common, [&](const Literal& l) { return !lits.count(l); });
    std::erase_if(common_pos, [&](WireId w) { return !ps.count(w); });
  }

  // The enable is the shared wire whose own product covers the most common
  // literals; closer to the rows (more cells) wins ties.
  AddressRecovery out;
  std::optional<Product> enable_product;
  for (WireId w : common_pos) {
    auto p = DecomposeProduct(netlist, w, true);
    if (!p) continue;
    bool covered = std::all_of(p->literals.begin(), p->literals.end(),
                               [&](const Literal& l) {
                                 return common.count(l) > 0;
                               });
    if (!covered) continue;
    bool better = !enable_product;
    if (!better) {
      const Product& e = *enable_product;
      if (p->literals.size() != e.literals.size()) {
        better = p->literals.size() > e.literals.size();
      } else if (p->cells.size() != e.cells.size()) {
        better = p->cells.size() > e.cells.size();
      } else {
        better = NaturalLess(netlist.wire_name(w),
                             netlist.wire_name(out.enable));
      }
    }
    if (better) {
      out.enable = w;
      enable_product = std::move(p);
    }
  }
  if (!enable_product) {
    throw MemoryError(MemoryErrorKind::kNotPureDecode,
                      "no shared enable wire across row enables");
  }
  for (const Literal& l : enable_product->literals) common.erase(l);
  if (!common.empty()) {
    throw MemoryError(MemoryErrorKind::kNotPureDecode,
                      "common term " + netlist.wire_name(common.begin()->wire) +
                          " lies outside enable " +
                          netlist.wire_name(out.enable));
  }
  std::set<Literal> enable_lits(enable_product->literals.begin(),
                                enable_product->literals.end());

  std::vector<std::map<WireId, bool>> row_bits(rows);
  std::set<WireId> all_wires;
  for (size_t r = 0; r < rows; ++r) {
    for (const Literal& l : group.row_products[r].literals) {
      if (enable_lits.count(l)) continue;
      row_bits[r].emplace(l.wire, l.positive);
      all_wires.insert(l.wire);
    }
  }

  std::set<WireId> shared = all_wires;
  for (const auto& bits : row_bits) {
    std::erase_if(shared, [&](WireId w) { return !bits.count(w); });
  }
  if (shared != all_wires) {
    for (WireId w : all_wires) {
      if (shared.count(w)) continue;
      auto d = netlist.driver(w);
      if (d && !netlist.cell(*d).is_dff()) {
        CellKind k = netlist.cell(*d).kind;
        if (k != CellKind::kConst0 && k != CellKind::kConst1) {
          throw MemoryError(MemoryErrorKind::kNotPureDecode,
                            "decode term " + netlist.wire_name(w) +
                                " is driven by " +
                                std::string(CellKindName(k)));
        }
      }
    }
    throw MemoryError(MemoryErrorKind::kMultipleAddresses,
                      "row decoders use different address wires");
  }
  if (all_wires.size() > kMaxAddressBits) {
    throw MemoryError(MemoryErrorKind::kMultipleAddresses,
                      "decoded address wider than " +
                          std::to_string(kMaxAddressBits) + " bits");
  }

  out.addr.assign(all_wires.begin(), all_wires.end());
  std::sort(out.addr.begin(), out.addr.end(), NameLess{netlist});
  std::map<uint32_t, size_t> seen;
  for (size_t r = 0; r < rows; ++r) {
    uint32_t value = 0;
    for (size_t j = 0; j < out.addr.size(); ++j) {
      if (row_bits[r].at(out.addr[j])) value |= 1u << j;
    }
    auto [it, inserted] = seen.emplace(value, r);
    if (!inserted) {
      throw MemoryError(MemoryErrorKind::kNonUniqueAddress,
                        "rows " + std::to_string(it->second) + " and " +
                            std::to_string(r) + " share address " +
                            std::to_string(value));
    }
    out.row_address.push_back(value);
  }

  std::set<CellId> enable_cells(enable_product->cells.begin(),
                                enable_product->cells.end());
  std::set<CellId> decode;
  for (const Product& p : group.row_products) {
    for (CellId c : p.cells) {
      if (!enable_cells.count(c)) decode.insert(c);
    }
  }
  out.decode_cells.assign(decode.begin(), decode.end());
  return out;
}

namespace {

WireId ThroughBuffers(const Netlist& netlist, WireId w) {
  for (size_t guard = 0; guard < netlist.cells().size(); ++guard) {
    auto d = netlist.driver(w);
    if (!d || netlist.cell(*d).kind != CellKind::kBuf) break;
    w = netlist.cell(*d).inputs[0];
  }
  return w;
}

}  // namespace

WritePortRecovery RecoverWritePort(const Netlist& netlist,
                                   const MemoryCandidateGroup& group,
                                   std::span<const Register> registers) {
  WritePortRecovery out;
  const Register& first = registers[group.registers[0]];
  for (const EnabledDff& bit : first.bits) {
    if (!bit.next.valid()) {
      throw MemoryError(MemoryErrorKind::kInconsistentWriteData,
                        "row bit without a next-value wire");
    }
    out.data.push_back(ThroughBuffers(netlist, bit.next));
  }
  for (size_t index : group.registers) {
    const Register& reg = registers[index];
    std::map<WireId, std::vector<size_t>> slots;
    for (size_t b = reg.bits.size(); b-- > 0;) {
      if (!reg.bits[b].next.valid()) {
        throw MemoryError(MemoryErrorKind::kInconsistentWriteData,
                          "row bit without a next-value wire");
      }
      slots[ThroughBuffers(netlist, reg.bits[b].next)].push_back(b);
    }
    std::vector<size_t> bit_of;
    for (WireId data : out.data) {
      auto it = slots.find(data);
      if (it == slots.end() || it->second.empty()) {
        throw MemoryError(MemoryErrorKind::kInconsistentWriteData,
                          "register " + reg.name + " is not written from " +
                              netlist.wire_name(data));
      }
      bit_of.push_back(it->second.back());
      it->second.pop_back();
    }
    out.bit_of.push_back(std::move(bit_of));
  }
  return out;
}

namespace {

// Multiplexers reading `w` on a data leg, directly or through the first
// level of a two-level gate decomposition.
std::vector<MuxView> MuxReaders(const Netlist& netlist, WireId w) {
  std::vector<MuxView> out;
  std::set<WireId> seen;
  auto consider = [&](WireId candidate, CellId via) {
    if (seen.count(candidate)) return;
    auto view = MatchMux(netlist, candidate);
    if (!view) return;
    if (view->sel == w || (view->when0 != w && view->when1 != w)) return;
    if (std::find(view->cells.begin(), view->cells.end(), via) ==
        view->cells.end()) {
      return;
    }
    seen.insert(candidate);
    out.push_back(std::move(*view));
  };
  for (CellId c : netlist.readers(w)) {
    const Cell& cell = netlist.cell(c);
    if (cell.is_dff()) continue;
    consider(cell.output, c);
    if (cell.kind == CellKind::kAnd || cell.kind == CellKind::kNand) {
      for (CellId d : netlist.readers(cell.output)) {
        if (!netlist.cell(d).is_dff()) consider(netlist.cell(d).output, c);
      }
    }
  }
  return out;
}

}  // namespace

ReadPortRecovery RecoverReadPort(const Netlist& netlist,
                                 const MemoryCandidateGroup& group,
                                 std::span<const Register> registers,
                                 const AddressRecovery& address,
                                 const WritePortRecovery& write) {
  const size_t rows = group.registers.size();
  const size_t width = write.data.size();
  const size_t a = address.addr.size();
  std::unordered_map<WireId, size_t> addr_index;
  for (size_t j = 0; j < a; ++j) addr_index.emplace(address.addr[j], j);

  // Row/bit of every row Q wire, and each row's own enable cells.
  struct Slot {
    size_t row;
    size_t bit;
  };
  std::unordered_map<WireId, Slot> slot_of;
  std::vector<std::unordered_set<CellId>> own(rows);
  std::vector<std::vector<WireId>> q(rows, std::vector<WireId>(width));
  for (size_t r = 0; r < rows; ++r) {
    const Register& reg = registers[group.registers[r]];
    for (size_t i = 0; i < width; ++i) {
      const EnabledDff& bit = reg.bits[write.bit_of[r][i]];
      q[r][i] = bit.q;
      slot_of.emplace(bit.q, Slot{r, i});
    }
    for (const EnabledDff& bit : reg.bits) {
      own[r].insert(bit.pattern_cells.begin(), bit.pattern_cells.end());
    }
  }
  std::map<uint32_t, size_t> row_at;
  for (size_t r = 0; r < rows; ++r) row_at.emplace(address.row_address[r], r);

  if (a == 0) {
    throw MemoryError(MemoryErrorKind::kDepthMismatch, "empty address");
  }

  ReadPortRecovery out;
  std::unordered_map<WireId, MuxView> views;
  std::set<CellId> tree;
  std::vector<std::optional<uint32_t>> alias(size_t{1} << a);
  std::vector<std::vector<WireId>> level_selects;  // bit 0, by depth

  for (size_t i = 0; i < width; ++i) {
    std::vector<WireId> frontier;
    for (size_t r = 0; r < rows; ++r) {
      if (std::find(frontier.begin(), frontier.end(), q[r][i]) ==
          frontier.end()) {
        frontier.push_back(q[r][i]);
      }
    }
    for (size_t level = 1; level <= a; ++level) {
      std::vector<WireId> next;
      for (WireId w : frontier) {
        std::vector<MuxView> found;
        std::vector<MuxView> foreign;
        for (MuxView& view : MuxReaders(netlist, w)) {
          if (addr_index.count(view.sel)) {
            found.push_back(std::move(view));
            continue;
          }
          if (level == 1) {
            const auto& mine = own[slot_of.at(w).row];
            bool is_own = std::all_of(
                view.cells.begin(), view.cells.end(),
                [&](CellId c) { return mine.count(c) > 0; });
            if (is_own) continue;
          }
          foreign.push_back(std::move(view));
        }
        if (level == 1 && !foreign.empty()) {
          throw MemoryError(MemoryErrorKind::kNoMuxTree,
                            "row output " + netlist.wire_name(w) +
                                " also feeds a multiplexer selected by " +
                                netlist.wire_name(foreign[0].sel) +
                                "; more than one read port");
        }
        if (found.empty()) {
          if (level == 1) {
            throw MemoryError(MemoryErrorKind::kNoMuxTree,
                              "no address multiplexer reads " +
                                  netlist.wire_name(w));
          }
          if (!foreign.empty()) {
            throw MemoryError(MemoryErrorKind::kSelectNotAddress,
                              "multiplexer above " + netlist.wire_name(w) +
                                  " is selected by " +
                                  netlist.wire_name(foreign[0].sel));
          }
          throw MemoryError(MemoryErrorKind::kDepthMismatch,
                            "read tree for bit " + std::to_string(i) +
                                " ends after " + std::to_string(level - 1) +
                                " of " + std::to_string(a) + " levels");
        }
        // Several address muxes over one wire happen when unmapped
        // addresses alias a row; the root and walk checks below still apply.
        for (const MuxView& view : found) {
          if (std::find(next.begin(), next.end(), view.out) == next.end()) {
            next.push_back(view.out);
          }
          tree.insert(view.cells.begin(), view.cells.end());
          views.emplace(view.out, view);
        }
      }
      frontier = std::move(next);
    }
    if (frontier.size() != 1) {
      throw MemoryError(MemoryErrorKind::kDepthMismatch,
                        "read tree for bit " + std::to_string(i) +
                            " has " + std::to_string(frontier.size()) +
                            " roots after " + std::to_string(a) + " levels");
    }
    const WireId root = frontier[0];
    out.data.push_back(root);

    // Walk the tree for every address value.
    for (uint32_t v = 0; v < (1u << a); ++v) {
      WireId w = root;
      for (size_t depth = 0; depth < a; ++depth) {
        auto it = views.find(w);
        if (it == views.end()) {
          throw MemoryError(MemoryErrorKind::kDepthMismatch,
                            "read path for bit " + std::to_string(i) +
                                " reaches " + netlist.wire_name(w) +
                                " above the leaves");
        }
        const MuxView& view = it->second;
        if (i == 0 && v == 0) {
          level_selects.resize(std::max(level_selects.size(), depth + 1));
        }
        if (i == 0) {
          auto& sels = level_selects[depth];
          if (std::find(sels.begin(), sels.end(), view.sel) == sels.end()) {
            sels.push_back(view.sel);
          }
        }
        w = ((v >> addr_index.at(view.sel)) & 1u) ? view.when1 : view.when0;
      }
      auto slot = slot_of.find(w);
      if (slot == slot_of.end() || slot->second.bit != i) {
        throw MemoryError(MemoryErrorKind::kNoMuxTree,
                          "read tree for bit " + std::to_string(i) +
                              " does not end at row outputs");
      }
      const size_t row = slot->second.row;
      auto mapped = row_at.find(v);
      if (mapped != row_at.end() && mapped->second != row) {
        throw MemoryError(MemoryErrorKind::kNoMuxTree,
                          "read tree disagrees with the decoder at address " +
                              std::to_string(v));
      }
      if (!alias[v]) {
        alias[v] = static_cast<uint32_t>(row);
      } else if (*alias[v] != row) {
        throw MemoryError(MemoryErrorKind::kNoMuxTree,
                          "read trees disagree across bits at address " +
                              std::to_string(v));
      }
    }
  }

  // Exclusivity of the tree and the row outputs.
  std::unordered_set<CellId> tree_set(tree.begin(), tree.end());
  std::unordered_set<WireId> roots(out.data.begin(), out.data.end());
  for (CellId c : tree) {
    WireId w = netlist.cell(c).output;
    if (roots.count(w)) continue;
    bool shared = netlist.is_output(w) || netlist.is_sink(w);
    for (CellId reader : netlist.readers(w)) {
      if (!tree_set.count(reader)) shared = true;
    }
    if (shared) {
      throw MemoryError(MemoryErrorKind::kSharedLogic,
                        "read tree wire " + netlist.wire_name(w) +
                            " is used outside the tree");
    }
  }
  for (size_t r = 0; r < rows; ++r) {
    for (WireId w : q[r]) {
      bool shared = netlist.is_output(w) || netlist.is_sink(w);
      for (CellId reader : netlist.readers(w)) {
        if (!tree_set.count(reader) && !own[r].count(reader)) shared = true;
      }
      if (shared) {
        throw MemoryError(MemoryErrorKind::kSharedLogic,
                          "row output " + netlist.wire_name(w) +
                              " is used outside the memory");
      }
    }
  }

  // Reorder the address so the level nearest the read port is the MSB,
  // when every level of the bit-0 tree uses one distinct address wire.
  std::vector<size_t> perm(a);  // new bit j = old bit perm[j]
  for (size_t j = 0; j < a; ++j) perm[j] = j;
  bool uniform = level_selects.size() == a;
  std::set<WireId> used;
  for (const auto& sels : level_selects) {
    if (sels.size() != 1 || !used.insert(sels[0]).second) uniform = false;
  }
  if (uniform) {
    for (size_t depth = 0; depth < a; ++depth) {
      perm[a - 1 - depth] = addr_index.at(level_selects[depth][0]);
    }
  }
  auto remap = [&](uint32_t old_value) {
    uint32_t value = 0;
    for (size_t j = 0; j < a; ++j) {
      if ((old_value >> perm[j]) & 1u) value |= 1u << j;
    }
    return value;
  };
  for (size_t j = 0; j < a; ++j) out.addr.push_back(address.addr[perm[j]]);
  for (uint32_t v : address.row_address) out.row_address.push_back(remap(v));
  out.read_alias.assign(size_t{1} << a, 0);
  for (uint32_t v = 0; v < (1u << a); ++v) out.read_alias[remap(v)] = *alias[v];
  out.tree_cells.assign(tree.begin(), tree.end());
  return out;
}

std::optional<size_t> MemoryBlock::RowAt(uint32_t address) const {
  for (size_t r = 0; r < row_address.size(); ++r) {
    if (row_address[r] == address) return r;
  }
  return std::nullopt;
}

MemoryBlock AssembleMemory(const Netlist& netlist,
                           const MemoryCandidateGroup& group,
                           std::span<const Register> registers,
                           const AddressRecovery& address,
                           const WritePortRecovery& write,
                           const ReadPortRecovery& read) {
  const size_t rows = group.registers.size();
  std::vector<size_t> order(rows);
  for (size_t r = 0; r < rows; ++r) order[r] = r;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return read.row_address[x] < read.row_address[y];
  });
  std::vector<uint32_t> position(rows);
  for (size_t k = 0; k < rows; ++k) position[order[k]] = static_cast<uint32_t>(k);

  MemoryBlock block;
  block.rows = rows;
  block.width = write.data.size();
  block.addr = read.addr;
  block.write_port = write.data;
  block.read_port = read.data;
  block.enable = address.enable;

  std::set<CellId> support(address.decode_cells.begin(),
                           address.decode_cells.end());
  support.insert(read.tree_cells.begin(), read.tree_cells.end());
  std::vector<std::string> names;
  for (size_t k = 0; k < rows; ++k) {
    const size_t r = order[k];
    const Register& src = registers[group.registers[r]];
    Register row = src;
    row.bits.clear();
    for (size_t i = 0; i < block.width; ++i) {
      row.bits.push_back(src.bits[write.bit_of[r][i]]);
    }
    for (const EnabledDff& bit : src.bits) {
      support.insert(bit.pattern_cells.begin(), bit.pattern_cells.end());
    }
    names.push_back(row.name);
    block.row_registers.push_back(std::move(row));
    block.row_address.push_back(read.row_address[r]);
  }
  for (uint32_t r : read.read_alias) block.read_alias.push_back(position[r]);
  block.support_cells.assign(support.begin(), support.end());

  std::string prefix = names.empty() ? std::string() : names[0];
  for (const std::string& n : names) {
    size_t k = 0;
    while (k < prefix.size() && k < n.size() && prefix[k] == n[k]) ++k;
    prefix.resize(k);
  }
  while (!prefix.empty() &&
         (std::isdigit(static_cast<unsigned char>(prefix.back())) ||
          !std::isalnum(static_cast<unsigned char>(prefix.back())))) {
    prefix.pop_back();
  }
  block.name = prefix.empty() ? "mem_" + netlist.wire_name(block.enable)
                              : prefix;
  return block;
}

}  // namespace regroup
