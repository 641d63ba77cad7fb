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

#include "regroup/enable.h"

#include <algorithm>
#include <map>

namespace regroup {

std::string_view PolarityName(Polarity polarity) {
  return polarity == Polarity::kActiveHigh ? "high" : "low";
}

namespace {

bool Bit(uint32_t row, size_t j) { return (row >> j) & 1u; }

std::optional<MuxView> MatchLutMux(const Cell& lut) {
  if (lut.inputs.size() != 3) return std::nullopt;
  static constexpr size_t kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                          {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& p : kPerms) {
    const size_t s = p[0];
    const size_t a = p[1];
    const size_t b = p[2];
    bool ok = true;
    for (uint32_t row = 0; row < 8 && ok; ++row) {
      bool want = Bit(row, s) ? Bit(row, b) : Bit(row, a);
      ok = lut.table.at(row) == want;
    }
    if (ok) {
      return MuxView{lut.output, lut.inputs[s], lut.inputs[a], lut.inputs[b],
                     {lut.id}};
    }
  }
  return std::nullopt;
}

bool IsInverterOf(const Netlist& netlist, WireId wire, WireId of) {
  auto d = netlist.driver(wire);
  if (!d) return false;
  const Cell& c = netlist.cell(*d);
  return c.kind == CellKind::kNot && c.inputs[0] == of;
}

// out = first_op(inner(s, b), inner(~s, a)) for AND-OR or NAND-NAND forms.
std::optional<MuxView> MatchTwoLevel(const Netlist& netlist, const Cell& top,
                                     CellKind inner) {
  auto x = netlist.driver(top.inputs[0]);
  auto y = netlist.driver(top.inputs[1]);
  if (!x || !y || *x == *y) return std::nullopt;
  const Cell& cx = netlist.cell(*x);
  const Cell& cy = netlist.cell(*y);
  if (cx.kind != inner || cy.kind != inner) return std::nullopt;
  for (int order = 0; order < 2; ++order) {
    const Cell& first = order == 0 ? cx : cy;
    const Cell& second = order == 0 ? cy : cx;
    for (size_t si = 0; si < 2; ++si) {
      WireId s = first.inputs[si];
      WireId b = first.inputs[1 - si];
      for (size_t ti = 0; ti < 2; ++ti) {
        if (!IsInverterOf(netlist, second.inputs[ti], s)) continue;
        WireId a = second.inputs[1 - ti];
        return MuxView{top.output, s, a, b, {cx.id, cy.id, top.id}};
      }
    }
  }
  return std::nullopt;
}

std::optional<EnabledDff> FromMux(const MuxView& view, const Cell& dff,
                                  EnablePattern pattern) {
  const WireId q = dff.output;
  if (view.sel == q) return std::nullopt;
  EnabledDff hit;
  hit.dff = dff.id;
  hit.q = q;
  hit.enable = view.sel;
  hit.pattern = pattern;
  hit.pattern_cells = view.cells;
  if (view.when0 == q && view.when1 != q) {
    hit.polarity = Polarity::kActiveHigh;
    hit.next = view.when1;
  } else if (view.when1 == q && view.when0 != q) {
    hit.polarity = Polarity::kActiveLow;
    hit.next = view.when0;
  } else {
    return std::nullopt;
  }
  return hit;
}

// Searches for an input acting as enable such that the LUT holds q when the
// enable is inactive and ignores q when it is active.
std::optional<EnabledDff> SolveLut(const Cell& lut, const Cell& dff) {
  const size_t k = lut.inputs.size();
  if (k < 2 || k > kMaxEnableLutInputs) return std::nullopt;
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i + 1; j < k; ++j) {
      if (lut.inputs[i] == lut.inputs[j]) return std::nullopt;
    }
  }
  const WireId q = dff.output;
  auto qit = std::find(lut.inputs.begin(), lut.inputs.end(), q);
  if (qit == lut.inputs.end()) return std::nullopt;
  const size_t qpos = static_cast<size_t>(qit - lut.inputs.begin());
  const uint32_t rows = static_cast<uint32_t>(lut.table.rows());

  for (size_t e = 0; e < k; ++e) {
    if (e == qpos) continue;
    for (Polarity polarity : {Polarity::kActiveHigh, Polarity::kActiveLow}) {
      const bool active = polarity == Polarity::kActiveHigh;
      bool ok = true;
      for (uint32_t row = 0; row < rows && ok; ++row) {
        if (Bit(row, e) != active) {
          ok = lut.table.at(row) == Bit(row, qpos);
        } else {
          ok = lut.table.at(row) == lut.table.at(row ^ (1u << qpos));
        }
      }
      if (!ok) continue;

      // next = f(remaining inputs), read with enable active and q = 0.
      std::vector<size_t> rest;
      for (size_t p = 0; p < k; ++p) {
        if (p != e && p != qpos) rest.push_back(p);
      }
      auto f = [&](uint32_t sub) {
        uint32_t row = active ? (1u << e) : 0u;
        for (size_t r = 0; r < rest.size(); ++r) {
          if (Bit(sub, r)) row |= 1u << rest[r];
        }
        return lut.table.at(row);
      };
      const uint32_t sub_rows = 1u << rest.size();
      std::vector<size_t> support;
      for (size_t r = 0; r < rest.size(); ++r) {
        for (uint32_t sub = 0; sub < sub_rows; ++sub) {
          if (f(sub) != f(sub ^ (1u << r))) {
            support.push_back(r);
            break;
          }
        }
      }

      EnabledDff hit;
      hit.dff = dff.id;
      hit.q = q;
      hit.enable = lut.inputs[e];
      hit.polarity = polarity;
      hit.pattern = EnablePattern::kLut;
      hit.pattern_cells = {lut.id};
      if (support.size() == 1) {
        const size_t r = support[0];
        bool identity = true;
        for (uint32_t sub = 0; sub < sub_rows && identity; ++sub) {
          identity = f(sub) == Bit(sub, r);
        }
        if (identity) {
          hit.next = lut.inputs[rest[r]];
          return hit;
        }
      }
      NextFunction fn;
      fn.table = TruthTable(support.size());
      for (size_t s : support) fn.inputs.push_back(lut.inputs[rest[s]]);
      for (uint32_t row = 0; row < fn.table.rows(); ++row) {
        uint32_t sub = 0;
        for (size_t s = 0; s < support.size(); ++s) {
          if (Bit(row, s)) sub |= 1u << support[s];
        }
        fn.table.set(row, f(sub));
      }
      hit.next_function = std::move(fn);
      return hit;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<MuxView> MatchMux(const Netlist& netlist, WireId out) {
  auto d = netlist.driver(out);
  if (!d) return std::nullopt;
  const Cell& c = netlist.cell(*d);
  switch (c.kind) {
    case CellKind::kMux:
      return MuxView{out, c.inputs[0], c.inputs[1], c.inputs[2], {c.id}};
    case CellKind::kLut:
      return MatchLutMux(c);
    case CellKind::kOr:
      return MatchTwoLevel(netlist, c, CellKind::kAnd);
    case CellKind::kNand:
      return MatchTwoLevel(netlist, c, CellKind::kNand);
    default:
      return std::nullopt;
  }
}

std::optional<EnabledDff> DetectEnable(const Netlist& netlist, CellId dff,
                                       const EnablePatterns& patterns) {
  const Cell& flop = netlist.cell(dff);
  if (!flop.is_dff()) return std::nullopt;
  auto d = netlist.driver(flop.inputs[0]);
  if (!d) return std::nullopt;
  const Cell& front = netlist.cell(*d);
  switch (front.kind) {
    case CellKind::kMux:
      if (!patterns.mux) return std::nullopt;
      return FromMux(*MatchMux(netlist, front.output), flop,
                     EnablePattern::kMux);
    case CellKind::kOr:
    case CellKind::kNand:
      if (!patterns.gates) return std::nullopt;
      if (auto view = MatchMux(netlist, front.output)) {
        return FromMux(*view, flop, EnablePattern::kGates);
      }
      return std::nullopt;
    case CellKind::kLut:
      if (!patterns.lut) return std::nullopt;
      return SolveLut(front, flop);
    default:
      return std::nullopt;
  }
}

std::vector<RegisterGroup> PartitionByEnable(
    const Netlist& netlist, std::span<const EnabledDff> detected) {
  std::vector<RegisterGroup> groups;
  std::map<std::pair<uint32_t, Polarity>, size_t> index;
  for (const EnabledDff& hit : detected) {
    auto key = std::make_pair(hit.enable.index(), hit.polarity);
    auto [it, inserted] = index.try_emplace(key, groups.size());
    if (inserted) groups.push_back({hit.enable, hit.polarity, {}});
    groups[it->second].members.push_back(hit);
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [&](const RegisterGroup& a, const RegisterGroup& b) {
                     const std::string& na = netlist.wire_name(a.enable);
                     const std::string& nb = netlist.wire_name(b.enable);
                     if (na != nb) return NaturalLess(na, nb);
                     return a.polarity < b.polarity;
                   });
  return groups;
}

std::vector<RegisterGroup> PartitionByEnable(const Netlist& netlist,
                                             const EnablePatterns& patterns) {
  std::vector<EnabledDff> detected;
  for (CellId dff : netlist.dffs()) {
    if (auto hit = DetectEnable(netlist, dff, patterns)) {
      detected.push_back(std::move(*hit));
    }
  }
  return PartitionByEnable(netlist, detected);
}

}  // namespace regroup
