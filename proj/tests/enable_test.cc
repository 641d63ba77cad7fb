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

#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "regroup/enable.h"
#include "regroup/fixtures.h"

namespace regroup {
namespace {

Netlist OneFlop(bool mirrored) {
  NetlistBuilder b;
  b.input("en");
  b.input("d_in");
  if (mirrored) {
    b.gate(CellKind::kMux, {"en", "d_in", "q"}, "d");
  } else {
    b.gate(CellKind::kMux, {"en", "q", "d_in"}, "d");
  }
  b.add_dff(b.wire("d"), b.wire("q"));
  b.output("q");
  return std::move(b).Build();
}

TEST(Enable, CanonicalMux) {
  Netlist n = OneFlop(false);
  auto e = DetectEnable(n, n.dffs()[0]);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(n.wire_name(e->enable), "en");
  EXPECT_EQ(n.wire_name(e->next), "d_in");
  EXPECT_EQ(e->polarity, Polarity::kActiveHigh);
  EXPECT_EQ(e->pattern, EnablePattern::kMux);
}

TEST(Enable, MirroredMuxIsActiveLow) {
  Netlist n = OneFlop(true);
  auto e = DetectEnable(n, n.dffs()[0]);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(n.wire_name(e->enable), "en");
  EXPECT_EQ(n.wire_name(e->next), "d_in");
  EXPECT_EQ(e->polarity, Polarity::kActiveLow);
}

TEST(Enable, PrimaryInputDIsNotEnabled) {
  NetlistBuilder b;
  b.input("d");
  b.add_dff(b.wire("d"), b.wire("q"));
  b.output("q");
  Netlist n = std::move(b).Build();
  EXPECT_FALSE(DetectEnable(n, n.dffs()[0]).has_value());
}

TEST(Enable, CounterBitsShareEnable) {
  Fixture f = GenCounter(3);
  for (CellId d : f.netlist.dffs()) {
    auto e = DetectEnable(f.netlist, d);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(f.netlist.wire_name(e->enable), "en");
  }
  auto groups = PartitionByEnable(f.netlist);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].members.size(), 3u);
}

TEST(Enable, GateAndLutForms) {
  NetlistBuilder b;
  b.input("en");
  b.input("n0");
  b.input("n1");
  b.input("n2");
  b.input("u");
  // (en & n0) | (~en & q0)
  b.gate(CellKind::kNot, {"en"}, "nen");
  b.gate(CellKind::kAnd, {"en", "n0"}, "h0");
  b.gate(CellKind::kAnd, {"nen", "q0"}, "l0");
  b.gate(CellKind::kOr, {"h0", "l0"}, "d0");
  // ~(~(n1 & en) & ~(q1 & nen)) with NANDs
  b.gate(CellKind::kNand, {"n1", "en"}, "h1");
  b.gate(CellKind::kNand, {"q1", "nen"}, "l1");
  b.gate(CellKind::kNand, {"h1", "l1"}, "d1");
  // LUT(q2, n2, en) = en ? n2 : q2
  b.add_lut({b.wire("q2"), b.wire("n2"), b.wire("en")}, b.wire("d2"),
            TruthTable::FromFunction(3, [](uint32_t r) {
              return (r & 4u) ? (r & 2u) != 0 : (r & 1u) != 0;
            }));
  // LUT(en, q3, n2, u) = en ? (n2 ^ u) : q3, next folded in
  b.add_lut({b.wire("en"), b.wire("q3"), b.wire("n2"), b.wire("u")},
            b.wire("d3"), TruthTable::FromFunction(4, [](uint32_t r) {
              return (r & 1u) ? (((r >> 2) ^ (r >> 3)) & 1u) != 0
                              : (r & 2u) != 0;
            }));
  for (int i = 0; i < 4; ++i) {
    const std::string k = std::to_string(i);
    b.add_dff(b.wire("d" + k), b.wire("q" + k));
    b.output("q" + k);
  }
  Netlist n = std::move(b).Build();
  std::vector<EnabledDff> found;
  for (CellId d : n.dffs()) {
    auto e = DetectEnable(n, d);
    ASSERT_TRUE(e.has_value()) << n.wire_name(n.cell(d).output);
    EXPECT_EQ(n.wire_name(e->enable), "en");
    EXPECT_EQ(e->polarity, Polarity::kActiveHigh);
    found.push_back(*e);
  }
  EXPECT_EQ(found[0].pattern, EnablePattern::kGates);
  EXPECT_EQ(n.wire_name(found[0].next), "n0");
  EXPECT_EQ(found[1].pattern, EnablePattern::kGates);
  EXPECT_EQ(n.wire_name(found[1].next), "n1");
  EXPECT_EQ(found[2].pattern, EnablePattern::kLut);
  EXPECT_EQ(n.wire_name(found[2].next), "n2");
  EXPECT_EQ(found[3].pattern, EnablePattern::kLut);
  EXPECT_FALSE(found[3].next.valid());
  ASSERT_TRUE(found[3].next_function.has_value());
  EXPECT_EQ(found[3].next_function->inputs.size(), 2u);

  // Switching the forms off turns detection off.
  EnablePatterns mux_only{.mux = true, .gates = false, .lut = false};
  for (CellId d : n.dffs()) EXPECT_FALSE(DetectEnable(n, d, mux_only));
}

TEST(Enable, NoEnabledFlopsGiveNoGroups) {
  EXPECT_TRUE(PartitionByEnable(GenNoEnable().netlist).empty());
}

TEST(Enable, DistinctEnablesMakeDistinctGroups) {
  NetlistBuilder b;
  b.input("en_a");
  b.input("en_b");
  for (std::string p : {"a", "b"}) {
    for (int i = 0; i < 3; ++i) {
      const std::string q = p + std::to_string(i);
      b.gate(CellKind::kNot, {q}, q + "_n");
      b.gate(CellKind::kMux, {"en_" + p, q, q + "_n"}, q + "_d");
      b.add_dff(b.wire(q + "_d"), b.wire(q));
      b.output(q);
    }
  }
  auto groups = PartitionByEnable(std::move(b).Build());
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0].members.size(), 3u);
  EXPECT_EQ(groups[1].members.size(), 3u);
}

TEST(Enable, SharedEnableMergesShifters) {
  NetlistBuilder b;
  b.input("en");
  b.input("sa");
  b.input("sb");
  for (std::string p : {"a", "b"}) {
    for (int i = 0; i < 4; ++i) {
      const std::string q = p + std::to_string(i);
      const std::string next = i == 3 ? "s" + p : p + std::to_string(i + 1);
      b.gate(CellKind::kMux, {"en", q, next}, q + "_d");
      b.add_dff(b.wire(q + "_d"), b.wire(q));
      b.output(q);
    }
  }
  auto groups = PartitionByEnable(std::move(b).Build());
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].members.size(), 8u);
}

// Value of `w` with `fixed` wires cut, other sources from `free`.
bool Eval(const Netlist& n, WireId w, const std::map<WireId, bool>& fixed,
          std::map<WireId, bool>& free, std::mt19937& rng) {
  if (auto it = fixed.find(w); it != fixed.end()) return it->second;
  auto d = n.driver(w);
  if (!d || n.cell(*d).is_dff()) {
    auto [it, fresh] = free.emplace(w, false);
    if (fresh) it->second = rng() & 1u;
    return it->second;
  }
  const Cell& c = n.cell(*d);
  uint32_t row = 0;
  for (size_t i = 0; i < c.inputs.size(); ++i) {
    row |= uint32_t{Eval(n, c.inputs[i], fixed, free, rng)} << i;
  }
  return CellFunction(c).at(row);
}

TEST(Enable, DetectionIsSoundOnRandomNetlists) {
  std::mt19937 rng(5);
  size_t checked = 0;
  for (uint64_t seed = 1; seed <= 200; ++seed) {
    Fixture f = GenRandom(seed);
    const Netlist& n = f.netlist;
    for (CellId dff : n.dffs()) {
      auto e = DetectEnable(n, dff);
      if (!e) continue;
      const WireId d = n.cell(dff).inputs[0];
      for (int trial = 0; trial < 4; ++trial) {
        std::map<WireId, bool> free;
        for (uint32_t r = 0; r < 8; ++r) {
          const bool en = r & 1u, q = r & 2u;
          bool next = r & 4u;
          std::map<WireId, bool> fixed{{e->enable, en}, {e->q, q}};
          if (e->next.valid()) {
            if (e->next == e->enable || e->next == e->q) continue;
            fixed.emplace(e->next, next);
          } else {
            // Folded next: compute it from its own inputs.
            const NextFunction& nf = *e->next_function;
            uint32_t row = 0;
            for (size_t i = 0; i < nf.inputs.size(); ++i) {
              row |= uint32_t{Eval(n, nf.inputs[i], fixed, free, rng)} << i;
            }
            next = nf.table.at(row);
          }
          const bool active = e->polarity == Polarity::kActiveHigh ? en : !en;
          ASSERT_EQ(Eval(n, d, fixed, free, rng), active ? next : q)
              << f.name << " " << n.wire_name(e->q) << " row " << r;
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 1000u);
}

TEST(Enable, PartitionIsDisjointCoverAndDeterministic) {
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    Fixture f = GenRandom(seed);
    auto g1 = PartitionByEnable(f.netlist);
    auto g2 = PartitionByEnable(f.netlist);
    std::set<size_t> seen;
    size_t total = 0;
    for (const RegisterGroup& g : g1) {
      for (const EnabledDff& m : g.members) {
        EXPECT_TRUE(seen.insert(m.dff.index()).second);
        EXPECT_EQ(m.enable, g.enable);
        EXPECT_EQ(m.polarity, g.polarity);
        ++total;
      }
    }
    size_t detected = 0;
    for (CellId d : f.netlist.dffs()) detected += DetectEnable(f.netlist, d) ? 1 : 0;
    EXPECT_EQ(total, detected);
    ASSERT_EQ(g1.size(), g2.size());
    for (size_t k = 0; k < g1.size(); ++k) {
      ASSERT_EQ(g1[k].members.size(), g2[k].members.size());
      for (size_t i = 0; i < g1[k].members.size(); ++i) {
        EXPECT_EQ(g1[k].members[i].dff, g2[k].members[i].dff);
      }
    }
  }
}

}  // namespace
}  // namespace regroup
