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

#include <algorithm>
#include <queue>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "regroup/fixtures.h"
#include "regroup/netlist.h"

namespace regroup {
namespace {

NetlistErrorKind BuildError(NetlistBuilder b) {
  try {
    std::move(b).Build();
  } catch (const NetlistError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a NetlistError";
  return NetlistErrorKind::kUnknownWire;
}

TEST(Netlist, SingleNotIsValid) {
  NetlistBuilder b;
  b.input("a");
  b.gate(CellKind::kNot, {"a"}, "b");
  b.output("b");
  Netlist n = std::move(b).Build();
  EXPECT_EQ(n.cells().size(), 1u);
  EXPECT_EQ(n.inputs().size(), 1u);
  EXPECT_EQ(n.outputs().size(), 1u);
  EXPECT_EQ(n.cell(*n.driver(*n.find_wire("b"))).kind, CellKind::kNot);
}

TEST(Netlist, RejectsMultipleDrivers) {
  NetlistBuilder b;
  b.input("a");
  b.gate(CellKind::kNot, {"a"}, "b");
  b.gate(CellKind::kBuf, {"a"}, "b");
  b.output("b");
  EXPECT_EQ(BuildError(std::move(b)), NetlistErrorKind::kMultipleDrivers);
}

TEST(Netlist, RejectsDrivenInput) {
  NetlistBuilder b;
  b.input("a");
  b.input("c");
  b.gate(CellKind::kNot, {"c"}, "a");
  b.output("a");
  EXPECT_EQ(BuildError(std::move(b)), NetlistErrorKind::kMultipleDrivers);
}

TEST(Netlist, RejectsCombinationalLoopWithWitness) {
  NetlistBuilder b;
  b.gate(CellKind::kNot, {"a"}, "b");
  b.gate(CellKind::kNot, {"b"}, "a");
  b.output("a");
  try {
    std::move(b).Build();
    FAIL() << "loop accepted";
  } catch (const NetlistError& e) {
    EXPECT_EQ(e.kind(), NetlistErrorKind::kCombinationalLoop);
    std::set<std::string> w(e.witness().begin(), e.witness().end());
    EXPECT_EQ(w, (std::set<std::string>{"a", "b"}));
  }
}

TEST(Netlist, LoopThroughDffIsFine) {
  NetlistBuilder b;
  b.gate(CellKind::kNot, {"q"}, "d");
  b.add_dff(b.wire("d"), b.wire("q"));
  b.output("q");
  Netlist n = std::move(b).Build();
  EXPECT_EQ(n.dffs().size(), 1u);
  EXPECT_TRUE(SplitViewOrder(n).has_value());
}

TEST(Netlist, RejectsUndrivenAndDangling) {
  {
    NetlistBuilder b;
    b.gate(CellKind::kNot, {"nowhere"}, "b");
    b.output("b");
    EXPECT_EQ(BuildError(std::move(b)), NetlistErrorKind::kUndrivenWire);
  }
  {
    NetlistBuilder b;
    b.input("a");
    b.gate(CellKind::kNot, {"a"}, "b");
    EXPECT_EQ(BuildError(std::move(b)), NetlistErrorKind::kDanglingWire);
  }
  {
    NetlistBuilder b;
    b.input("a");
    b.gate(CellKind::kNot, {"a"}, "b");
    b.set_dangling_policy(DanglingPolicy::kAllow);
    EXPECT_NO_THROW(std::move(b).Build());
  }
}

TEST(Netlist, RejectsBadArity) {
  NetlistBuilder b;
  b.input("a");
  b.gate(CellKind::kAnd, {"a"}, "b");
  b.output("b");
  EXPECT_EQ(BuildError(std::move(b)), NetlistErrorKind::kBadArity);
}

TEST(Netlist, NaturalLessComparesDigitRuns) {
  EXPECT_TRUE(NaturalLess("r2", "r10"));
  EXPECT_FALSE(NaturalLess("r10", "r2"));
  EXPECT_TRUE(NaturalLess("a", "b"));
  EXPECT_TRUE(NaturalLess("mem_r1[9]", "mem_r1[10]"));
  EXPECT_FALSE(NaturalLess("x", "x"));
}

TEST(UpwardDfs, IsolatedDffConeIsItself) {
  NetlistBuilder b;
  b.input("d");
  b.add_dff(b.wire("d"), b.wire("q"));
  b.output("q");
  Netlist n = std::move(b).Build();
  auto cone = UpwardDfs(n, *n.find_wire("q"));
  ASSERT_EQ(cone.size(), 1u);
  EXPECT_TRUE(n.cell(cone[0]).is_dff());
}

TEST(UpwardDfs, CounterTopBitArc) {
  Fixture f = GenCounter(3);
  const Netlist& n = f.netlist;
  std::set<std::string> outs;
  for (CellId c : UpwardDfs(n, *n.find_wire("r2_n"))) {
    outs.insert(n.wire_name(n.cell(c).output));
  }
  // xor2, the carry and, and the three flops.
  EXPECT_EQ(outs, (std::set<std::string>{"r2_n", "c2", "r0", "r1", "r2"}));
}

// Brute-force reachability: every cell whose output reaches `start` through
// combinational cells only, collected with a BFS over reversed edges.
std::set<size_t> BfsCone(const Netlist& n, WireId start) {
  std::set<size_t> seen;
  std::queue<WireId> work;
  work.push(start);
  std::set<size_t> wires_seen{start.index()};
  while (!work.empty()) {
    WireId w = work.front();
    work.pop();
    for (const Cell& c : n.cells()) {
      if (c.output != w) continue;
      seen.insert(c.id.index());
      if (c.is_dff()) continue;
      for (WireId in : c.inputs) {
        if (wires_seen.insert(in.index()).second) work.push(in);
      }
    }
  }
  return seen;
}

TEST(UpwardDfs, MatchesBfsOracleOnRandomDags) {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    Fixture f = GenRandom(seed, {.inputs = 5, .gates = 50});
    const Netlist& n = f.netlist;
    for (const Wire& w : n.wires()) {
      auto cone = UpwardDfs(n, w.id);
      std::set<size_t> got;
      for (CellId c : cone) got.insert(c.index());
      EXPECT_EQ(got.size(), cone.size()) << "duplicate visit";
      EXPECT_EQ(got, BfsCone(n, w.id)) << f.name << " " << w.name;
    }
  }
}

TEST(UpwardDfs, StopPredicateCutsExpansion) {
  Fixture f = GenCounter(3);
  const Netlist& n = f.netlist;
  auto cone = UpwardDfs(n, *n.find_wire("r2_n"), [&](const Cell& c) {
    return n.wire_name(c.output) == "c2";
  });
  std::set<std::string> outs;
  for (CellId c : cone) outs.insert(n.wire_name(n.cell(c).output));
  EXPECT_EQ(outs, (std::set<std::string>{"r2_n", "c2", "r2"}));
}

TEST(SplitView, OrderRespectsEveryEdge) {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    Fixture f = GenRandom(seed);
    const Netlist& n = f.netlist;
    auto order = SplitViewOrder(n);
    ASSERT_TRUE(order.has_value());
    std::vector<int> pos_cur(n.cells().size(), -1);
    std::vector<int> pos_next(n.cells().size(), -1);
    for (size_t k = 0; k < order->size(); ++k) {
      const SplitNode& s = (*order)[k];
      (s.next ? pos_next : pos_cur)[s.cell.index()] = static_cast<int>(k);
    }
    for (const Cell& c : n.cells()) {
      const int me = c.is_dff() ? pos_next[c.id.index()] : pos_cur[c.id.index()];
      ASSERT_GE(me, 0);
      for (WireId in : c.inputs) {
        auto d = n.driver(in);
        if (!d) continue;
        EXPECT_LT(pos_cur[d->index()], me);
      }
    }
  }
}

TEST(CanonicalForm, IndependentOfInsertionOrder) {
  Fixture f = GenCounter(4);
  const Netlist& n = f.netlist;
  std::vector<size_t> perm(n.cells().size());
  for (size_t k = 0; k < perm.size(); ++k) perm[k] = k;
  std::mt19937 rng(7);
  std::shuffle(perm.begin(), perm.end(), rng);
  NetlistBuilder b(n.name());
  for (size_t k : perm) {
    const Cell& c = n.cells()[k];
    std::vector<WireId> ins;
    for (WireId w : c.inputs) ins.push_back(b.wire(n.wire_name(w)));
    WireId out = b.wire(n.wire_name(c.output));
    if (c.is_dff()) {
      b.add_dff(ins[0], out, c.init);
    } else {
      b.add_cell(c.kind, ins, out);
    }
  }
  for (WireId w : n.inputs()) b.input(n.wire_name(w));
  for (WireId w : n.outputs()) b.output(n.wire_name(w));
  Netlist shuffled = std::move(b).Build();
  EXPECT_EQ(CanonicalForm(shuffled), CanonicalForm(n));
}

TEST(CanonicalForm, GateEqualsEquivalentLut) {
  auto make = [](bool as_lut) {
    NetlistBuilder b;
    b.input("a");
    b.input("b");
    if (as_lut) {
      b.add_lut({b.wire("a"), b.wire("b")}, b.wire("y"),
                TruthTable::ForGate(CellKind::kXor));
    } else {
      b.gate(CellKind::kXor, {"a", "b"}, "y");
    }
    b.output("y");
    return std::move(b).Build();
  };
  EXPECT_EQ(CanonicalForm(make(true)), CanonicalForm(make(false)));
}

TEST(TruthTable, GateTablesMatchBooleanDefinitions) {
  struct Case {
    CellKind kind;
    std::function<bool(bool, bool, bool)> f;
    size_t arity;
  };
  const std::vector<Case> cases = {
      {CellKind::kAnd, [](bool a, bool b, bool) { return a && b; }, 2},
      {CellKind::kOr, [](bool a, bool b, bool) { return a || b; }, 2},
      {CellKind::kXor, [](bool a, bool b, bool) { return a != b; }, 2},
      {CellKind::kNand, [](bool a, bool b, bool) { return !(a && b); }, 2},
      {CellKind::kNor, [](bool a, bool b, bool) { return !(a || b); }, 2},
      {CellKind::kNot, [](bool a, bool, bool) { return !a; }, 1},
      {CellKind::kBuf, [](bool a, bool, bool) { return a; }, 1},
      {CellKind::kMux, [](bool s, bool a, bool b) { return s ? b : a; }, 3},
  };
  for (const Case& c : cases) {
    TruthTable t = TruthTable::ForGate(c.kind);
    ASSERT_EQ(t.arity(), c.arity);
    for (uint32_t r = 0; r < t.rows(); ++r) {
      EXPECT_EQ(t.at(r), c.f(r & 1u, (r >> 1) & 1u, (r >> 2) & 1u))
          << static_cast<int>(c.kind) << " row " << r;
    }
  }
}

}  // namespace
}  // namespace regroup
