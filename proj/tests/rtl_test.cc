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

#include <gtest/gtest.h>

#include "regroup/design.h"
#include "regroup/fixtures.h"
#include "regroup/rtl.h"
#include "regroup/sim.h"
#include "support/vsim.h"

namespace regroup {
namespace {

size_t Count(const std::string& text, const std::string& needle) {
  size_t n = 0;
  for (size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + 1)) {
    ++n;
  }
  return n;
}

TEST(Rtl, CounterGolden) {
  const std::string want =
      "// Generated by regroup from counter3.\n"
      "module counter3 (\n"
      "  input wire en,\n"
      "  input wire clk,\n"
      "  output wire r0,\n"
      "  output wire r1,\n"
      "  output wire r2\n"
      ");\n"
      "  wire r0_n;\n"
      "  wire r1_n;\n"
      "  wire c2;\n"
      "  wire r2_n;\n"
      "\n"
      "  reg [2:0] r;\n"
      "  initial r = 3'b000;\n"
      "  always @(posedge clk) begin\n"
      "    if (en) begin\n"
      "      r <= {r2_n, r1_n, r0_n};\n"
      "    end\n"
      "  end\n"
      "  assign r0 = r[0];\n"
      "  assign r1 = r[1];\n"
      "  assign r2 = r[2];\n"
      "\n"
      "  assign r0_n = ~r0;\n"
      "  assign r1_n = r0 ^ r1;\n"
      "  assign c2 = r0 & r1;\n"
      "  assign r2_n = c2 ^ r2;\n"
      "endmodule\n";
  EXPECT_EQ(EmitRtl(Decompile(GenCounter(3).netlist)), want);
}

TEST(Rtl, CombinationalOnlyHasNoAlways) {
  NetlistBuilder b("comb");
  b.input("a");
  b.input("b");
  b.gate(CellKind::kNand, {"a", "b"}, "y");
  b.output("y");
  const std::string v = EmitRtl(Decompile(std::move(b).Build()));
  EXPECT_EQ(Count(v, "always"), 0u);
  EXPECT_EQ(Count(v, "clk"), 0u);
  EXPECT_NE(v.find("assign y = ~(a & b);"), std::string::npos) << v;
}

TEST(Rtl, MemoryBlockShape) {
  const std::string v = EmitRtl(Decompile(GenMemory(8, 8).netlist));
  EXPECT_EQ(Count(v, "reg [7:0] mem_r [0:7];"), 1u) << v;
  EXPECT_EQ(Count(v, "mem_r[mem_r_addr] <= mem_r_wdata;"), 1u) << v;
  EXPECT_EQ(Count(v, "assign mem_r_rdata = mem_r[mem_r_addr];"), 1u) << v;
  EXPECT_EQ(Count(v, "always @(posedge"), 1u) << v;
}

TEST(Rtl, ActiveLowEnableUsesNegation) {
  NetlistBuilder b("low");
  b.input("hold");
  b.input("x");
  b.gate(CellKind::kMux, {"hold", "x", "q"}, "d");
  b.add_dff(b.wire("d"), b.wire("q"));
  b.output("q");
  const std::string v = EmitRtl(Decompile(std::move(b).Build()));
  EXPECT_NE(v.find("if (!hold) begin"), std::string::npos) << v;
}

TEST(Rtl, SanitizesAndSuffixes) {
  EXPECT_EQ(SanitizeIdentifier("a.b$c[3]"), "a_b_c_3_");
  EXPECT_EQ(SanitizeIdentifier("3x"), "_3x");
  EXPECT_NE(SanitizeIdentifier("module"), "module");
  NetlistBuilder b("names");
  b.input("a.b");
  b.input("a_b");
  b.gate(CellKind::kXor, {"a.b", "a_b"}, "y");
  b.output("y");
  DecompiledDesign d = Decompile(std::move(b).Build());
  auto map = RtlNameMap(d);
  // The real a_b loses its name to the sanitized a.b, so both are listed.
  EXPECT_EQ(map, (std::vector<std::pair<std::string, std::string>>{
                     {"a.b", "a_b"}, {"a_b", "a_b_2"}}));
  const std::string v = EmitRtl(d);
  EXPECT_NE(v.find("assign y = a_b ^ a_b_2;"), std::string::npos) << v;
  bool listed = false;
  for (const Diagnostic& diag : d.diagnostics) {
    listed |= diag.kind == "rename" && diag.message == "a.b -> a_b";
  }
  EXPECT_TRUE(listed);
}

TEST(Rtl, RawNameCollisionIsRejected) {
  DecompiledDesign d = Decompile(GenCounter(2).netlist);
  d.registers[0].name = "en";
  EXPECT_THROW(EmitRtl(d), NameCollision);
}

TEST(Rtl, ByteStableAcrossRunsAndJobs) {
  for (const Fixture& f : {GenFifo(), GenRandom(4), GenMemory(16, 4)}) {
    const std::string one = EmitRtl(Decompile(f.netlist));
    EXPECT_EQ(EmitRtl(Decompile(f.netlist)), one);
    EXPECT_EQ(EmitRtl(Decompile(f.netlist, {.jobs = 4})), one);
  }
}

// Emitted text, read back by the independent Verilog model, against the
// source netlist on random stimulus.
void CoSimulate(const Netlist& source, const std::string& rtl, size_t cycles,
                uint64_t seed, const std::string& label) {
  testing::VerilogModel model(rtl);
  Simulator sim(source);
  Stimulus stim = RandomStimulus(sim.input_names(), cycles, seed);
  std::map<std::string, size_t> src_col;
  for (size_t k = 0; k < sim.input_names().size(); ++k) {
    src_col[sim.input_names()[k]] = k;
  }
  std::map<std::string, size_t> out_col;
  for (size_t k = 0; k < sim.output_names().size(); ++k) {
    out_col[SanitizeIdentifier(sim.output_names()[k])] = k;
  }
  std::vector<size_t> model_col;
  for (const std::string& in : model.inputs()) {
    size_t found = SIZE_MAX;
    for (const auto& [name, k] : src_col) {
      if (SanitizeIdentifier(name) == in) found = k;
    }
    ASSERT_NE(found, SIZE_MAX) << label << " input " << in;
    model_col.push_back(found);
  }
  ASSERT_EQ(model.outputs().size(), sim.output_names().size()) << label;
  for (size_t c = 0; c < cycles; ++c) {
    std::vector<uint8_t> row;
    for (size_t k : model_col) row.push_back(stim.cycles[c][k]);
    model.Step(row);
    sim.Step(stim.cycles[c]);
    for (size_t k = 0; k < model.outputs().size(); ++k) {
      const size_t o = out_col.at(model.outputs()[k]);
      ASSERT_EQ(model.before()[k], sim.before()[o])
          << label << " cycle " << c << " before " << model.outputs()[k];
      ASSERT_EQ(model.after()[k], sim.after()[o])
          << label << " cycle " << c << " after " << model.outputs()[k];
    }
  }
}

TEST(Rtl, EmittedTextSimulatesLikeTheSourceOnFixtures) {
  for (const Fixture& f : AllFixtures()) {
    CoSimulate(f.netlist, EmitRtl(Decompile(f.netlist)), 300, 5, f.name);
  }
}

TEST(Rtl, EmittedTextSimulatesLikeTheSourceOnRandomNetlists) {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    Fixture f = GenRandom(seed);
    CoSimulate(f.netlist, EmitRtl(Decompile(f.netlist)), 150, seed, f.name);
  }
}

}  // namespace
}  // namespace regroup
