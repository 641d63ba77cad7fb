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

#include "regroup/report.h"

#include <sstream>

#include "json.hpp"
#include "regroup/design.h"

namespace regroup {

AggregationReport Summarize(const DecompiledDesign& design) {
  AggregationReport r;
  r.module = design.name;
  for (const Register& reg : design.registers) {
    ++r.register_histogram[reg.width()];
  }
  for (const MemoryBlock& mem : design.memories) {
    r.memories.emplace_back(mem.rows, mem.width);
  }
  r.dff_total = design.dff_total();
  r.dff_in_registers = design.dff_in_registers();
  r.dff_in_memories = design.dff_in_memories();
  r.dff_residual = design.dff_residual();
  r.group_count = design.group_count;
  return r;
}

namespace {

std::string Json(const DecompiledDesign& design, const AggregationReport& r) {
  using nlohmann::ordered_json;
  const Netlist& src = design.source;
  ordered_json j;
  j["schema"] = kReportSchema;
  j["module"] = r.module;
  j["dff_total"] = r.dff_total;
  j["dff_in_registers"] = r.dff_in_registers;
  j["dff_in_memories"] = r.dff_in_memories;
  j["dff_residual"] = r.dff_residual;
  j["group_count"] = r.group_count;
  j["register_count"] = design.registers.size();
  ordered_json hist = ordered_json::object();
  for (auto [width, count] : r.register_histogram) {
    hist[std::to_string(width)] = count;
  }
  j["register_histogram"] = hist;

  ordered_json regs = ordered_json::array();
  for (const Register& reg : design.registers) {
    ordered_json e;
    e["name"] = reg.name;
    e["width"] = reg.width();
    e["enable"] = src.wire_name(reg.enable);
    e["polarity"] = std::string(PolarityName(reg.polarity));
    ordered_json bits = ordered_json::array();
    for (const EnabledDff& bit : reg.bits) bits.push_back(src.wire_name(bit.q));
    e["bits"] = bits;
    regs.push_back(e);
  }
  j["registers"] = regs;

  j["memory_count"] = design.memories.size();
  ordered_json mems = ordered_json::array();
  for (const MemoryBlock& mem : design.memories) {
    ordered_json e;
    e["name"] = mem.name;
    e["rows"] = mem.rows;
    e["width"] = mem.width;
    e["enable"] = src.wire_name(mem.enable);
    auto names = [&](const std::vector<WireId>& wires) {
      ordered_json a = ordered_json::array();
      for (WireId w : wires) a.push_back(src.wire_name(w));
      return a;
    };
    e["addr"] = names(mem.addr);
    e["write_port"] = names(mem.write_port);
    e["read_port"] = names(mem.read_port);
    ordered_json rows = ordered_json::array();
    for (size_t k = 0; k < mem.rows; ++k) {
      ordered_json row;
      row["register"] = mem.row_registers[k].name;
      row["address"] = mem.row_address[k];
      rows.push_back(row);
    }
    e["rows_by_address"] = rows;
    mems.push_back(e);
  }
  j["memories"] = mems;

  ordered_json diags = ordered_json::array();
  for (const Diagnostic& d : design.diagnostics) {
    ordered_json e;
    e["kind"] = d.kind;
    e["message"] = d.message;
    diags.push_back(e);
  }
  j["diagnostics"] = diags;
  return j.dump(2) + "\n";
}

std::string Table(const DecompiledDesign& design, const AggregationReport& r) {
  std::ostringstream out;
  out << "module            " << r.module << "\n";
  out << "register groups   " << r.group_count << "\n";
  out << "register count    " << design.registers.size() << "\n";
  out << "register sizes    ";
  if (r.register_histogram.empty()) out << "-";
  bool first = true;
  for (auto [width, count] : r.register_histogram) {
    out << (first ? "" : ", ") << width << " : " << count;
    first = false;
  }
  out << "\n";
  out << "memory count      " << r.memories.size() << "\n";
  out << "memory sizes      ";
  if (r.memories.empty()) out << "-";
  first = true;
  for (auto [rows, width] : r.memories) {
    out << (first ? "" : ", ") << rows << " x " << width;
    first = false;
  }
  out << "\n";
  out << "dffs              " << r.dff_total << " total, "
      << r.dff_in_registers << " in registers, " << r.dff_in_memories
      << " in memories, " << r.dff_residual << " residual\n";
  // Renames are listed in full in JSON; one line is enough here.
  size_t renames = 0;
  for (const Diagnostic& d : design.diagnostics) {
    if (d.kind == "rename") {
      if (renames++ == 0) out << "note [rename] " << d.message;
      continue;
    }
    out << "note [" << d.kind << "] " << d.message << "\n";
  }
  if (renames > 1) out << " (+" << renames - 1 << " more)";
  if (renames > 0) out << "\n";
  return out.str();
}

}  // namespace

std::string EmitReport(const DecompiledDesign& design, ReportFormat format) {
  AggregationReport r = Summarize(design);
  return format == ReportFormat::kJson ? Json(design, r) : Table(design, r);
}

}  // namespace regroup
