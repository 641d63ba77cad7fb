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

#include "regroup/rtl.h"

#include <cctype>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "regroup/design.h"

namespace regroup {
namespace {

const std::unordered_set<std::string>& Keywords() {
  static const auto* kWords = new std::unordered_set<std::string>{
      "always", "and", "assign", "automatic", "begin", "bit", "buf",
      "bufif0", "bufif1", "byte", "case", "casex", "casez", "cell", "cmos",
      "config", "deassign", "default", "defparam", "design", "disable",
      "edge", "else", "end", "endcase", "endconfig", "endfunction",
      "endgenerate", "endmodule", "endprimitive", "endspecify", "endtable",
      "endtask", "event", "for", "force", "forever", "fork", "function",
      "generate", "genvar", "highz0", "highz1", "if", "ifnone", "incdir",
      "include", "initial", "inout", "input", "instance", "int", "integer",
      "join", "large", "liblist", "library", "localparam", "logic",
      "macromodule", "medium", "module", "nand", "negedge", "nmos", "nor",
      "noshowcancelled", "not", "notif0", "notif1", "or", "output",
      "parameter", "pmos", "posedge", "primitive", "pull0", "pull1",
      "pulldown", "pullup", "pulsestyle_ondetect", "pulsestyle_onevent",
      "rcmos", "real", "realtime", "reg", "release", "repeat", "rnmos",
      "rpmos", "rtran", "rtranif0", "rtranif1", "scalared",
      "showcancelled", "signed", "small", "specify", "specparam", "strong0",
      "strong1", "supply0", "supply1", "table", "task", "time", "tran",
      "tranif0", "tranif1", "tri", "tri0", "tri1", "triand", "trior",
      "trireg", "unsigned", "use", "vectored", "wait", "wand", "weak0",
      "weak1", "while", "wire", "wor", "xnor", "xor"};
  return *kWords;
}

class Namer {
 public:
  std::string Take(std::string_view raw) {
    std::string base = SanitizeIdentifier(raw);
    std::string name = base;
    for (int k = 2; used_.count(name); ++k) {
      name = base + "_" + std::to_string(k);
    }
    used_.insert(name);
    if (name != raw) renamed_.emplace_back(std::string(raw), name);
    return name;
  }
  // Derived helper names are not part of the user-visible map.
  std::string Derive(const std::string& base) {
    std::string name = base;
    for (int k = 2; used_.count(name); ++k) {
      name = base + "_" + std::to_string(k);
    }
    used_.insert(name);
    return name;
  }
  const std::vector<std::pair<std::string, std::string>>& renamed() const {
    return renamed_;
  }

 private:
  std::unordered_set<std::string> used_;
  std::vector<std::pair<std::string, std::string>> renamed_;
};

struct MemoryNames {
  std::string array, addr, wdata, rdata, ridx, widx, wok;
};

struct Names {
  std::string module;
  std::string clock;
  bool clock_port = false;  // clock added as a port of its own
  std::vector<std::string> wire;  // per wire id, empty when unused
  std::vector<std::string> reg;
  std::vector<MemoryNames> mem;
  std::unordered_map<uint32_t, std::string> lut;  // residual cell index
  std::vector<std::pair<std::string, std::string>> renamed;
};

bool HasStorage(const DecompiledDesign& d) {
  return !d.registers.empty() || !d.memories.empty() ||
         !d.residual.dffs().empty();
}

Names Allocate(const DecompiledDesign& design) {
  const Netlist& n = design.residual;
  std::unordered_set<std::string> raw_wires;
  for (const Wire& w : n.wires()) raw_wires.insert(w.name);
  std::unordered_set<std::string> raw_storage;
  auto check = [&](const std::string& name, std::string_view what) {
    if (raw_wires.count(name) || !raw_storage.insert(name).second) {
      throw NameCollision(std::string(what) + " name '" + name +
                          "' collides with another name");
    }
  };
  for (const Register& r : design.registers) check(r.name, "register");
  for (const MemoryBlock& m : design.memories) check(m.name, "memory");

  Names names;
  Namer namer;
  names.module = SanitizeIdentifier(design.name.empty() ? "top" : design.name);
  names.wire.assign(n.wires().size(), "");
  std::vector<bool> used(n.wires().size(), false);
  auto use = [&](WireId w) { used[w.index()] = true; };
  for (WireId w : n.inputs()) use(w);
  for (WireId w : n.outputs()) use(w);
  for (WireId w : n.externals()) use(w);
  for (WireId w : n.sinks()) use(w);
  for (const Cell& c : n.cells()) {
    use(c.output);
    for (WireId in : c.inputs) use(in);
  }

  for (WireId w : n.inputs()) {
    if (names.wire[w.index()].empty()) {
      names.wire[w.index()] = namer.Take(n.wire_name(w));
    }
  }
  if (HasStorage(design)) {
    auto clk = n.clock().empty() ? std::nullopt : n.find_wire(n.clock());
    if (clk && n.is_input(*clk)) {
      names.clock = names.wire[clk->index()];
    } else {
      names.clock = namer.Take(n.clock().empty() ? "clk" : n.clock());
      names.clock_port = true;
    }
  }
  for (WireId w : n.outputs()) {
    if (names.wire[w.index()].empty()) {
      names.wire[w.index()] = namer.Take(n.wire_name(w));
    }
  }
  for (const Wire& w : n.wires()) {
    if (used[w.id.index()] && names.wire[w.id.index()].empty()) {
      names.wire[w.id.index()] = namer.Take(w.name);
    }
  }
  for (const Register& r : design.registers) {
    names.reg.push_back(namer.Take(r.name));
  }
  for (const MemoryBlock& m : design.memories) {
    MemoryNames mn;
    mn.array = namer.Take(m.name);
    mn.addr = namer.Derive(mn.array + "_addr");
    mn.wdata = namer.Derive(mn.array + "_wdata");
    mn.rdata = namer.Derive(mn.array + "_rdata");
    mn.ridx = namer.Derive(mn.array + "_ridx");
    mn.widx = namer.Derive(mn.array + "_widx");
    mn.wok = namer.Derive(mn.array + "_wok");
    names.mem.push_back(std::move(mn));
  }
  for (CellId c : n.combinational_order()) {
    const Cell& cell = n.cell(c);
    if (cell.kind == CellKind::kLut && !cell.inputs.empty()) {
      names.lut.emplace(c.index(),
                        namer.Derive(names.wire[cell.output.index()] + "_lut"));
    }
  }
  names.renamed = namer.renamed();
  return names;
}

std::string Bits(size_t width, const std::function<bool(size_t)>& bit) {
  std::string s = std::to_string(width) + "'b";
  for (size_t i = width; i-- > 0;) s += bit(i) ? '1' : '0';
  return s;
}

std::string Concat(const std::vector<std::string>& lsb_first) {
  if (lsb_first.size() == 1) return lsb_first[0];
  std::string s = "{";
  for (size_t i = lsb_first.size(); i-- > 0;) {
    s += lsb_first[i];
    if (i) s += ", ";
  }
  return s + "}";
}

size_t IndexBits(size_t count) {
  size_t bits = 1;
  while ((size_t{1} << bits) < count) ++bits;
  return bits;
}

}  // namespace

std::string SanitizeIdentifier(std::string_view raw) {
  std::string s;
  for (char c : raw) {
    s += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  }
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) {
    s = "_" + s;
  }
  if (Keywords().count(s)) s += "_";
  return s;
}

std::vector<std::pair<std::string, std::string>> RtlNameMap(
    const DecompiledDesign& design) {
  return Allocate(design).renamed;
}

std::string EmitRtl(const DecompiledDesign& design) {
  const Netlist& n = design.residual;
  const Names names = Allocate(design);
  auto W = [&](WireId w) -> const std::string& {
    return names.wire[w.index()];
  };
  std::unordered_set<WireId> flop_q;
  for (CellId d : n.dffs()) flop_q.insert(n.cell(d).output);

  std::ostringstream out;
  out << "// Generated by regroup from " << design.name << ".\n";
  out << "module " << names.module << " (";
  std::vector<std::string> ports;
  std::set<WireId> declared;
  for (WireId w : n.inputs()) {
    if (declared.insert(w).second) ports.push_back("input wire " + W(w));
  }
  if (names.clock_port) ports.push_back("input wire " + names.clock);
  for (WireId w : n.outputs()) {
    if (!declared.insert(w).second) continue;
    ports.push_back(std::string("output ") +
                    (flop_q.count(w) ? "reg " : "wire ") + W(w));
  }
  if (ports.empty()) {
    out << ");\n";
  } else {
    out << "\n";
    for (size_t i = 0; i < ports.size(); ++i) {
      out << "  " << ports[i] << (i + 1 < ports.size() ? ",\n" : "\n");
    }
    out << ");\n";
  }

  // Internal nets.
  for (const Wire& w : n.wires()) {
    if (W(w.id).empty() || declared.count(w.id)) continue;
    out << "  " << (flop_q.count(w.id) ? "reg " : "wire ") << W(w.id)
        << ";\n";
  }

  for (CellId c : n.combinational_order()) {
    auto it = names.lut.find(c.index());
    if (it == names.lut.end()) continue;
    const Cell& cell = n.cell(c);
    out << "  localparam [" << cell.table.rows() - 1 << ":0] " << it->second
        << " = "
        << Bits(cell.table.rows(),
                [&](size_t r) { return cell.table.at(static_cast<uint32_t>(r)); })
        << ";\n";
  }

  // Registers.
  const std::string& clk = names.clock;
  for (size_t i = 0; i < design.registers.size(); ++i) {
    const Register& reg = design.registers[i];
    const std::string& name = names.reg[i];
    const size_t w = reg.width();
    out << "\n  reg [" << w - 1 << ":0] " << name << ";\n";
    out << "  initial " << name << " = " << Bits(w, [&](size_t b) {
      return design.source.cell(reg.bits[b].dff).init == InitValue::kOne;
    }) << ";\n";
    std::vector<std::string> next;
    for (const EnabledDff& bit : reg.bits) next.push_back(W(bit.next));
    out << "  always @(posedge " << clk << ") begin\n";
    out << "    if (" << (reg.polarity == Polarity::kActiveLow ? "!" : "")
        << W(reg.enable) << ") begin\n";
    out << "      " << name << " <= " << Concat(next) << ";\n";
    out << "    end\n  end\n";
    for (size_t b = 0; b < w; ++b) {
      out << "  assign " << W(reg.bits[b].q) << " = " << name << "[" << b
          << "];\n";
    }
  }

  // Memories.
  for (size_t i = 0; i < design.memories.size(); ++i) {
    const MemoryBlock& mem = design.memories[i];
    const MemoryNames& mn = names.mem[i];
    const size_t a = mem.addr.size();
    const size_t w = mem.width;
    std::vector<std::string> addr, wdata;
    for (WireId x : mem.addr) addr.push_back(W(x));
    for (WireId x : mem.write_port) wdata.push_back(W(x));
    out << "\n  reg [" << w - 1 << ":0] " << mn.array << " [0:" << mem.rows - 1
        << "];\n";
    out << "  wire [" << a - 1 << ":0] " << mn.addr << " = " << Concat(addr)
        << ";\n";
    out << "  wire [" << w - 1 << ":0] " << mn.wdata << " = " << Concat(wdata)
        << ";\n";
    out << "  wire [" << w - 1 << ":0] " << mn.rdata << ";\n";
    out << "  initial begin\n";
    for (size_t r = 0; r < mem.rows; ++r) {
      const Register& row = mem.row_registers[r];
      out << "    " << mn.array << "[" << r << "] = " << Bits(w, [&](size_t b) {
        return design.source.cell(row.bits[b].dff).init == InitValue::kOne;
      }) << ";\n";
    }
    out << "  end\n";

    bool direct = mem.rows == (size_t{1} << a);
    for (size_t v = 0; direct && v < mem.read_alias.size(); ++v) {
      direct = mem.read_alias[v] == v && mem.row_address[v] == v;
    }
    if (direct) {
      out << "  always @(posedge " << clk << ") begin\n";
      out << "    if (" << W(mem.enable) << ") begin\n";
      out << "      " << mn.array << "[" << mn.addr << "] <= " << mn.wdata
          << ";\n";
      out << "    end\n  end\n";
      out << "  assign " << mn.rdata << " = " << mn.array << "[" << mn.addr
          << "];\n";
    } else {
      const size_t ib = IndexBits(mem.rows);
      out << "  reg [" << ib - 1 << ":0] " << mn.ridx << ";\n";
      out << "  reg [" << ib - 1 << ":0] " << mn.widx << ";\n";
      out << "  reg " << mn.wok << ";\n";
      out << "  always @(*) begin\n";
      out << "    case (" << mn.addr << ")\n";
      for (uint32_t v = 0; v < mem.read_alias.size(); ++v) {
        auto row = mem.RowAt(v);
        out << "      " << a << "'d" << v << ": begin " << mn.ridx << " = "
            << ib << "'d" << mem.read_alias[v] << "; " << mn.widx << " = "
            << ib << "'d" << (row ? *row : 0) << "; " << mn.wok << " = 1'b"
            << (row ? 1 : 0) << "; end\n";
      }
      out << "      default: begin " << mn.ridx << " = " << ib << "'d0; "
          << mn.widx << " = " << ib << "'d0; " << mn.wok
          << " = 1'b0; end\n";
      out << "    endcase\n  end\n";
      out << "  always @(posedge " << clk << ") begin\n";
      out << "    if (" << W(mem.enable) << " && " << mn.wok << ") begin\n";
      out << "      " << mn.array << "[" << mn.widx << "] <= " << mn.wdata
          << ";\n";
      out << "    end\n  end\n";
      out << "  assign " << mn.rdata << " = " << mn.array << "[" << mn.ridx
          << "];\n";
    }
    for (size_t b = 0; b < w; ++b) {
      out << "  assign " << W(mem.read_port[b]) << " = " << mn.rdata << "["
          << b << "];\n";
    }
  }

  // Residual flip-flops.
  if (!n.dffs().empty()) {
    out << "\n  initial begin\n";
    for (CellId d : n.dffs()) {
      const Cell& c = n.cell(d);
      out << "    " << W(c.output) << " = 1'b"
          << (c.init == InitValue::kOne ? 1 : 0) << ";\n";
    }
    out << "  end\n";
    out << "  always @(posedge " << clk << ") begin\n";
    for (CellId d : n.dffs()) {
      const Cell& c = n.cell(d);
      out << "    " << W(c.output) << " <= " << W(c.inputs[0]) << ";\n";
    }
    out << "  end\n";
  }

  // Residual logic.
  if (!n.combinational_order().empty()) out << "\n";
  for (CellId id : n.combinational_order()) {
    const Cell& c = n.cell(id);
    auto in = [&](size_t k) -> const std::string& { return W(c.inputs[k]); };
    std::string rhs;
    switch (c.kind) {
      case CellKind::kAnd: rhs = in(0) + " & " + in(1); break;
      case CellKind::kOr: rhs = in(0) + " | " + in(1); break;
      case CellKind::kXor: rhs = in(0) + " ^ " + in(1); break;
      case CellKind::kNand: rhs = "~(" + in(0) + " & " + in(1) + ")"; break;
      case CellKind::kNor: rhs = "~(" + in(0) + " | " + in(1) + ")"; break;
      case CellKind::kNot: rhs = "~" + in(0); break;
      case CellKind::kBuf: rhs = in(0); break;
      case CellKind::kMux:
        rhs = in(0) + " ? " + in(2) + " : " + in(1);
        break;
      case CellKind::kConst0: rhs = "1'b0"; break;
      case CellKind::kConst1: rhs = "1'b1"; break;
      case CellKind::kLut:
        if (c.inputs.empty()) {
          rhs = c.table.at(0) ? "1'b1" : "1'b0";
        } else {
          std::vector<std::string> sel;
          for (WireId x : c.inputs) sel.push_back(W(x));
          rhs = names.lut.at(id.index()) + "[" + Concat(sel) + "]";
        }
        break;
      case CellKind::kDff:
        continue;
    }
    out << "  assign " << W(c.output) << " = " << rhs << ";\n";
  }
  out << "endmodule\n";
  return out.str();
}

}  // namespace regroup
