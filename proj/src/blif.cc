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

#include "regroup/blif.h"

#include <array>
#include <cctype>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace regroup {

std::string_view BlifErrorKindName(BlifErrorKind kind) {
  switch (kind) {
    case BlifErrorKind::kSyntaxError:
      return "SyntaxError";
    case BlifErrorKind::kUnsupportedFeature:
      return "UnsupportedFeature";
    case BlifErrorKind::kMultipleDrivers:
      return "MultipleDrivers";
    case BlifErrorKind::kCombinationalLoop:
      return "CombinationalLoop";
    case BlifErrorKind::kInvalidNetlist:
      return "InvalidNetlist";
  }
  return "?";
}

BlifError::BlifError(BlifErrorKind kind, int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " +
                         std::string(BlifErrorKindName(kind)) + ": " + message),
      kind_(kind),
      line_(line) {}

namespace {

struct LogicalLine {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

// Splits into logical lines: comments removed, backslash continuations
// joined, blank lines dropped.
std::vector<LogicalLine> SplitLines(std::string_view text) {
  std::vector<LogicalLine> lines;
  std::string pending;
  int pending_line = 0;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (size_t hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    while (!raw.empty() &&
           std::isspace(static_cast<unsigned char>(raw.back()))) {
      raw.remove_suffix(1);
    }
    if (pending.empty()) pending_line = number;
    bool continues = !raw.empty() && raw.back() == '\\';
    if (continues) raw.remove_suffix(1);
    pending.append(raw);
    pending.push_back(' ');
    if (continues && pos <= text.size()) continue;
    auto tokens = Tokenize(pending);
    if (!tokens.empty()) lines.push_back({pending_line, std::move(tokens)});
    pending.clear();
    if (end == text.size()) break;
  }
  return lines;
}

struct NamesBlock {
  int line = 0;
  std::vector<std::string> inputs;
  std::string output;
  std::vector<std::string> rows;  // "plane out" or "out"
  std::optional<char> polarity;
};

struct LatchDecl {
  int line = 0;
  std::string input;
  std::string output;
  InitValue init = InitValue::kUnknown;
};

TruthTable CoverTable(const NamesBlock& block) {
  const size_t k = block.inputs.size();
  TruthTable table(k);
  const bool on_set = !block.polarity || *block.polarity == '1';
  for (uint32_t row = 0; row < table.rows(); ++row) {
    bool hit = false;
    for (const std::string& cover_row : block.rows) {
      bool match = true;
      for (size_t j = 0; j < k && match; ++j) {
        char c = cover_row[j];
        bool v = (row >> j) & 1u;
        if ((c == '1' && !v) || (c == '0' && v)) match = false;
      }
      if (match) {
        hit = true;
        break;
      }
    }
    table.set(row, block.polarity ? (hit == on_set) : false);
  }
  return table;
}

std::optional<CellKind> ClassifyTable(const TruthTable& table) {
  static constexpr std::array kCandidates = {
      CellKind::kConst0, CellKind::kConst1, CellKind::kNot, CellKind::kBuf,
      CellKind::kAnd,    CellKind::kOr,     CellKind::kXor, CellKind::kNand,
      CellKind::kNor,    CellKind::kMux,
  };
  for (CellKind kind : kCandidates) {
    if (TruthTable::ForGate(kind) == table) return kind;
  }
  return std::nullopt;
}

std::vector<std::string> GateCover(CellKind kind) {
  switch (kind) {
    case CellKind::kAnd:
      return {"11 1"};
    case CellKind::kOr:
      return {"1- 1", "-1 1"};
    case CellKind::kXor:
      return {"01 1", "10 1"};
    case CellKind::kNand:
      return {"0- 1", "-0 1"};
    case CellKind::kNor:
      return {"00 1"};
    case CellKind::kNot:
      return {"0 1"};
    case CellKind::kBuf:
      return {"1 1"};
    case CellKind::kMux:
      return {"01- 1", "1-1 1"};
    case CellKind::kConst1:
      return {"1"};
    case CellKind::kConst0:
      return {};
    default:
      break;
  }
  return {};
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lines_(SplitLines(text)) {}

  Netlist Parse() {
    bool seen_model = false;
    for (const LogicalLine& line : lines_) {
      const std::string& head = line.tokens[0];
      if (head[0] != '.') {
        if (!names_) {
          throw BlifError(BlifErrorKind::kSyntaxError, line.number,
                          "unexpected '" + head + "' outside a .names block");
        }
        AddCoverRow(line);
        continue;
      }
      FinishNames();
      if (head == ".model") {
        if (seen_model) break;  // only the first model is used
        seen_model = true;
        if (line.tokens.size() > 1) model_ = line.tokens[1];
        continue;
      }
      if (head == ".end") {
        if (seen_model) break;
        continue;
      }
      if (head == ".inputs") {
        for (size_t i = 1; i < line.tokens.size(); ++i) {
          inputs_.push_back({line.tokens[i], line.number});
        }
      } else if (head == ".outputs") {
        for (size_t i = 1; i < line.tokens.size(); ++i) {
          outputs_.push_back({line.tokens[i], line.number});
        }
      } else if (head == ".names") {
        StartNames(line);
      } else if (head == ".latch") {
        AddLatch(line);
      } else if (head == ".clock") {
        if (line.tokens.size() != 2) {
          throw BlifError(BlifErrorKind::kUnsupportedFeature, line.number,
                          ".clock must name exactly one clock");
        }
        UseClock(line.tokens[1], line.number);
      } else if (head == ".subckt" || head == ".gate" || head == ".mlatch" ||
                 head == ".search" || head == ".exdc") {
        throw BlifError(BlifErrorKind::kUnsupportedFeature, line.number,
                        head + " is not supported");
      } else if (head == ".cname" || head == ".attr" || head == ".param") {
        // Attribute annotations carry no logic.
      } else {
        throw BlifError(BlifErrorKind::kUnsupportedFeature, line.number,
                        "unknown directive " + head);
      }
    }
    FinishNames();
    return Build();
  }

 private:
  struct NamedAt {
    std::string name;
    int line;
  };

  void StartNames(const LogicalLine& line) {
    if (line.tokens.size() < 2) {
      throw BlifError(BlifErrorKind::kSyntaxError, line.number,
                      ".names needs at least an output");
    }
    NamesBlock block;
    block.line = line.number;
    block.inputs.assign(line.tokens.begin() + 1, line.tokens.end() - 1);
    block.output = line.tokens.back();
    if (block.inputs.size() > kMaxLutInputs) {
      throw BlifError(BlifErrorKind::kUnsupportedFeature, line.number,
                      "cover for '" + block.output + "' has " +
                          std::to_string(block.inputs.size()) +
                          " inputs (limit " + std::to_string(kMaxLutInputs) +
                          ")");
    }
    Define(block.output, line.number);
    names_ = std::move(block);
  }

  void AddCoverRow(const LogicalLine& line) {
    NamesBlock& block = *names_;
    const size_t k = block.inputs.size();
    std::string plane;
    std::string out;
    if (k == 0) {
      if (line.tokens.size() != 1) {
        throw BlifError(BlifErrorKind::kSyntaxError, line.number,
                        "constant cover row must be a single 0 or 1");
      }
      out = line.tokens[0];
    } else {
      if (line.tokens.size() != 2) {
        throw BlifError(BlifErrorKind::kSyntaxError, line.number,
                        "cover row must be '<input plane> <output>'");
      }
      plane = line.tokens[0];
      out = line.tokens[1];
      if (plane.size() != k) {
        throw BlifError(BlifErrorKind::kSyntaxError, line.number,
                        "cover row has " + std::to_string(plane.size()) +
                            " input columns, expected " + std::to_string(k));
      }
      for (char c : plane) {
        if (c != '0' && c != '1' && c != '-') {
          throw BlifError(BlifErrorKind::kSyntaxError, line.number,
                          std::string("invalid cover character '") + c + "'");
        }
      }
    }
    if (out != "0" && out != "1") {
      throw BlifError(BlifErrorKind::kSyntaxError, line.number,
                      "cover output must be 0 or 1");
    }
    if (block.polarity && *block.polarity != out[0]) {
      throw BlifError(BlifErrorKind::kSyntaxError, line.number,
                      "cover mixes on-set and off-set rows");
    }
    block.polarity = out[0];
    block.rows.push_back(k == 0 ? out : plane + " " + out);
  }

  void FinishNames() {
    if (names_) {
      blocks_.push_back(std::move(*names_));
      names_.reset();
    }
  }

  void AddLatch(const LogicalLine& line) {
    const auto& t = line.tokens;
    if (t.size() < 3 || t.size() > 6) {
      throw BlifError(BlifErrorKind::kSyntaxError, line.number,
                      ".latch expects <input> <output> [<type> <control>] "
                      "[<init>]");
    }
    LatchDecl latch;
    latch.line = line.number;
    latch.input = t[1];
    latch.output = t[2];
    std::optional<std::string> init;
    if (t.size() == 4) {
      init = t[3];
    } else if (t.size() >= 5) {
      const std::string& type = t[3];
      if (type == "fe" || type == "ah" || type == "al" || type == "as") {
        throw BlifError(BlifErrorKind::kUnsupportedFeature, line.number,
                        "latch type '" + type +
                            "' is not supported (rising-edge only)");
      }
      if (type != "re") {
        throw BlifError(BlifErrorKind::kSyntaxError, line.number,
                        "unknown latch type '" + type + "'");
      }
      if (t[4] != "NIL") UseClock(t[4], line.number);
      if (t.size() == 6) init = t[5];
    }
    if (init) {
      if (*init == "0") {
        latch.init = InitValue::kZero;
      } else if (*init == "1") {
        latch.init = InitValue::kOne;
      } else if (*init == "2" || *init == "3") {
        latch.init = InitValue::kUnknown;
      } else {
        throw BlifError(BlifErrorKind::kSyntaxError, line.number,
                        "latch init value must be 0, 1, 2 or 3");
      }
    }
    Define(latch.output, line.number);
    latches_.push_back(std::move(latch));
  }

  void UseClock(const std::string& name, int line) {
    if (!clock_.empty() && clock_ != name) {
      throw BlifError(BlifErrorKind::kUnsupportedFeature, line,
                      "multiple clocks ('" + clock_ + "' and '" + name +
                          "'); a single clock domain is required");
    }
    clock_ = name;
  }

  void Define(const std::string& wire, int line) {
    auto [it, inserted] = driver_line_.try_emplace(wire, line);
    if (!inserted) {
      throw BlifError(BlifErrorKind::kMultipleDrivers, line,
                      "wire '" + wire + "' already driven at line " +
                          std::to_string(it->second));
    }
  }

  Netlist Build() {
    NetlistBuilder b(model_);
    b.set_clock(clock_);
    b.set_dangling_policy(DanglingPolicy::kAllow);
    for (const NamedAt& in : inputs_) {
      if (driver_line_.count(in.name)) {
        throw BlifError(BlifErrorKind::kMultipleDrivers,
                        driver_line_.at(in.name),
                        "primary input '" + in.name + "' is also driven");
      }
      b.add_input(b.wire(in.name));
    }
    for (const NamedAt& out : outputs_) b.add_output(b.wire(out.name));

    // Cells keep source order: .names and .latch interleaved by line.
    size_t ni = 0;
    size_t li = 0;
    while (ni < blocks_.size() || li < latches_.size()) {
      bool take_names =
          li == latches_.size() ||
          (ni < blocks_.size() && blocks_[ni].line < latches_[li].line);
      if (take_names) {
        AddNamesCell(b, blocks_[ni++]);
      } else {
        const LatchDecl& l = latches_[li++];
        b.add_dff(b.wire(l.input), b.wire(l.output), l.init);
      }
    }

    try {
      return std::move(b).Build();
    } catch (const NetlistError& e) {
      int line = 0;
      if (!e.witness().empty()) {
        auto it = driver_line_.find(e.witness().front());
        if (it != driver_line_.end()) line = it->second;
        if (line == 0) line = FirstUseLine(e.witness().front());
      }
      BlifErrorKind kind = BlifErrorKind::kInvalidNetlist;
      if (e.kind() == NetlistErrorKind::kCombinationalLoop) {
        kind = BlifErrorKind::kCombinationalLoop;
      } else if (e.kind() == NetlistErrorKind::kMultipleDrivers) {
        kind = BlifErrorKind::kMultipleDrivers;
      }
      throw BlifError(kind, line, e.what());
    }
  }

  int FirstUseLine(const std::string& wire) const {
    for (const NamesBlock& block : blocks_) {
      for (const std::string& in : block.inputs) {
        if (in == wire) return block.line;
      }
    }
    for (const LatchDecl& l : latches_) {
      if (l.input == wire) return l.line;
    }
    for (const NamedAt& out : outputs_) {
      if (out.name == wire) return out.line;
    }
    return 1;
  }

  static void AddNamesCell(NetlistBuilder& b, const NamesBlock& block) {
    std::vector<WireId> ins;
    for (const std::string& in : block.inputs) ins.push_back(b.wire(in));
    WireId out = b.wire(block.output);
    TruthTable table = CoverTable(block);
    if (auto kind = ClassifyTable(table)) {
      b.add_cell(*kind, std::move(ins), out);
    } else {
      b.add_lut(std::move(ins), out, table, block.rows);
    }
  }

  std::vector<LogicalLine> lines_;
  std::string model_ = "top";
  std::string clock_;
  std::vector<NamedAt> inputs_;
  std::vector<NamedAt> outputs_;
  std::optional<NamesBlock> names_;
  std::vector<NamesBlock> blocks_;
  std::vector<LatchDecl> latches_;
  std::unordered_map<std::string, int> driver_line_;
};

}  // namespace

Netlist ParseBlif(std::string_view text) { return Parser(text).Parse(); }

std::string EmitBlif(const Netlist& netlist) {
  std::ostringstream os;
  os << ".model " << netlist.name() << '\n';
  if (!netlist.inputs().empty()) {
    os << ".inputs";
    for (WireId in : netlist.inputs()) os << ' ' << netlist.wire_name(in);
    os << '\n';
  }
  if (!netlist.outputs().empty()) {
    os << ".outputs";
    for (WireId out : netlist.outputs()) os << ' ' << netlist.wire_name(out);
    os << '\n';
  }
  for (const Cell& cell : netlist.cells()) {
    if (cell.is_dff()) {
      os << ".latch " << netlist.wire_name(cell.inputs[0]) << ' '
         << netlist.wire_name(cell.output);
      if (!netlist.clock().empty()) os << " re " << netlist.clock();
      switch (cell.init) {
        case InitValue::kZero:
          os << " 0";
          break;
        case InitValue::kOne:
          os << " 1";
          break;
        case InitValue::kUnknown:
          os << " 3";
          break;
      }
      os << '\n';
      continue;
    }
    os << ".names";
    for (WireId in : cell.inputs) os << ' ' << netlist.wire_name(in);
    os << ' ' << netlist.wire_name(cell.output) << '\n';
    std::vector<std::string> rows;
    if (cell.kind != CellKind::kLut) {
      rows = GateCover(cell.kind);
    } else if (!cell.cover.empty()) {
      rows = cell.cover;
    } else if (auto kind = ClassifyTable(cell.table)) {
      // The reader turns this function into the gate anyway.
      rows = GateCover(*kind);
    } else {
      const size_t k = cell.inputs.size();
      for (uint32_t row = 0; row < cell.table.rows(); ++row) {
        if (!cell.table.at(row)) continue;
        std::string plane(k, '0');
        for (size_t j = 0; j < k; ++j) {
          if ((row >> j) & 1u) plane[j] = '1';
        }
        rows.push_back(k == 0 ? "1" : plane + " 1");
      }
    }
    for (const std::string& row : rows) os << row << '\n';
  }
  os << ".end\n";
  return os.str();
}

}  // namespace regroup
