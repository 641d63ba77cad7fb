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

#include "support/vsim.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

namespace regroup::testing {
namespace {

using Bits = std::vector<uint8_t>;  // LSB first

struct Token {
  enum Kind { kIdent, kNumber, kPunct, kEnd } kind;
  std::string text;
  int line;
};

std::vector<Token> Lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1;
  size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (s.substr(i, 2) == "//") {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                              s[j] == '_' || s[j] == '$')) {
        ++j;
      }
      out.push_back({Token::kIdent, std::string(s.substr(i, j - i)), line});
      i = j;
    } else if (c == '\\') {
      size_t j = i + 1;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) {
        ++j;
      }
      out.push_back({Token::kIdent, std::string(s.substr(i + 1, j - i - 1)),
                     line});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '\'') {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '\'') {
        j += 2;  // quote and base
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                                s[j] == '_')) {
          ++j;
        }
      }
      out.push_back({Token::kNumber, std::string(s.substr(i, j - i)), line});
      i = j;
    } else {
      static const char* kTwo[] = {"<=", "&&", "||", "==", "!="};
      std::string p(1, c);
      for (const char* t : kTwo) {
        if (s.substr(i, 2) == t) p = t;
      }
      out.push_back({Token::kPunct, p, line});
      i += p.size();
    }
  }
  out.push_back({Token::kEnd, "", line});
  return out;
}

Bits ParseNumber(const std::string& text) {
  const size_t q = text.find('\'');
  if (q == std::string::npos) {
    uint64_t v = std::stoull(text);
    Bits b(32);
    for (size_t k = 0; k < 32; ++k) b[k] = (v >> k) & 1u;
    return b;
  }
  const size_t width = q == 0 ? 32 : std::stoul(text.substr(0, q));
  const char base = static_cast<char>(std::tolower(text[q + 1]));
  std::string digits;
  for (char ch : text.substr(q + 2)) {
    if (ch != '_') digits += ch;
  }
  Bits b(width, 0);
  if (base == 'b') {
    for (size_t k = 0; k < digits.size() && k < width; ++k) {
      b[k] = digits[digits.size() - 1 - k] == '1';
    }
  } else if (base == 'd') {
    uint64_t v = std::stoull(digits);
    for (size_t k = 0; k < width && k < 64; ++k) b[k] = (v >> k) & 1u;
  } else if (base == 'h') {
    uint64_t v = std::stoull(digits, nullptr, 16);
    for (size_t k = 0; k < width && k < 64; ++k) b[k] = (v >> k) & 1u;
  } else {
    throw VerilogError("unsupported number " + text);
  }
  return b;
}

uint64_t ToInt(const Bits& b) {
  uint64_t v = 0;
  for (size_t k = 0; k < b.size() && k < 64; ++k) v |= uint64_t{b[k]} << k;
  return v;
}

bool Truthy(const Bits& b) {
  return std::any_of(b.begin(), b.end(), [](uint8_t x) { return x != 0; });
}

Bits Resize(Bits b, size_t width) {
  b.resize(width, 0);
  return b;
}

struct Signal {
  size_t width = 1;
  size_t depth = 0;  // 0 = scalar or vector, else array words
  Bits value;        // width * max(depth, 1)
};

struct Expr {
  enum Op {
    kIdent, kIndex, kConst, kConcat, kNot, kLNot, kAnd, kOr, kXor, kLAnd,
    kLOr, kEq, kNe, kTernary
  } op;
  std::string name;
  Bits constant;
  std::vector<std::unique_ptr<Expr>> args;
};
using ExprPtr = std::unique_ptr<Expr>;

struct Stmt {
  enum Kind { kBlock, kAssign, kNonBlocking, kIf, kCase } kind;
  std::string target;
  ExprPtr index;  // optional
  ExprPtr value;  // rhs, or condition / case subject
  std::vector<Stmt> body;
  std::vector<Stmt> orelse;
  std::vector<std::pair<ExprPtr, std::vector<Stmt>>> items;  // null = default
};

}  // namespace

struct VerilogModel::Impl {
  std::string module;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string clock;
  std::map<std::string, Signal> signals;
  std::vector<std::pair<Stmt, bool>> assigns;  // continuous, as kAssign
  std::vector<Stmt> initial;
  std::vector<Stmt> comb;
  std::vector<Stmt> clocked;
  std::vector<uint8_t> before, after;

  std::vector<Token> toks;
  size_t pos = 0;

  // Parsing.
  const Token& Peek() const { return toks[pos]; }
  [[noreturn]] void Fail(const std::string& msg) const {
    throw VerilogError("line " + std::to_string(Peek().line) + ": " + msg +
                       " near '" + Peek().text + "'");
  }
  bool Accept(std::string_view t) {
    if (Peek().kind != Token::kEnd && Peek().text == t) {
      ++pos;
      return true;
    }
    return false;
  }
  void Expect(std::string_view t) {
    if (!Accept(t)) Fail("expected '" + std::string(t) + "'");
  }
  std::string Ident() {
    if (Peek().kind != Token::kIdent) Fail("expected identifier");
    return toks[pos++].text;
  }
  size_t Int() {
    if (Peek().kind != Token::kNumber) Fail("expected number");
    return static_cast<size_t>(ToInt(ParseNumber(toks[pos++].text)));
  }
  // [h:l] -> width
  std::optional<size_t> Range() {
    if (!Accept("[")) return std::nullopt;
    const size_t h = Int();
    Expect(":");
    const size_t l = Int();
    Expect("]");
    if (l != 0) Fail("only [h:0] ranges are supported");
    return h + 1;
  }

  void Declare(const std::string& name, size_t width, size_t depth) {
    if (signals.count(name)) Fail("redeclared " + name);
    Signal s;
    s.width = width;
    s.depth = depth;
    s.value.assign(width * std::max<size_t>(depth, 1), 0);
    signals.emplace(name, std::move(s));
  }

  ExprPtr Primary() {
    if (Accept("(")) {
      ExprPtr e = Parse();
      Expect(")");
      return e;
    }
    if (Accept("{")) {
      auto e = std::make_unique<Expr>();
      e->op = Expr::kConcat;
      do {
        e->args.push_back(Parse());
      } while (Accept(","));
      Expect("}");
      return e;
    }
    if (Accept("~")) {
      auto e = std::make_unique<Expr>();
      e->op = Expr::kNot;
      e->args.push_back(Primary());
      return e;
    }
    if (Accept("!")) {
      auto e = std::make_unique<Expr>();
      e->op = Expr::kLNot;
      e->args.push_back(Primary());
      return e;
    }
    if (Peek().kind == Token::kNumber) {
      auto e = std::make_unique<Expr>();
      e->op = Expr::kConst;
      e->constant = ParseNumber(toks[pos++].text);
      return e;
    }
    auto e = std::make_unique<Expr>();
    e->name = Ident();
    e->op = Expr::kIdent;
    if (Accept("[")) {
      e->op = Expr::kIndex;
      e->args.push_back(Parse());
      Expect("]");
    }
    return e;
  }

  ExprPtr Binary(int level) {
    static const std::vector<std::pair<std::string, Expr::Op>> kLevels[] = {
        {{"||", Expr::kLOr}},
        {{"&&", Expr::kLAnd}},
        {{"|", Expr::kOr}},
        {{"^", Expr::kXor}},
        {{"&", Expr::kAnd}},
        {{"==", Expr::kEq}, {"!=", Expr::kNe}},
    };
    if (level == 6) return Primary();
    ExprPtr lhs = Binary(level + 1);
    for (;;) {
      bool matched = false;
      for (const auto& [tok, op] : kLevels[level]) {
        if (Peek().kind == Token::kPunct && Peek().text == tok) {
          ++pos;
          auto e = std::make_unique<Expr>();
          e->op = op;
          e->args.push_back(std::move(lhs));
          e->args.push_back(Binary(level + 1));
          lhs = std::move(e);
          matched = true;
          break;
        }
      }
      if (!matched) return lhs;
    }
  }

  ExprPtr Parse() {
    ExprPtr cond = Binary(0);
    if (!Accept("?")) return cond;
    auto e = std::make_unique<Expr>();
    e->op = Expr::kTernary;
    e->args.push_back(std::move(cond));
    e->args.push_back(Parse());
    Expect(":");
    e->args.push_back(Parse());
    return e;
  }

  Stmt Statement() {
    Stmt s;
    if (Accept("begin")) {
      s.kind = Stmt::kBlock;
      while (!Accept("end")) s.body.push_back(Statement());
      return s;
    }
    if (Accept("if")) {
      s.kind = Stmt::kIf;
      Expect("(");
      s.value = Parse();
      Expect(")");
      s.body.push_back(Statement());
      if (Accept("else")) s.orelse.push_back(Statement());
      return s;
    }
    if (Accept("case")) {
      s.kind = Stmt::kCase;
      Expect("(");
      s.value = Parse();
      Expect(")");
      while (!Accept("endcase")) {
        ExprPtr label;
        if (!Accept("default")) label = Parse();
        Expect(":");
        std::vector<Stmt> body;
        body.push_back(Statement());
        s.items.emplace_back(std::move(label), std::move(body));
      }
      return s;
    }
    s.target = Ident();
    if (Accept("[")) {
      s.index = Parse();
      Expect("]");
    }
    if (Accept("<=")) {
      s.kind = Stmt::kNonBlocking;
    } else {
      Expect("=");
      s.kind = Stmt::kAssign;
    }
    s.value = Parse();
    Expect(";");
    return s;
  }

  void ParseModule() {
    Expect("module");
    module = Ident();
    Expect("(");
    if (!Accept(")")) {
      do {
        std::string dir = Ident();
        if (dir != "input" && dir != "output") Fail("expected port direction");
        if (Peek().text == "wire" || Peek().text == "reg") ++pos;
        const size_t width = Range().value_or(1);
        const std::string name = Ident();
        Declare(name, width, 0);
        (dir == "input" ? inputs : outputs).push_back(name);
      } while (Accept(","));
      Expect(")");
    }
    Expect(";");
    while (!Accept("endmodule")) {
      if (Peek().kind == Token::kEnd) Fail("missing endmodule");
      const std::string kw = Ident();
      if (kw == "wire" || kw == "reg" || kw == "localparam") {
        const size_t width = Range().value_or(1);
        do {
          const std::string name = Ident();
          size_t depth = 0;
          if (Accept("[")) {
            const size_t lo = Int();
            Expect(":");
            depth = Int() + 1;
            Expect("]");
            if (lo != 0) Fail("array must start at 0");
          }
          Declare(name, width, depth);
          if (Accept("=")) {
            Stmt s;
            s.kind = Stmt::kAssign;
            s.target = name;
            s.value = Parse();
            if (kw == "localparam") {
              initial.insert(initial.begin(), std::move(s));
            } else {
              assigns.emplace_back(std::move(s), true);
            }
          }
        } while (Accept(","));
        Expect(";");
      } else if (kw == "assign") {
        Stmt s;
        s.kind = Stmt::kAssign;
        s.target = Ident();
        if (Accept("[")) {
          s.index = Parse();
          Expect("]");
        }
        Expect("=");
        s.value = Parse();
        Expect(";");
        assigns.emplace_back(std::move(s), true);
      } else if (kw == "initial") {
        initial.push_back(Statement());
      } else if (kw == "always") {
        Expect("@");
        Expect("(");
        if (Accept("*")) {
          Expect(")");
          comb.push_back(Statement());
        } else {
          Expect("posedge");
          const std::string clk = Ident();
          if (!clock.empty() && clk != clock) Fail("second clock " + clk);
          clock = clk;
          Expect(")");
          clocked.push_back(Statement());
        }
      } else {
        --pos;
        Fail("unsupported item");
      }
    }
    if (!clock.empty()) {
      inputs.erase(std::remove(inputs.begin(), inputs.end(), clock),
                   inputs.end());
    }
  }

  // Evaluation.
  Signal& Sig(const std::string& name) {
    auto it = signals.find(name);
    if (it == signals.end()) throw VerilogError("undeclared " + name);
    return it->second;
  }

  Bits Eval(const Expr& e) {
    switch (e.op) {
      case Expr::kConst:
        return e.constant;
      case Expr::kIdent: {
        Signal& s = Sig(e.name);
        if (s.depth) throw VerilogError("array " + e.name + " used as value");
        return s.value;
      }
      case Expr::kIndex: {
        Signal& s = Sig(e.name);
        const uint64_t k = ToInt(Eval(*e.args[0]));
        if (s.depth) {
          if (k >= s.depth) return Bits(s.width, 0);
          return Bits(s.value.begin() + k * s.width,
                      s.value.begin() + (k + 1) * s.width);
        }
        return Bits{k < s.width ? s.value[k] : uint8_t{0}};
      }
      case Expr::kConcat: {
        Bits out;
        for (size_t k = e.args.size(); k-- > 0;) {
          Bits part = Eval(*e.args[k]);
          out.insert(out.end(), part.begin(), part.end());
        }
        return out;
      }
      case Expr::kNot: {
        Bits v = Eval(*e.args[0]);
        for (uint8_t& x : v) x ^= 1u;
        return v;
      }
      case Expr::kLNot:
        return Bits{static_cast<uint8_t>(!Truthy(Eval(*e.args[0])))};
      case Expr::kLAnd:
        return Bits{static_cast<uint8_t>(Truthy(Eval(*e.args[0])) &&
                                         Truthy(Eval(*e.args[1])))};
      case Expr::kLOr:
        return Bits{static_cast<uint8_t>(Truthy(Eval(*e.args[0])) ||
                                         Truthy(Eval(*e.args[1])))};
      case Expr::kTernary:
        return Truthy(Eval(*e.args[0])) ? Eval(*e.args[1]) : Eval(*e.args[2]);
      default: {
        Bits a = Eval(*e.args[0]);
        Bits b = Eval(*e.args[1]);
        const size_t w = std::max(a.size(), b.size());
        a.resize(w, 0);
        b.resize(w, 0);
        if (e.op == Expr::kEq || e.op == Expr::kNe) {
          return Bits{static_cast<uint8_t>((a == b) == (e.op == Expr::kEq))};
        }
        for (size_t k = 0; k < w; ++k) {
          if (e.op == Expr::kAnd) a[k] &= b[k];
          if (e.op == Expr::kOr) a[k] |= b[k];
          if (e.op == Expr::kXor) a[k] ^= b[k];
        }
        return a;
      }
    }
  }

  struct Write {
    std::string target;
    std::optional<uint64_t> index;
    Bits value;
  };

  // Returns true when the stored value changed.
  bool Store(const Write& w) {
    Signal& s = Sig(w.target);
    if (s.depth) {
      if (!w.index) throw VerilogError("whole-array write to " + w.target);
      if (*w.index >= s.depth) return false;
      Bits v = Resize(w.value, s.width);
      auto at = s.value.begin() + *w.index * s.width;
      if (std::equal(v.begin(), v.end(), at)) return false;
      std::copy(v.begin(), v.end(), at);
      return true;
    }
    if (w.index) {
      if (*w.index >= s.width) return false;
      const uint8_t bit = w.value.empty() ? 0 : w.value[0];
      if (s.value[*w.index] == bit) return false;
      s.value[*w.index] = bit;
      return true;
    }
    Bits v = Resize(w.value, s.width);
    if (v == s.value) return false;
    s.value = std::move(v);
    return true;
  }

  // Executes `s`; blocking writes apply at once, nonblocking ones queue.
  bool Exec(const Stmt& s, std::vector<Write>* pending) {
    switch (s.kind) {
      case Stmt::kBlock: {
        bool changed = false;
        for (const Stmt& x : s.body) changed |= Exec(x, pending);
        return changed;
      }
      case Stmt::kIf: {
        bool changed = false;
        for (const Stmt& x : Truthy(Eval(*s.value)) ? s.body : s.orelse) {
          changed |= Exec(x, pending);
        }
        return changed;
      }
      case Stmt::kCase: {
        const Bits subject = Eval(*s.value);
        const std::vector<Stmt>* chosen = nullptr;
        for (const auto& [label, body] : s.items) {
          if (!label) {
            if (!chosen) chosen = &body;
            continue;
          }
          Bits l = Eval(*label);
          Bits r = subject;
          const size_t w = std::max(l.size(), r.size());
          l.resize(w, 0);
          r.resize(w, 0);
          if (l == r) {
            chosen = &body;
            break;
          }
        }
        bool changed = false;
        if (chosen) {
          for (const Stmt& x : *chosen) changed |= Exec(x, pending);
        }
        return changed;
      }
      case Stmt::kAssign:
      case Stmt::kNonBlocking: {
        Write w{s.target, std::nullopt, Eval(*s.value)};
        if (s.index) w.index = ToInt(Eval(*s.index));
        if (s.kind == Stmt::kNonBlocking) {
          if (!pending) throw VerilogError("nonblocking write outside a clock");
          pending->push_back(std::move(w));
          return false;
        }
        return Store(w);
      }
    }
    return false;
  }

  void Settle() {
    for (size_t pass = 0;; ++pass) {
      if (pass > signals.size() + 8) {
        throw VerilogError("combinational logic does not settle");
      }
      bool changed = false;
      for (const auto& [s, cont] : assigns) changed |= Exec(s, nullptr);
      for (const Stmt& s : comb) changed |= Exec(s, nullptr);
      if (!changed) return;
    }
  }

  std::vector<uint8_t> Outputs() {
    std::vector<uint8_t> v;
    for (const std::string& o : outputs) v.push_back(Sig(o).value[0]);
    return v;
  }
};

VerilogModel::VerilogModel(std::string_view text)
    : impl_(std::make_unique<Impl>()) {
  impl_->toks = Lex(text);
  impl_->ParseModule();
  impl_->toks.clear();
  Reset();
}

VerilogModel::~VerilogModel() = default;
VerilogModel::VerilogModel(VerilogModel&&) noexcept = default;

const std::string& VerilogModel::module_name() const { return impl_->module; }
const std::vector<std::string>& VerilogModel::inputs() const {
  return impl_->inputs;
}
const std::vector<std::string>& VerilogModel::outputs() const {
  return impl_->outputs;
}
const std::string& VerilogModel::clock() const { return impl_->clock; }

void VerilogModel::Reset() {
  for (auto& [name, s] : impl_->signals) std::fill(s.value.begin(), s.value.end(), 0);
  for (const Stmt& s : impl_->initial) impl_->Exec(s, nullptr);
  impl_->Settle();
  impl_->before = impl_->after = impl_->Outputs();
}

void VerilogModel::Step(const std::vector<uint8_t>& inputs) {
  Impl& m = *impl_;
  if (inputs.size() != m.inputs.size()) {
    throw VerilogError("input vector has the wrong length");
  }
  for (size_t k = 0; k < inputs.size(); ++k) {
    m.Sig(m.inputs[k]).value = Resize(Bits{inputs[k]}, m.Sig(m.inputs[k]).width);
  }
  m.Settle();
  m.before = m.Outputs();
  std::vector<Impl::Write> pending;
  for (const Stmt& s : m.clocked) m.Exec(s, &pending);
  for (const Impl::Write& w : pending) m.Store(w);
  m.Settle();
  m.after = m.Outputs();
}

const std::vector<uint8_t>& VerilogModel::before() const {
  return impl_->before;
}
const std::vector<uint8_t>& VerilogModel::after() const {
  return impl_->after;
}

}  // namespace regroup::testing
