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

#include "regroup/fixtures.h"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace regroup {
namespace {

std::string Q(std::string_view base, size_t i) {
  return std::string(base) + std::to_string(i);
}

void EnabledFlop(NetlistBuilder& b, const std::string& en,
                 const std::string& q, const std::string& next) {
  const std::string d = q + "_d";
  b.gate(CellKind::kMux, {en, q, next}, d);
  b.add_dff(b.wire(d), b.wire(q), InitValue::kZero);
}

size_t AddressBits(size_t rows) {
  size_t a = 1;
  while ((size_t{1} << a) < rows) ++a;
  return a;
}

}  // namespace

Fixture GenCounter(size_t n) {
  if (n == 0) throw std::invalid_argument("counter needs at least one bit");
  NetlistBuilder b("counter" + std::to_string(n));
  b.input("en");
  Fixture f;
  f.name = "counter" + std::to_string(n);
  std::string carry;
  for (size_t i = 0; i < n; ++i) {
    const std::string r = Q("r", i);
    const std::string next = r + "_n";
    if (i == 0) {
      b.gate(CellKind::kNot, {r}, next);
    } else {
      if (i == 1) {
        carry = "r0";
      } else {
        const std::string c = Q("c", i);
        b.gate(CellKind::kAnd, {carry, Q("r", i - 1)}, c);
        carry = c;
      }
      b.gate(CellKind::kXor, {carry, r}, next);
    }
    EnabledFlop(b, "en", r, next);
    b.output(r);
    f.truth.order.push_back(r);
    for (size_t j = 0; j < i; ++j) f.truth.edges.emplace_back(Q("r", j), r);
  }
  f.truth.register_histogram[n] = 1;
  f.netlist = std::move(b).Build();
  return f;
}

Fixture GenShifter(size_t n) {
  if (n == 0) throw std::invalid_argument("shifter needs at least one bit");
  NetlistBuilder b("shifter" + std::to_string(n));
  b.input("en");
  b.input("sin");
  Fixture f;
  f.name = "shifter" + std::to_string(n);
  for (size_t i = 0; i < n; ++i) {
    const std::string r = Q("r", i);
    const std::string next = i + 1 < n ? Q("r", i + 1) : "sin";
    EnabledFlop(b, "en", r, next);
    b.output(r);
    if (i + 1 < n) f.truth.edges.emplace_back(Q("r", i + 1), r);
  }
  for (size_t i = n; i-- > 0;) f.truth.order.push_back(Q("r", i));
  f.truth.register_histogram[n] = 1;
  f.netlist = std::move(b).Build();
  return f;
}

Fixture GenBitwiseReg(size_t n) {
  if (n == 0) throw std::invalid_argument("register needs at least one bit");
  NetlistBuilder b("bitwise" + std::to_string(n));
  b.input("en");
  Fixture f;
  f.name = "bitwise" + std::to_string(n);
  for (size_t i = 0; i < n; ++i) b.input(Q("x", i));
  for (size_t i = 0; i < n; ++i) {
    const std::string r = Q("r", i);
    b.gate(CellKind::kXor, {r, Q("x", i)}, r + "_n");
    EnabledFlop(b, "en", r, r + "_n");
    b.output(r);
    f.truth.order.push_back(r);
  }
  f.truth.register_histogram[n] = 1;
  f.netlist = std::move(b).Build();
  return f;
}

Fixture GenMemory(size_t rows, size_t width, const MemoryOptions& opts) {
  if (rows < 2 || width < 1) {
    throw std::invalid_argument("memory needs at least 2 rows and 1 bit");
  }
  if (opts.read_ports < 1 || opts.read_ports > 2 || opts.write_addresses < 1 ||
      opts.write_addresses > 2) {
    throw std::invalid_argument("unsupported memory options");
  }
  const size_t a = AddressBits(rows);
  Fixture f;
  f.name = "memory" + std::to_string(rows) + "x" + std::to_string(width);
  if (opts.read_ports == 2) f.name += "_2read";
  if (opts.write_addresses == 2) f.name += "_2addr";
  if (opts.buf_noise) f.name += "_buf";
  if (opts.decomposed_mux) f.name += "_gates";
  NetlistBuilder b(f.name);

  b.input("we");
  for (size_t j = 0; j < a; ++j) b.input(Q("a", j));
  if (opts.read_ports == 2) {
    for (size_t j = 0; j < a; ++j) b.input(Q("b", j));
  }
  if (opts.write_addresses == 2) {
    for (size_t j = 0; j < a; ++j) b.input(Q("c", j));
  }
  for (size_t i = 0; i < width; ++i) b.input(Q("wd", i));

  // Shared inverters serve the decoder and gate-form multiplexers.
  std::set<std::string> inverted;
  auto inv = [&](const std::string& s) {
    const std::string n = "n" + s;
    if (inverted.insert(s).second) b.gate(CellKind::kNot, {s}, n);
    return n;
  };

  std::vector<std::string> data(width);
  for (size_t i = 0; i < width; ++i) {
    data[i] = Q("wd", i);
    if (opts.buf_noise) {
      b.gate(CellKind::kBuf, {data[i]}, data[i] + "_b1");
      b.gate(CellKind::kBuf, {data[i] + "_b1"}, data[i] + "_b2");
      data[i] += "_b2";
    }
  }

  auto q_name = [](size_t r, size_t i) {
    return "mem_r" + std::to_string(r) + "[" + std::to_string(i) + "]";
  };
  for (size_t r = 0; r < rows; ++r) {
    const bool upper = opts.write_addresses == 2 && r >= rows / 2;
    const std::string_view base = upper ? "c" : "a";
    std::string term;
    for (size_t j = 0; j < a; ++j) {
      const std::string bit = Q(base, j);
      const std::string lit = ((r >> j) & 1u) ? bit : inv(bit);
      if (j == 0) {
        term = lit;
      } else {
        const std::string t = "dec" + std::to_string(r) + "_" + std::to_string(j);
        b.gate(CellKind::kAnd, {term, lit}, t);
        term = t;
      }
    }
    const std::string row_en = Q("row_en", r);
    b.gate(CellKind::kAnd, {"we", term}, row_en);
    for (size_t i = 0; i < width; ++i) {
      const std::string q = q_name(r, i);
      const std::string d = "mem_r" + std::to_string(r) + "_d[" +
                            std::to_string(i) + "]";
      b.gate(CellKind::kMux, {row_en, q, data[i]}, d);
      b.add_dff(b.wire(d), b.wire(q), InitValue::kZero);
    }
    f.truth.row_address["mem_r" + std::to_string(r)] = static_cast<uint32_t>(r);
  }

  auto mux = [&](const std::string& s, const std::string& when0,
                 const std::string& when1, const std::string& out) {
    if (!opts.decomposed_mux) {
      b.gate(CellKind::kMux, {s, when0, when1}, out);
      return;
    }
    b.gate(CellKind::kAnd, {s, when1}, out + "_h");
    b.gate(CellKind::kAnd, {inv(s), when0}, out + "_l");
    b.gate(CellKind::kOr, {out + "_h", out + "_l"}, out);
  };
  for (size_t port = 0; port < opts.read_ports; ++port) {
    const std::string sel = port == 0 ? "a" : "b";
    const std::string out = port == 0 ? "rd" : "rdb";
    for (size_t i = 0; i < width; ++i) {
      std::vector<std::string> level;
      for (size_t v = 0; v < (size_t{1} << a); ++v) {
        level.push_back(q_name(v < rows ? v : v % rows, i));
      }
      for (size_t k = 1; k <= a; ++k) {
        std::vector<std::string> up;
        for (size_t p = 0; p < level.size() / 2; ++p) {
          const std::string node =
              k == a ? Q(out, i)
                     : out + "t" + std::to_string(i) + "_" + std::to_string(k) +
                           "_" + std::to_string(p);
          mux(Q(sel, k - 1), level[2 * p], level[2 * p + 1], node);
          up.push_back(node);
        }
        level = std::move(up);
      }
      b.output(Q(out, i));
    }
  }

  if (opts.read_ports == 1 && opts.write_addresses == 1) {
    f.truth.memories.emplace_back(rows, width);
    for (size_t j = 0; j < a; ++j) f.truth.addr.push_back(Q("a", j));
    for (size_t i = 0; i < width; ++i) {
      f.truth.write_port.push_back(Q("wd", i));
      f.truth.read_port.push_back(Q("rd", i));
    }
  } else {
    f.truth.register_histogram[width] = rows;
  }
  f.netlist = std::move(b).Build();
  return f;
}

Fixture GenNoEnable() {
  NetlistBuilder b("no_enable");
  b.input("x");
  b.input("y");
  Fixture f;
  f.name = "no_enable";
  // A strobe-style shift network: every D is fresh logic, never a hold.
  for (size_t i = 0; i < 8; ++i) {
    const std::string s = Q("s", i);
    const std::string prev = i == 0 ? "s7" : Q("s", i - 1);
    const std::string d = s + "_d";
    if (i % 2 == 0) {
      b.gate(CellKind::kXor, {prev, "x"}, d);
    } else {
      b.gate(CellKind::kAnd, {prev, "y"}, s + "_t");
      b.gate(CellKind::kOr, {s + "_t", "x"}, d);
    }
    b.add_dff(b.wire(d), b.wire(s), InitValue::kZero);
    b.output(s);
  }
  b.gate(CellKind::kAnd, {"s3", "s7"}, "strobe");
  b.output("strobe");
  f.netlist = std::move(b).Build();
  return f;
}

Fixture GenSharedEnable() {
  NetlistBuilder b("shared_enable");
  b.input("start");
  b.input("din");
  for (size_t i = 0; i < 4; ++i) b.input(Q("dv", i));
  Fixture f;
  f.name = "shared_enable";
  // Quotient shifts in din; remainder accumulates the divisor bits; busy
  // toggles. All three share `start`.
  for (size_t i = 0; i < 4; ++i) {
    const std::string q = Q("div_q", i);
    EnabledFlop(b, "start", q, i == 0 ? "din" : Q("div_q", i - 1));
    b.output(q);
  }
  for (size_t i = 0; i < 4; ++i) {
    const std::string r = Q("div_r", i);
    b.gate(CellKind::kXor, {r, Q("dv", i)}, r + "_n");
    EnabledFlop(b, "start", r, r + "_n");
    b.output(r);
  }
  b.gate(CellKind::kNot, {"div_busy"}, "div_busy_n");
  EnabledFlop(b, "start", "div_busy", "div_busy_n");
  b.output("div_busy");
  f.truth.register_histogram[9] = 1;
  f.netlist = std::move(b).Build();
  return f;
}

Fixture GenFifo() {
  NetlistBuilder b("fifo");
  b.input("push");
  b.input("pop");
  b.input("tag_we");
  for (size_t i = 0; i < 8; ++i) b.input(Q("din", i));
  Fixture f;
  f.name = "fifo";

  auto counter = [&](const std::string& base, const std::string& en) {
    std::string carry;
    for (size_t i = 0; i < 3; ++i) {
      const std::string r = Q(base, i);
      const std::string next = r + "_n";
      if (i == 0) {
        b.gate(CellKind::kNot, {r}, next);
      } else {
        if (i == 1) {
          carry = Q(base, 0);
        } else {
          b.gate(CellKind::kAnd, {carry, Q(base, 1)}, base + "_c2");
          carry = base + "_c2";
        }
        b.gate(CellKind::kXor, {carry, r}, next);
      }
      EnabledFlop(b, en, r, next);
    }
  };
  counter("wptr", "push");
  counter("rptr", "pop");
  for (size_t i = 0; i < 3; ++i) {
    EnabledFlop(b, "tag_we", Q("tag", i), Q("din", i));
    b.output(Q("tag", i));
  }

  for (size_t j = 0; j < 3; ++j) {
    b.gate(CellKind::kMux, {"push", Q("rptr", j), Q("wptr", j)}, Q("addr", j));
    b.gate(CellKind::kNot, {Q("addr", j)}, Q("naddr", j));
  }
  auto q_name = [](size_t r, size_t i) {
    return "buf_r" + std::to_string(r) + "[" + std::to_string(i) + "]";
  };
  for (size_t r = 0; r < 8; ++r) {
    std::string term;
    for (size_t j = 0; j < 3; ++j) {
      const std::string lit = ((r >> j) & 1u) ? Q("addr", j) : Q("naddr", j);
      if (j == 0) {
        term = lit;
      } else {
        const std::string t = "fdec" + std::to_string(r) + "_" + std::to_string(j);
        b.gate(CellKind::kAnd, {term, lit}, t);
        term = t;
      }
    }
    b.gate(CellKind::kAnd, {"push", term}, Q("fill", r));
    for (size_t i = 0; i < 8; ++i) {
      const std::string q = q_name(r, i);
      const std::string d = "buf_r" + std::to_string(r) + "_d[" +
                            std::to_string(i) + "]";
      b.gate(CellKind::kMux, {Q("fill", r), q, Q("din", i)}, d);
      b.add_dff(b.wire(d), b.wire(q), InitValue::kZero);
    }
    f.truth.row_address["buf_r" + std::to_string(r)] = static_cast<uint32_t>(r);
  }
  for (size_t i = 0; i < 8; ++i) {
    std::vector<std::string> level;
    for (size_t v = 0; v < 8; ++v) level.push_back(q_name(v, i));
    for (size_t k = 1; k <= 3; ++k) {
      std::vector<std::string> up;
      for (size_t p = 0; p < level.size() / 2; ++p) {
        const std::string node =
            k == 3 ? Q("dout", i)
                   : "ft" + std::to_string(i) + "_" + std::to_string(k) + "_" +
                         std::to_string(p);
        b.gate(CellKind::kMux, {Q("addr", k - 1), level[2 * p], level[2 * p + 1]},
               node);
        up.push_back(node);
      }
      level = std::move(up);
    }
    b.output(Q("dout", i));
  }
  f.truth.register_histogram[3] = 3;
  f.truth.memories.emplace_back(8, 8);
  for (size_t j = 0; j < 3; ++j) f.truth.addr.push_back(Q("addr", j));
  for (size_t i = 0; i < 8; ++i) {
    f.truth.write_port.push_back(Q("din", i));
    f.truth.read_port.push_back(Q("dout", i));
  }
  f.netlist = std::move(b).Build();
  return f;
}

Fixture GenRandom(uint64_t seed, const RandomOptions& opts) {
  std::mt19937_64 rng(seed);
  auto pick = [&](size_t n) { return static_cast<size_t>(rng() % n); };
  auto coin = [&] { return (rng() & 1u) != 0; };

  Fixture f;
  f.name = "random" + std::to_string(seed);
  NetlistBuilder b(f.name);
  std::vector<std::string> pool;
  std::set<std::string> read;
  for (size_t i = 0; i < std::max<size_t>(opts.inputs, 2); ++i) {
    b.input(Q("x", i));
    pool.push_back(Q("x", i));
  }

  struct Cluster {
    std::vector<std::string> qs;
  };
  std::vector<Cluster> clusters(opts.clusters);
  for (size_t c = 0; c < clusters.size(); ++c) {
    const size_t size = 1 + pick(4);
    for (size_t i = 0; i < size; ++i) {
      clusters[c].qs.push_back("k" + std::to_string(c) + "_" + std::to_string(i));
      pool.push_back(clusters[c].qs.back());
    }
  }
  for (size_t p = 0; p < opts.plain_dffs; ++p) pool.push_back(Q("p", p));

  auto any = [&] {
    const std::string& w = pool[pick(pool.size())];
    read.insert(w);
    return w;
  };
  for (size_t g = 0; g < opts.gates; ++g) {
    const std::string out = Q("g", g);
    switch (pick(9)) {
      case 0: b.gate(CellKind::kAnd, {any(), any()}, out); break;
      case 1: b.gate(CellKind::kOr, {any(), any()}, out); break;
      case 2: b.gate(CellKind::kXor, {any(), any()}, out); break;
      case 3: b.gate(CellKind::kNand, {any(), any()}, out); break;
      case 4: b.gate(CellKind::kNor, {any(), any()}, out); break;
      case 5: b.gate(CellKind::kNot, {any()}, out); break;
      case 6: b.gate(CellKind::kMux, {any(), any(), any()}, out); break;
      case 7: b.gate(CellKind::kBuf, {any()}, out); break;
      default: {
        const size_t k = 2 + pick(3);
        std::vector<WireId> ins;
        for (size_t i = 0; i < k; ++i) ins.push_back(b.wire(any()));
        const uint64_t bits = rng();
        b.add_lut(ins, b.wire(out), TruthTable::FromFunction(k, [&](uint32_t r) {
                    return ((bits >> r) & 1u) != 0;
                  }));
      }
    }
    pool.push_back(out);
  }

  // Product-term enables over x0 (shared) and x1 (varying sign) invite
  // memory candidates that the later recovery steps must reject.
  for (size_t c = 0; c < clusters.size(); ++c) {
    std::string en;
    switch (pick(4)) {
      case 0:
        en = Q("x", pick(opts.inputs));
        break;
      case 1:
        en = Q("g", pick(std::max<size_t>(opts.gates, 1)));
        if (opts.gates == 0) en = "x0";
        break;
      default: {
        en = "ce" + std::to_string(c);
        std::string lit = "x1";
        if (coin()) {
          lit = "nx1_" + std::to_string(c);
          b.gate(CellKind::kNot, {"x1"}, lit);
        }
        b.gate(CellKind::kAnd, {"x0", lit}, en);
      }
    }
    read.insert(en);
    for (const std::string& q : clusters[c].qs) {
      const std::string next = any();
      const std::string d = q + "_d";
      read.insert(q);
      switch (pick(6)) {
        case 0:
          b.gate(CellKind::kMux, {en, q, next}, d);
          break;
        case 1:
          b.gate(CellKind::kMux, {en, next, q}, d);
          break;
        case 2:
          b.gate(CellKind::kNot, {en}, q + "_ne");
          b.gate(CellKind::kAnd, {en, next}, q + "_h");
          b.gate(CellKind::kAnd, {q, q + "_ne"}, q + "_l");
          b.gate(CellKind::kOr, {q + "_l", q + "_h"}, d);
          break;
        case 3:
          b.gate(CellKind::kNot, {en}, q + "_ne");
          b.gate(CellKind::kNand, {next, en}, q + "_h");
          b.gate(CellKind::kNand, {q + "_ne", q}, q + "_l");
          b.gate(CellKind::kNand, {q + "_h", q + "_l"}, d);
          break;
        case 4: {
          // en ? next : q with the inputs in a random order.
          std::vector<int> role{0, 1, 2};
          std::shuffle(role.begin(), role.end(), rng);
          std::vector<WireId> ins(3);
          const std::string names[3] = {en, q, next};
          for (int k = 0; k < 3; ++k) ins[role[k]] = b.wire(names[k]);
          b.add_lut(ins, b.wire(d), TruthTable::FromFunction(3, [&](uint32_t r) {
                      bool e = (r >> role[0]) & 1u;
                      bool qq = (r >> role[1]) & 1u;
                      bool nn = (r >> role[2]) & 1u;
                      return e ? nn : qq;
                    }));
          break;
        }
        default: {
          // Next-value logic folded into the LUT: en ? (u & ~v) : q.
          const std::string u = any();
          const std::string v = any();
          std::vector<WireId> ins{b.wire(en), b.wire(q), b.wire(u), b.wire(v)};
          b.add_lut(ins, b.wire(d), TruthTable::FromFunction(4, [](uint32_t r) {
                      bool e = r & 1u;
                      bool qq = (r >> 1) & 1u;
                      bool uu = (r >> 2) & 1u;
                      bool vv = (r >> 3) & 1u;
                      return e ? (uu && !vv) : qq;
                    }));
        }
      }
      b.add_dff(b.wire(d), b.wire(q),
                pick(4) == 0 ? InitValue::kOne : InitValue::kZero);
    }
  }
  for (size_t p = 0; p < opts.plain_dffs; ++p) {
    const std::string q = Q("p", p);
    b.add_dff(b.wire(any()), b.wire(q), InitValue::kZero);
  }

  // Unread wires become outputs, plus a few random taps.
  std::set<std::string> outs;
  for (size_t k = 0; k < 3; ++k) outs.insert(pool[pick(pool.size())]);
  for (const std::string& w : pool) {
    if (!read.count(w) && w[0] != 'x') outs.insert(w);
  }
  for (const std::string& w : outs) {
    if (w[0] != 'x') b.output(w);
  }
  b.set_dangling_policy(DanglingPolicy::kAllow);
  f.netlist = std::move(b).Build();
  return f;
}

std::vector<Fixture> AllFixtures() {
  std::vector<Fixture> all;
  for (size_t n : {2, 3, 8, 16}) all.push_back(GenCounter(n));
  all.push_back(GenShifter(1));
  all.push_back(GenShifter(3));
  all.push_back(GenBitwiseReg(3));
  for (auto [r, w] : std::vector<std::pair<size_t, size_t>>{
           {2, 1}, {4, 2}, {8, 8}, {16, 32}, {4, 32}, {32, 32}, {64, 8},
           {6, 4}}) {
    all.push_back(GenMemory(r, w));
  }
  all.push_back(GenMemory(8, 8, {.read_ports = 2}));
  all.push_back(GenMemory(8, 8, {.write_addresses = 2}));
  all.push_back(GenMemory(8, 8, {.buf_noise = true}));
  all.push_back(GenMemory(8, 8, {.decomposed_mux = true}));
  all.push_back(GenNoEnable());
  all.push_back(GenSharedEnable());
  all.push_back(GenFifo());
  return all;
}

}  // namespace regroup
