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

#ifndef REGROUP_FIXTURES_H_
#define REGROUP_FIXTURES_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "regroup/netlist.h"

namespace regroup {

// What a correct decompilation of a generated netlist recovers.
struct FixtureTruth {
  std::map<size_t, size_t> register_histogram;      // width -> count
  std::vector<std::pair<size_t, size_t>> memories;  // (rows, width)
  // Dependency edges (source q, dest q) among register bits.
  std::vector<std::pair<std::string, std::string>> edges;
  // Expected LSB-first bit order for single-register fixtures.
  std::vector<std::string> order;
  // Memory fixtures: address (LSB first), ports, and row Q name prefix to
  // address.
  std::vector<std::string> addr;
  std::vector<std::string> write_port;  // source wires, before any BUFs
  std::vector<std::string> read_port;
  std::map<std::string, uint32_t> row_address;
};

struct Fixture {
  std::string name;
  Netlist netlist;
  FixtureTruth truth;
};

// n-bit up-counter: r0..r{n-1}, bit i toggles when all lower bits are 1.
Fixture GenCounter(size_t n);
// r_i takes r_{i+1}; the top bit takes input `sin`.
Fixture GenShifter(size_t n);
// r_i ^= x_i.
Fixture GenBitwiseReg(size_t n);

struct MemoryOptions {
  size_t read_ports = 1;  // 2 adds a second tree on address b*
  bool buf_noise = false;  // write data through BUF chains
  bool decomposed_mux = false;  // read tree as AND/OR/NOT gates
  size_t write_addresses = 1;  // 2 decodes the upper rows from address c*
};

// rows x width memory with a NOT/AND decoder, per-row enable muxes, and a
// read multiplexer tree per bit. Unmapped addresses read row (v % rows).
Fixture GenMemory(size_t rows, size_t width, const MemoryOptions& opts = {});

// Eight DFFs without enables.
Fixture GenNoEnable();
// Two 4-bit registers and a 1-bit flag, all under one enable.
Fixture GenSharedEnable();
// Write/read pointers and a tag (three 3-bit registers) around an 8x8
// memory addressed by push ? wptr : rptr.
Fixture GenFifo();

struct RandomOptions {
  size_t inputs = 6;
  size_t gates = 40;
  size_t clusters = 4;
  size_t plain_dffs = 2;
};

// Random combinational DAG with enabled DFF clusters in MUX, gate and LUT
// forms, some under product-term enables.
Fixture GenRandom(uint64_t seed, const RandomOptions& opts = {});

// Every named fixture used by the test suite and the `gen` command.
std::vector<Fixture> AllFixtures();

}  // namespace regroup

#endif  // REGROUP_FIXTURES_H_
