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

#ifndef REGROUP_SIM_H_
#define REGROUP_SIM_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "regroup/netlist.h"

namespace regroup {

struct DecompiledDesign;

enum class SimErrorKind { kUnassignedInput, kSignatureMismatch };

class SimError : public std::runtime_error {
 public:
  SimError(SimErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  SimErrorKind kind() const { return kind_; }

 private:
  SimErrorKind kind_;
};

// Input values by name, one row per cycle, columns parallel to `inputs`.
struct Stimulus {
  std::vector<std::string> inputs;
  std::vector<std::vector<uint8_t>> cycles;
  uint64_t seed = 0;

  size_t length() const { return cycles.size(); }
};

struct Trace {
  std::vector<std::string> outputs;
  // Outputs after the cycle's storage update, inputs still applied.
  std::vector<std::vector<uint8_t>> values;
  // Outputs before the update.
  std::vector<std::vector<uint8_t>> before;
  // Storage contents after each cycle, when requested.
  std::vector<std::vector<uint8_t>> storage;
  // Some storage started from an unknown value and was simulated as 0.
  bool unknown_init = false;
};

// Two-phase cycle simulator. Each Step applies inputs, evaluates the logic,
// commits every storage update at once from the pre-update values, then
// evaluates again.
class Simulator {
 public:
  explicit Simulator(const Netlist& netlist);
  explicit Simulator(const DecompiledDesign& design);
  ~Simulator();
  Simulator(Simulator&&) noexcept;
  Simulator& operator=(Simulator&&) noexcept;

  const std::vector<std::string>& input_names() const;
  const std::vector<std::string>& output_names() const;
  bool unknown_init() const;

  void Reset();
  // `inputs` parallel to input_names().
  void Step(const std::vector<uint8_t>& inputs);
  const std::vector<uint8_t>& before() const;
  const std::vector<uint8_t>& after() const;

  std::vector<uint8_t> Snapshot() const;
  void Restore(const std::vector<uint8_t>& state);
  // Current value of a wire by name (after the last evaluation).
  std::optional<bool> Peek(std::string_view wire) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Trace Simulate(const Netlist& netlist, const Stimulus& stim,
               bool record_storage = false);
Trace Simulate(const DecompiledDesign& design, const Stimulus& stim,
               bool record_storage = false);

// Uniform random inputs, except wires named in `enables`, which are high
// with probability 3/4.
Stimulus RandomStimulus(const std::vector<std::string>& inputs, size_t cycles,
                        uint64_t seed,
                        const std::set<std::string>& enables = {});

// Primary inputs that act as register or memory enables in `design`.
std::set<std::string> EnableInputs(const DecompiledDesign& design);

struct Counterexample {
  size_t cycle = 0;
  std::string output;
  bool expected = false;
  bool got = false;
  Stimulus stimulus;  // truncated after the diverging cycle
};

struct Verdict {
  bool equivalent = true;
  std::optional<Counterexample> counterexample;
};

Verdict CompareOn(const Netlist& original, const DecompiledDesign& design,
                  const Stimulus& stim);

// Random co-simulation over `cycles` cycles. Throws SimError
// (kSignatureMismatch) when primary I/O names differ.
Verdict CheckEquivalence(const Netlist& original,
                         const DecompiledDesign& design, size_t cycles,
                         uint64_t seed);

// Every input sequence up to `depth` cycles, explored as the product of both
// machines' reachable state pairs. Inputs limited to 16.
Verdict CheckEquivalenceExhaustive(const Netlist& original,
                                   const DecompiledDesign& design,
                                   size_t depth);

std::string TraceToVcd(const Trace& trace, const std::string& module);

}  // namespace regroup

#endif  // REGROUP_SIM_H_
