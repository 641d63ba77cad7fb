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

#ifndef REGROUP_TESTS_SUPPORT_VSIM_H_
#define REGROUP_TESTS_SUPPORT_VSIM_H_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace regroup::testing {

struct VerilogError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reader and cycle simulator for the small synthesizable Verilog subset the
// RTL backend writes: one module, wire/reg/array/localparam declarations,
// continuous assigns, initial blocks, always @(*) with case, and
// always @(posedge clk) with if and nonblocking assignments. Independent of
// the library so that it can judge the emitted text.
class VerilogModel {
 public:
  explicit VerilogModel(std::string_view text);
  ~VerilogModel();
  VerilogModel(VerilogModel&&) noexcept;

  const std::string& module_name() const;
  // Data inputs, the clock excluded, in port order.
  const std::vector<std::string>& inputs() const;
  const std::vector<std::string>& outputs() const;
  const std::string& clock() const;

  // Runs initial blocks from all-zero state.
  void Reset();
  // Same phases as the library simulator: settle, sample, clock, settle.
  void Step(const std::vector<uint8_t>& inputs);
  const std::vector<uint8_t>& before() const;
  const std::vector<uint8_t>& after() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace regroup::testing

#endif  // REGROUP_TESTS_SUPPORT_VSIM_H_
