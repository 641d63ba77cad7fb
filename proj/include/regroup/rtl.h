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

#ifndef REGROUP_RTL_H_
#define REGROUP_RTL_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace regroup {

struct DecompiledDesign;

class NameCollision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `[^A-Za-z0-9_]` becomes `_`; a leading digit gets a `_` prefix; Verilog
// keywords get a trailing `_`.
std::string SanitizeIdentifier(std::string_view raw);

// Raw name -> emitted identifier, for every name that changes. Throws
// NameCollision when register, memory and wire names overlap before
// sanitization.
std::vector<std::pair<std::string, std::string>> RtlNameMap(
    const DecompiledDesign& design);

// Single Verilog-2001 module. Deterministic for a given design.
std::string EmitRtl(const DecompiledDesign& design);

}  // namespace regroup

#endif  // REGROUP_RTL_H_
