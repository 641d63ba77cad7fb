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

#ifndef REGROUP_BLIF_H_
#define REGROUP_BLIF_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "regroup/netlist.h"

namespace regroup {

enum class BlifErrorKind {
  kSyntaxError,
  kUnsupportedFeature,
  kMultipleDrivers,
  kCombinationalLoop,
  kInvalidNetlist,
};

std::string_view BlifErrorKindName(BlifErrorKind kind);

// Parse diagnostic. `line` is 1-based; every error carries the line that
// triggered it.
class BlifError : public std::runtime_error {
 public:
  BlifError(BlifErrorKind kind, int line, const std::string& message);

  BlifErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  BlifErrorKind kind_;
  int line_;
};

// Parses the first `.model` of a BLIF text. Covers that match a primitive
// gate (with inputs in declaration order) become that gate; other covers
// become LUTs holding their original rows. `.latch` becomes a DFF on the
// single implicit clock.
Netlist ParseBlif(std::string_view text);

// Emits `netlist` as a single-model BLIF text. ParseBlif(EmitBlif(n)) is
// isomorphic to n.
std::string EmitBlif(const Netlist& netlist);

}  // namespace regroup

#endif  // REGROUP_BLIF_H_
