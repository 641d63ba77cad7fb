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

#ifndef REGROUP_REPORT_H_
#define REGROUP_REPORT_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace regroup {

struct DecompiledDesign;

struct AggregationReport {
  std::string module;
  std::map<size_t, size_t> register_histogram;  // width -> count
  std::vector<std::pair<size_t, size_t>> memories;  // (rows, width)
  size_t dff_total = 0;
  size_t dff_in_registers = 0;
  size_t dff_in_memories = 0;
  size_t dff_residual = 0;
  size_t group_count = 0;
};

AggregationReport Summarize(const DecompiledDesign& design);

enum class ReportFormat { kJson, kTable };

inline constexpr int kReportSchema = 1;

// JSON keys come in a fixed order; the table lists register sizes as
// "width : count".
std::string EmitReport(const DecompiledDesign& design, ReportFormat format);

}  // namespace regroup

#endif  // REGROUP_REPORT_H_
