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

#ifndef REGROUP_BENCH_H_
#define REGROUP_BENCH_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace regroup {

struct BenchPoint {
  size_t param = 0;  // swept generator parameter (rows for memories)
  size_t cells = 0;
  double seconds = 0;            // best-of-repeat decompile time
  double sim_seconds_per_cycle = 0;
};

struct BenchResult {
  std::string family;
  std::vector<BenchPoint> points;
  std::optional<double> slope;      // log-log fit of seconds against cells
  std::optional<double> sim_slope;  // same for simulator time per cycle
};

struct BenchOptions {
  std::string family = "memory";  // memory | counter
  size_t from = 4;
  size_t to = 64;
  size_t width = 32;
  size_t repeat = 3;
  size_t sim_cycles = 200;
};

// Least-squares slope of log(y) against log(x). nullopt for fewer than two
// distinct x values or any non-positive value.
std::optional<double> LogLogSlope(const std::vector<double>& x,
                                  const std::vector<double>& y);

// Sweeps the parameter by doubling from `from` up to `to`. Throws
// std::invalid_argument for an unknown family or an empty range.
BenchResult RunBench(const BenchOptions& options);

std::string FormatBench(const BenchResult& result);

}  // namespace regroup

#endif  // REGROUP_BENCH_H_
