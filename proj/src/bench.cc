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

#include "regroup/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

#include "regroup/design.h"
#include "regroup/fixtures.h"
#include "regroup/sim.h"

namespace regroup {

std::optional<double> LogLogSlope(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  std::set<double> distinct;
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) return std::nullopt;
    distinct.insert(x[i]);
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  if (distinct.size() < 2) return std::nullopt;
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Fixture Make(const BenchOptions& o, size_t param) {
  if (o.family == "memory") return GenMemory(param, o.width);
  if (o.family == "counter") return GenCounter(param);
  throw std::invalid_argument("unknown bench family '" + o.family + "'");
}

}  // namespace

BenchResult RunBench(const BenchOptions& o) {
  if (o.from == 0 || o.from > o.to) {
    throw std::invalid_argument("empty sweep range");
  }
  BenchResult result;
  result.family = o.family;
  const size_t repeat = std::max<size_t>(o.repeat, 1);
  for (size_t p = o.from; p <= o.to; p *= 2) {
    Fixture f = Make(o, p);
    BenchPoint point;
    point.param = p;
    point.cells = f.netlist.cells().size();
    point.seconds = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < repeat; ++k) {
      const auto start = Clock::now();
      DecompiledDesign d = Decompile(f.netlist, {});
      point.seconds = std::min(point.seconds, Since(start));
    }
    if (o.sim_cycles > 0) {
      Simulator sim(f.netlist);
      Stimulus stim = RandomStimulus(sim.input_names(), o.sim_cycles, p);
      double best = std::numeric_limits<double>::infinity();
      for (size_t k = 0; k < repeat; ++k) {
        sim.Reset();
        const auto start = Clock::now();
        for (const auto& row : stim.cycles) sim.Step(row);
        best = std::min(best, Since(start));
      }
      point.sim_seconds_per_cycle = best / o.sim_cycles;
    }
    result.points.push_back(point);
    if (p > o.to / 2) break;
  }
  std::vector<double> cells, secs, sims;
  for (const BenchPoint& pt : result.points) {
    cells.push_back(static_cast<double>(pt.cells));
    secs.push_back(pt.seconds);
    sims.push_back(pt.sim_seconds_per_cycle);
  }
  result.slope = LogLogSlope(cells, secs);
  if (o.sim_cycles > 0) result.sim_slope = LogLogSlope(cells, sims);
  return result;
}

std::string FormatBench(const BenchResult& r) {
  std::string out = "family " + r.family + "\n";
  char line[160];
  std::snprintf(line, sizeof line, "%8s %10s %14s %18s\n", "param", "cells",
                "seconds", "sim_s_per_cycle");
  out += line;
  for (const BenchPoint& p : r.points) {
    std::snprintf(line, sizeof line, "%8zu %10zu %14.6f %18.9f\n", p.param,
                  p.cells, p.seconds, p.sim_seconds_per_cycle);
    out += line;
  }
  auto slope = [&](const char* label, const std::optional<double>& s) {
    if (s) {
      std::snprintf(line, sizeof line, "%s %.3f\n", label, *s);
      out += line;
    } else {
      out += std::string(label) + " n/a\n";
    }
  };
  slope("slope", r.slope);
  slope("sim_slope", r.sim_slope);
  return out;
}

}  // namespace regroup
