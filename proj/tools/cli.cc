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

#include "cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "regroup/bench.h"
#include "regroup/blif.h"
#include "regroup/design.h"
#include "regroup/fixtures.h"
#include "regroup/report.h"
#include "regroup/rtl.h"
#include "regroup/sim.h"

namespace regroup {
namespace {

constexpr const char* kExitHelp =
    "Exit codes:\n"
    "  0  success (finding no registers is still success)\n"
    "  1  verify found a counterexample\n"
    "  2  unreadable or malformed input, bad arguments\n"
    "  3  internal invariant failure\n"
    "\nEnvironment:\n"
    "  REGROUP_LOG  quiet | error | warn | info | debug (default warn)\n";

enum class Level { kQuiet, kError, kWarn, kInfo, kDebug };

std::optional<Level> ParseLevel(std::string_view s) {
  if (s == "quiet") return Level::kQuiet;
  if (s == "error") return Level::kError;
  if (s == "warn") return Level::kWarn;
  if (s == "info") return Level::kInfo;
  if (s == "debug") return Level::kDebug;
  return std::nullopt;
}

class Log {
 public:
  Log(std::ostream& err, Level level) : err_(err), level_(level) {}
  void set_level(Level level) { level_ = level; }
  void operator()(Level level, const std::string& msg) const {
    if (level > level_ || level == Level::kQuiet) return;
    static constexpr const char* kTag[] = {"", "error", "warning", "info",
                                           "debug"};
    err_ << "regroup: " << kTag[static_cast<int>(level)] << ": " << msg
         << "\n";
  }

 private:
  std::ostream& err_;
  Level level_;
};

// Input failures carry exit code 2, everything else escaping a command is 3.
struct InputFailure {
  std::string message;
};

std::string ReadSource(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputFailure{"cannot read '" + path + "'"};
  buf << file.rdbuf();
  return buf.str();
}

Netlist Load(const std::string& path, std::istream& in) {
  const std::string text = ReadSource(path, in);
  const std::string shown = path == "-" ? "<stdin>" : path;
  try {
    return ParseBlif(text);
  } catch (const BlifError& e) {
    // what() leads with "line N: "; the location prefix replaces it.
    std::string what = e.what();
    const size_t colon = what.find(": ");
    if (what.rfind("line ", 0) == 0 && colon != std::string::npos) {
      what = what.substr(colon + 2);
    }
    throw InputFailure{shown + ":" + std::to_string(e.line()) + ": " + what};
  } catch (const NetlistError& e) {
    throw InputFailure{shown + ": " + e.what()};
  }
}

void WriteFile(const std::string& path, const std::string& text,
               std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputFailure{"cannot write '" + path + "'"};
  file << text;
}

struct Common {
  std::string input;
  bool no_memory = false;
  bool optimize = false;
  size_t jobs = 1;
  std::vector<std::string> patterns{"mux", "gates", "lut"};
};

void AddCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("input", c.input, "BLIF netlist, or - for stdin")
      ->required();
  cmd->add_flag("--no-memory", c.no_memory, "Skip memory recovery");
  cmd->add_flag("--optimize", c.optimize,
                "Drop unread combinational cells before analysis");
  cmd->add_option("--jobs", c.jobs, "Threads for per-group ordering")
      ->check(CLI::Range(1, 256));
  cmd->add_option("--patterns", c.patterns, "Enable forms to detect")
      ->delimiter(',')
      ->check(CLI::IsMember({"mux", "gates", "lut"}));
}

DecompileOptions ToOptions(const Common& c) {
  DecompileOptions o;
  o.memory = !c.no_memory;
  o.optimize = c.optimize;
  o.jobs = c.jobs;
  o.patterns = {false, false, false};
  for (const std::string& p : c.patterns) {
    if (p == "mux") o.patterns.mux = true;
    if (p == "gates") o.patterns.gates = true;
    if (p == "lut") o.patterns.lut = true;
  }
  return o;
}

DecompiledDesign Run(const Netlist& netlist, const DecompileOptions& o,
                     const Log& log) {
  DecompiledDesign d = Decompile(netlist, o);
  CheckDesignInvariants(d);
  log(Level::kInfo, std::to_string(d.registers.size()) + " registers, " +
                        std::to_string(d.memories.size()) + " memories, " +
                        std::to_string(d.dff_residual()) + " residual dffs");
  for (const Diagnostic& diag : d.diagnostics) {
    log(Level::kDebug, diag.kind + ": " + diag.message);
  }
  return d;
}

void DumpStimulus(const Stimulus& stim, std::ostream& out) {
  out << "cycle";
  for (const std::string& name : stim.inputs) out << " " << name;
  out << "\n";
  for (size_t c = 0; c < stim.cycles.size(); ++c) {
    out << c;
    for (uint8_t v : stim.cycles[c]) out << " " << int(v);
    out << "\n";
  }
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::istream& in,
           std::ostream& out, std::ostream& err) {
  Level level = Level::kWarn;
  if (const char* env = std::getenv("REGROUP_LOG")) {
    if (auto l = ParseLevel(env)) level = *l;
  }
  Log log(err, level);

  CLI::App app("Regroups gate-level netlists into registers and memories.",
               "regroup");
  app.footer(kExitHelp);
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file supplying option values");
  std::string log_level;
  app.add_option("--log", log_level, "Log level, overrides REGROUP_LOG")
      ->check(CLI::IsMember({"quiet", "error", "warn", "info", "debug"}));

  Common dc;
  std::string rtl_out = "-";
  std::string report_out;
  std::string format = "json";
  CLI::App* decompile =
      app.add_subcommand("decompile", "Write RTL and an aggregation report");
  AddCommon(decompile, dc);
  decompile->add_option("-o,--output", rtl_out, "Verilog output (- = stdout)");
  decompile->add_option("--report", report_out, "Report output (- = stdout)");
  decompile->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "table"}));

  Common vc;
  size_t cycles = 1000;
  uint64_t seed = 1;
  bool inject_swap = false;
  std::string vcd;
  CLI::App* verify = app.add_subcommand(
      "verify", "Decompile and co-simulate against the source netlist");
  AddCommon(verify, vc);
  verify->add_option("--cycles", cycles, "Random cycles to simulate");
  verify->add_option("--seed", seed, "Stimulus seed");
  verify->add_flag("--inject-swap", inject_swap,
                   "Test hook: corrupt the first multi-bit register");
  verify->add_option("--vcd", vcd, "Write the decompiled design's waveform");

  BenchOptions bo;
  std::string sweep = "4:64";
  CLI::App* bench =
      app.add_subcommand("bench", "Time aggregation over a fixture sweep");
  bench->add_option("--family", bo.family, "Generator family")
      ->check(CLI::IsMember({"memory", "counter"}));
  bench->add_option("--sweep", sweep, "from:to, doubling");
  bench->add_option("--width", bo.width, "Memory width");
  bench->add_option("--repeat", bo.repeat, "Best-of repetitions");
  bench->add_option("--sim-cycles", bo.sim_cycles,
                    "Cycles for the simulator timing (0 skips it)");

  std::string gen_dir = "fixtures";
  size_t random_count = 0;
  uint64_t random_seed = 1;
  CLI::App* gen = app.add_subcommand("gen", "Write fixture netlists as BLIF");
  gen->add_option("--out", gen_dir, "Output directory");
  gen->add_option("--random", random_count, "Also write this many random DAGs");
  gen->add_option("--seed", random_seed, "First random seed");

  std::vector<std::string> args(argv + 1, argv + argc);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "regroup: " << e.what() << "\n" << kExitHelp;
    return kExitInputError;
  }
  if (!log_level.empty()) log.set_level(*ParseLevel(log_level));

  try {
    if (*decompile) {
      Netlist n = Load(dc.input, in);
      DecompiledDesign d = Run(n, ToOptions(dc), log);
      std::string rtl;
      try {
        rtl = EmitRtl(d);
      } catch (const NameCollision& e) {
        throw InputFailure{e.what()};
      }
      WriteFile(rtl_out, rtl, out);
      if (!report_out.empty()) {
        WriteFile(report_out,
                  EmitReport(d, format == "json" ? ReportFormat::kJson
                                                 : ReportFormat::kTable),
                  out);
      }
      return kExitOk;
    }
    if (*verify) {
      Netlist n = Load(vc.input, in);
      DecompileOptions o = ToOptions(vc);
      o.inject_swap = inject_swap;
      DecompiledDesign d = Run(n, o, log);
      Verdict v = CheckEquivalence(n, d, cycles, seed);
      if (!vcd.empty()) {
        Stimulus stim =
            v.counterexample
                ? v.counterexample->stimulus
                : RandomStimulus(Simulator(d).input_names(), cycles, seed,
                                 EnableInputs(d));
        WriteFile(vcd, TraceToVcd(Simulate(d, stim), d.name), out);
      }
      if (v.equivalent) {
        out << "equivalent over " << cycles << " cycles (seed " << seed
            << ")\n";
        return kExitOk;
      }
      const Counterexample& cx = *v.counterexample;
      out << "counterexample at cycle " << cx.cycle << ": output " << cx.output
          << " expected " << cx.expected << " got " << cx.got << "\n";
      DumpStimulus(cx.stimulus, out);
      return kExitCounterexample;
    }
    if (*bench) {
      const size_t colon = sweep.find(':');
      try {
        if (colon == std::string::npos) {
          bo.from = bo.to = std::stoul(sweep);
        } else {
          bo.from = std::stoul(sweep.substr(0, colon));
          bo.to = std::stoul(sweep.substr(colon + 1));
        }
        out << FormatBench(RunBench(bo));
      } catch (const std::invalid_argument& e) {
        throw InputFailure{"bad sweep '" + sweep + "': " + e.what()};
      } catch (const std::out_of_range&) {
        throw InputFailure{"bad sweep '" + sweep + "'"};
      }
      return kExitOk;
    }
    if (*gen) {
      std::error_code ec;
      std::filesystem::create_directories(gen_dir, ec);
      if (ec) throw InputFailure{"cannot create '" + gen_dir + "'"};
      std::vector<Fixture> all = AllFixtures();
      for (size_t k = 0; k < random_count; ++k) {
        all.push_back(GenRandom(random_seed + k));
      }
      for (const Fixture& f : all) {
        const std::string path =
            (std::filesystem::path(gen_dir) / (f.name + ".blif")).string();
        WriteFile(path, EmitBlif(f.netlist), out);
        log(Level::kInfo, "wrote " + path);
      }
      out << "wrote " << all.size() << " fixtures to " << gen_dir << "\n";
      return kExitOk;
    }
  } catch (const InputFailure& e) {
    log(Level::kError, e.message);
    return kExitInputError;
  } catch (const std::exception& e) {
    log(Level::kError, std::string("internal: ") + e.what());
    return kExitInternalError;
  }
  return kExitInputError;
}

}  // namespace regroup
