// Copyright 2026 The qoptics Authors
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

// qoptics: command-line front end.
//
//   qoptics eval ghz.setup --trigger "|0> + |1>"
//   qoptics cycle cyc4.setup --oam-min -10 --oam-max 10 --paths a --pols H
//   qoptics search --mode cycle --seed 7 --minutes 5 --out findings.jsonl
//   qoptics reproduce
//
// Setup files hold the element list, optionally preceded by `key: value`
// header lines (mode, dc, trigger). Command-line flags win over the header.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qoptics/cycle.h"
#include "qoptics/dsl.h"
#include "qoptics/golden.h"
#include "qoptics/manifest.h"
#include "qoptics/search.h"
#include "qoptics/spdc.h"
#include "qoptics/srv.h"

namespace qoptics {
namespace {

struct SetupArgs {
  std::string file;
  std::optional<int> dc;
  std::optional<std::string> trigger;
};

struct BasisArgs {
  int oam_min = -10;
  int oam_max = 10;
  std::string paths = "a";
  std::string pols = "HV";

  BasisSpec Build() const {
    BasisSpec b;
    b.oam_min = oam_min;
    b.oam_max = oam_max;
    b.paths.clear();
    for (char c : paths) b.paths.push_back(PathId(c));
    b.pols.clear();
    for (char c : pols) b.pols.push_back(ParsePolarization(c));
    b.Validate();
    return b;
  }
};

std::string ReadInput(const std::string& file) {
  if (file == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedSetup {
  SetupDocument doc;
  SpdcSpec spec;
  std::optional<Trigger> trigger;
};

LoadedSetup Load(const SetupArgs& args) {
  LoadedSetup s;
  s.doc = ParseSetupDocument(ReadInput(args.file));
  if (args.dc) {
    s.spec.dc_order = *args.dc;
  } else if (auto dc = s.doc.Get("dc")) {
    s.spec.dc_order = std::stoi(*dc);
  }
  if (args.trigger) {
    s.trigger = ParseTrigger(*args.trigger);
  } else if (auto t = s.doc.Get("trigger")) {
    s.trigger = ParseTrigger(*t);
  }
  return s;
}

void AddSetupArgs(CLI::App* cmd, SetupArgs& args) {
  cmd->add_option("setup", args.file, "setup file, - for stdin")->required();
  cmd->add_option("--dc", args.dc, "down-conversion order (default 1)");
  cmd->add_option("--trigger", args.trigger, "trigger state on path a, e.g. \"|0> + |1>\"");
}

void AddBasisArgs(CLI::App* cmd, BasisArgs& args) {
  cmd->add_option("--oam-min", args.oam_min, "lowest OAM value");
  cmd->add_option("--oam-max", args.oam_max, "highest OAM value");
  cmd->add_option("--paths", args.paths, "path labels, e.g. ab");
  cmd->add_option("--pols", args.pols, "polarizations, H, V or HV");
}

std::string OptInt(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }

void PrintAnalysis(const QuantumState& heralded, const SpdcSpec& spec) {
  if (heralded.is_zero()) {
    std::cout << "heralded state vanishes\n";
    return;
  }
  const PartyPaths parties = HeraldedParties(spec);
  const SchmidtRankVector srv = ComputeSchmidtRankVector(ToTensor(heralded, parties));
  std::cout << "srv: " << srv.ToString() << (IsNontrivial(srv) ? "" : " (trivial)") << "\n"
            << "max_entangled: " << (IsMaxEntangled(heralded, parties) ? "yes" : "no") << "\n"
            << "ghz_dimension: " << OptInt(GhzDimension(heralded, parties)) << "\n"
            << "state:\n"
            << SerializeState(heralded.Normalized());
}

int RunEval(const SetupArgs& args, bool full) {
  const LoadedSetup s = Load(args);
  QuantumState out;
  if (full) {
    out = ApplySetup(BuildDoubleSpdc(s.spec), s.doc.config);
  } else if (s.trigger) {
    out = HeraldedState(s.spec, s.doc.config, *s.trigger);
  } else {
    out = CoincidenceState(s.spec, s.doc.config);
  }
  std::cout << SerializeState(out.is_zero() ? out : out.Normalized());
  return 0;
}

int RunAnalyze(const SetupArgs& args) {
  const LoadedSetup s = Load(args);
  if (s.trigger) {
    PrintAnalysis(HeraldedState(s.spec, s.doc.config, *s.trigger), s.spec);
    return 0;
  }
  // No trigger given: try every candidate the coincidence state offers.
  const QuantumState coinc = CoincidenceState(s.spec, s.doc.config);
  for (const Trigger& t : EnumerateTriggers(coinc, s.spec.pair1.first)) {
    std::cout << "== trigger " << TriggerToString(t) << "\n";
    PrintAnalysis(ProjectTrigger(coinc, s.spec.pair1.first, t), s.spec);
  }
  return 0;
}

int RunCycle(const SetupArgs& args, const BasisArgs& basis_args, bool all) {
  const LoadedSetup s = Load(args);
  const BasisSpec basis = basis_args.Build();
  if (all) {
    for (const CycleResult& c : AllCycles(s.doc.config, basis)) {
      std::cout << c.length() << "  " << c.ToString() << "\n";
    }
    return 0;
  }
  const CycleResult c = LargestCycle(s.doc.config, basis);
  std::cout << "length: " << c.length() << "\n";
  if (c.length() > 0) {
    std::cout << "coupled_dof: " << CoupledDegreesOfFreedom(c) << "\n"
              << "cycle: " << c.ToString() << "\n";
  }
  return 0;
}

int RunDcCheck(const SetupArgs& args, int dc_from, int dc_to) {
  const LoadedSetup s = Load(args);
  if (!s.trigger) throw std::runtime_error("dc-check needs a trigger");
  const DcStabilityReport r = VerifyDcStability(s.doc.config, *s.trigger, dc_from, dc_to, s.spec);
  std::printf("%-4s %-12s %-4s %-7s %-9s %s\n", "dc", "srv", "ghz", "maxent", "distance",
              "window");
  for (const DcCheckEntry& e : r.entries) {
    std::printf("%-4d %-12s %-4s %-7s %-9.3g %s\n", e.dc_order,
                e.srv ? e.srv->ToString().c_str() : "-", OptInt(e.ghz_dimension).c_str(),
                e.max_entangled ? "yes" : "no", e.state_distance, e.window_kept ? "kept" : "changed");
  }
  if (r.stable()) {
    std::cout << "stable\n";
    return 0;
  }
  std::cout << "first change at dc " << *r.first_change << "\n";
  return 1;
}

int RunSimplify(const SetupArgs& args, const BasisArgs& basis_args, std::string mode) {
  const LoadedSetup s = Load(args);
  if (mode.empty()) mode = s.doc.Get("mode").value_or("srv");
  BehaviorCheck check;
  if (mode == "cycle") {
    const BasisSpec basis = basis_args.Build();
    const CycleResult c = LargestCycle(s.doc.config, basis);
    check = SameLargestCycle(basis, c.cycle);
  } else {
    if (!s.trigger) throw std::runtime_error("simplify in srv mode needs a trigger");
    check = SameHeraldedState(s.spec, *s.trigger,
                              HeraldedState(s.spec, s.doc.config, *s.trigger));
  }
  const ExperimentConfig out = Simplify(s.doc.config, check);
  std::cerr << s.doc.config.size() << " -> " << out.size() << " elements\n";
  std::cout << PrintSetup(out);
  return 0;
}

struct SearchArgs {
  std::string mode = "srv";
  std::uint64_t seed = 0;
  int workers = 1;
  std::optional<std::uint64_t> iterations;
  std::optional<double> minutes;
  std::string learn = "on";
  double p_forget = 0.1;
  int max_elements = 15;
  int dc = 1;
  int min_length = 3;
  std::string paths = "abcdef";
  std::optional<std::string> out;
  BasisArgs basis;
};

int RunSearch(const SearchArgs& a) {
  SearchOptions opt;
  opt.criteria.mode = a.mode == "cycle" ? SearchMode::kCycle : SearchMode::kSrv;
  opt.criteria.srv.source.dc_order = a.dc;
  opt.criteria.cycle.min_length = a.min_length;
  if (opt.criteria.mode == SearchMode::kCycle) opt.criteria.cycle.basis = a.basis.Build();
  opt.constraints.paths.clear();
  for (char c : a.paths) opt.constraints.paths.push_back(PathId(c));
  opt.constraints.max_elements = a.max_elements;
  opt.seed = a.seed;
  opt.workers = a.workers;
  opt.learning = a.learn == "on";
  opt.p_forget = a.p_forget;
  if (a.minutes) {
    opt.time_budget = std::chrono::milliseconds(static_cast<long long>(*a.minutes * 60000.0));
    opt.iterations = a.iterations.value_or(std::numeric_limits<std::uint64_t>::max());
  } else {
    opt.iterations = a.iterations.value_or(1000);
  }
  const Toolbox toolbox =
      opt.criteria.mode == SearchMode::kCycle ? Toolbox::ForCycles() : Toolbox::ForSrv();
  std::optional<FindingsStore> store;
  if (a.out) store.emplace(*a.out);
  const SearchResult r = SearchLoop(opt, toolbox, store ? &*store : nullptr);
  for (const Finding& f : r.findings) {
    std::cout << "[w" << f.worker << " it" << f.iteration << "] ";
    if (f.srv) std::cout << "srv " << f.srv->ToString() << " trigger " << TriggerToString(*f.trigger);
    if (f.cycle) std::cout << "cycle " << f.cycle->length() << ": " << f.cycle->ToString();
    std::cout << "\n    " << PrintSetupInline(f.simplified) << "\n";
  }
  std::cout << r.findings.size() << " findings in " << r.iterations_run << " iterations, "
            << r.final_toolbox.learned.size() << " learned composites\n";
  return 0;
}

int RunReproduce(const std::string& manifest_file) {
  const GoldenManifest g = LoadGoldenManifest(manifest_file);
  int failures = 0;
  std::printf("%-22s %-12s %-12s %-10s %s\n", "case", "expected", "computed", "srv", "state");
  for (const GoldenSrvCase& c : g.srv_cases) {
    const SrvCaseReport r = RunSrvCase(c);
    const bool ok = r.srv_ok() && r.state_match;
    failures += !ok;
    std::printf("%-22s %-12s %-12s %-10s %s\n", c.id.c_str(),
                SchmidtRankVector::FromRanks(c.expected_srv).ToString().c_str(),
                r.computed_srv ? r.computed_srv->ToString().c_str() : "-",
                std::string(SrvMatchName(r.srv_match)).c_str(),
                r.state_match ? "match" : ("differs: " + r.diff.Summary()).c_str());
  }
  std::printf("\n%-22s %-12s %-12s %s\n", "case", "expected", "computed", "sequence");
  for (const GoldenCycleCase& c : g.cycle_cases) {
    const CycleCaseReport r = RunCycleCase(c);
    failures += !r.ok();
    std::printf("%-22s %-12d %-12zu %s\n", c.id.c_str(), c.expected_length, r.computed.length(),
                r.sequence_match ? "match" : "differs");
  }
  const std::size_t total = g.srv_cases.size() + g.cycle_cases.size();
  std::printf("\n%zu/%zu cases pass\n", total - static_cast<std::size_t>(failures), total);
  return failures == 0 ? 0 : 1;
}

std::uint64_t DefaultSeed() {
  if (const char* env = std::getenv("QOPTICS_SEED")) return std::stoull(env);
  return 0;
}

}  // namespace
}  // namespace qoptics

int main(int argc, char** argv) {
  using namespace qoptics;
  CLI::App app{"Linear-optics experiment evaluation and search"};
  app.require_subcommand(1);

  SetupArgs setup;
  BasisArgs basis;

  bool full = false;
  auto* eval = app.add_subcommand("eval", "print the state a setup produces");
  AddSetupArgs(eval, setup);
  eval->add_flag("--full", full, "skip coincidence post-selection and triggering");

  auto* analyze = app.add_subcommand("analyze", "SRV, GHZ dimension and heralded state");
  AddSetupArgs(analyze, setup);

  bool all_cycles = false;
  auto* cycle = app.add_subcommand("cycle", "largest cycle on a finite mode basis");
  AddSetupArgs(cycle, setup);
  AddBasisArgs(cycle, basis);
  cycle->add_flag("--all", all_cycles, "list every cycle");

  int dc_from = 1, dc_to = 10;
  auto* dc = app.add_subcommand("dc-check", "compare heralded analysis across DC orders");
  AddSetupArgs(dc, setup);
  dc->add_option("--dc-from", dc_from, "first DC order");
  dc->add_option("--dc-to", dc_to, "last DC order");

  std::string simplify_mode;
  auto* simplify = app.add_subcommand("simplify", "drop elements that do not change the result");
  AddSetupArgs(simplify, setup);
  AddBasisArgs(simplify, basis);
  simplify->add_option("--mode", simplify_mode, "srv or cycle (default: header, then srv)")
      ->check(CLI::IsMember({"srv", "cycle"}));

  SearchArgs search;
  search.seed = DefaultSeed();
  auto* srch = app.add_subcommand("search", "random search with learning");
  srch->add_option("--mode", search.mode, "srv or cycle")->check(CLI::IsMember({"srv", "cycle"}));
  srch->add_option("--seed", search.seed, "base seed (env QOPTICS_SEED)");
  srch->add_option("--workers", search.workers, "worker threads")->check(CLI::PositiveNumber);
  srch->add_option("--iterations", search.iterations, "iterations per worker");
  srch->add_option("--minutes", search.minutes, "wall-clock budget");
  srch->add_option("--learn", search.learn, "on or off")->check(CLI::IsMember({"on", "off"}));
  srch->add_option("--p-forget", search.p_forget, "chance to drop each learned element")
      ->check(CLI::Range(0.0, 1.0));
  srch->add_option("--max-elements", search.max_elements, "longest random setup");
  srch->add_option("--dc", search.dc, "down-conversion order for srv mode");
  srch->add_option("--min-length", search.min_length, "shortest reported cycle");
  srch->add_option("--sample-paths", search.paths, "paths elements may act on");
  srch->add_option("--out", search.out, "findings file (one JSON object per line)");
  AddBasisArgs(srch, search.basis);

  std::string manifest = std::string(QOPTICS_DATA_DIR) + "/golden_manifest.json";
  auto* reproduce = app.add_subcommand("reproduce", "run the golden tables");
  reproduce->add_option("--manifest", manifest, "manifest file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) return RunEval(setup, full);
    if (*analyze) return RunAnalyze(setup);
    if (*cycle) return RunCycle(setup, basis, all_cycles);
    if (*dc) return RunDcCheck(setup, dc_from, dc_to);
    if (*simplify) return RunSimplify(setup, basis, simplify_mode);
    if (*srch) return RunSearch(search);
    if (*reproduce) return RunReproduce(manifest);
  } catch (const DslError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
