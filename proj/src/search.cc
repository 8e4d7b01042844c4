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

#include "qoptics/search.h"

#include <algorithm>
#include <atomic>
#include <ctime>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "qoptics/dsl.h"

namespace qoptics {

std::uint64_t SeedStream::Below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("SeedStream::Below needs n > 0");
  // Rejection sampling on the top of the range keeps every residue equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

int SeedStream::Between(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("SeedStream::Between needs lo <= hi");
  const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  return static_cast<int>(static_cast<std::int64_t>(lo) + static_cast<std::int64_t>(Below(span)));
}

double SeedStream::Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Toolbox Toolbox::ForSrv() {
  return {{ElementKind::kReflection, ElementKind::kBeamSplitter, ElementKind::kOamHologram,
           ElementKind::kOamHologramSuperposition, ElementKind::kDovePrism,
           ElementKind::kParitySorter},
          {}};
}

Toolbox Toolbox::ForCycles() {
  return {{ElementKind::kReflection, ElementKind::kBeamSplitter,
           ElementKind::kPolarizingBeamSplitter, ElementKind::kHalfWavePlate,
           ElementKind::kOamHologram, ElementKind::kDovePrism},
          {}};
}

void SamplingConstraints::Validate() const {
  if (paths.empty()) throw std::invalid_argument("sampling needs at least one path");
  auto sorted = paths;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("sampling paths must be distinct");
  }
  if (min_elements < 0 || min_elements > max_elements) {
    throw std::invalid_argument("element count range is empty");
  }
  if (max_hologram_shift < 1) throw std::invalid_argument("hologram shift bound must be >= 1");
  if (dove_prism_orders.empty()) throw std::invalid_argument("no dove prism orders");
  for (int n : dove_prism_orders) {
    if (n <= 0) throw std::invalid_argument("dove prism orders must be positive");
  }
}

ExperimentConfig RandomConfig(const Toolbox& toolbox, SeedStream& rng,
                              const SamplingConstraints& constraints) {
  constraints.Validate();
  if (toolbox.option_count() == 0) throw std::invalid_argument("toolbox is empty");
  const bool needs_two = std::any_of(toolbox.primitives.begin(), toolbox.primitives.end(),
                                     [](ElementKind k) { return PathArity(k) == 2; });
  if (needs_two && constraints.paths.size() < 2) {
    throw std::invalid_argument("two-path elements need at least two paths");
  }
  const auto& paths = constraints.paths;
  ExperimentConfig config;
  const int count = rng.Between(constraints.min_elements, constraints.max_elements);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t pick = rng.Below(toolbox.option_count());
    if (pick >= toolbox.primitives.size()) {
      config.elements.push_back(
          Element::FromComposite(toolbox.learned[pick - toolbox.primitives.size()].composite));
      continue;
    }
    const ElementKind kind = toolbox.primitives[pick];
    std::vector<PathId> chosen;
    const std::uint64_t p = rng.Below(paths.size());
    chosen.push_back(paths[p]);
    if (PathArity(kind) == 2) {
      std::uint64_t q = rng.Below(paths.size() - 1);
      if (q >= p) ++q;
      chosen.push_back(paths[q]);
    }
    std::optional<int> param;
    if (kind == ElementKind::kOamHologram || kind == ElementKind::kOamHologramSuperposition) {
      int shift = rng.Between(-constraints.max_hologram_shift, constraints.max_hologram_shift - 1);
      if (shift >= 0) ++shift;
      param = shift;
    } else if (kind == ElementKind::kDovePrism) {
      param = constraints.dove_prism_orders[rng.Below(constraints.dove_prism_orders.size())];
    }
    config.elements.push_back(Element::Make(kind, std::move(chosen), param));
  }
  return config;
}

std::vector<Trigger> EnumerateTriggers(const QuantumState& coincidence, PathId trigger_path) {
  std::set<std::pair<int, Polarization>> seen;
  for (const auto& [term, amp] : coincidence.terms()) {
    for (const ModeLabel& m : term.modes()) {
      if (m.path == trigger_path) seen.insert({m.oam, m.pol});
    }
  }
  const std::vector<std::pair<int, Polarization>> values(seen.begin(), seen.end());
  auto component = [](const std::pair<int, Polarization>& v) {
    return TriggerComponent{v.first, 1.0, v.second};
  };
  std::vector<Trigger> out;
  for (const auto& v : values) out.push_back({component(v)});
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      out.push_back({component(values[i]), component(values[j])});
    }
  }
  for (std::size_t i = 0; i + 2 < values.size(); ++i) {
    out.push_back({component(values[i]), component(values[i + 1]), component(values[i + 2])});
  }
  return out;
}

namespace {

std::string UtcNow() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<Finding> CheckHerald(const QuantumState& heralded, const SrvCriteria& criteria,
                                   const Trigger& trigger) {
  if (heralded.is_zero()) return std::nullopt;
  const PartyPaths parties = HeraldedParties(criteria.source);
  SchmidtRankVector srv;
  try {
    srv = ComputeSchmidtRankVector(ToTensor(heralded, parties));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  if (criteria.require_nontrivial && !IsNontrivial(srv)) return std::nullopt;
  if (criteria.require_max_entangled && !IsMaxEntangled(heralded, parties)) return std::nullopt;
  if (criteria.target && srv.sorted != *criteria.target) return std::nullopt;
  Finding f;
  f.trigger = trigger;
  f.state = heralded;
  f.srv = srv;
  return f;
}

std::optional<QuantumState> TryCoincidence(const ExperimentConfig& config,
                                           const SrvCriteria& criteria) {
  try {
    QuantumState s = CoincidenceState(criteria.source, config);
    if (s.is_zero()) return std::nullopt;
    return s;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<Finding> EvaluateSrvCandidate(const ExperimentConfig& config,
                                            const SrvCriteria& criteria) {
  const auto coincidence = TryCoincidence(config, criteria);
  if (!coincidence) return std::nullopt;
  const PathId trigger_path = criteria.source.pair1.first;
  for (const Trigger& t : EnumerateTriggers(*coincidence, trigger_path)) {
    auto f = CheckHerald(ProjectTrigger(*coincidence, trigger_path, t), criteria, t);
    if (f) {
      f->config = config;
      f->simplified = config;
      return f;
    }
  }
  return std::nullopt;
}

std::optional<Finding> EvaluateSrvCandidate(const ExperimentConfig& config,
                                            const SrvCriteria& criteria,
                                            const Trigger& trigger) {
  const auto coincidence = TryCoincidence(config, criteria);
  if (!coincidence) return std::nullopt;
  auto f = CheckHerald(ProjectTrigger(*coincidence, criteria.source.pair1.first, trigger),
                       criteria, trigger);
  if (f) {
    f->config = config;
    f->simplified = config;
  }
  return f;
}

std::optional<Finding> EvaluateCycleCandidate(const ExperimentConfig& config,
                                              const CycleCriteria& criteria) {
  CycleResult c;
  try {
    c = LargestCycle(config, criteria.basis);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (static_cast<int>(c.length()) < criteria.min_length) return std::nullopt;
  Finding f;
  f.config = config;
  f.simplified = config;
  f.cycle = std::move(c);
  return f;
}

bool ReverifyFinding(const Finding& finding, const Criteria& criteria) {
  for (const ExperimentConfig* cfg : {&finding.config, &finding.simplified}) {
    if (criteria.mode == SearchMode::kSrv) {
      if (!finding.trigger || !finding.srv) return false;
      const auto again = EvaluateSrvCandidate(*cfg, criteria.srv, *finding.trigger);
      if (!again || again->srv != finding.srv || !StateEquiv(again->state, finding.state, 1e-7)) {
        return false;
      }
    } else {
      if (!finding.cycle) return false;
      const auto again = EvaluateCycleCandidate(*cfg, criteria.cycle);
      if (!again || again->cycle->cycle != finding.cycle->cycle) return false;
    }
  }
  return true;
}

bool AdmitForLearning(const Finding& finding, const LearningPolicy& policy) {
  if (!finding.cycle) return false;
  return static_cast<int>(finding.cycle->length()) >= policy.min_cycle_length ||
         CoupledDegreesOfFreedom(*finding.cycle) >= policy.min_coupled_dof;
}

Toolbox Learn(const Toolbox& toolbox, const Finding& finding, const std::string& name) {
  Toolbox out = toolbox;
  auto composite = std::make_shared<Composite>();
  composite->name = name;
  composite->elements = finding.simplified.Expanded().elements;
  if (composite->elements.empty()) return out;
  for (const LearnedComposite& l : out.learned) {
    if (l.composite->Expand() == composite->elements) return out;
  }
  LearnedComposite entry;
  entry.composite = std::move(composite);
  entry.learned_at = finding.iteration;
  if (finding.cycle) {
    entry.cycle_length = static_cast<int>(finding.cycle->length());
    entry.coupled_dof = CoupledDegreesOfFreedom(*finding.cycle);
  }
  out.learned.push_back(std::move(entry));
  return out;
}

Toolbox Forget(const Toolbox& toolbox, SeedStream& rng, double p_forget) {
  if (!(p_forget >= 0.0 && p_forget <= 1.0)) {
    throw std::invalid_argument("p_forget must lie in [0, 1]");
  }
  Toolbox out = toolbox;
  out.learned.clear();
  for (const LearnedComposite& l : toolbox.learned) {
    if (rng.Unit() >= p_forget) out.learned.push_back(l);
  }
  return out;
}

BehaviorCheck SameHeraldedState(const SpdcSpec& source, const Trigger& trigger,
                                const QuantumState& expected) {
  return [source, trigger, expected](const ExperimentConfig& cfg) {
    try {
      return StateEquiv(HeraldedState(source, cfg, trigger), expected, 1e-7);
    } catch (const std::exception&) {
      return false;
    }
  };
}

BehaviorCheck SameLargestCycle(const BasisSpec& basis, const std::vector<ModeLabel>& expected) {
  return [basis, expected](const ExperimentConfig& cfg) {
    try {
      // Cheap rejection: every member must still map onto its successor.
      for (std::size_t i = 0; i < expected.size(); ++i) {
        const auto img =
            SingleModeImage(TransformBasis(cfg, expected[i]), kDefaultCycleTolerance);
        if (!img || img->first != expected[(i + 1) % expected.size()]) return false;
      }
      return LargestCycle(cfg, basis).cycle == expected;
    } catch (const std::exception&) {
      return false;
    }
  };
}

FindingsStore::FindingsStore(const std::filesystem::path& file) {
  out_.emplace(file, std::ios::app);
  if (!*out_) throw std::runtime_error("cannot open findings file " + file.string());
}

void FindingsStore::Append(const Finding& finding) {
  std::lock_guard lock(mu_);
  findings_.push_back(finding);
  if (out_) {
    *out_ << FindingToJson(finding) << '\n';
    out_->flush();
  }
}

std::vector<Finding> FindingsStore::findings() const {
  std::lock_guard lock(mu_);
  return findings_;
}

std::string FindingToJson(const Finding& f) {
  nlohmann::json j;
  j["seed"] = f.seed;
  j["worker"] = f.worker;
  j["iteration"] = f.iteration;
  j["config_dsl"] = PrintSetupInline(f.config);
  j["simplified_dsl"] = PrintSetupInline(f.simplified);
  j["trigger"] = f.trigger ? nlohmann::json(TriggerToString(*f.trigger)) : nlohmann::json();
  j["state"] = f.state.is_zero() ? nlohmann::json() : nlohmann::json(SerializeState(f.state));
  if (f.srv) {
    j["srv"] = f.srv->per_party;
    j["srv_sorted"] = f.srv->sorted;
  }
  if (f.cycle) {
    j["cycle"] = f.cycle->ToString();
    j["cycle_length"] = f.cycle->length();
    j["coupled_dof"] = CoupledDegreesOfFreedom(*f.cycle);
  }
  j["timestamps"] = {{"found_at", f.found_at}};
  return j.dump();
}

namespace {

struct SharedState {
  std::mutex mu;
  std::shared_ptr<const Toolbox> toolbox;
  SeedStream forget_rng{0};
  int learned_count = 0;
  std::vector<Finding> findings;
  std::atomic<std::uint64_t> iterations{0};
};

std::optional<Finding> Evaluate(const ExperimentConfig& cfg, const Criteria& criteria) {
  return criteria.mode == SearchMode::kSrv ? EvaluateSrvCandidate(cfg, criteria.srv)
                                           : EvaluateCycleCandidate(cfg, criteria.cycle);
}

BehaviorCheck CheckFor(const Finding& f, const Criteria& criteria) {
  if (criteria.mode == SearchMode::kSrv) {
    return SameHeraldedState(criteria.srv.source, *f.trigger, f.state);
  }
  return SameLargestCycle(criteria.cycle.basis, f.cycle->cycle);
}

void RunWorker(int w, const SearchOptions& opt, SharedState& shared, FindingsStore* store,
               std::chrono::steady_clock::time_point deadline) {
  SeedStream rng(opt.seed + static_cast<std::uint64_t>(w));
  for (std::uint64_t it = 0; it < opt.iterations; ++it) {
    if (opt.time_budget && std::chrono::steady_clock::now() >= deadline) break;
    std::shared_ptr<const Toolbox> toolbox;
    {
      std::lock_guard lock(shared.mu);
      toolbox = shared.toolbox;
    }
    const ExperimentConfig cfg = RandomConfig(*toolbox, rng, opt.constraints);
    shared.iterations.fetch_add(1);
    auto found = Evaluate(cfg, opt.criteria);
    if (!found) continue;
    Finding f = std::move(*found);
    f.seed = opt.seed;
    f.worker = w;
    f.iteration = it;
    if (opt.simplify) {
      try {
        f.simplified = Simplify(cfg, CheckFor(f, opt.criteria));
      } catch (const std::invalid_argument&) {
        f.simplified = cfg;
      }
    }
    f.found_at = UtcNow();
    if (store) store->Append(f);
    std::lock_guard lock(shared.mu);
    shared.findings.push_back(f);
    if (opt.learning && AdmitForLearning(f, opt.policy)) {
      Toolbox next = Forget(*shared.toolbox, shared.forget_rng, opt.p_forget);
      ++shared.learned_count;
      next = Learn(next, f, "learned" + std::to_string(shared.learned_count));
      shared.toolbox = std::make_shared<const Toolbox>(std::move(next));
    }
  }
}

}  // namespace

SearchResult SearchLoop(const SearchOptions& options, const Toolbox& initial,
                        FindingsStore* store) {
  if (options.workers < 1) throw std::invalid_argument("need at least one worker");
  options.constraints.Validate();
  SharedState shared;
  shared.toolbox = std::make_shared<const Toolbox>(initial);
  // Forgetting draws from its own stream so the sampling prefix does not
  // depend on whether learning is on.
  shared.forget_rng = SeedStream(options.seed ^ 0x9e3779b97f4a7c15ULL);
  const auto deadline =
      std::chrono::steady_clock::now() +
      options.time_budget.value_or(std::chrono::milliseconds::zero());
  if (options.workers == 1) {
    RunWorker(0, options, shared, store, deadline);
  } else {
    std::vector<std::jthread> threads;
    for (int w = 0; w < options.workers; ++w) {
      threads.emplace_back(
          [&, w] { RunWorker(w, options, shared, store, deadline); });
    }
  }
  SearchResult result;
  result.findings = std::move(shared.findings);
  result.final_toolbox = *shared.toolbox;
  result.iterations_run = shared.iterations.load();
  return result;
}

}  // namespace qoptics
