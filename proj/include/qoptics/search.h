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

#ifndef QOPTICS_SEARCH_H_
#define QOPTICS_SEARCH_H_

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qoptics/cycle.h"
#include "qoptics/experiment.h"
#include "qoptics/measurement.h"
#include "qoptics/spdc.h"
#include "qoptics/srv.h"

namespace qoptics {

// mt19937_64 with its own bounded draws, so a seed gives the same stream on
// every standard library.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  // Uniform in [0, n); n > 0.
  std::uint64_t Below(std::uint64_t n);
  // Uniform in [lo, hi].
  int Between(int lo, int hi);
  // Uniform in [0, 1).
  double Unit();

 private:
  std::mt19937_64 engine_;
};

struct LearnedComposite {
  std::shared_ptr<const Composite> composite;
  std::uint64_t learned_at = 0;  // iteration of the finding
  int cycle_length = 0;
  int coupled_dof = 0;
};

struct Toolbox {
  std::vector<ElementKind> primitives;
  std::vector<LearnedComposite> learned;

  // Primitives of the entanglement search: mirrors, beam splitters, dove
  // prisms, holograms and parity sorters.
  static Toolbox ForSrv();
  // Adds polarizing beam splitters and half-wave plates.
  static Toolbox ForCycles();

  std::size_t option_count() const { return primitives.size() + learned.size(); }
};

struct SamplingConstraints {
  std::vector<PathId> paths = {PathId('a'), PathId('b'), PathId('c'),
                               PathId('d'), PathId('e'), PathId('f')};
  int min_elements = 1;
  int max_elements = 15;
  int max_hologram_shift = 9;  // shifts in [-9, 9] without 0
  std::vector<int> dove_prism_orders = {1, 2};

  // Throws std::invalid_argument on empty ranges or a two-path toolbox with
  // fewer than two paths.
  void Validate() const;
};

// Element count uniform in [min, max]; each element's kind uniform over
// primitives and learned composites; paths and parameters uniform.
ExperimentConfig RandomConfig(const Toolbox& toolbox, SeedStream& rng,
                              const SamplingConstraints& constraints = {});

enum class SearchMode { kSrv, kCycle };

struct SrvCriteria {
  SpdcSpec source;
  bool require_nontrivial = true;
  bool require_max_entangled = true;
  std::optional<std::array<int, 3>> target;  // sorted descending
};

struct CycleCriteria {
  BasisSpec basis;
  int min_length = 3;
};

struct Criteria {
  SearchMode mode = SearchMode::kSrv;
  SrvCriteria srv;
  CycleCriteria cycle;
};

struct Finding {
  std::uint64_t seed = 0;
  int worker = 0;
  std::uint64_t iteration = 0;
  ExperimentConfig config;
  ExperimentConfig simplified;
  std::optional<Trigger> trigger;
  QuantumState state;
  std::optional<SchmidtRankVector> srv;
  std::optional<CycleResult> cycle;
  std::string found_at;  // UTC, ISO 8601
};

// Trigger candidates over the OAM values seen in the trigger path of the
// coincidence state: all singles, all unordered pairs, then consecutive
// triples, unit coefficients, H polarization.
std::vector<Trigger> EnumerateTriggers(const QuantumState& coincidence, PathId trigger_path);

// First trigger whose heralded state passes the criteria.
std::optional<Finding> EvaluateSrvCandidate(const ExperimentConfig& config,
                                            const SrvCriteria& criteria);
// Heralded state under a fixed trigger, checked against the criteria.
std::optional<Finding> EvaluateSrvCandidate(const ExperimentConfig& config,
                                            const SrvCriteria& criteria,
                                            const Trigger& trigger);
std::optional<Finding> EvaluateCycleCandidate(const ExperimentConfig& config,
                                              const CycleCriteria& criteria);

// Recomputes the finding from its simplified and raw configs.
bool ReverifyFinding(const Finding& finding, const Criteria& criteria);

struct LearningPolicy {
  int min_cycle_length = 3;
  int min_coupled_dof = 2;
};

// Cycle findings only; entanglement findings are never admitted.
bool AdmitForLearning(const Finding& finding, const LearningPolicy& policy);

// Adds the finding's simplified config as composite `name`.
Toolbox Learn(const Toolbox& toolbox, const Finding& finding, const std::string& name);

// Evicts each learned composite independently with probability p_forget.
Toolbox Forget(const Toolbox& toolbox, SeedStream& rng, double p_forget);

// Behavior predicates for the simplifier.
using BehaviorCheck = std::function<bool(const ExperimentConfig&)>;
BehaviorCheck SameHeraldedState(const SpdcSpec& source, const Trigger& trigger,
                                const QuantumState& expected);
BehaviorCheck SameLargestCycle(const BasisSpec& basis, const std::vector<ModeLabel>& expected);

// Shrinks the config while `check` holds: removal of element subsets of size
// 1..4, replacement of an element by a mirror on one of its paths, and
// merging of two paths; repeated until nothing changes. Throws
// std::invalid_argument if `check` rejects the input.
ExperimentConfig Simplify(const ExperimentConfig& config, const BehaviorCheck& check);

// Append-only JSON-lines store; one writer at a time.
class FindingsStore {
 public:
  FindingsStore() = default;
  explicit FindingsStore(const std::filesystem::path& file);

  void Append(const Finding& finding);
  std::vector<Finding> findings() const;

 private:
  mutable std::mutex mu_;
  std::vector<Finding> findings_;
  std::optional<std::ofstream> out_;
};

std::string FindingToJson(const Finding& finding);

struct SearchOptions {
  Criteria criteria;
  SamplingConstraints constraints;
  std::uint64_t seed = 0;
  int workers = 1;
  std::uint64_t iterations = 1000;  // per worker
  std::optional<std::chrono::milliseconds> time_budget;
  bool learning = true;
  double p_forget = 0.1;
  LearningPolicy policy;
  bool simplify = true;
};

struct SearchResult {
  std::vector<Finding> findings;
  Toolbox final_toolbox;
  std::uint64_t iterations_run = 0;  // summed over workers
};

// Worker w samples from SeedStream(seed + w). Learning publishes a new
// toolbox that workers pick up at their next iteration.
SearchResult SearchLoop(const SearchOptions& options, const Toolbox& initial,
                        FindingsStore* store = nullptr);

}  // namespace qoptics

#endif  // QOPTICS_SEARCH_H_
