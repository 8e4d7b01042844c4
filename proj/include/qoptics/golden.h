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

#ifndef QOPTICS_GOLDEN_H_
#define QOPTICS_GOLDEN_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qoptics/cycle.h"
#include "qoptics/manifest.h"
#include "qoptics/srv.h"

namespace qoptics {

enum class SrvMatch { kPartyOrder, kSorted, kNone };
std::string_view SrvMatchName(SrvMatch m);

// How a computed state differs from an expected one. Relative phases are
// taken against the best global factor, anchored on the largest shared term.
struct StateDiff {
  std::size_t shared = 0;
  std::size_t only_computed = 0;
  std::size_t only_expected = 0;
  // Shared terms whose relative factor is 1, -1, i, -i or anything else.
  std::array<std::size_t, 5> phase_counts{};
  std::size_t modulus_mismatch = 0;
  // Parties (subset of b, c, d) whose OAM sign flip makes the supports equal.
  std::vector<std::string> mirror_fixes;
  // The row matches when every beam splitter uses `+i` for the reflected
  // output instead of the element rule's `-i` (H light).
  bool matches_plus_i_beam_splitter = false;
  // The row matches when every trigger component has its OAM negated.
  bool matches_mirrored_trigger = false;

  std::string Summary() const;
};

StateDiff DiffStates(const QuantumState& computed, const QuantumState& expected,
                     const PartyPaths& parties);

struct SrvCaseReport {
  std::string id;
  int dc_order = 0;
  std::array<int, 3> expected_srv{};
  std::optional<SchmidtRankVector> computed_srv;
  SrvMatch srv_match = SrvMatch::kNone;
  // SRV of the published state itself; differs from `expected_srv` when the
  // published label and the published state disagree.
  std::optional<SchmidtRankVector> published_state_srv;
  bool state_match = false;
  QuantumState computed_state;
  StateDiff diff;  // filled only when the states differ

  bool srv_ok() const { return srv_match != SrvMatch::kNone; }
};

SrvCaseReport RunSrvCase(const GoldenSrvCase& c);

struct CycleCaseReport {
  std::string id;
  int expected_length = 0;
  CycleResult computed;
  bool length_match = false;
  bool sequence_match = false;
  // Listed states that are not members of the computed cycle.
  std::vector<ModeLabel> missing;
  // Computed cycles of the expected length, if the largest one is longer.
  std::vector<CycleResult> cycles_of_expected_length;

  bool ok() const { return length_match && sequence_match; }
};

CycleCaseReport RunCycleCase(const GoldenCycleCase& c);

// True when `expected` read cyclically is `cycle` up to rotation. Each index
// in `gaps` marks an elision before that entry, which may skip any number
// of cycle members.
bool SequenceMatches(const std::vector<ModeLabel>& cycle, const std::vector<ModeLabel>& expected,
                     const std::vector<std::size_t>& gaps);

// Rewrites every beam splitter, including those inside parity sorters, to
// use the `+i` reflection phase: BS'(p,q) = R(q)^2, BS(p,q), R(p)^2.
ExperimentConfig WithPlusIBeamSplitters(const ExperimentConfig& config);

}  // namespace qoptics

#endif  // QOPTICS_GOLDEN_H_
