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

#ifndef QOPTICS_SPDC_H_
#define QOPTICS_SPDC_H_

#include <optional>
#include <utility>
#include <vector>

#include "qoptics/experiment.h"
#include "qoptics/measurement.h"
#include "qoptics/srv.h"

namespace qoptics {

// Two crystals, each emitting OAM-anticorrelated pairs up to |l| = dc_order.
struct SpdcSpec {
  int dc_order = 1;
  std::pair<PathId, PathId> pair1{PathId('a'), PathId('b')};
  std::pair<PathId, PathId> pair2{PathId('c'), PathId('d')};

  // Throws std::invalid_argument unless the four paths are distinct and
  // dc_order >= 0.
  void Validate() const;
  // pair1.first, pair1.second, pair2.first, pair2.second
  std::vector<PathId> Paths() const;
};

// (sum_{l=-DC}^{DC} p1[l] p2[-l] + p3[l] p4[-l])^2 with unit pair weights and
// H polarization, expanded as a polynomial. Same-crystal double emissions
// are kept; fourfold post-selection removes them later.
QuantumState BuildDoubleSpdc(const SpdcSpec& spec, StateLimits limits = {});

// Source, setup and fourfold coincidence on the four source paths.
QuantumState CoincidenceState(const SpdcSpec& spec, const ExperimentConfig& config,
                              StateLimits limits = {});

// Full four-photon pipeline: source, setup, fourfold coincidence on the
// source paths, then trigger projection on pair1.first. Returns the
// three-photon heralded state (unnormalized, possibly zero).
QuantumState HeraldedState(const SpdcSpec& spec, const ExperimentConfig& config,
                           const Trigger& trigger, StateLimits limits = {});

// Parties of the heralded state: the three source paths after the trigger.
PartyPaths HeraldedParties(const SpdcSpec& spec);

struct DcCheckEntry {
  int dc_order = 0;
  std::optional<SchmidtRankVector> srv;  // empty when the heralded state vanishes
  std::optional<int> ghz_dimension;
  bool max_entangled = false;
  // Distance between the normalized state and the dc_from state, after the
  // best global phase; 2.0 when exactly one of them is zero.
  double state_distance = 0.0;
  // The state cut down to the single-photon modes seen at dc_from still
  // equals the dc_from state up to a global phase.
  bool window_kept = true;
};

struct DcStabilityReport {
  std::vector<DcCheckEntry> entries;
  // First DC whose SRV or GHZ flag differs from the dc_from entry.
  std::optional<int> first_change;
  bool stable() const { return !first_change.has_value(); }
};

// Rebuilds the source for each DC in [dc_from, dc_to] and compares the
// heralded analysis against dc_from.
DcStabilityReport VerifyDcStability(const ExperimentConfig& config, const Trigger& trigger,
                                    int dc_from, int dc_to, SpdcSpec base = {},
                                    StateLimits limits = {});

}  // namespace qoptics

#endif  // QOPTICS_SPDC_H_
