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

#ifndef QOPTICS_CYCLE_H_
#define QOPTICS_CYCLE_H_

#include <string>
#include <vector>

#include "qoptics/experiment.h"

namespace qoptics {

// Set of single-photon input modes probed by the cycle search.
struct BasisSpec {
  std::vector<PathId> paths{PathId('a')};
  int oam_min = -10;
  int oam_max = 10;
  std::vector<Polarization> pols{Polarization::H, Polarization::V};

  void Validate() const;  // throws std::invalid_argument when empty
  std::vector<ModeLabel> Modes() const;  // ascending order
  bool Contains(const ModeLabel& m) const;
};

struct CycleResult {
  std::vector<ModeLabel> cycle;  // starts at the smallest member
  std::vector<Amplitude> phases;  // phases[k]: amplitude of cycle[k+1] in the image of cycle[k]

  std::size_t length() const { return cycle.size(); }
  // `|-1,H,a> -> |0,H,a> -> ... -> |-1,H,a>`; empty string for no cycle.
  std::string ToString() const;
  bool operator==(const CycleResult&) const = default;
};

inline constexpr double kDefaultCycleTolerance = 1e-7;

// Output state of one photon prepared in `mode`.
QuantumState TransformBasis(const ExperimentConfig& config, const ModeLabel& mode,
                            StateLimits limits = {});

// The image of `mode` as a single basis mode, when the output is one term of
// unit modulus (within tol) with off-target weight below tol of the total.
std::optional<std::pair<ModeLabel, Amplitude>> SingleModeImage(const QuantumState& image,
                                                               double tol);

// Longest cycle of the partial map basis -> basis, restricted to modes whose
// image is a single basis mode. Ties go to the cycle with the smallest
// largest |oam|, then to the smallest starting mode. A basis mode mapped to itself is a cycle of length one;
// length zero means no member of the basis has a basis image.
CycleResult LargestCycle(const ExperimentConfig& config, const BasisSpec& basis,
                         double tol = kDefaultCycleTolerance, StateLimits limits = {});

// All cycles of the partial map, each starting at its smallest member,
// sorted by descending length, ascending largest |oam|, then starting mode.
std::vector<CycleResult> AllCycles(const ExperimentConfig& config, const BasisSpec& basis,
                                   double tol = kDefaultCycleTolerance, StateLimits limits = {});

// Number of distinct degrees of freedom (path, OAM, polarization) that change
// along the cycle's steps.
int CoupledDegreesOfFreedom(const CycleResult& cycle);

}  // namespace qoptics

#endif  // QOPTICS_CYCLE_H_
