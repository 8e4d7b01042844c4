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

#ifndef QOPTICS_MEASUREMENT_H_
#define QOPTICS_MEASUREMENT_H_

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qoptics/quantum_state.h"

namespace qoptics {

// Keeps the terms with exactly one photon in every listed path and no photon
// anywhere else. Bunched terms are dropped. The result may be zero.
QuantumState PostSelectCoincidence(const QuantumState& state, std::span<const PathId> paths);

// One component of a (unnormalized) trigger superposition.
struct TriggerComponent {
  int oam = 0;
  Amplitude amp = 1.0;
  Polarization pol = Polarization::H;

  bool operator==(const TriggerComponent&) const = default;
};

using Trigger = std::vector<TriggerComponent>;

// Trigger with unit coefficient on each OAM value, H polarization.
Trigger MakeTrigger(std::initializer_list<int> oams);

// Formats as `|0> + |1>`; non-unit coefficients are written as `(re+imi)|l>`.
std::string TriggerToString(const Trigger& trigger);

// Contracts the photon in `path` against the trigger bra and returns the
// residual unnormalized state on the other photons. Every term must hold
// exactly one photon in `path`; otherwise std::invalid_argument is thrown.
QuantumState ProjectTrigger(const QuantumState& state, PathId path, const Trigger& trigger);

}  // namespace qoptics

#endif  // QOPTICS_MEASUREMENT_H_
