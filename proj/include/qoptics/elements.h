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

#ifndef QOPTICS_ELEMENTS_H_
#define QOPTICS_ELEMENTS_H_

#include "qoptics/quantum_state.h"

namespace qoptics {

// Symbolic substitution rules for the optical toolbox. Every function acts
// linearly on the state; photons outside the named paths are untouched.
// Two-path elements throw std::invalid_argument when both paths coincide.
// Any produced mode beyond the state's OAM cutoff raises OamCutoffError.

// Mirror: a[l,H] -> -i a[-l,H], a[l,V] -> i a[-l,V].
QuantumState ApplyReflection(const QuantumState& state, PathId p);

// Symmetric 50/50 beam splitter. Transmission keeps l, reflection applies the
// mirror rule: a[l,P] -> (b[l,P] + Reflection(a[l,P])) / sqrt(2), and
// symmetrically for b.
QuantumState ApplyBeamSplitter(const QuantumState& state, PathId p, PathId q);

// Polarizing beam splitter: H is transmitted to the other path, V is
// reflected in place (l -> -l, factor i).
QuantumState ApplyPolarizingBeamSplitter(const QuantumState& state, PathId p, PathId q);

// Half-wave plate: a[l,H] -> a[l,V], a[l,V] -> -a[l,H].
QuantumState ApplyHalfWavePlate(const QuantumState& state, PathId p);

// Hologram shifting every OAM on `p` by `shift`.
QuantumState ApplyOamHologram(const QuantumState& state, PathId p, int shift);

// Superposition hologram: a[l,P] -> (a[l,P] + a[l+shift,P]) / sqrt(2).
// Not unitary; shift == 0 scales by sqrt(2).
QuantumState ApplyOamHologramSuperposition(const QuantumState& state, PathId p, int shift);

// Dove prism: a[l,P] -> exp(i*pi*l/n) Reflection(a[l,P]). Requires n > 0.
QuantumState ApplyDovePrism(const QuantumState& state, PathId p, int n);

// OAM parity sorter built from the interferometer
//   BS(p,q); Reflection(p); DP(p,1); Reflection(q); Reflection(q); BS(p,q).
// For a single photon entering `p`: odd l leaves in `p` as -p[l],
// even l leaves in `q` as i*q[-l]. Entering `q`: even l leaves in `p`
// as i*p[-l] and odd l stays in `q` unchanged.
QuantumState ApplyParitySorter(const QuantumState& state, PathId p, PathId q);

}  // namespace qoptics

#endif  // QOPTICS_ELEMENTS_H_
