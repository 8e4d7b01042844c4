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

#ifndef QOPTICS_SRV_H_
#define QOPTICS_SRV_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qoptics/quantum_state.h"

namespace qoptics {

using PartyPaths = std::array<PathId, 3>;

// Local single-photon basis value of one party.
struct LocalMode {
  int oam = 0;
  Polarization pol = Polarization::H;
  auto operator<=>(const LocalMode&) const = default;
};

// Dense coefficient tensor of a three-photon state with one photon in each
// party path. basis[k] lists the local modes observed for party k in
// ascending order; coeffs is row-major over (party0, party1, party2).
struct TripartiteTensor {
  PartyPaths parties;
  std::array<std::vector<LocalMode>, 3> basis;
  std::vector<Amplitude> coeffs;

  std::array<std::size_t, 3> dims() const {
    return {basis[0].size(), basis[1].size(), basis[2].size()};
  }
  Amplitude& at(std::size_t i, std::size_t j, std::size_t k) {
    return coeffs[(i * basis[1].size() + j) * basis[2].size() + k];
  }
  Amplitude at(std::size_t i, std::size_t j, std::size_t k) const {
    return coeffs[(i * basis[1].size() + j) * basis[2].size() + k];
  }
};

// Throws std::invalid_argument for the zero state or any term that does not
// hold exactly one photon in each party path (and nothing else).
TripartiteTensor ToTensor(const QuantumState& state, const PartyPaths& parties);

struct SchmidtRankVector {
  std::array<int, 3> per_party{};  // party order
  std::array<int, 3> sorted{};     // descending

  static SchmidtRankVector FromRanks(std::array<int, 3> ranks);
  std::string ToString() const;  // "(4,2,2)" in party order
  bool operator==(const SchmidtRankVector&) const = default;
};

inline constexpr double kDefaultRankTolerance = 1e-9;

// Rank of each one-versus-rest flattening; singular values at or below
// tol * sigma_max count as zero.
SchmidtRankVector ComputeSchmidtRankVector(const TripartiteTensor& tensor,
                                           double tol = kDefaultRankTolerance);

// No separable party: every entry at least 2.
bool IsNontrivial(const SchmidtRankVector& srv);

// All nonzero coefficients share one modulus within relative `tol`.
// The zero state is not maximally entangled.
bool IsMaxEntangled(const QuantumState& state, const PartyPaths& parties, double tol = 1e-6);

// d if the state is a sum of d equal-modulus product terms whose local modes
// are pairwise distinct for every party (GHZ form up to local unitaries).
std::optional<int> GhzDimension(const QuantumState& state, const PartyPaths& parties,
                                double tol = 1e-6);

}  // namespace qoptics

#endif  // QOPTICS_SRV_H_
