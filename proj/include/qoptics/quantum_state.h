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

#ifndef QOPTICS_QUANTUM_STATE_H_
#define QOPTICS_QUANTUM_STATE_H_

#include <complex>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qoptics/mode.h"

namespace qoptics {

using Amplitude = std::complex<double>;

inline constexpr int kDefaultOamCutoff = 36;
inline constexpr double kDefaultZeroTolerance = 1e-9;

// Raised when an operation would create a mode with |oam| above the cutoff.
class OamCutoffError : public std::runtime_error {
 public:
  OamCutoffError(int oam, int cutoff);
  int oam() const { return oam_; }

 private:
  int oam_;
};

// Engine-wide numerical limits carried by every state.
struct StateLimits {
  int oam_cutoff = kDefaultOamCutoff;
  double zero_tolerance = kDefaultZeroTolerance;

  bool operator==(const StateLimits&) const = default;
};

// A product of creation symbols, e.g. a[-3,H]^2 * b[1,V]. Symbols commute,
// so the modes are kept sorted; repeated modes encode bunching.
class PhotonTerm {
 public:
  PhotonTerm() = default;
  PhotonTerm(std::initializer_list<ModeLabel> modes);
  explicit PhotonTerm(std::vector<ModeLabel> modes);

  std::span<const ModeLabel> modes() const { return modes_; }
  std::size_t photon_count() const { return modes_.size(); }
  std::size_t CountInPath(PathId path) const;
  bool empty() const { return modes_.empty(); }

  PhotonTerm Times(const PhotonTerm& other) const;

  auto operator<=>(const PhotonTerm&) const = default;

 private:
  std::vector<ModeLabel> modes_;
};

// Sparse polynomial over photon terms. Values are immutable in practice: all
// optical operations return new states. Amplitudes with modulus below the
// zero tolerance are never stored.
class QuantumState {
 public:
  using TermMap = std::map<PhotonTerm, Amplitude>;

  QuantumState() = default;
  explicit QuantumState(StateLimits limits) : limits_(limits) {}

  // Single term with the given amplitude.
  static QuantumState Of(const PhotonTerm& term, Amplitude amp = 1.0,
                         StateLimits limits = {});
  // The vacuum: the empty term with amplitude one.
  static QuantumState Vacuum(StateLimits limits = {});

  const TermMap& terms() const { return terms_; }
  const StateLimits& limits() const { return limits_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Amplitude of `term`, zero if absent.
  Amplitude At(const PhotonTerm& term) const;

  // Adds `amp` to the coefficient of `term`, pruning if the sum vanishes.
  // Throws OamCutoffError if any mode violates the cutoff.
  void Add(const PhotonTerm& term, Amplitude amp);

  // Uniform photon number if all terms share one.
  std::optional<std::size_t> photon_number() const;

  QuantumState Scaled(Amplitude factor) const;
  QuantumState Plus(const QuantumState& other) const;
  QuantumState Times(const QuantumState& other) const;
  QuantumState Normalized() const;

  // Drops every coefficient below the zero tolerance.
  void Prune();

  bool operator==(const QuantumState& other) const;

 private:
  void CheckCutoff(const PhotonTerm& term) const;

  TermMap terms_;
  StateLimits limits_;
};

double StateNorm(const QuantumState& state);

// True iff both states have the same term set and, after normalization, the
// amplitudes agree up to one global unit-modulus factor within `tol`.
// Two zero states are equivalent; a zero and a nonzero state are not.
bool StateEquiv(const QuantumState& lhs, const QuantumState& rhs, double tol = 1e-9);

// Global factor c with rhs ~= c * lhs, if the states are proportional.
std::optional<Amplitude> ProportionalityFactor(const QuantumState& lhs,
                                               const QuantumState& rhs,
                                               double tol = 1e-9);

// Serialization: one term per line,
//   `amp_re amp_im : path[oam,pol] * path[oam,pol] ...`
// with amplitudes in 12 significant digits and terms in canonical order.
std::string SerializeState(const QuantumState& state);
QuantumState ParseState(std::string_view text, StateLimits limits = {});

std::string TermToString(const PhotonTerm& term);

}  // namespace qoptics

#endif  // QOPTICS_QUANTUM_STATE_H_
