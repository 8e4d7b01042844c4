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

#include "qoptics/spdc.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qoptics {

void SpdcSpec::Validate() const {
  if (dc_order < 0) throw std::invalid_argument("DC order must be non-negative");
  auto paths = Paths();
  std::sort(paths.begin(), paths.end());
  if (std::adjacent_find(paths.begin(), paths.end()) != paths.end()) {
    throw std::invalid_argument("SPDC paths must be distinct");
  }
}

std::vector<PathId> SpdcSpec::Paths() const {
  return {pair1.first, pair1.second, pair2.first, pair2.second};
}

QuantumState BuildDoubleSpdc(const SpdcSpec& spec, StateLimits limits) {
  spec.Validate();
  QuantumState pairs(limits);
  for (int l = -spec.dc_order; l <= spec.dc_order; ++l) {
    pairs.Add(PhotonTerm{{spec.pair1.first, l, Polarization::H},
                         {spec.pair1.second, -l, Polarization::H}},
              1.0);
    pairs.Add(PhotonTerm{{spec.pair2.first, l, Polarization::H},
                         {spec.pair2.second, -l, Polarization::H}},
              1.0);
  }
  return pairs.Times(pairs);
}

PartyPaths HeraldedParties(const SpdcSpec& spec) {
  return {spec.pair1.second, spec.pair2.first, spec.pair2.second};
}

QuantumState CoincidenceState(const SpdcSpec& spec, const ExperimentConfig& config,
                              StateLimits limits) {
  const QuantumState out = ApplySetup(BuildDoubleSpdc(spec, limits), config);
  const auto paths = spec.Paths();
  return PostSelectCoincidence(out, paths);
}

QuantumState HeraldedState(const SpdcSpec& spec, const ExperimentConfig& config,
                           const Trigger& trigger, StateLimits limits) {
  return ProjectTrigger(CoincidenceState(spec, config, limits), spec.pair1.first, trigger);
}

namespace {

double PhaseFreeDistance(const QuantumState& x, const QuantumState& y) {
  if (x.is_zero() && y.is_zero()) return 0.0;
  if (x.is_zero() || y.is_zero()) return 2.0;
  const QuantumState nx = x.Normalized();
  const QuantumState ny = y.Normalized();
  Amplitude overlap{};
  for (const auto& [term, amp] : nx.terms()) overlap += std::conj(amp) * ny.At(term);
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(overlap)));
}

// Terms whose every photon sits in a mode that occurs somewhere in `reference`.
QuantumState RestrictToSupport(const QuantumState& state, const QuantumState& reference) {
  std::set<ModeLabel> seen;
  for (const auto& [term, amp] : reference.terms()) {
    for (const ModeLabel& m : term.modes()) seen.insert(m);
  }
  QuantumState out;
  for (const auto& [term, amp] : state.terms()) {
    const auto& modes = term.modes();
    if (std::all_of(modes.begin(), modes.end(), [&](const ModeLabel& m) { return seen.contains(m); })) {
      out.Add(term, amp);
    }
  }
  return out;
}

DcCheckEntry Analyze(const SpdcSpec& spec, const ExperimentConfig& config,
                     const Trigger& trigger, StateLimits limits, QuantumState* state_out) {
  DcCheckEntry entry;
  entry.dc_order = spec.dc_order;
  QuantumState heralded = HeraldedState(spec, config, trigger, limits);
  const PartyPaths parties = HeraldedParties(spec);
  if (!heralded.is_zero()) {
    entry.srv = ComputeSchmidtRankVector(ToTensor(heralded, parties));
    entry.max_entangled = IsMaxEntangled(heralded, parties);
    entry.ghz_dimension = GhzDimension(heralded, parties);
  }
  *state_out = std::move(heralded);
  return entry;
}

}  // namespace

DcStabilityReport VerifyDcStability(const ExperimentConfig& config, const Trigger& trigger,
                                    int dc_from, int dc_to, SpdcSpec base, StateLimits limits) {
  if (dc_from > dc_to) throw std::invalid_argument("dc_from must not exceed dc_to");
  DcStabilityReport report;
  QuantumState reference;
  for (int dc = dc_from; dc <= dc_to; ++dc) {
    SpdcSpec spec = base;
    spec.dc_order = dc;
    QuantumState state;
    DcCheckEntry entry = Analyze(spec, config, trigger, limits, &state);
    if (dc == dc_from) {
      reference = state;
    } else {
      entry.state_distance = PhaseFreeDistance(reference, state);
      const QuantumState window = RestrictToSupport(state, reference);
      entry.window_kept = reference.is_zero() ? window.is_zero()
                                              : StateEquiv(window, reference, 1e-9);
      const DcCheckEntry& first = report.entries.front();
      if (!report.first_change &&
          (entry.srv != first.srv || entry.ghz_dimension != first.ghz_dimension)) {
        report.first_change = dc;
      }
    }
    report.entries.push_back(entry);
  }
  return report;
}

}  // namespace qoptics
