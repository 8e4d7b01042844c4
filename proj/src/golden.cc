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

#include "qoptics/golden.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "qoptics/spdc.h"

namespace qoptics {

std::string_view SrvMatchName(SrvMatch m) {
  switch (m) {
    case SrvMatch::kPartyOrder:
      return "party-order";
    case SrvMatch::kSorted:
      return "sorted";
    case SrvMatch::kNone:
      break;
  }
  return "none";
}

namespace {

constexpr double kPhaseTol = 1e-6;

std::size_t PhaseClass(Amplitude r) {
  static constexpr std::array<Amplitude, 4> kUnits = {
      Amplitude{1, 0}, Amplitude{-1, 0}, Amplitude{0, 1}, Amplitude{0, -1}};
  for (std::size_t k = 0; k < kUnits.size(); ++k) {
    if (std::abs(r / std::abs(r) - kUnits[k]) < kPhaseTol) return k;
  }
  return 4;
}

QuantumState MirrorParties(const QuantumState& s, const std::vector<PathId>& flip) {
  QuantumState out(s.limits());
  for (const auto& [term, amp] : s.terms()) {
    std::vector<ModeLabel> modes(term.modes().begin(), term.modes().end());
    for (ModeLabel& m : modes) {
      if (std::find(flip.begin(), flip.end(), m.path) != flip.end()) m.oam = -m.oam;
    }
    out.Add(PhotonTerm(std::move(modes)), amp);
  }
  return out;
}

bool SameSupport(const QuantumState& x, const QuantumState& y) {
  if (x.size() != y.size()) return false;
  for (const auto& [term, amp] : x.terms()) {
    if (!y.terms().contains(term)) return false;
  }
  return true;
}

}  // namespace

std::string StateDiff::Summary() const {
  std::string out = "shared " + std::to_string(shared) + ", only computed " +
                    std::to_string(only_computed) + ", only expected " +
                    std::to_string(only_expected);
  static constexpr std::array<const char*, 5> kNames = {"1", "-1", "i", "-i", "other"};
  out += "; relative phases {";
  bool first = true;
  for (std::size_t k = 0; k < phase_counts.size(); ++k) {
    if (phase_counts[k] == 0) continue;
    out += (first ? "" : ", ") + std::string(kNames[k]) + ":" + std::to_string(phase_counts[k]);
    first = false;
  }
  out += "}";
  if (modulus_mismatch > 0) out += "; modulus mismatch " + std::to_string(modulus_mismatch);
  if (!mirror_fixes.empty()) {
    out += "; support fixed by mirroring";
    for (const auto& m : mirror_fixes) out += " " + m;
  }
  if (matches_plus_i_beam_splitter) out += "; matches with +i beam-splitter phase";
  if (matches_mirrored_trigger) out += "; matches with mirrored trigger";
  return out;
}

StateDiff DiffStates(const QuantumState& computed, const QuantumState& expected,
                     const PartyPaths& parties) {
  StateDiff d;
  const QuantumState x = computed.is_zero() ? computed : computed.Normalized();
  const QuantumState y = expected.is_zero() ? expected : expected.Normalized();
  const PhotonTerm* anchor = nullptr;
  double anchor_mod = -1.0;
  for (const auto& [term, amp] : x.terms()) {
    if (y.terms().contains(term)) {
      ++d.shared;
      if (std::abs(amp) > anchor_mod) {
        anchor_mod = std::abs(amp);
        anchor = &term;
      }
    } else {
      ++d.only_computed;
    }
  }
  d.only_expected = y.size() - d.shared;
  if (anchor != nullptr) {
    const Amplitude global = y.At(*anchor) / x.At(*anchor);
    for (const auto& [term, amp] : x.terms()) {
      if (!y.terms().contains(term)) continue;
      const Amplitude r = y.At(term) / (global * amp);
      ++d.phase_counts[PhaseClass(r)];
      if (std::abs(std::abs(r) - 1.0) > kPhaseTol) ++d.modulus_mismatch;
    }
  }
  for (unsigned mask = 1; mask < 8; ++mask) {
    std::vector<PathId> flip;
    std::string label;
    for (unsigned k = 0; k < 3; ++k) {
      if (mask & (1u << k)) {
        flip.push_back(parties[k]);
        label += parties[k].label();
      }
    }
    if (SameSupport(x, MirrorParties(y, flip))) d.mirror_fixes.push_back(label);
  }
  return d;
}

SrvCaseReport RunSrvCase(const GoldenSrvCase& c) {
  SrvCaseReport r;
  r.id = c.id;
  r.dc_order = c.dc_order;
  r.expected_srv = c.expected_srv;
  SpdcSpec spec;
  spec.dc_order = c.dc_order;
  const PartyPaths parties = HeraldedParties(spec);
  r.computed_state = HeraldedState(spec, c.config, c.trigger);
  if (!r.computed_state.is_zero()) {
    r.computed_srv = ComputeSchmidtRankVector(ToTensor(r.computed_state, parties));
    if (r.computed_srv->per_party == c.expected_srv) {
      r.srv_match = SrvMatch::kPartyOrder;
    } else if (r.computed_srv->sorted == c.expected_srv) {
      r.srv_match = SrvMatch::kSorted;
    }
  }
  if (!c.expected_state.is_zero()) {
    r.published_state_srv = ComputeSchmidtRankVector(ToTensor(c.expected_state, parties));
  }
  r.state_match = StateEquiv(r.computed_state, c.expected_state, 1e-6);
  if (!r.state_match) {
    r.diff = DiffStates(r.computed_state, c.expected_state, parties);
    const QuantumState alt = HeraldedState(spec, WithPlusIBeamSplitters(c.config), c.trigger);
    r.diff.matches_plus_i_beam_splitter = StateEquiv(alt, c.expected_state, 1e-6);
    Trigger mirrored = c.trigger;
    for (TriggerComponent& t : mirrored) t.oam = -t.oam;
    r.diff.matches_mirrored_trigger =
        StateEquiv(HeraldedState(spec, c.config, mirrored), c.expected_state, 1e-6);
  }
  return r;
}

bool SequenceMatches(const std::vector<ModeLabel>& cycle, const std::vector<ModeLabel>& expected,
                     const std::vector<std::size_t>& gaps) {
  if (expected.empty()) return cycle.empty();
  const std::size_t n = cycle.size();
  auto start = std::find(cycle.begin(), cycle.end(), expected.front());
  if (start == cycle.end()) return false;
  const std::set<std::size_t> gap_set(gaps.begin(), gaps.end());
  std::size_t pos = static_cast<std::size_t>(start - cycle.begin());
  std::size_t walked = 0;
  for (std::size_t i = 1; i <= expected.size(); ++i) {
    // i == expected.size() closes the cycle back onto expected.front().
    const ModeLabel& want = expected[i % expected.size()];
    if (gap_set.contains(i)) {
      std::size_t step = 1;
      while (step <= n - walked && cycle[(pos + step) % n] != want) ++step;
      if (step > n - walked) return false;
      pos = (pos + step) % n;
      walked += step;
    } else {
      pos = (pos + 1) % n;
      ++walked;
      if (cycle[pos] != want) return false;
    }
  }
  return walked == n;
}

CycleCaseReport RunCycleCase(const GoldenCycleCase& c) {
  CycleCaseReport r;
  r.id = c.id;
  r.expected_length = c.expected_length;
  const std::vector<CycleResult> all = AllCycles(c.config, c.basis);
  if (!all.empty()) r.computed = all.front();
  r.length_match = static_cast<int>(r.computed.length()) == c.expected_length;
  r.sequence_match =
      r.length_match && SequenceMatches(r.computed.cycle, c.expected_sequence, c.gaps);
  for (const ModeLabel& m : c.expected_sequence) {
    if (std::find(r.computed.cycle.begin(), r.computed.cycle.end(), m) == r.computed.cycle.end()) {
      r.missing.push_back(m);
    }
  }
  if (!r.length_match) {
    for (const CycleResult& cr : all) {
      if (static_cast<int>(cr.length()) == c.expected_length) {
        r.cycles_of_expected_length.push_back(cr);
      }
    }
  }
  return r;
}

ExperimentConfig WithPlusIBeamSplitters(const ExperimentConfig& config) {
  ExperimentConfig out = config;
  out.elements.clear();
  auto bs = [&out](PathId p, PathId q) {
    out.elements.push_back(Element::Reflection(q));
    out.elements.push_back(Element::Reflection(q));
    out.elements.push_back(Element::BeamSplitter(p, q));
    out.elements.push_back(Element::Reflection(p));
    out.elements.push_back(Element::Reflection(p));
  };
  for (const Element& e : config.Expanded().elements) {
    const auto paths = e.paths();
    if (e.kind() == ElementKind::kBeamSplitter) {
      bs(paths[0], paths[1]);
    } else if (e.kind() == ElementKind::kParitySorter) {
      const PathId p = paths[0], q = paths[1];
      bs(p, q);
      out.elements.push_back(Element::Reflection(p));
      out.elements.push_back(Element::DovePrism(p, 1));
      out.elements.push_back(Element::Reflection(q));
      out.elements.push_back(Element::Reflection(q));
      bs(p, q);
    } else {
      out.elements.push_back(e);
    }
  }
  return out;
}

}  // namespace qoptics
