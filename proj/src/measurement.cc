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

#include "qoptics/measurement.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qoptics {

QuantumState PostSelectCoincidence(const QuantumState& state, std::span<const PathId> paths) {
  QuantumState out(state.limits());
  for (const auto& [term, amp] : state.terms()) {
    if (term.photon_count() != paths.size()) continue;
    const bool coincident = std::all_of(paths.begin(), paths.end(), [&term](PathId p) {
      return term.CountInPath(p) == 1;
    });
    if (coincident) out.Add(term, amp);
  }
  return out;
}

Trigger MakeTrigger(std::initializer_list<int> oams) {
  Trigger t;
  for (int l : oams) t.push_back({l, 1.0, Polarization::H});
  return t;
}

namespace {

std::string Shortest(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string TriggerToString(const Trigger& trigger) {
  std::string out;
  for (const TriggerComponent& c : trigger) {
    std::string coeff;
    bool negative = false;
    if (c.amp == Amplitude(1.0)) {
    } else if (c.amp == Amplitude(-1.0)) {
      negative = true;
    } else {
      coeff = "(" + Shortest(c.amp.real()) + (c.amp.imag() < 0 ? "" : "+") +
              Shortest(c.amp.imag()) + "I)";
    }
    if (out.empty()) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += coeff + "|" + std::to_string(c.oam);
    if (c.pol == Polarization::V) out += ",V";
    out += ">";
  }
  return out;
}

QuantumState ProjectTrigger(const QuantumState& state, PathId path, const Trigger& trigger) {
  QuantumState out(state.limits());
  for (const auto& [term, amp] : state.terms()) {
    if (term.CountInPath(path) != 1) {
      throw std::invalid_argument("trigger projection on path " + path.str() +
                                  " requires exactly one photon there; term " +
                                  TermToString(term) + " violates it (post-select first)");
    }
    std::vector<ModeLabel> rest;
    const ModeLabel* detected = nullptr;
    for (const ModeLabel& m : term.modes()) {
      if (m.path == path) {
        detected = &m;
      } else {
        rest.push_back(m);
      }
    }
    for (const TriggerComponent& c : trigger) {
      if (c.oam == detected->oam && c.pol == detected->pol) {
        out.Add(PhotonTerm(rest), std::conj(c.amp) * amp);
      }
    }
  }
  return out;
}

}  // namespace qoptics
