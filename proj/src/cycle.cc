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

#include "qoptics/cycle.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

namespace qoptics {

void BasisSpec::Validate() const {
  if (paths.empty() || pols.empty() || oam_min > oam_max) {
    throw std::invalid_argument("basis must have at least one path, polarization and OAM value");
  }
}

std::vector<ModeLabel> BasisSpec::Modes() const {
  Validate();
  std::vector<ModeLabel> out;
  for (PathId p : paths) {
    for (int l = oam_min; l <= oam_max; ++l) {
      for (Polarization pol : pols) out.push_back({p, l, pol});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool BasisSpec::Contains(const ModeLabel& m) const {
  return m.oam >= oam_min && m.oam <= oam_max &&
         std::find(paths.begin(), paths.end(), m.path) != paths.end() &&
         std::find(pols.begin(), pols.end(), m.pol) != pols.end();
}

std::string CycleResult::ToString() const {
  if (cycle.empty()) return "";
  std::string out;
  for (const ModeLabel& m : cycle) out += ToKet(m) + " -> ";
  return out + ToKet(cycle.front());
}

QuantumState TransformBasis(const ExperimentConfig& config, const ModeLabel& mode,
                            StateLimits limits) {
  return ApplySetup(QuantumState::Of(PhotonTerm{mode}, 1.0, limits), config);
}

std::optional<std::pair<ModeLabel, Amplitude>> SingleModeImage(const QuantumState& image,
                                                               double tol) {
  if (image.is_zero()) return std::nullopt;
  double total = 0.0;
  const PhotonTerm* best = nullptr;
  Amplitude best_amp{};
  for (const auto& [term, amp] : image.terms()) {
    total += std::norm(amp);
    if (best == nullptr || std::abs(amp) > std::abs(best_amp)) {
      best = &term;
      best_amp = amp;
    }
  }
  if (best->photon_count() != 1) return std::nullopt;
  if (std::abs(std::abs(best_amp) - 1.0) > tol) return std::nullopt;
  if (total - std::norm(best_amp) >= tol * total) return std::nullopt;
  return std::make_pair(best->modes()[0], best_amp);
}

namespace {

int Spread(const CycleResult& c) {
  int m = 0;
  for (const ModeLabel& x : c.cycle) m = std::max(m, std::abs(x.oam));
  return m;
}

struct PartialMap {
  std::vector<ModeLabel> nodes;
  std::vector<std::optional<std::size_t>> next;
  std::vector<Amplitude> phase;
};

PartialMap BuildMap(const ExperimentConfig& config, const BasisSpec& basis, double tol,
                    StateLimits limits) {
  PartialMap map;
  map.nodes = basis.Modes();
  map.next.assign(map.nodes.size(), std::nullopt);
  map.phase.assign(map.nodes.size(), Amplitude{});
  for (std::size_t i = 0; i < map.nodes.size(); ++i) {
    std::optional<std::pair<ModeLabel, Amplitude>> img;
    try {
      img = SingleModeImage(TransformBasis(config, map.nodes[i], limits), tol);
    } catch (const std::exception&) {
      // Cutoff overflow: no image.
      continue;
    }
    if (!img || !basis.Contains(img->first)) continue;
    auto it = std::lower_bound(map.nodes.begin(), map.nodes.end(), img->first);
    map.next[i] = static_cast<std::size_t>(it - map.nodes.begin());
    map.phase[i] = img->second;
  }
  return map;
}

}  // namespace

std::vector<CycleResult> AllCycles(const ExperimentConfig& config, const BasisSpec& basis,
                                   double tol, StateLimits limits) {
  const PartialMap map = BuildMap(config, basis, tol, limits);
  const std::size_t n = map.nodes.size();
  // 0 = unvisited, 1 = on the current walk, 2 = finished
  std::vector<int> state(n, 0);
  std::vector<CycleResult> cycles;
  for (std::size_t start = 0; start < n; ++start) {
    if (state[start] != 0) continue;
    std::vector<std::size_t> walk;
    std::optional<std::size_t> cur = start;
    while (cur && state[*cur] == 0) {
      state[*cur] = 1;
      walk.push_back(*cur);
      cur = map.next[*cur];
    }
    if (cur && state[*cur] == 1) {
      auto first = std::find(walk.begin(), walk.end(), *cur);
      std::vector<std::size_t> members(first, walk.end());
      std::rotate(members.begin(), std::min_element(members.begin(), members.end()),
                  members.end());
      CycleResult c;
      for (std::size_t idx : members) {
        c.cycle.push_back(map.nodes[idx]);
        c.phases.push_back(map.phase[idx]);
      }
      cycles.push_back(std::move(c));
    }
    for (std::size_t idx : walk) state[idx] = 2;
  }
  std::sort(cycles.begin(), cycles.end(), [](const CycleResult& x, const CycleResult& y) {
    if (x.length() != y.length()) return x.length() > y.length();
    if (Spread(x) != Spread(y)) return Spread(x) < Spread(y);
    return x.cycle.front() < y.cycle.front();
  });
  return cycles;
}

CycleResult LargestCycle(const ExperimentConfig& config, const BasisSpec& basis, double tol,
                         StateLimits limits) {
  auto cycles = AllCycles(config, basis, tol, limits);
  if (cycles.empty()) return {};
  return cycles.front();
}

int CoupledDegreesOfFreedom(const CycleResult& c) {
  bool path = false, oam = false, pol = false;
  for (std::size_t k = 0; k < c.cycle.size(); ++k) {
    const ModeLabel& x = c.cycle[k];
    const ModeLabel& y = c.cycle[(k + 1) % c.cycle.size()];
    path |= x.path != y.path;
    oam |= x.oam != y.oam;
    pol |= x.pol != y.pol;
  }
  return int{path} + int{oam} + int{pol};
}

}  // namespace qoptics
