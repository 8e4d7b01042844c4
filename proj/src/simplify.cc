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

#include <algorithm>
#include <stdexcept>

#include "qoptics/search.h"

namespace qoptics {

namespace {

constexpr std::size_t kMaxRemoval = 4;

// Calls `visit` with every k-subset of [0, n) in lexicographic order until it
// returns true.
template <typename Visit>
bool ForEachSubset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (visit(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::optional<ExperimentConfig> TryRemove(const ExperimentConfig& cfg,
                                          const BehaviorCheck& check) {
  const std::size_t n = cfg.size();
  for (std::size_t k = 1; k <= std::min(kMaxRemoval, n); ++k) {
    std::optional<ExperimentConfig> found;
    ForEachSubset(n, k, [&](const std::vector<std::size_t>& drop) {
      ExperimentConfig candidate = cfg;
      candidate.elements.clear();
      for (std::size_t i = 0, d = 0; i < n; ++i) {
        if (d < drop.size() && drop[d] == i) {
          ++d;
        } else {
          candidate.elements.push_back(cfg.elements[i]);
        }
      }
      if (!check(candidate)) return false;
      found = std::move(candidate);
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<ExperimentConfig> TrySubstitute(const ExperimentConfig& cfg,
                                              const BehaviorCheck& check) {
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const Element& e = cfg.elements[i];
    if (e.kind() == ElementKind::kReflection) continue;
    for (PathId p : e.TouchedPaths()) {
      ExperimentConfig candidate = cfg;
      candidate.elements[i] = Element::Reflection(p);
      if (check(candidate)) return candidate;
    }
  }
  return std::nullopt;
}

std::vector<PathId> UsedPaths(const ExperimentConfig& cfg) {
  std::vector<PathId> out;
  for (const Element& e : cfg.elements) {
    for (PathId p : e.TouchedPaths()) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Renames `from` to `to` in every primitive; fails on composites touching
// `from` and on two-path elements that would collapse onto one path.
std::optional<ExperimentConfig> Rename(const ExperimentConfig& cfg, PathId from, PathId to) {
  ExperimentConfig out = cfg;
  for (Element& e : out.elements) {
    const auto touched = e.TouchedPaths();
    if (std::find(touched.begin(), touched.end(), from) == touched.end()) continue;
    if (e.kind() == ElementKind::kComposite) return std::nullopt;
    std::vector<PathId> paths(e.paths().begin(), e.paths().end());
    for (PathId& p : paths) {
      if (p == from) p = to;
    }
    if (paths.size() == 2 && paths[0] == paths[1]) return std::nullopt;
    e = Element::Make(e.kind(), std::move(paths), e.param());
  }
  return out;
}

std::optional<ExperimentConfig> TryMergePaths(const ExperimentConfig& cfg,
                                              const BehaviorCheck& check) {
  const auto used = UsedPaths(cfg);
  for (PathId from : used) {
    for (PathId to : used) {
      if (from == to) continue;
      auto candidate = Rename(cfg, from, to);
      if (candidate && check(*candidate)) return candidate;
    }
  }
  return std::nullopt;
}

}  // namespace

ExperimentConfig Simplify(const ExperimentConfig& config, const BehaviorCheck& check) {
  if (!check(config)) {
    throw std::invalid_argument("behavior check rejects the unmodified config");
  }
  // Every accepted step lowers (length, non-mirror count, path count)
  // lexicographically, so the loop terminates.
  ExperimentConfig current = config;
  for (;;) {
    if (auto next = TryRemove(current, check)) {
      current = std::move(*next);
    } else if (auto sub = TrySubstitute(current, check)) {
      current = std::move(*sub);
    } else if (auto merged = TryMergePaths(current, check)) {
      current = std::move(*merged);
    } else {
      return current;
    }
  }
}

}  // namespace qoptics
