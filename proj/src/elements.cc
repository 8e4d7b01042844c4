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

#include "qoptics/elements.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qoptics {
namespace {

constexpr Amplitude kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

struct Image {
  ModeLabel mode;
  Amplitude amp;
};
using Images = std::vector<Image>;

void RequireDistinct(PathId p, PathId q, const char* element) {
  if (p == q) {
    throw std::invalid_argument(std::string(element) + " requires two distinct paths, got " +
                                p.str() + "," + q.str());
  }
}

// Expands every term multilinearly, replacing each mode that `rule` claims
// (returns true) with its image list.
template <typename Rule>
QuantumState Substitute(const QuantumState& state, Rule&& rule) {
  QuantumState out(state.limits());
  std::vector<std::pair<std::vector<ModeLabel>, Amplitude>> partial;
  Images images;
  for (const auto& [term, amp] : state.terms()) {
    partial.assign(1, {{}, amp});
    for (const ModeLabel& m : term.modes()) {
      images.clear();
      if (!rule(m, images)) {
        for (auto& [modes, a] : partial) modes.push_back(m);
        continue;
      }
      std::vector<std::pair<std::vector<ModeLabel>, Amplitude>> next;
      next.reserve(partial.size() * images.size());
      for (const auto& [modes, a] : partial) {
        for (const Image& img : images) {
          auto extended = modes;
          extended.push_back(img.mode);
          next.emplace_back(std::move(extended), a * img.amp);
        }
      }
      partial = std::move(next);
    }
    for (auto& [modes, a] : partial) out.Add(PhotonTerm(std::move(modes)), a);
  }
  return out;
}

Amplitude ReflectionPhase(Polarization pol) { return pol == Polarization::H ? -kI : kI; }

Image Reflected(const ModeLabel& m) {
  return {{m.path, -m.oam, m.pol}, ReflectionPhase(m.pol)};
}

}  // namespace

QuantumState ApplyReflection(const QuantumState& state, PathId p) {
  return Substitute(state, [p](const ModeLabel& m, Images& out) {
    if (m.path != p) return false;
    out.push_back(Reflected(m));
    return true;
  });
}

QuantumState ApplyBeamSplitter(const QuantumState& state, PathId p, PathId q) {
  RequireDistinct(p, q, "BS");
  return Substitute(state, [p, q](const ModeLabel& m, Images& out) {
    if (m.path != p && m.path != q) return false;
    const PathId other = m.path == p ? q : p;
    out.push_back({{other, m.oam, m.pol}, kInvSqrt2});
    Image r = Reflected(m);
    r.amp *= kInvSqrt2;
    out.push_back(r);
    return true;
  });
}

QuantumState ApplyPolarizingBeamSplitter(const QuantumState& state, PathId p, PathId q) {
  RequireDistinct(p, q, "PBS");
  return Substitute(state, [p, q](const ModeLabel& m, Images& out) {
    if (m.path != p && m.path != q) return false;
    if (m.pol == Polarization::H) {
      out.push_back({{m.path == p ? q : p, m.oam, m.pol}, 1.0});
    } else {
      out.push_back({{m.path, -m.oam, m.pol}, kI});
    }
    return true;
  });
}

QuantumState ApplyHalfWavePlate(const QuantumState& state, PathId p) {
  return Substitute(state, [p](const ModeLabel& m, Images& out) {
    if (m.path != p) return false;
    if (m.pol == Polarization::H) {
      out.push_back({{m.path, m.oam, Polarization::V}, 1.0});
    } else {
      out.push_back({{m.path, m.oam, Polarization::H}, -1.0});
    }
    return true;
  });
}

QuantumState ApplyOamHologram(const QuantumState& state, PathId p, int shift) {
  if (shift == 0) return state;
  return Substitute(state, [p, shift](const ModeLabel& m, Images& out) {
    if (m.path != p) return false;
    out.push_back({{m.path, m.oam + shift, m.pol}, 1.0});
    return true;
  });
}

QuantumState ApplyOamHologramSuperposition(const QuantumState& state, PathId p, int shift) {
  return Substitute(state, [p, shift](const ModeLabel& m, Images& out) {
    if (m.path != p) return false;
    out.push_back({m, kInvSqrt2});
    out.push_back({{m.path, m.oam + shift, m.pol}, kInvSqrt2});
    return true;
  });
}

QuantumState ApplyDovePrism(const QuantumState& state, PathId p, int n) {
  if (n <= 0) throw std::invalid_argument("DP parameter must be positive, got " + std::to_string(n));
  return Substitute(state, [p, n](const ModeLabel& m, Images& out) {
    if (m.path != p) return false;
    Image r = Reflected(m);
    r.amp *= std::polar(1.0, std::numbers::pi * m.oam / n);
    out.push_back(r);
    return true;
  });
}

QuantumState ApplyParitySorter(const QuantumState& state, PathId p, PathId q) {
  RequireDistinct(p, q, "LI");
  QuantumState s = ApplyBeamSplitter(state, p, q);
  s = ApplyReflection(s, p);
  s = ApplyDovePrism(s, p, 1);
  s = ApplyReflection(s, q);
  s = ApplyReflection(s, q);
  return ApplyBeamSplitter(s, p, q);
}

}  // namespace qoptics
