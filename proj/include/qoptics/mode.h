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

#ifndef QOPTICS_MODE_H_
#define QOPTICS_MODE_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qoptics {

// Photon polarization. H sorts before V.
enum class Polarization : std::uint8_t { H = 0, V = 1 };

char PolarizationChar(Polarization pol);
Polarization ParsePolarization(char c);

// A named optical path. Labels are single lowercase letters; the default
// alphabet is a..f but any of a..z is accepted.
class PathId {
 public:
  constexpr PathId() = default;
  constexpr explicit PathId(char label) : label_(label) {
    if (label < 'a' || label > 'z') {
      throw std::invalid_argument(std::string("invalid path label '") + label + "'");
    }
  }

  constexpr char label() const { return label_; }
  std::string str() const { return std::string(1, label_); }

  constexpr auto operator<=>(const PathId&) const = default;

 private:
  char label_ = 'a';
};

inline constexpr char kDefaultLastPath = 'f';

// One photon's mode: path, OAM quantum number and polarization.
// Ordering is (path, oam, pol), which is the canonical term order.
struct ModeLabel {
  PathId path;
  int oam = 0;
  Polarization pol = Polarization::H;

  constexpr auto operator<=>(const ModeLabel&) const = default;
};

// Formats as `a[2,H]`.
std::string ToString(const ModeLabel& mode);
// Formats as `|2,H,a>` (the notation used for cycle listings).
std::string ToKet(const ModeLabel& mode);

std::ostream& operator<<(std::ostream& os, PathId path);
std::ostream& operator<<(std::ostream& os, const ModeLabel& mode);

}  // namespace qoptics

template <>
struct std::hash<qoptics::ModeLabel> {
  std::size_t operator()(const qoptics::ModeLabel& m) const noexcept {
    return (static_cast<std::size_t>(m.path.label()) << 40) ^
           (static_cast<std::size_t>(static_cast<std::uint32_t>(m.oam)) << 1) ^
           static_cast<std::size_t>(m.pol);
  }
};

#endif  // QOPTICS_MODE_H_
