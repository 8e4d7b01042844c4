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

#include "qoptics/mode.h"

#include <sstream>

namespace qoptics {

char PolarizationChar(Polarization pol) { return pol == Polarization::H ? 'H' : 'V'; }

Polarization ParsePolarization(char c) {
  switch (c) {
    case 'H':
    case 'h':
      return Polarization::H;
    case 'V':
    case 'v':
      return Polarization::V;
    default:
      throw std::invalid_argument(std::string("invalid polarization '") + c + "'");
  }
}

std::string ToString(const ModeLabel& mode) {
  std::ostringstream os;
  os << mode;
  return os.str();
}

std::string ToKet(const ModeLabel& mode) {
  std::ostringstream os;
  os << '|' << mode.oam << ',' << PolarizationChar(mode.pol) << ',' << mode.path.label() << '>';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, PathId path) { return os << path.label(); }

std::ostream& operator<<(std::ostream& os, const ModeLabel& mode) {
  return os << mode.path.label() << '[' << mode.oam << ',' << PolarizationChar(mode.pol) << ']';
}

}  // namespace qoptics
