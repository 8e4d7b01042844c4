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

#ifndef QOPTICS_MANIFEST_H_
#define QOPTICS_MANIFEST_H_

#include <array>
#include <cstdint>
#include <utility>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qoptics/cycle.h"
#include "qoptics/experiment.h"
#include "qoptics/measurement.h"
#include "qoptics/quantum_state.h"

namespace qoptics {

// Schema violation in a golden manifest; names the offending row.
class ManifestError : public std::runtime_error {
 public:
  ManifestError(const std::string& row, const std::string& message);
  const std::string& row() const { return row_; }

 private:
  std::string row_;
};

// Heralded-state case: setup on the double SPDC source at `dc_order`,
// trigger in path a, expected state on paths b, c, d.
struct GoldenSrvCase {
  std::string id;
  std::string provenance;
  std::string setup_text;
  ExperimentConfig config;
  int dc_order = 1;
  std::string trigger_text;
  Trigger trigger;
  std::string state_text;
  QuantumState expected_state;
  std::array<int, 3> expected_srv{};  // as published (sorted descending)
  // Verbatim published text when `state_text` had to be repaired to parse.
  std::string state_as_published;
  std::string transcription_note;
};

// Cycle case: expected sequence in `|oam,pol,path>` notation as published.
// A `...` entry elides states; `gaps` holds the index of the state that
// follows each elision.
struct GoldenCycleCase {
  std::string id;
  std::string provenance;
  std::string setup_text;
  ExperimentConfig config;
  BasisSpec basis;
  int expected_length = 0;
  std::vector<ModeLabel> expected_sequence;
  std::vector<std::size_t> gaps;
  bool abbreviated = false;
  std::string note;
};

// Seeded cycle-mode search expected to report a cycle of at least
// `min_length` within `iterations`. The toolbox is the cycle primitives plus
// the composites listed in `composites` (name -> setup text).
struct SearchWitness {
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  int min_length = 3;
  std::vector<PathId> paths;
  std::vector<std::pair<std::string, ExperimentConfig>> composites;
};

struct GoldenManifest {
  std::vector<GoldenSrvCase> srv_cases;
  std::vector<GoldenCycleCase> cycle_cases;
  std::optional<SearchWitness> search_witness;

  bool empty() const { return srv_cases.empty() && cycle_cases.empty(); }
};

GoldenManifest ParseGoldenManifest(std::string_view json_text);
GoldenManifest LoadGoldenManifest(const std::filesystem::path& file);

// Parses the published state notation, e.g.
//   `-I FF2[-1] FF3[-3] FF4[-1] + (-I)*FF2[0]*FF3[-2]*FF4[0]`
// FFk[l] is the photon with OAM l in path `'a' + k - 1` (FF2 -> b, FF3 -> c,
// FF4 -> d), H polarization. Products may be written with `*` or blanks.
QuantumState ParseFfExpression(std::string_view text, StateLimits limits = {});

// `|2,V,b>`, `|2,V>` (path a) or `|2>` (H, path a).
ModeLabel ParseKet(std::string_view text);

}  // namespace qoptics

#endif  // QOPTICS_MANIFEST_H_
