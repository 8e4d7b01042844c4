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

#ifndef QOPTICS_DSL_H_
#define QOPTICS_DSL_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qoptics/experiment.h"
#include "qoptics/measurement.h"

namespace qoptics {

// Syntax error in setup or trigger text. Line and column are 1-based.
class DslError : public std::runtime_error {
 public:
  DslError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

// Parses setup text in either of the notations used for published setups:
//
//   flat:    "OAMHolo[psi,c,-1]", "LI[XXX,a,c]"
//   nested:  LI[OAMHolo[psi,c,-1],a,c]
//
// The first argument of every element is a placeholder (`psi`, `ψ`, `XXX`)
// or a nested element that acts first. Elements may be separated by commas,
// newlines, `->` or `→`; quotes are optional and `#` starts a comment.
// `OAMHoloSP2` is an alias of `OAMHoloSP`.
ExperimentConfig ParseSetup(std::string_view text);

// Canonical flat form: one quoted element per line, `psi` placeholder on the
// first element and `XXX` afterwards. Composites are expanded in place and
// bracketed by `# composite <name>` comments.
std::string PrintSetup(const ExperimentConfig& config);

// Single-line variant: `"OAMHolo[psi,c,-1]", "LI[XXX,a,c]"`.
std::string PrintSetupInline(const ExperimentConfig& config);

// Trigger superposition such as `|0> + |1>`, `-|2>`, `I*|3>` or the
// shorthand list `0,1`. An optional `,V` inside the ket selects polarization.
Trigger ParseTrigger(std::string_view text);

// Setup text with `key: value` header lines, e.g.
//
//   mode: srv
//   dc: 1
//   trigger: |0> + |1>
//   "LI[psi,b,c]", "Reflection[XXX,a]"
struct SetupDocument {
  std::map<std::string, std::string> header;
  ExperimentConfig config;

  std::optional<std::string> Get(const std::string& key) const;
};

SetupDocument ParseSetupDocument(std::string_view text);
std::string PrintSetupDocument(const SetupDocument& doc);

}  // namespace qoptics

#endif  // QOPTICS_DSL_H_
