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

#ifndef QOPTICS_EXPERIMENT_H_
#define QOPTICS_EXPERIMENT_H_

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qoptics/quantum_state.h"

namespace qoptics {

enum class ElementKind {
  kReflection,
  kBeamSplitter,
  kPolarizingBeamSplitter,
  kHalfWavePlate,
  kOamHologram,
  kOamHologramSuperposition,
  kDovePrism,
  kParitySorter,
  kComposite,
};

// Name used in setup text (`BS`, `OAMHolo`, ...). Composites have no fixed name.
std::string_view ElementKindName(ElementKind kind);
std::optional<ElementKind> ElementKindFromName(std::string_view name);
int PathArity(ElementKind kind);
bool HasParameter(ElementKind kind);

struct Composite;

// One placed optical element. Primitive elements carry 1 or 2 paths and an
// optional integer parameter; composite elements refer to a named, immutable
// list of elements acting on the paths they were recorded with.
class Element {
 public:
  static Element Reflection(PathId p);
  static Element BeamSplitter(PathId p, PathId q);
  static Element PolarizingBeamSplitter(PathId p, PathId q);
  static Element HalfWavePlate(PathId p);
  static Element OamHologram(PathId p, int shift);
  static Element OamHologramSuperposition(PathId p, int shift);
  static Element DovePrism(PathId p, int n);
  static Element ParitySorter(PathId p, PathId q);
  static Element FromComposite(std::shared_ptr<const Composite> composite);
  // Builds a primitive from its parts; throws std::invalid_argument if the
  // arity or parameter presence does not match the kind.
  static Element Make(ElementKind kind, std::vector<PathId> paths, std::optional<int> param);

  ElementKind kind() const { return kind_; }
  std::span<const PathId> paths() const { return paths_; }
  std::optional<int> param() const { return param_; }
  const std::shared_ptr<const Composite>& composite() const { return composite_; }

  // Every path the element touches (composites: union over their members).
  std::vector<PathId> TouchedPaths() const;

  // Element text with the given placeholder, e.g. `BS[XXX,a,b]`.
  std::string ToText(std::string_view placeholder = "XXX") const;

  bool operator==(const Element& other) const;

 private:
  Element(ElementKind kind, std::vector<PathId> paths, std::optional<int> param);

  ElementKind kind_ = ElementKind::kReflection;
  std::vector<PathId> paths_;
  std::optional<int> param_;
  std::shared_ptr<const Composite> composite_;
};

struct Composite {
  std::string name;
  std::vector<Element> elements;

  // Flat list of primitives (composites are expanded recursively).
  std::vector<Element> Expand() const;
};

// Ordered list of elements; the first element acts first.
struct ExperimentConfig {
  std::vector<Element> elements;
  std::vector<PathId> input_paths;
  std::vector<PathId> aux_paths;

  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }
  // Copy with all composites replaced by their primitive expansion.
  ExperimentConfig Expanded() const;

  bool operator==(const ExperimentConfig& other) const = default;
};

// Raised by ApplySetup; carries the index of the failing element.
class SetupError : public std::runtime_error {
 public:
  SetupError(std::size_t index, const std::string& what);
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

QuantumState ApplyElement(const QuantumState& state, const Element& element);

// Folds the elements left to right.
QuantumState ApplySetup(const QuantumState& state, const ExperimentConfig& config);

}  // namespace qoptics

#endif  // QOPTICS_EXPERIMENT_H_
