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

#include "qoptics/experiment.h"

#include <algorithm>
#include <array>

#include "qoptics/elements.h"

namespace qoptics {
namespace {

struct KindInfo {
  ElementKind kind;
  std::string_view name;
  int arity;
  bool has_param;
};

constexpr std::array<KindInfo, 8> kKinds = {{
    {ElementKind::kReflection, "Reflection", 1, false},
    {ElementKind::kBeamSplitter, "BS", 2, false},
    {ElementKind::kPolarizingBeamSplitter, "PBS", 2, false},
    {ElementKind::kHalfWavePlate, "HWP", 1, false},
    {ElementKind::kOamHologram, "OAMHolo", 1, true},
    {ElementKind::kOamHologramSuperposition, "OAMHoloSP", 1, true},
    {ElementKind::kDovePrism, "DP", 1, true},
    {ElementKind::kParitySorter, "LI", 2, false},
}};

const KindInfo* Info(ElementKind kind) {
  for (const KindInfo& k : kKinds) {
    if (k.kind == kind) return &k;
  }
  return nullptr;
}

}  // namespace

std::string_view ElementKindName(ElementKind kind) {
  const KindInfo* info = Info(kind);
  return info ? info->name : std::string_view("Composite");
}

std::optional<ElementKind> ElementKindFromName(std::string_view name) {
  if (name == "OAMHoloSP2") return ElementKind::kOamHologramSuperposition;
  for (const KindInfo& k : kKinds) {
    if (k.name == name) return k.kind;
  }
  return std::nullopt;
}

int PathArity(ElementKind kind) {
  const KindInfo* info = Info(kind);
  return info ? info->arity : 0;
}

bool HasParameter(ElementKind kind) {
  const KindInfo* info = Info(kind);
  return info && info->has_param;
}

Element::Element(ElementKind kind, std::vector<PathId> paths, std::optional<int> param)
    : kind_(kind), paths_(std::move(paths)), param_(param) {}

Element Element::Make(ElementKind kind, std::vector<PathId> paths, std::optional<int> param) {
  if (kind == ElementKind::kComposite) {
    throw std::invalid_argument("composite elements are built with FromComposite");
  }
  const std::string name(ElementKindName(kind));
  if (static_cast<int>(paths.size()) != PathArity(kind)) {
    throw std::invalid_argument(name + " takes " + std::to_string(PathArity(kind)) +
                                " path(s), got " + std::to_string(paths.size()));
  }
  if (param.has_value() != HasParameter(kind)) {
    throw std::invalid_argument(name + (HasParameter(kind) ? " requires" : " takes no") +
                                " integer parameter");
  }
  if (paths.size() == 2 && paths[0] == paths[1]) {
    throw std::invalid_argument(name + " requires two distinct paths");
  }
  if (kind == ElementKind::kDovePrism && *param <= 0) {
    throw std::invalid_argument("DP parameter must be positive");
  }
  return Element(kind, std::move(paths), param);
}

Element Element::Reflection(PathId p) { return Make(ElementKind::kReflection, {p}, {}); }
Element Element::BeamSplitter(PathId p, PathId q) {
  return Make(ElementKind::kBeamSplitter, {p, q}, {});
}
Element Element::PolarizingBeamSplitter(PathId p, PathId q) {
  return Make(ElementKind::kPolarizingBeamSplitter, {p, q}, {});
}
Element Element::HalfWavePlate(PathId p) { return Make(ElementKind::kHalfWavePlate, {p}, {}); }
Element Element::OamHologram(PathId p, int shift) {
  return Make(ElementKind::kOamHologram, {p}, shift);
}
Element Element::OamHologramSuperposition(PathId p, int shift) {
  return Make(ElementKind::kOamHologramSuperposition, {p}, shift);
}
Element Element::DovePrism(PathId p, int n) { return Make(ElementKind::kDovePrism, {p}, n); }
Element Element::ParitySorter(PathId p, PathId q) {
  return Make(ElementKind::kParitySorter, {p, q}, {});
}

Element Element::FromComposite(std::shared_ptr<const Composite> composite) {
  if (!composite) throw std::invalid_argument("null composite");
  Element e(ElementKind::kComposite, {}, {});
  e.composite_ = std::move(composite);
  return e;
}

std::vector<PathId> Element::TouchedPaths() const {
  if (kind_ != ElementKind::kComposite) return paths_;
  std::vector<PathId> out;
  for (const Element& e : composite_->elements) {
    for (PathId p : e.TouchedPaths()) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string Element::ToText(std::string_view placeholder) const {
  if (kind_ == ElementKind::kComposite) return composite_->name;
  std::string out(ElementKindName(kind_));
  out += '[';
  out += placeholder;
  for (PathId p : paths_) {
    out += ',';
    out += p.label();
  }
  if (param_) out += "," + std::to_string(*param_);
  out += ']';
  return out;
}

bool Element::operator==(const Element& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == ElementKind::kComposite) {
    return composite_ == other.composite_ ||
           (composite_->name == other.composite_->name &&
            composite_->elements == other.composite_->elements);
  }
  return paths_ == other.paths_ && param_ == other.param_;
}

std::vector<Element> Composite::Expand() const {
  std::vector<Element> out;
  for (const Element& e : elements) {
    if (e.kind() == ElementKind::kComposite) {
      auto inner = e.composite()->Expand();
      out.insert(out.end(), inner.begin(), inner.end());
    } else {
      out.push_back(e);
    }
  }
  return out;
}

ExperimentConfig ExperimentConfig::Expanded() const {
  ExperimentConfig out = *this;
  Composite wrapper{"", elements};
  out.elements = wrapper.Expand();
  return out;
}

SetupError::SetupError(std::size_t index, const std::string& what)
    : std::runtime_error("element " + std::to_string(index) + ": " + what), index_(index) {}

QuantumState ApplyElement(const QuantumState& state, const Element& e) {
  const auto paths = e.paths();
  switch (e.kind()) {
    case ElementKind::kReflection:
      return ApplyReflection(state, paths[0]);
    case ElementKind::kBeamSplitter:
      return ApplyBeamSplitter(state, paths[0], paths[1]);
    case ElementKind::kPolarizingBeamSplitter:
      return ApplyPolarizingBeamSplitter(state, paths[0], paths[1]);
    case ElementKind::kHalfWavePlate:
      return ApplyHalfWavePlate(state, paths[0]);
    case ElementKind::kOamHologram:
      return ApplyOamHologram(state, paths[0], *e.param());
    case ElementKind::kOamHologramSuperposition:
      return ApplyOamHologramSuperposition(state, paths[0], *e.param());
    case ElementKind::kDovePrism:
      return ApplyDovePrism(state, paths[0], *e.param());
    case ElementKind::kParitySorter:
      return ApplyParitySorter(state, paths[0], paths[1]);
    case ElementKind::kComposite: {
      QuantumState s = state;
      for (const Element& inner : e.composite()->elements) s = ApplyElement(s, inner);
      return s;
    }
  }
  throw std::logic_error("unreachable element kind");
}

QuantumState ApplySetup(const QuantumState& state, const ExperimentConfig& config) {
  QuantumState s = state;
  for (std::size_t i = 0; i < config.elements.size(); ++i) {
    try {
      s = ApplyElement(s, config.elements[i]);
    } catch (const std::exception& e) {
      throw SetupError(i, config.elements[i].ToText() + ": " + e.what());
    }
  }
  return s;
}

}  // namespace qoptics
