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

#include "qoptics/manifest.h"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qoptics/dsl.h"

namespace qoptics {

ManifestError::ManifestError(const std::string& row, const std::string& message)
    : std::runtime_error("manifest row '" + row + "': " + message), row_(row) {}

namespace {

// Recursive descent over sums of products:
//   sum     := ['+'|'-'] product (('+'|'-') product)*
//   product := factor (['*'] factor)*
//   factor  := 'I' | number | FFk '[' int ']' | '(' sum ')'
class FfParser {
 public:
  FfParser(std::string_view text, StateLimits limits) : text_(text), limits_(limits) {}

  QuantumState Parse() {
    QuantumState s = Sum();
    Skip();
    if (pos_ != text_.size()) Fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return s;
  }

 private:
  void Skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char Peek() {
    Skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  [[noreturn]] void Fail(const std::string& what) const {
    throw std::invalid_argument("state expression at offset " + std::to_string(pos_) + ": " +
                                what);
  }

  QuantumState Scalar(Amplitude a) const { return QuantumState::Vacuum(limits_).Scaled(a); }

  QuantumState Sum() {
    QuantumState total(limits_);
    bool first = true;
    for (;;) {
      double sign = 1.0;
      const char c = Peek();
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1.0 : 1.0;
        ++pos_;
      } else if (!first) {
        break;
      }
      first = false;
      total = total.Plus(Product().Scaled(sign));
    }
    return total;
  }

  bool StartsFactor() {
    const char c = Peek();
    return c == '(' || c == 'I' || c == 'F' || std::isdigit(static_cast<unsigned char>(c));
  }

  QuantumState Product() {
    QuantumState p = Factor();
    for (;;) {
      if (Peek() == '*') {
        ++pos_;
        p = p.Times(Factor());
      } else if (StartsFactor()) {
        p = p.Times(Factor());
      } else {
        return p;
      }
    }
  }

  QuantumState Factor() {
    const char c = Peek();
    if (c == '(') {
      ++pos_;
      QuantumState inner = Sum();
      if (Peek() != ')') Fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'I') {
      ++pos_;
      return Scalar(Amplitude(0.0, 1.0));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.')) {
        ++end;
      }
      const double v = std::stod(std::string(text_.substr(pos_, end - pos_)));
      pos_ = end;
      return Scalar(v);
    }
    if (text_.substr(pos_).starts_with("FF")) {
      pos_ += 2;
      int index = 0;
      auto [p1, e1] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), index);
      if (e1 != std::errc{} || index < 1 || index > 26) Fail("bad FF index");
      pos_ = static_cast<std::size_t>(p1 - text_.data());
      if (Peek() != '[') Fail("expected '['");
      ++pos_;
      Skip();
      int oam = 0;
      auto [p2, e2] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), oam);
      if (e2 != std::errc{}) Fail("bad OAM value");
      pos_ = static_cast<std::size_t>(p2 - text_.data());
      if (Peek() != ']') Fail("expected ']'");
      ++pos_;
      const ModeLabel m{PathId(static_cast<char>('a' + index - 1)), oam, Polarization::H};
      return QuantumState::Of(PhotonTerm{m}, 1.0, limits_);
    }
    Fail("expected factor");
  }

  std::string_view text_;
  StateLimits limits_;
  std::size_t pos_ = 0;
};

using nlohmann::json;

template <typename T>
T Require(const json& row, const char* key, const std::string& id) {
  if (!row.contains(key)) throw ManifestError(id, std::string("missing field '") + key + "'");
  try {
    return row.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ManifestError(id, std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
T Optional(const json& row, const char* key, T fallback, const std::string& id) {
  if (!row.contains(key)) return fallback;
  return Require<T>(row, key, id);
}

ExperimentConfig ParseRowSetup(const std::string& text, const std::string& id) {
  try {
    return ParseSetup(text);
  } catch (const DslError& e) {
    throw ManifestError(id, std::string("setup: ") + e.what());
  }
}

GoldenSrvCase ParseSrvRow(const json& row, std::size_t index) {
  GoldenSrvCase c;
  c.id = row.contains("id") && row["id"].is_string() ? row["id"].get<std::string>()
                                                      : "srv#" + std::to_string(index);
  c.provenance = Optional<std::string>(row, "provenance", "", c.id);
  c.setup_text = Require<std::string>(row, "setup", c.id);
  c.config = ParseRowSetup(c.setup_text, c.id);
  c.dc_order = Require<int>(row, "dc", c.id);
  if (c.dc_order < 0) throw ManifestError(c.id, "dc must be non-negative");
  c.trigger_text = Require<std::string>(row, "trigger", c.id);
  try {
    c.trigger = ParseTrigger(c.trigger_text);
  } catch (const DslError& e) {
    throw ManifestError(c.id, std::string("trigger: ") + e.what());
  }
  c.state_text = Require<std::string>(row, "state", c.id);
  try {
    c.expected_state = ParseFfExpression(c.state_text);
  } catch (const std::invalid_argument& e) {
    throw ManifestError(c.id, std::string("state: ") + e.what());
  }
  c.state_as_published = Optional<std::string>(row, "state_as_published", "", c.id);
  c.transcription_note = Optional<std::string>(row, "transcription_note", "", c.id);
  const auto srv = Require<std::vector<int>>(row, "srv", c.id);
  if (srv.size() != 3) throw ManifestError(c.id, "srv must have three entries");
  for (std::size_t k = 0; k < 3; ++k) {
    if (srv[k] < 1) throw ManifestError(c.id, "srv entries must be positive");
    c.expected_srv[k] = srv[k];
  }
  return c;
}

GoldenCycleCase ParseCycleRow(const json& row, std::size_t index) {
  GoldenCycleCase c;
  c.id = row.contains("id") && row["id"].is_string() ? row["id"].get<std::string>()
                                                      : "cycle#" + std::to_string(index);
  c.provenance = Optional<std::string>(row, "provenance", "", c.id);
  c.note = Optional<std::string>(row, "note", "", c.id);
  c.setup_text = Require<std::string>(row, "setup", c.id);
  c.config = ParseRowSetup(c.setup_text, c.id);
  if (row.contains("basis")) {
    const json& b = row["basis"];
    if (!b.is_object()) throw ManifestError(c.id, "basis must be an object");
    c.basis.paths.clear();
    for (char p : Optional<std::string>(b, "paths", "a", c.id)) {
      try {
        c.basis.paths.emplace_back(p);
      } catch (const std::invalid_argument& e) {
        throw ManifestError(c.id, std::string("basis paths: ") + e.what());
      }
    }
    c.basis.oam_min = Optional<int>(b, "oam_min", -10, c.id);
    c.basis.oam_max = Optional<int>(b, "oam_max", 10, c.id);
    c.basis.pols.clear();
    for (char p : Optional<std::string>(b, "pols", "HV", c.id)) {
      try {
        c.basis.pols.push_back(ParsePolarization(p));
      } catch (const std::invalid_argument& e) {
        throw ManifestError(c.id, std::string("basis pols: ") + e.what());
      }
    }
    try {
      c.basis.Validate();
    } catch (const std::invalid_argument& e) {
      throw ManifestError(c.id, e.what());
    }
  }
  c.expected_length = Require<int>(row, "expected_length", c.id);
  if (c.expected_length < 1) throw ManifestError(c.id, "expected_length must be positive");
  for (const auto& ket : Require<std::vector<std::string>>(row, "expected_sequence", c.id)) {
    if (ket == "...") {
      c.gaps.push_back(c.expected_sequence.size());
      continue;
    }
    try {
      c.expected_sequence.push_back(ParseKet(ket));
    } catch (const std::invalid_argument& e) {
      throw ManifestError(c.id, std::string("expected_sequence: ") + e.what());
    }
  }
  c.abbreviated = Optional<bool>(row, "abbreviated", false, c.id);
  if (c.abbreviated != !c.gaps.empty()) {
    throw ManifestError(c.id, "abbreviated must be set exactly when the sequence contains '...'");
  }
  return c;
}

SearchWitness ParseWitness(const json& row) {
  const std::string id = "search_witness";
  if (!row.is_object()) throw ManifestError(id, "must be an object");
  SearchWitness w;
  w.seed = Require<std::uint64_t>(row, "seed", id);
  w.iterations = Require<std::uint64_t>(row, "iterations", id);
  w.min_length = Optional<int>(row, "min_length", 3, id);
  for (char p : Optional<std::string>(row, "paths", "abc", id)) {
    try {
      w.paths.emplace_back(p);
    } catch (const std::invalid_argument& e) {
      throw ManifestError(id, std::string("paths: ") + e.what());
    }
  }
  if (row.contains("composites")) {
    const json& comps = row["composites"];
    if (!comps.is_object()) throw ManifestError(id, "composites must be an object");
    for (const auto& [name, setup] : comps.items()) {
      if (!setup.is_string()) throw ManifestError(id, "composite '" + name + "' must be a string");
      w.composites.emplace_back(name, ParseRowSetup(setup.get<std::string>(), id));
    }
  }
  return w;
}

}  // namespace

QuantumState ParseFfExpression(std::string_view text, StateLimits limits) {
  return FfParser(text, limits).Parse();
}

ModeLabel ParseKet(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.size() < 3 || s.front() != '|' || s.back() != '>') {
    throw std::invalid_argument("malformed ket '" + std::string(text) + "'");
  }
  std::vector<std::string> parts;
  std::stringstream ss(s.substr(1, s.size() - 2));
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  if (parts.empty() || parts.size() > 3) {
    throw std::invalid_argument("malformed ket '" + std::string(text) + "'");
  }
  ModeLabel m{PathId('a'), 0, Polarization::H};
  auto [ptr, ec] = std::from_chars(parts[0].data(), parts[0].data() + parts[0].size(), m.oam);
  if (ec != std::errc{} || ptr != parts[0].data() + parts[0].size()) {
    throw std::invalid_argument("malformed OAM in ket '" + std::string(text) + "'");
  }
  if (parts.size() >= 2) {
    if (parts[1].size() != 1) throw std::invalid_argument("malformed polarization in ket");
    m.pol = ParsePolarization(parts[1][0]);
  }
  if (parts.size() == 3) {
    if (parts[2].size() != 1) throw std::invalid_argument("malformed path in ket");
    m.path = PathId(parts[2][0]);
  }
  return m;
}

GoldenManifest ParseGoldenManifest(std::string_view json_text) {
  GoldenManifest manifest;
  if (json_text.find_first_not_of(" \t\r\n") == std::string_view::npos) return manifest;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ManifestError("<document>", e.what());
  }
  if (!doc.is_object()) throw ManifestError("<document>", "top level must be an object");
  if (doc.contains("srv_cases")) {
    const json& rows = doc["srv_cases"];
    if (!rows.is_array()) throw ManifestError("<document>", "srv_cases must be an array");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_object()) {
        throw ManifestError("srv#" + std::to_string(i), "row must be an object");
      }
      manifest.srv_cases.push_back(ParseSrvRow(rows[i], i));
    }
  }
  if (doc.contains("cycle_cases")) {
    const json& rows = doc["cycle_cases"];
    if (!rows.is_array()) throw ManifestError("<document>", "cycle_cases must be an array");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_object()) {
        throw ManifestError("cycle#" + std::to_string(i), "row must be an object");
      }
      manifest.cycle_cases.push_back(ParseCycleRow(rows[i], i));
    }
  }
  if (doc.contains("search_witness")) manifest.search_witness = ParseWitness(doc["search_witness"]);
  return manifest;
}

GoldenManifest LoadGoldenManifest(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open manifest " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseGoldenManifest(buf.str());
}

}  // namespace qoptics
