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

#include "qoptics/quantum_state.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qoptics {

OamCutoffError::OamCutoffError(int oam, int cutoff)
    : std::runtime_error("OAM value " + std::to_string(oam) + " exceeds cutoff " +
                         std::to_string(cutoff)),
      oam_(oam) {}

PhotonTerm::PhotonTerm(std::initializer_list<ModeLabel> modes) : modes_(modes) {
  std::sort(modes_.begin(), modes_.end());
}

PhotonTerm::PhotonTerm(std::vector<ModeLabel> modes) : modes_(std::move(modes)) {
  std::sort(modes_.begin(), modes_.end());
}

std::size_t PhotonTerm::CountInPath(PathId path) const {
  return static_cast<std::size_t>(std::count_if(
      modes_.begin(), modes_.end(), [path](const ModeLabel& m) { return m.path == path; }));
}

PhotonTerm PhotonTerm::Times(const PhotonTerm& other) const {
  std::vector<ModeLabel> merged;
  merged.reserve(modes_.size() + other.modes_.size());
  std::merge(modes_.begin(), modes_.end(), other.modes_.begin(), other.modes_.end(),
             std::back_inserter(merged));
  PhotonTerm out;
  out.modes_ = std::move(merged);
  return out;
}

QuantumState QuantumState::Of(const PhotonTerm& term, Amplitude amp, StateLimits limits) {
  QuantumState s(limits);
  s.Add(term, amp);
  return s;
}

QuantumState QuantumState::Vacuum(StateLimits limits) { return Of(PhotonTerm{}, 1.0, limits); }

Amplitude QuantumState::At(const PhotonTerm& term) const {
  auto it = terms_.find(term);
  return it == terms_.end() ? Amplitude{} : it->second;
}

void QuantumState::CheckCutoff(const PhotonTerm& term) const {
  for (const ModeLabel& m : term.modes()) {
    if (std::abs(m.oam) > limits_.oam_cutoff) throw OamCutoffError(m.oam, limits_.oam_cutoff);
  }
}

void QuantumState::Add(const PhotonTerm& term, Amplitude amp) {
  CheckCutoff(term);
  auto [it, inserted] = terms_.try_emplace(term, amp);
  if (!inserted) it->second += amp;
  if (std::abs(it->second) < limits_.zero_tolerance) terms_.erase(it);
}

std::optional<std::size_t> QuantumState::photon_number() const {
  if (terms_.empty()) return std::nullopt;
  const std::size_t n = terms_.begin()->first.photon_count();
  for (const auto& [term, amp] : terms_) {
    if (term.photon_count() != n) return std::nullopt;
  }
  return n;
}

QuantumState QuantumState::Scaled(Amplitude factor) const {
  QuantumState out(limits_);
  for (const auto& [term, amp] : terms_) out.Add(term, amp * factor);
  return out;
}

QuantumState QuantumState::Plus(const QuantumState& other) const {
  QuantumState out = *this;
  for (const auto& [term, amp] : other.terms_) out.Add(term, amp);
  return out;
}

QuantumState QuantumState::Times(const QuantumState& other) const {
  QuantumState out(limits_);
  for (const auto& [t1, a1] : terms_) {
    for (const auto& [t2, a2] : other.terms_) out.Add(t1.Times(t2), a1 * a2);
  }
  return out;
}

QuantumState QuantumState::Normalized() const {
  const double n = StateNorm(*this);
  if (n == 0.0) return *this;
  QuantumState out(limits_);
  for (const auto& [term, amp] : terms_) out.terms_.emplace(term, amp / n);
  return out;
}

void QuantumState::Prune() {
  std::erase_if(terms_,
                [this](const auto& kv) { return std::abs(kv.second) < limits_.zero_tolerance; });
}

bool QuantumState::operator==(const QuantumState& other) const { return terms_ == other.terms_; }

double StateNorm(const QuantumState& state) {
  double sum = 0.0;
  for (const auto& [term, amp] : state.terms()) sum += std::norm(amp);
  return std::sqrt(sum);
}

std::optional<Amplitude> ProportionalityFactor(const QuantumState& lhs, const QuantumState& rhs,
                                               double tol) {
  if (lhs.is_zero() || rhs.is_zero()) return std::nullopt;
  if (lhs.size() != rhs.size()) return std::nullopt;
  // Anchor on the largest coefficient of lhs.
  auto anchor = std::max_element(
      lhs.terms().begin(), lhs.terms().end(),
      [](const auto& x, const auto& y) { return std::abs(x.second) < std::abs(y.second); });
  const Amplitude r = rhs.At(anchor->first);
  if (r == Amplitude{}) return std::nullopt;
  const Amplitude factor = r / anchor->second;
  const double scale = StateNorm(rhs);
  for (const auto& [term, amp] : lhs.terms()) {
    auto it = rhs.terms().find(term);
    if (it == rhs.terms().end()) return std::nullopt;
    if (std::abs(it->second - factor * amp) > tol * scale) return std::nullopt;
  }
  return factor;
}

bool StateEquiv(const QuantumState& lhs, const QuantumState& rhs, double tol) {
  if (lhs.is_zero() || rhs.is_zero()) return lhs.is_zero() && rhs.is_zero();
  const auto factor = ProportionalityFactor(lhs.Normalized(), rhs.Normalized(), tol);
  return factor.has_value() && std::abs(std::abs(*factor) - 1.0) <= tol;
}

std::string TermToString(const PhotonTerm& term) {
  std::string out;
  bool first = true;
  for (const ModeLabel& m : term.modes()) {
    if (!first) out += " * ";
    out += ToString(m);
    first = false;
  }
  return out;
}

namespace {

std::string FormatReal(double v) {
  if (v == 0.0) v = 0.0;  // no negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

[[noreturn]] void ParseFail(std::size_t line, const std::string& what) {
  throw std::invalid_argument("state line " + std::to_string(line) + ": " + what);
}

double ParseReal(std::string_view tok, std::size_t line) {
  try {
    std::size_t used = 0;
    const std::string s(tok);
    const double v = std::stod(s, &used);
    if (used != s.size()) ParseFail(line, "malformed number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    ParseFail(line, "malformed number '" + std::string(tok) + "'");
  }
}

ModeLabel ParseMode(std::string_view tok, std::size_t line) {
  // path[oam,pol]
  const auto open = tok.find('[');
  const auto comma = tok.find(',');
  const auto close = tok.find(']');
  if (open != 1 || comma == std::string_view::npos || close != tok.size() - 1 || comma > close ||
      comma + 2 != close) {
    ParseFail(line, "malformed mode '" + std::string(tok) + "'");
  }
  ModeLabel m;
  try {
    m.path = PathId(tok[0]);
    m.pol = ParsePolarization(tok[comma + 1]);
  } catch (const std::invalid_argument& e) {
    ParseFail(line, e.what());
  }
  const std::string_view num = tok.substr(open + 1, comma - open - 1);
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), m.oam);
  if (ec != std::errc{} || ptr != num.data() + num.size()) {
    ParseFail(line, "malformed OAM '" + std::string(num) + "'");
  }
  return m;
}

}  // namespace

std::string SerializeState(const QuantumState& state) {
  std::string out;
  for (const auto& [term, amp] : state.terms()) {
    // -7e-17 next to 0.577 is rounding noise, below the printed precision.
    const double floor = 1e-13 * std::abs(amp);
    out += FormatReal(std::abs(amp.real()) < floor ? 0.0 : amp.real());
    out += ' ';
    out += FormatReal(std::abs(amp.imag()) < floor ? 0.0 : amp.imag());
    out += " :";
    if (!term.empty()) {
      out += ' ';
      out += TermToString(term);
    }
    out += '\n';
  }
  return out;
}

QuantumState ParseState(std::string_view text, StateLimits limits) {
  QuantumState state(limits);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) ParseFail(line_no, "missing ':'");
    std::istringstream head(line.substr(0, colon));
    std::string re, im, extra;
    if (!(head >> re >> im) || (head >> extra)) ParseFail(line_no, "expected 're im :'");
    std::vector<ModeLabel> modes;
    std::istringstream tail(line.substr(colon + 1));
    std::string tok;
    bool expect_mode = true;
    while (tail >> tok) {
      if (expect_mode) {
        modes.push_back(ParseMode(tok, line_no));
      } else if (tok != "*") {
        ParseFail(line_no, "expected '*' between modes");
      }
      expect_mode = !expect_mode;
    }
    if (expect_mode && !modes.empty()) ParseFail(line_no, "dangling '*'");
    state.Add(PhotonTerm(std::move(modes)),
              Amplitude(ParseReal(re, line_no), ParseReal(im, line_no)));
  }
  return state;
}

}  // namespace qoptics
