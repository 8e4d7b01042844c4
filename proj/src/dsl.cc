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

#include "qoptics/dsl.h"

#include <cctype>
#include <charconv>
#include <regex>
#include <sstream>
#include <vector>

namespace qoptics {

DslError::DslError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

constexpr std::string_view kPsiUtf8 = "\xCF\x88";   // ψ
constexpr std::string_view kArrowUtf8 = "\xE2\x86\x92";  // →

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && !done(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void skip_spaces() {
    while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
  }

  // Whitespace, newlines and comments.
  void skip_blank() {
    while (!done()) {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#') {
        while (!done() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw DslError(line_, column_, message);
  }

  std::string_view take_word() {
    const std::size_t start = pos_;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) advance();
    return text_.substr(start, pos_ - start);
  }

  std::string_view take_until_delim() {
    const std::size_t start = pos_;
    while (!done() && peek() != ',' && peek() != ']' && peek() != '[' &&
           !std::isspace(static_cast<unsigned char>(peek())) && peek() != '"') {
      advance();
    }
    return text_.substr(start, pos_ - start);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

bool TakePlaceholder(Cursor& cur) {
  if (cur.starts_with(kPsiUtf8)) {
    cur.advance(kPsiUtf8.size());
    return true;
  }
  if (cur.starts_with("$\\psi$")) {
    cur.advance(6);
    return true;
  }
  for (std::string_view p : {"psi", "XXX"}) {
    if (cur.starts_with(p)) {
      cur.advance(p.size());
      return true;
    }
  }
  return false;
}

int ParseInt(Cursor& cur) {
  const std::size_t line = cur.line();
  const std::size_t col = cur.column();
  const std::string_view tok = cur.take_until_delim();
  int value = 0;
  std::string_view digits = tok;
  if (digits.starts_with('+')) digits.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (tok.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw DslError(line, col, "malformed integer '" + std::string(tok) + "'");
  }
  return value;
}

// element := NAME '[' (placeholder | element) (',' arg)* ']'
// Appends the flattened elements (inner first) to `out`.
void ParseElement(Cursor& cur, std::vector<Element>& out) {
  const std::size_t line = cur.line();
  const std::size_t col = cur.column();
  const std::string name(cur.take_word());
  if (name.empty()) cur.fail("expected element name");
  const auto kind = ElementKindFromName(name);
  if (!kind) throw DslError(line, col, "unknown element '" + name + "'");
  cur.skip_spaces();
  cur.expect('[');
  cur.skip_spaces();
  if (!TakePlaceholder(cur)) {
    if (std::isalpha(static_cast<unsigned char>(cur.peek()))) {
      ParseElement(cur, out);
    } else {
      cur.fail("expected placeholder (psi, XXX) or nested element");
    }
  }
  std::vector<PathId> paths;
  std::optional<int> param;
  std::size_t arg_count = 0;
  cur.skip_spaces();
  while (cur.peek() == ',') {
    cur.advance();
    cur.skip_spaces();
    ++arg_count;
    const std::size_t arg_line = cur.line();
    const std::size_t arg_col = cur.column();
    const char c = cur.peek();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::string_view label = cur.take_until_delim();
      if (param) throw DslError(arg_line, arg_col, "path after the integer parameter");
      if (label.size() != 1 || label[0] < 'a' || label[0] > 'z') {
        throw DslError(arg_line, arg_col, "unknown path label '" + std::string(label) + "'");
      }
      paths.emplace_back(label[0]);
    } else {
      if (param) throw DslError(arg_line, arg_col, "more than one integer parameter");
      param = ParseInt(cur);
    }
    cur.skip_spaces();
  }
  if (cur.peek() != ']') cur.fail("expected ',' or ']'");
  cur.advance();
  const int arity = PathArity(*kind);
  const std::size_t want = static_cast<std::size_t>(arity) + (HasParameter(*kind) ? 1 : 0);
  if (arg_count != want || static_cast<int>(paths.size()) != arity ||
      param.has_value() != HasParameter(*kind)) {
    throw DslError(line, col,
                   "arity mismatch: " + name + " takes " + std::to_string(arity) + " path(s)" +
                       (HasParameter(*kind) ? " and an integer" : "") + ", got " +
                       std::to_string(arg_count) + " argument(s)");
  }
  try {
    out.push_back(Element::Make(*kind, std::move(paths), param));
  } catch (const std::invalid_argument& e) {
    throw DslError(line, col, e.what());
  }
}

bool SkipSeparators(Cursor& cur) {
  bool any = false;
  for (;;) {
    const std::size_t line = cur.line();
    cur.skip_blank();
    if (cur.line() != line) any = true;  // a line break separates too
    if (cur.peek() == ',') {
      cur.advance();
    } else if (cur.starts_with("->")) {
      cur.advance(2);
    } else if (cur.starts_with(kArrowUtf8)) {
      cur.advance(kArrowUtf8.size());
    } else if (cur.starts_with("\\to")) {
      cur.advance(3);
    } else {
      return any;
    }
    any = true;
  }
}

}  // namespace

ExperimentConfig ParseSetup(std::string_view text) {
  ExperimentConfig config;
  Cursor cur(text);
  SkipSeparators(cur);
  bool need_separator = false;
  while (!cur.done()) {
    if (need_separator) cur.fail("expected separator between elements");
    const bool quoted = cur.peek() == '"';
    if (quoted) cur.advance();
    cur.skip_spaces();
    ParseElement(cur, config.elements);
    cur.skip_spaces();
    if (quoted) cur.expect('"');
    need_separator = !SkipSeparators(cur);
  }
  return config;
}

namespace {

void PrintElements(const std::vector<Element>& elements, std::vector<std::string>& lines,
                   bool& first) {
  for (const Element& e : elements) {
    if (e.kind() == ElementKind::kComposite) {
      lines.push_back("# composite " + e.composite()->name);
      PrintElements(e.composite()->elements, lines, first);
      lines.push_back("# end composite " + e.composite()->name);
      continue;
    }
    lines.push_back("\"" + e.ToText(first ? "psi" : "XXX") + "\"");
    first = false;
  }
}

}  // namespace

std::string PrintSetup(const ExperimentConfig& config) {
  std::vector<std::string> lines;
  bool first = true;
  PrintElements(config.elements, lines, first);
  // Commas go after every element except the last one.
  std::size_t last_element = lines.size();
  for (std::size_t i = lines.size(); i-- > 0;) {
    if (!lines[i].starts_with('#')) {
      last_element = i;
      break;
    }
  }
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out += lines[i];
    if (!lines[i].starts_with('#') && i != last_element) out += ',';
    out += '\n';
  }
  return out;
}

std::string PrintSetupInline(const ExperimentConfig& config) {
  std::string out;
  const auto flat = config.Expanded();
  for (std::size_t i = 0; i < flat.elements.size(); ++i) {
    if (i > 0) out += ", ";
    out += "\"" + flat.elements[i].ToText(i == 0 ? "psi" : "XXX") + "\"";
  }
  return out;
}

// `re`, `imI`, `re+imI`, `re-im*I`, `I`, `-I`; blanks ignored.
std::optional<Amplitude> ParseComplex(std::string_view text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  }
  if (t.empty()) return std::nullopt;
  auto real_of = [](std::string_view v) -> std::optional<double> {
    if (v.starts_with('+')) v.remove_prefix(1);
    double d = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) return std::nullopt;
    return d;
  };
  auto imag_of = [&](std::string v) -> std::optional<double> {
    v.pop_back();  // the I
    if (!v.empty() && v.back() == '*') v.pop_back();
    if (v.empty() || v == "+") return 1.0;
    if (v == "-") return -1.0;
    return real_of(v);
  };
  if (t.back() != 'I' && t.back() != 'i') {
    const auto re = real_of(t);
    if (!re) return std::nullopt;
    return Amplitude(*re, 0.0);
  }
  // Split before the sign that starts the imaginary part (not an exponent sign).
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size() - 1; k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    const auto im = imag_of(t);
    if (!im) return std::nullopt;
    return Amplitude(0.0, *im);
  }
  const auto re = real_of(std::string_view(t).substr(0, split));
  const auto im = imag_of(t.substr(split));
  if (!re || !im) return std::nullopt;
  return Amplitude(*re, *im);
}

Trigger ParseTrigger(std::string_view text) {
  Trigger trigger;
  Cursor cur(text);
  cur.skip_blank();
  if (text.find('|') == std::string_view::npos) {
    // Shorthand: comma separated OAM values.
    while (!cur.done()) {
      trigger.push_back({ParseInt(cur), 1.0, Polarization::H});
      cur.skip_blank();
      if (cur.peek() == ',') {
        cur.advance();
        cur.skip_blank();
      } else if (!cur.done()) {
        cur.fail("expected ',' in trigger list");
      }
    }
    if (trigger.empty()) cur.fail("empty trigger");
    return trigger;
  }
  bool first = true;
  while (!cur.done()) {
    Amplitude coeff = 1.0;
    if (cur.peek() == '+' || cur.peek() == '-') {
      if (cur.peek() == '-') coeff = -1.0;
      cur.advance();
      cur.skip_blank();
    } else if (!first) {
      cur.fail("expected '+' or '-' between kets");
    }
    first = false;
    if (cur.peek() == '(') {
      const std::size_t line = cur.line();
      const std::size_t col = cur.column();
      cur.advance();
      std::string inner;
      while (!cur.done() && cur.peek() != ')') {
        inner += cur.peek();
        cur.advance();
      }
      cur.expect(')');
      const auto value = ParseComplex(inner);
      if (!value) throw DslError(line, col, "malformed coefficient '" + inner + "'");
      coeff *= *value;
    } else if (cur.peek() == 'I' || cur.peek() == 'i') {
      coeff *= Amplitude(0.0, 1.0);
      cur.advance();
    } else if (std::isdigit(static_cast<unsigned char>(cur.peek())) || cur.peek() == '.') {
      const std::size_t line = cur.line();
      const std::size_t col = cur.column();
      std::string num;
      while (std::isdigit(static_cast<unsigned char>(cur.peek())) || cur.peek() == '.' ||
             cur.peek() == 'e') {
        num += cur.peek();
        cur.advance();
      }
      try {
        coeff *= std::stod(num);
      } catch (const std::logic_error&) {
        throw DslError(line, col, "malformed coefficient '" + num + "'");
      }
    }
    cur.skip_blank();
    if (cur.peek() == '*') {
      cur.advance();
      cur.skip_blank();
    }
    cur.expect('|');
    cur.skip_blank();
    TriggerComponent comp;
    comp.amp = coeff;
    const std::size_t line = cur.line();
    const std::size_t col = cur.column();
    std::string num;
    while (!cur.done() && cur.peek() != '>' && cur.peek() != ',') {
      if (!std::isspace(static_cast<unsigned char>(cur.peek()))) num += cur.peek();
      cur.advance();
    }
    {
      int value = 0;
      std::string_view digits = num;
      if (digits.starts_with('+')) digits.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (num.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw DslError(line, col, "malformed integer '" + num + "'");
      }
      comp.oam = value;
    }
    if (cur.peek() == ',') {
      cur.advance();
      cur.skip_blank();
      try {
        comp.pol = ParsePolarization(cur.peek());
      } catch (const std::invalid_argument& e) {
        cur.fail(e.what());
      }
      cur.advance();
      cur.skip_blank();
    }
    cur.expect('>');
    trigger.push_back(comp);
    cur.skip_blank();
  }
  if (trigger.empty()) cur.fail("empty trigger");
  return trigger;
}

std::optional<std::string> SetupDocument::Get(const std::string& key) const {
  auto it = header.find(key);
  if (it == header.end()) return std::nullopt;
  return it->second;
}

SetupDocument ParseSetupDocument(std::string_view text) {
  static const std::regex kHeader(R"(^\s*([A-Za-z_][A-Za-z0-9_-]*)\s*:\s*(.*?)\s*$)");
  SetupDocument doc;
  std::string body;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    if (!line.starts_with('#') && std::regex_match(line, m, kHeader)) {
      doc.header[m[1].str()] = m[2].str();
      body += '\n';  // keep line numbers aligned
    } else {
      body += line;
      body += '\n';
    }
  }
  doc.config = ParseSetup(body);
  return doc;
}

std::string PrintSetupDocument(const SetupDocument& doc) {
  std::string out;
  for (const auto& [key, value] : doc.header) out += key + ": " + value + "\n";
  return out + PrintSetup(doc.config);
}

}  // namespace qoptics
