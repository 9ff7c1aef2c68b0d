// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#include "tcei/toml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tcei::toml {

Value Value::integer(std::int64_t v) {
  Value out;
  out.kind_ = Kind::kInt;
  out.int_ = v;
  return out;
}

Value Value::real(double v) {
  Value out;
  out.kind_ = Kind::kFloat;
  out.float_ = v;
  return out;
}

Value Value::boolean(bool v) {
  Value out;
  out.kind_ = Kind::kBool;
  out.bool_ = v;
  return out;
}

Value Value::string(std::string v) {
  Value out;
  out.kind_ = Kind::kString;
  out.string_ = std::move(v);
  return out;
}

Value Value::array(std::vector<Value> v) {
  Value out;
  out.kind_ = Kind::kArray;
  out.array_ = std::move(v);
  return out;
}

std::int64_t Value::as_int() const {
  if (kind_ != Kind::kInt) throw ValidationError("TOML value is not an integer");
  return int_;
}

double Value::as_double() const {
  if (kind_ == Kind::kInt) return static_cast<double>(int_);
  if (kind_ != Kind::kFloat) throw ValidationError("TOML value is not a number");
  return float_;
}

bool Value::as_bool() const {
  if (kind_ != Kind::kBool) throw ValidationError("TOML value is not a boolean");
  return bool_;
}

const std::string& Value::as_string() const {
  if (kind_ != Kind::kString) throw ValidationError("TOML value is not a string");
  return string_;
}

const std::vector<Value>& Value::as_array() const {
  if (kind_ != Kind::kArray) throw ValidationError("TOML value is not an array");
  return array_;
}

std::vector<std::int64_t> Value::as_int_array() const {
  std::vector<std::int64_t> out;
  for (const Value& v : as_array()) out.push_back(v.as_int());
  return out;
}

std::vector<double> Value::as_double_array() const {
  std::vector<double> out;
  for (const Value& v : as_array()) out.push_back(v.as_double());
  return out;
}

const Value& Document::at(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw ValidationError("missing config key: " + key);
  return it->second;
}

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw ValidationError("config line " + std::to_string(line) + ": " + what);
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  for (char c : key) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  }
  return true;
}

// Parses one scalar or array from `text`, advancing past it. `line` is for
// error messages only.
Value parse_value(std::string_view& text, int line);

Value parse_scalar(std::string_view token, int line) {
  token = strip(token);
  if (token.empty()) fail(line, "empty value");
  if (token == "true") return Value::boolean(true);
  if (token == "false") return Value::boolean(false);
  const bool is_float = token.find_first_of(".eE") != std::string_view::npos &&
                        token.find_first_not_of("+-0123456789.eE") == std::string_view::npos;
  if (is_float) {
    // from_chars for double is present in libstdc++ >= 11
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      fail(line, "bad float literal '" + std::string(token) + "'");
    }
    return Value::real(v);
  }
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    fail(line, "bad value literal '" + std::string(token) + "'");
  }
  return Value::integer(v);
}

Value parse_string(std::string_view& text, int line) {
  text.remove_prefix(1);  // opening quote
  std::string out;
  while (!text.empty() && text.front() != '"') {
    char c = text.front();
    text.remove_prefix(1);
    if (c == '\\') {
      if (text.empty()) fail(line, "dangling escape in string");
      const char esc = text.front();
      text.remove_prefix(1);
      switch (esc) {
        case 'n': c = '\n'; break;
        case 't': c = '\t'; break;
        case '"': c = '"'; break;
        case '\\': c = '\\'; break;
        default: fail(line, std::string("unsupported escape \\") + esc);
      }
    }
    out.push_back(c);
  }
  if (text.empty()) fail(line, "unterminated string");
  text.remove_prefix(1);  // closing quote
  return Value::string(std::move(out));
}

Value parse_array(std::string_view& text, int line) {
  text.remove_prefix(1);  // opening bracket
  std::vector<Value> items;
  while (true) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
      text.remove_prefix(1);
    }
    if (text.empty()) fail(line, "unterminated array");
    if (text.front() == ']') {
      text.remove_prefix(1);
      return Value::array(std::move(items));
    }
    items.push_back(parse_value(text, line));
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
      text.remove_prefix(1);
    }
    if (!text.empty() && text.front() == ',') {
      text.remove_prefix(1);
      continue;
    }
    if (!text.empty() && text.front() == ']') continue;  // closes next loop
    fail(line, "expected ',' or ']' in array");
  }
}

Value parse_value(std::string_view& text, int line) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  if (text.empty()) fail(line, "missing value");
  if (text.front() == '"') return parse_string(text, line);
  if (text.front() == '[') return parse_array(text, line);
  const std::size_t end = text.find_first_of(",]#");
  std::string_view token = text.substr(0, end);
  text.remove_prefix(token.size());
  return parse_scalar(token, line);
}

}  // namespace

Document parse(std::string_view text) {
  Document doc;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    // Cut comments outside strings.
    bool in_string = false;
    std::size_t cut = line.size();
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
      if (line[i] == '#' && !in_string) {
        cut = i;
        break;
      }
    }
    line = strip(line.substr(0, cut));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      const std::string_view name = strip(line.substr(1, line.size() - 2));
      if (!valid_key(name)) fail(line_no, "malformed section name");
      section = std::string(name);
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string_view key = strip(line.substr(0, eq));
    if (!valid_key(key)) fail(line_no, "malformed key '" + std::string(key) + "'");
    std::string_view rest = line.substr(eq + 1);
    Value value = parse_value(rest, line_no);
    if (!strip(rest).empty()) fail(line_no, "trailing characters after value");

    const std::string full_key =
        section.empty() ? std::string(key) : section + "." + std::string(key);
    if (doc.values.count(full_key) > 0) fail(line_no, "duplicate key '" + full_key + "'");
    doc.values.emplace(full_key, std::move(value));
  }
  return doc;
}

Document parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

}  // namespace tcei::toml
