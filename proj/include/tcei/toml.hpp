// Copyright (c) 2026 tcei authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tcei/core.hpp"

// Minimal TOML subset, enough for the bundled config files: [sections],
// bare keys, integers, floats, booleans, double-quoted strings and flat
// arrays of those, with # comments. Parse errors carry line numbers.
namespace tcei::toml {

class Value {
 public:
  enum class Kind { kInt, kFloat, kBool, kString, kArray };

  static Value integer(std::int64_t v);
  static Value real(double v);
  static Value boolean(bool v);
  static Value string(std::string v);
  static Value array(std::vector<Value> v);

  Kind kind() const { return kind_; }

  std::int64_t as_int() const;
  double as_double() const;  // accepts integers too
  bool as_bool() const;
  const std::string& as_string() const;
  const std::vector<Value>& as_array() const;

  std::vector<std::int64_t> as_int_array() const;
  std::vector<double> as_double_array() const;

 private:
  Kind kind_ = Kind::kInt;
  std::int64_t int_ = 0;
  double float_ = 0.0;
  bool bool_ = false;
  std::string string_;
  std::vector<Value> array_;
};

/// Flat view of a parsed file: keys are "section.key", or the bare key for
/// values above the first section header.
struct Document {
  std::map<std::string, Value> values;

  bool contains(const std::string& key) const { return values.count(key) > 0; }
  const Value& at(const std::string& key) const;
};

Document parse(std::string_view text);

/// Reads and parses a file; missing/unreadable files raise IoError.
Document parse_file(const std::string& path);

}  // namespace tcei::toml
