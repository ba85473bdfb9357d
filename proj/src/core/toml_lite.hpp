#pragma once

#include <map>
#include <string>
#include <vector>

namespace morselink::io {

// Minimal TOML subset used by config files: comments, [tables],
// [[arrays of tables]], and key = string | number | bool | flat array.
struct TomlValue {
  enum class kind { string, number, boolean, array };
  kind k = kind::string;
  std::string s;
  double d = 0.0;
  long long i = 0;
  bool is_integer = false;
  bool b = false;
  std::vector<TomlValue> arr;
};

struct TomlTable {
  std::map<std::string, TomlValue> values;

  bool has(const std::string& key) const { return values.count(key) > 0; }
  const TomlValue& get(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  double get_number(const std::string& key) const;
  long long get_integer(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::string get_string_or(const std::string& key, const std::string& fallback) const;
  double get_number_or(const std::string& key, double fallback) const;
  long long get_integer_or(const std::string& key, long long fallback) const;
};

struct TomlDoc {
  TomlTable root;
  std::map<std::string, std::vector<TomlTable>> sections;
};

TomlDoc parse_toml(const std::string& text);
TomlDoc parse_toml_file(const std::string& path);

}  // namespace morselink::io
