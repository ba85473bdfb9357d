#include "toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace morselink::io {

const TomlValue& TomlTable::get(const std::string& key) const {
  auto it = values.find(key);
  require(it != values.end(), errc::parse_error, "missing config key: " + key);
  return it->second;
}

std::string TomlTable::get_string(const std::string& key) const {
  const TomlValue& v = get(key);
  require(v.k == TomlValue::kind::string, errc::parse_error, key + " is not a string");
  return v.s;
}

double TomlTable::get_number(const std::string& key) const {
  const TomlValue& v = get(key);
  require(v.k == TomlValue::kind::number, errc::parse_error, key + " is not a number");
  return v.d;
}

long long TomlTable::get_integer(const std::string& key) const {
  const TomlValue& v = get(key);
  require(v.k == TomlValue::kind::number && v.is_integer, errc::parse_error,
          key + " is not an integer");
  return v.i;
}

bool TomlTable::get_bool(const std::string& key) const {
  const TomlValue& v = get(key);
  require(v.k == TomlValue::kind::boolean, errc::parse_error, key + " is not a bool");
  return v.b;
}

std::string TomlTable::get_string_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double TomlTable::get_number_or(const std::string& key, double fallback) const {
  return has(key) ? get_number(key) : fallback;
}

long long TomlTable::get_integer_or(const std::string& key, long long fallback) const {
  return has(key) ? get_integer(key) : fallback;
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  int line = 1;

  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }
  char next() {
    char c = s[i++];
    if (c == '\n') ++line;
    return c;
  }
  void skip_inline_ws() {
    while (!done() && (peek() == ' ' || peek() == '\t')) ++i;
  }
  [[noreturn]] void die(const std::string& what) const {
    fail(errc::parse_error, "config line " + std::to_string(line) + ": " + what);
  }
};

TomlValue parse_value(Cursor& c);

TomlValue parse_scalar(Cursor& c) {
  TomlValue v;
  if (c.peek() == '"') {
    c.next();
    v.k = TomlValue::kind::string;
    while (!c.done() && c.peek() != '"') {
      char ch = c.next();
      if (ch == '\\' && !c.done()) {
        char esc = c.next();
        switch (esc) {
          case 'n': ch = '\n'; break;
          case 't': ch = '\t'; break;
          case '"': ch = '"'; break;
          case '\\': ch = '\\'; break;
          default: c.die("unsupported escape");
        }
      }
      v.s.push_back(ch);
    }
    if (c.done()) c.die("unterminated string");
    c.next();
    return v;
  }
  std::string tok;
  while (!c.done() && (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '.' ||
                       c.peek() == '+' || c.peek() == '-' || c.peek() == '_' || c.peek() == 'e' ||
                       c.peek() == 'E'))
    tok.push_back(c.next());
  if (tok == "true" || tok == "false") {
    v.k = TomlValue::kind::boolean;
    v.b = tok == "true";
    return v;
  }
  if (tok.empty()) c.die("expected a value");
  v.k = TomlValue::kind::number;
  try {
    size_t used = 0;
    if (tok.find('.') == std::string::npos && tok.find('e') == std::string::npos &&
        tok.find('E') == std::string::npos) {
      v.i = std::stoll(tok, &used);
      v.d = static_cast<double>(v.i);
      v.is_integer = true;
    } else {
      v.d = std::stod(tok, &used);
    }
    if (used != tok.size()) c.die("bad number: " + tok);
  } catch (const std::logic_error&) {
    c.die("bad number: " + tok);
  }
  return v;
}

TomlValue parse_value(Cursor& c) {
  c.skip_inline_ws();
  if (c.done()) c.die("expected a value");
  if (c.peek() != '[') return parse_scalar(c);
  c.next();
  TomlValue v;
  v.k = TomlValue::kind::array;
  c.skip_inline_ws();
  if (!c.done() && c.peek() == ']') {
    c.next();
    return v;
  }
  while (true) {
    v.arr.push_back(parse_value(c));
    c.skip_inline_ws();
    if (c.done()) c.die("unterminated array");
    char ch = c.next();
    if (ch == ']') break;
    if (ch != ',') c.die("expected , or ] in array");
    c.skip_inline_ws();
    if (!c.done() && c.peek() == ']') {  // trailing comma
      c.next();
      break;
    }
  }
  return v;
}

std::string parse_key(Cursor& c) {
  std::string key;
  while (!c.done() && (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_' ||
                       c.peek() == '-'))
    key.push_back(c.next());
  if (key.empty()) c.die("expected a key");
  return key;
}

}  // namespace

TomlDoc parse_toml(const std::string& text) {
  TomlDoc doc;
  TomlTable* current = &doc.root;
  Cursor c{text};
  while (!c.done()) {
    c.skip_inline_ws();
    if (c.done()) break;
    char ch = c.peek();
    if (ch == '\n' || ch == '\r') {
      c.next();
      continue;
    }
    if (ch == '#') {
      while (!c.done() && c.peek() != '\n') c.next();
      continue;
    }
    if (ch == '[') {
      c.next();
      bool array_table = !c.done() && c.peek() == '[';
      if (array_table) c.next();
      c.skip_inline_ws();
      std::string name = parse_key(c);
      c.skip_inline_ws();
      if (c.done() || c.next() != ']') c.die("expected ]");
      if (array_table && (c.done() || c.next() != ']')) c.die("expected ]]");
      auto& vec = doc.sections[name];
      if (array_table || vec.empty()) vec.emplace_back();
      current = &vec.back();
      continue;
    }
    std::string key = parse_key(c);
    c.skip_inline_ws();
    if (c.done() || c.next() != '=') c.die("expected = after " + key);
    TomlValue v = parse_value(c);
    require(current->values.emplace(key, std::move(v)).second, errc::parse_error,
            "duplicate key: " + key);
    c.skip_inline_ws();
    if (!c.done() && c.peek() == '#')
      while (!c.done() && c.peek() != '\n') c.next();
  }
  return doc;
}

TomlDoc parse_toml_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_toml(ss.str());
}

}  // namespace morselink::io
