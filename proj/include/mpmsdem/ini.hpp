#pragma once

#include <string>
#include <vector>

namespace mpmsdem {

// Line-oriented key/value config format: [section] headers, key = value
// pairs, '#' or ';' comments. Sections keep file order; duplicate keys within
// a section are an error.
struct IniEntry {
  std::string key;
  std::string value;
  int line;
};

struct IniSection {
  std::string name;
  int line = 0;
  std::vector<IniEntry> entries;

  const IniEntry* find(const std::string& key) const;
  bool has(const std::string& key) const { return find(key) != nullptr; }
  // Typed getters throw ParseError on malformed values.
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer_or(const std::string& key, int fallback) const;
  bool flag_or(const std::string& key, bool fallback) const;
  std::string text(const std::string& key) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;
  std::vector<double> numbers(const std::string& key) const;  // whitespace-separated
};

struct IniFile {
  std::vector<IniSection> sections;

  static IniFile parse(const std::string& content);
  static IniFile parse_file(const std::string& path);

  const IniSection* find(const std::string& name) const;
  std::vector<const IniSection*> all_with_prefix(const std::string& prefix) const;
};

}  // namespace mpmsdem
