#include "mpmsdem/ini.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mpmsdem/errors.hpp"

namespace mpmsdem {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& v, const std::string& key, int line) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("value of '" + key + "' is not a number: '" + v + "'", line);
  }
}

}  // namespace

const IniEntry* IniSection::find(const std::string& key) const {
  for (const IniEntry& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

double IniSection::number(const std::string& key) const {
  const IniEntry* e = find(key);
  if (!e) throw ParseError("section [" + name + "] is missing key '" + key + "'", line);
  return parse_double(e->value, key, e->line);
}

double IniSection::number_or(const std::string& key, double fallback) const {
  const IniEntry* e = find(key);
  return e ? parse_double(e->value, key, e->line) : fallback;
}

int IniSection::integer(const std::string& key) const {
  const double d = number(key);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw ParseError("value of '" + key + "' is not an integer", find(key)->line);
  return i;
}

int IniSection::integer_or(const std::string& key, int fallback) const {
  return has(key) ? integer(key) : fallback;
}

bool IniSection::flag_or(const std::string& key, bool fallback) const {
  const IniEntry* e = find(key);
  if (!e) return fallback;
  std::string v = e->value;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ParseError("value of '" + key + "' is not a boolean: '" + e->value + "'", e->line);
}

std::string IniSection::text(const std::string& key) const {
  const IniEntry* e = find(key);
  if (!e) throw ParseError("section [" + name + "] is missing key '" + key + "'", line);
  return e->value;
}

std::string IniSection::text_or(const std::string& key, const std::string& fallback) const {
  const IniEntry* e = find(key);
  return e ? e->value : fallback;
}

std::vector<double> IniSection::numbers(const std::string& key) const {
  const IniEntry* e = find(key);
  if (!e) throw ParseError("section [" + name + "] is missing key '" + key + "'", line);
  std::istringstream in(e->value);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_double(tok, key, e->line));
  if (out.empty()) throw ParseError("value of '" + key + "' is empty", e->line);
  return out;
}

IniFile IniFile::parse(const std::string& content) {
  IniFile file;
  std::istringstream in(content);
  std::string raw;
  int line_no = 0;
  IniSection* current = nullptr;
  while (std::getline(in, raw)) {
    ++line_no;
    const size_t hash = raw.find_first_of("#;");
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("unterminated section header", line_no);
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (name.empty()) throw ParseError("empty section name", line_no);
      file.sections.push_back({name, line_no, {}});
      current = &file.sections.back();
      continue;
    }
    const size_t eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value' or '[section]'", line_no);
    if (!current) throw ParseError("key/value pair before any [section]", line_no);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (current->find(key))
      throw ParseError("duplicate key '" + key + "' in section [" + current->name + "]", line_no);
    current->entries.push_back({key, value, line_no});
  }
  return file;
}

IniFile IniFile::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open config file '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const IniSection* IniFile::find(const std::string& name) const {
  for (const IniSection& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<const IniSection*> IniFile::all_with_prefix(const std::string& prefix) const {
  std::vector<const IniSection*> out;
  for (const IniSection& s : sections) {
    if (s.name.rfind(prefix, 0) == 0) out.push_back(&s);
  }
  return out;
}

}  // namespace mpmsdem
