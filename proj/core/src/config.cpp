#include "sshrabi/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sshrabi/errors.hpp"

namespace sshrabi {
namespace {

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  KeyValueConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (value.empty()) throw ParseError("key '" + key + "' has no value", line_no);
    if (cfg.values_.count(key)) throw ParseError("duplicate key '" + key + "'", line_no);
    cfg.values_[key] = value;
    cfg.lines_[key] = line_no;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open parameter file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool KeyValueConfig::contains(std::string_view key) const { return values_.find(key) != values_.end(); }

void KeyValueConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

KeyValueConfig KeyValueConfig::merged_over(const KeyValueConfig& defaults) const {
  KeyValueConfig out = defaults;
  for (const auto& [k, v] : values_) {
    out.values_[k] = v;
    if (auto it = lines_.find(k); it != lines_.end()) out.lines_[k] = it->second;
  }
  return out;
}

void KeyValueConfig::require_known(const std::set<std::string>& allowed) const {
  for (const auto& [k, v] : values_) {
    if (!allowed.count(k)) {
      auto it = lines_.find(k);
      throw ParseError("unknown key '" + k + "'", it == lines_.end() ? 0 : it->second);
    }
  }
}

std::string KeyValueConfig::get_string(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ParseError("missing key '" + std::string(key) + "'");
  return it->second;
}

double KeyValueConfig::get_double(std::string_view key) const {
  const std::string s = get_string(key);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    auto it = lines_.find(key);
    throw ParseError("key '" + std::string(key) + "': '" + s + "' is not a finite number",
                     it == lines_.end() ? 0 : it->second);
  }
  return v;
}

long KeyValueConfig::get_long(std::string_view key) const {
  const std::string s = get_string(key);
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    auto it = lines_.find(key);
    throw ParseError("key '" + std::string(key) + "': '" + s + "' is not an integer",
                     it == lines_.end() ? 0 : it->second);
  }
  return v;
}

bool KeyValueConfig::get_bool(std::string_view key) const {
  const std::string s = get_string(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ParseError("key '" + std::string(key) + "': '" + s + "' is not a boolean");
}

std::string KeyValueConfig::dump() const {
  std::ostringstream out;
  for (const auto& [k, v] : values_) out << k << " = " << v << '\n';
  return out.str();
}

}  // namespace sshrabi
