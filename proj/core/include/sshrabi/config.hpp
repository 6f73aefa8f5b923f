#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace sshrabi {

/// `key = value` text configuration. '#' starts a comment; blank lines are
/// ignored; keys are case-sensitive and may appear once.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::filesystem::path& path);

  bool contains(std::string_view key) const;
  void set(const std::string& key, const std::string& value);

  /// Values overlay `defaults`; keys absent here keep their default.
  KeyValueConfig merged_over(const KeyValueConfig& defaults) const;

  /// Throws ParseError naming the first key not in `allowed`.
  void require_known(const std::set<std::string>& allowed) const;

  std::string get_string(std::string_view key) const;
  double get_double(std::string_view key) const;
  long get_long(std::string_view key) const;
  bool get_bool(std::string_view key) const;

  /// Sorted `key = value` lines.
  std::string dump() const;

  const std::map<std::string, std::string, std::less<>>& entries() const { return values_; }

 private:
  std::map<std::string, std::string, std::less<>> values_;
  std::map<std::string, int, std::less<>> lines_;
};

}  // namespace sshrabi
