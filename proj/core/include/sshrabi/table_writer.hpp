#pragma once

#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sshrabi {

/// Shortest round-trip decimal representation ('.' separator, locale-free).
std::string format_number(double value);

/// Comma-separated writer with a header row. Doubles use format_number,
/// booleans print as true/false.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  template <typename... Fields>
  void row(const Fields&... fields) {
    begin_row();
    (cell(fields), ...);
    end_row();
  }

  void row_values(const std::vector<double>& values);

 private:
  void begin_row();
  void end_row();
  void cell(double v);
  void cell(bool v);
  void cell(int v);
  void cell(long v);
  void cell(std::size_t v);
  void cell(std::string_view v);
  void cell(const std::string& v) { cell(std::string_view(v)); }
  void cell(const char* v) { cell(std::string_view(v)); }
  void separator();

  std::ostream& out_;
  std::size_t columns_;
  std::size_t written_ = 0;
};

/// Writes `content` to a sibling temp file and renames it over `path`.
void write_file_atomically(const std::filesystem::path& path, std::string_view content);

}  // namespace sshrabi
