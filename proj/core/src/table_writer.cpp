#include "sshrabi/table_writer.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <system_error>

#include "sshrabi/errors.hpp"

namespace sshrabi {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

void CsvWriter::row_values(const std::vector<double>& values) {
  begin_row();
  for (double v : values) cell(v);
  end_row();
}

void CsvWriter::begin_row() { written_ = 0; }

void CsvWriter::end_row() {
  if (written_ != columns_) {
    throw Error("csv row has " + std::to_string(written_) + " cells, header has " +
                std::to_string(columns_));
  }
  out_ << '\n';
}

void CsvWriter::separator() {
  if (written_++) out_ << ',';
}

void CsvWriter::cell(double v) {
  separator();
  out_ << format_number(v);
}
void CsvWriter::cell(bool v) {
  separator();
  out_ << (v ? "true" : "false");
}
void CsvWriter::cell(int v) {
  separator();
  out_ << v;
}
void CsvWriter::cell(long v) {
  separator();
  out_ << v;
}
void CsvWriter::cell(std::size_t v) {
  separator();
  out_ << v;
}
void CsvWriter::cell(std::string_view v) {
  separator();
  out_ << v;
}

void write_file_atomically(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace sshrabi
