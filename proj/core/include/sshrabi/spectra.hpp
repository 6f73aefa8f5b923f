#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace sshrabi {

struct Peak {
  double position = 0.0;     ///< cm^-1
  double uncertainty = 0.0;  ///< cm^-1
  std::string label;
};

struct BroadLine {
  double centre = 0.0;
  double centre_uncertainty = 0.0;
  double width = 0.0;
  double width_uncertainty = 0.0;
};

struct ReferenceLine {
  double position = 0.0;
  std::optional<double> uncertainty;
};

struct PeakTable {
  std::string sample_id;
  std::string note;
  std::vector<Peak> peaks;
  std::optional<BroadLine> broad_line;
  std::optional<ReferenceLine> diamond_line;

  void validate() const;
};

/// Parses the line-oriented fixture format (see data/raman_peaks.txt).
/// Throws ParseError naming the line and field.
std::vector<PeakTable> parse_fixtures(std::string_view text);
std::vector<PeakTable> load_fixtures(const std::filesystem::path& path);

const PeakTable& find_table(const std::vector<PeakTable>& tables, std::string_view sample_id);

/// CRC-32 of the fixture bytes, for pinning the shipped file.
std::uint32_t fixture_checksum(std::string_view text);

/// Path of the fixture file shipped with the library.
std::filesystem::path default_fixture_path();

struct Measured {
  double value = 0.0;
  double uncertainty = 0.0;
};

/// (index in a, index in b)
using Pairing = std::vector<std::pair<std::size_t, std::size_t>>;

/// a.position - b.position per pair, root-sum-square uncertainty.
std::vector<Measured> peak_shifts(const PeakTable& a, const PeakTable& b, const Pairing& pairing);

/// True if the shift values strictly increase along the list.
bool shifts_increasing(const std::vector<Measured>& shifts);

/// a.position / b.position per pair, first-order propagated uncertainty.
std::vector<Measured> peak_ratios(const PeakTable& a, const PeakTable& b, const Pairing& pairing);

struct Splittings {
  std::vector<double> offsets;  ///< |satellite - main|, cm^-1, in satellite order
  double mean = 0.0;
};

/// Offsets of the designated satellite modes from the main mode.
Splittings afeswr_splittings(const PeakTable& table, std::size_t main_index,
                             const std::vector<std::size_t>& satellites);

/// Closed-interval membership lo <= value <= hi. Requires lo < hi.
bool window_check(double value, double lo, double hi);

struct CoherenceInput {
  double fermi_velocity = 0.0;  ///< m/s
  double gap = 0.0;             ///< eV
};

/// hbar v_F / gap, returned in Angstrom.
double coherence_length(const CoherenceInput& in);

using CheckValue = std::variant<double, bool>;

struct CheckResult {
  std::string name;
  std::string claim;       ///< the reported value being checked, in words
  CheckValue expected;
  CheckValue computed;
  std::optional<double> tolerance;
  /// Empty for informational entries that carry no pass/fail.
  std::optional<bool> passed;
};

struct RegularityReport {
  std::uint32_t fixture_crc32 = 0;
  std::vector<CheckResult> checks;
  bool all_passed = false;
};

/// Runs every quantitative Raman regularity check against the loaded tables.
RegularityReport run_regularity_checks(const std::vector<PeakTable>& tables, std::uint32_t crc = 0);

/// JSON with stable key order.
std::string report_to_json(const RegularityReport& report);

/// CSV with columns name,expected,computed,tolerance,pass.
std::string report_to_csv(const RegularityReport& report);

}  // namespace sshrabi
