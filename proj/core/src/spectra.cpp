#include "sshrabi/spectra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <boost/crc.hpp>
#include <json.hpp>

#include "sshrabi/errors.hpp"
#include "sshrabi/table_writer.hpp"

namespace sshrabi {
namespace {

// CODATA 2018.
constexpr double kHbar = 1.054571817e-34;           // J s
constexpr double kElectronVolt = 1.602176634e-19;   // J
constexpr double kMetresToAngstrom = 1e10;

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view field, const char* what, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw ParseError(std::string("field '") + what + "': cannot read number from '" + std::string(field) + "'",
                     line);
  }
  return v;
}

// Rest of the line after skipping `skip` fields.
std::string rest_after(std::string_view line, std::size_t skip) {
  std::size_t i = 0;
  for (std::size_t f = 0; f < skip; ++f) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
  }
  return std::string(trim(line.substr(std::min(i, line.size()))));
}

const Peak& peak_at(const PeakTable& t, std::size_t i) {
  if (i >= t.peaks.size()) {
    throw DomainError("pairing index " + std::to_string(i) + " out of range for table '" + t.sample_id +
                      "' with " + std::to_string(t.peaks.size()) + " peaks");
  }
  return t.peaks[i];
}

}  // namespace

void PeakTable::validate() const {
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    if (!(peaks[i].uncertainty > 0.0)) {
      throw DomainError("table '" + sample_id + "': peak " + std::to_string(i) + " has non-positive uncertainty");
    }
    if (i > 0 && !(peaks[i].position > peaks[i - 1].position)) {
      throw DomainError("table '" + sample_id + "': peak positions must increase strictly");
    }
  }
}

std::vector<PeakTable> parse_fixtures(std::string_view text) {
  std::vector<PeakTable> tables;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto f = split_fields(line);
    const std::string_view key = f[0];

    if (key == "sample") {
      if (f.size() != 2) throw ParseError("'sample' takes exactly one id", line_no);
      tables.push_back(PeakTable{std::string(f[1]), {}, {}, {}, {}});
      continue;
    }
    if (tables.empty()) throw ParseError("record '" + std::string(key) + "' before any 'sample' line", line_no);
    PeakTable& t = tables.back();

    if (key == "note") {
      t.note = rest_after(line, 1);
    } else if (key == "peak") {
      if (f.size() < 3) throw ParseError("'peak' needs position and uncertainty", line_no);
      Peak p;
      p.position = parse_number(f[1], "position", line_no);
      p.uncertainty = parse_number(f[2], "uncertainty", line_no);
      if (!(p.uncertainty > 0.0)) throw ParseError("field 'uncertainty' must be > 0", line_no);
      if (!t.peaks.empty() && !(p.position > t.peaks.back().position)) {
        throw ParseError("field 'position': peaks must be strictly increasing", line_no);
      }
      p.label = rest_after(line, 3);
      t.peaks.push_back(std::move(p));
    } else if (key == "broad") {
      if (f.size() != 5) throw ParseError("'broad' needs centre, uncertainty, width, width uncertainty", line_no);
      t.broad_line = BroadLine{parse_number(f[1], "centre", line_no), parse_number(f[2], "uncertainty", line_no),
                               parse_number(f[3], "width", line_no), parse_number(f[4], "width-uncertainty", line_no)};
    } else if (key == "diamond") {
      if (f.size() < 2 || f.size() > 3) throw ParseError("'diamond' needs a position and optional uncertainty", line_no);
      ReferenceLine r;
      r.position = parse_number(f[1], "position", line_no);
      if (f.size() == 3) r.uncertainty = parse_number(f[2], "uncertainty", line_no);
      t.diamond_line = r;
    } else {
      throw ParseError("unknown record '" + std::string(key) + "'", line_no);
    }
    if (end == text.size()) break;
  }
  return tables;
}

std::vector<PeakTable> load_fixtures(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open fixture file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fixtures(buf.str());
}

const PeakTable& find_table(const std::vector<PeakTable>& tables, std::string_view sample_id) {
  for (const auto& t : tables) {
    if (t.sample_id == sample_id) return t;
  }
  throw DomainError("no table with sample id '" + std::string(sample_id) + "'");
}

std::uint32_t fixture_checksum(std::string_view text) {
  boost::crc_32_type crc;
  crc.process_bytes(text.data(), text.size());
  return crc.checksum();
}

std::filesystem::path default_fixture_path() {
  if (const char* env = std::getenv("SSHRABI_FIXTURES"); env && *env) return env;
#ifdef SSHRABI_INSTALL_FIXTURE
  if (std::filesystem::exists(SSHRABI_INSTALL_FIXTURE)) return SSHRABI_INSTALL_FIXTURE;
#endif
#ifdef SSHRABI_SOURCE_FIXTURE
  return SSHRABI_SOURCE_FIXTURE;
#else
  return "raman_peaks.txt";
#endif
}

std::vector<Measured> peak_shifts(const PeakTable& a, const PeakTable& b, const Pairing& pairing) {
  std::vector<Measured> out;
  out.reserve(pairing.size());
  for (auto [ia, ib] : pairing) {
    const Peak& pa = peak_at(a, ia);
    const Peak& pb = peak_at(b, ib);
    out.push_back({pa.position - pb.position, std::hypot(pa.uncertainty, pb.uncertainty)});
  }
  return out;
}

bool shifts_increasing(const std::vector<Measured>& shifts) {
  for (std::size_t i = 1; i < shifts.size(); ++i) {
    if (!(shifts[i].value > shifts[i - 1].value)) return false;
  }
  return true;
}

std::vector<Measured> peak_ratios(const PeakTable& a, const PeakTable& b, const Pairing& pairing) {
  std::vector<Measured> out;
  out.reserve(pairing.size());
  for (auto [ia, ib] : pairing) {
    const Peak& pa = peak_at(a, ia);
    const Peak& pb = peak_at(b, ib);
    if (!(pb.position > 0.0)) throw DomainError("peak ratio with non-positive denominator");
    const double r = pa.position / pb.position;
    const double rel = std::hypot(pa.uncertainty / pa.position, pb.uncertainty / pb.position);
    out.push_back({r, std::abs(r) * rel});
  }
  return out;
}

Splittings afeswr_splittings(const PeakTable& table, std::size_t main_index,
                             const std::vector<std::size_t>& satellites) {
  const Peak& main = peak_at(table, main_index);
  if (satellites.empty()) throw DomainError("AFESWR splitting needs at least one satellite mode");
  Splittings s;
  double sum = 0.0;
  for (std::size_t idx : satellites) {
    if (idx == main_index) throw DomainError("satellite index equals the main-mode index");
    const double d = std::abs(peak_at(table, idx).position - main.position);
    s.offsets.push_back(d);
    sum += d;
  }
  s.mean = sum / static_cast<double>(satellites.size());
  return s;
}

bool window_check(double value, double lo, double hi) {
  if (!(lo < hi)) throw DomainError("window requires lo < hi");
  return lo <= value && value <= hi;
}

double coherence_length(const CoherenceInput& in) {
  if (!(in.fermi_velocity > 0.0)) throw DomainError("Fermi velocity must be > 0");
  if (!(in.gap > 0.0)) throw DomainError("gap must be > 0");
  return kHbar * in.fermi_velocity / (in.gap * kElectronVolt) * kMetresToAngstrom;
}

RegularityReport run_regularity_checks(const std::vector<PeakTable>& tables, std::uint32_t crc) {
  const PeakTable& cu = find_table(tables, "cu-implanted");
  const PeakTable& cu_back = find_table(tables, "cu-unimplanted");
  const PeakTable& boron = find_table(tables, "b-implanted");

  RegularityReport rep;
  rep.fixture_crc32 = crc;
  auto numeric = [&](std::string name, std::string claim, double expected, double computed, double tol) {
    const bool ok = std::abs(computed - expected) <= tol;
    rep.checks.push_back({std::move(name), std::move(claim), expected, computed, tol, ok});
  };
  // Match after rounding half away from zero to the number of decimals the claim is quoted with.
  auto rounded = [&](std::string name, std::string claim, double expected, double computed, double unit) {
    const bool ok = std::round(computed / unit) == std::round(expected / unit);
    rep.checks.push_back({std::move(name), std::move(claim), expected, computed, unit / 2.0, ok});
  };
  auto boolean = [&](std::string name, std::string claim, bool expected, bool computed) {
    rep.checks.push_back({std::move(name), std::move(claim), expected, computed, std::nullopt, expected == computed});
  };

  // Propagation-direction independent shift between Cu and B samples.
  const Pairing cu_b{{1, 0}, {2, 1}, {3, 2}};
  const auto shifts = peak_shifts(cu, boron, cu_b);
  const double claimed_shift[] = {2.8, 7.0, 11.3};
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    const auto [ia, ib] = cu_b[i];
    std::ostringstream name;
    name << "shift_cu_b_" << format_number(cu.peaks[ia].position) << "_" << format_number(boron.peaks[ib].position);
    std::ostringstream claim;
    claim << "Cu/B line shift reported as " << format_number(claimed_shift[i])
          << " cm^-1; tolerance is the combined peak uncertainty";
    numeric(name.str(), claim.str(), claimed_shift[i], shifts[i].value, shifts[i].uncertainty);
  }
  boolean("shift_cu_b_increasing", "Cu/B shift increases with line frequency", true, shifts_increasing(shifts));

  // Implanted vs unimplanted side excitation of the Cu sample.
  const Pairing sides{{3, 5}, {2, 4}};
  const auto ratios = peak_ratios(cu, cu_back, sides);
  const double claimed_ratio[] = {1.151, 1.134};
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const auto [ia, ib] = sides[i];
    std::ostringstream name;
    name << "ratio_" << format_number(cu.peaks[ia].position) << "_" << format_number(cu_back.peaks[ib].position);
    std::ostringstream claim;
    claim << "relative frequency change reported as " << format_number(claimed_ratio[i]) << " +- 0.003";
    numeric(name.str(), claim.str(), claimed_ratio[i], ratios[i].value, 0.003);
  }
  boolean("ratio_larger_for_higher_line", "the higher-frequency line undergoes the larger relative change", true,
          ratios[0].value > ratios[1].value);

  // AFESWR satellites around the 641.8 main mode; reported values carry one decimal.
  const auto split = afeswr_splittings(cu_back, 1, {2, 0});
  rounded("afeswr_offset_977.1", "satellite offset reported as 335.3 cm^-1", 335.3, split.offsets[0], 0.1);
  rounded("afeswr_offset_354.6", "satellite offset reported as 287.2 cm^-1", 287.2, split.offsets[1], 0.1);
  rounded("afeswr_mean", "mean AFESWR splitting reported as 311.3 cm^-1", 311.3, split.mean, 0.1);
  rep.checks.push_back({"afeswr_mean_vs_expected_300", "mean splitting described as close to the expected 300 cm^-1",
                        300.0, std::abs(split.mean - 300.0), std::nullopt, std::nullopt});

  boolean("window_656.8_in_402.5_673.7", "AFR main mode inside the RS-active window (402.5, 673.7) cm^-1", true,
          window_check(cu.peaks[0].position, 402.5, 673.7));
  boolean("window_540_in_386.7_603", "540 cm^-1 t-PA IR mode inside the window (386.7, 603) cm^-1", true,
          window_check(540.0, 386.7, 603.0));

  rep.all_passed = std::all_of(rep.checks.begin(), rep.checks.end(),
                               [](const CheckResult& c) { return !c.passed || *c.passed; });
  return rep;
}

std::string report_to_json(const RegularityReport& report) {
  using json = nlohmann::ordered_json;
  auto value = [](const CheckValue& v) -> json {
    return std::visit([](auto x) -> json { return x; }, v);
  };
  json checks = json::array();
  for (const auto& c : report.checks) {
    json j;
    j["name"] = c.name;
    j["claim"] = c.claim;
    j["expected"] = value(c.expected);
    j["computed"] = value(c.computed);
    j["tolerance"] = c.tolerance ? json(*c.tolerance) : json(nullptr);
    j["pass"] = c.passed ? json(*c.passed) : json(nullptr);
    checks.push_back(std::move(j));
  }
  json root;
  root["report"] = "raman-regularities";
  root["fixture_crc32"] = report.fixture_crc32;
  root["all_passed"] = report.all_passed;
  root["checks"] = std::move(checks);
  return root.dump(2) + "\n";
}

std::string report_to_csv(const RegularityReport& report) {
  std::ostringstream out;
  CsvWriter csv(out, {"name", "expected", "computed", "tolerance", "pass"});
  auto text = [](const CheckValue& v) {
    return std::visit(
        [](auto x) -> std::string {
          if constexpr (std::is_same_v<decltype(x), bool>) {
            return x ? "true" : "false";
          } else {
            return format_number(x);
          }
        },
        v);
  };
  for (const auto& c : report.checks) {
    csv.row(c.name, text(c.expected), text(c.computed), c.tolerance ? format_number(*c.tolerance) : std::string(),
            c.passed ? (*c.passed ? "true" : "false") : "");
  }
  return out.str();
}

}  // namespace sshrabi
