#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sshrabi/errors.hpp"
#include "sshrabi/spectra.hpp"

using namespace sshrabi;

namespace {

std::string fixture_text() {
  std::ifstream in(default_fixture_path(), std::ios::binary);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::vector<PeakTable>& tables() {
  static const auto t = load_fixtures(default_fixture_path());
  return t;
}

}  // namespace

TEST_CASE("shipped fixture is pinned by checksum") {
  CHECK(fixture_checksum(fixture_text()) == 0xcba16aa9u);
  CHECK(fixture_checksum("123456789") == 0xcbf43926u);
}

TEST_CASE("fixture values match the reported peak tables") {
  const auto& cu = find_table(tables(), "cu-implanted");
  REQUIRE(cu.peaks.size() == 4);
  CHECK(cu.peaks[0].position == 656.8);
  CHECK(cu.peaks[0].uncertainty == 0.2);
  CHECK(cu.peaks[3].position == 2022.3);
  CHECK(cu.peaks[3].uncertainty == 0.5);

  const auto& back = find_table(tables(), "cu-unimplanted");
  const double positions[] = {354.6, 641.8, 977.1, 1274.1, 1569, 1757};
  const double errors[] = {1, 1, 1, 2, 3, 5};
  REQUIRE(back.peaks.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(back.peaks[i].position == positions[i]);
    CHECK(back.peaks[i].uncertainty == errors[i]);
  }
  REQUIRE(back.broad_line);
  CHECK(back.broad_line->centre == 1160);
  CHECK(back.broad_line->width == 1720);
  REQUIRE(back.diamond_line);
  CHECK_FALSE(back.diamond_line->uncertainty);

  const auto& b = find_table(tables(), "b-implanted");
  REQUIRE(b.diamond_line);
  CHECK(b.diamond_line->position == 1331.95);
  CHECK(*b.diamond_line->uncertainty == 0.1);
  CHECK(b.peaks[1].label == "revival-2");
  CHECK_THROWS_AS(find_table(tables(), "si-implanted"), DomainError);
}

TEST_CASE("parser edge cases") {
  CHECK(parse_fixtures("").empty());
  CHECK(parse_fixtures("# only a comment\n\n").empty());
  const auto t = parse_fixtures("sample x\r\npeak 1 0.5 a  # trailing\npeak 2 0.5\n");
  REQUIRE(t.size() == 1);
  CHECK(t[0].peaks.size() == 2);
  CHECK(t[0].peaks[1].label.empty());
}

TEST_CASE("parse errors carry the line") {
  auto line_of = [](const char* text) {
    try {
      parse_fixtures(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("peak 1 1\n") == 1);
  CHECK(line_of("sample a\npeak 1 one\n") == 2);
  CHECK(line_of("sample a\npeak 1 1\npeak 0.5 1\n") == 3);
  CHECK(line_of("sample a\n\npeak 1 0\n") == 3);
  CHECK(line_of("sample a\nbroad 1 2 3\n") == 2);
  CHECK(line_of("sample a\nwidget 3\n") == 2);
  CHECK(line_of("sample a\ndiamond\n") == 2);
  CHECK(line_of("sample a\npeak 1 1x\n") == 2);
}

TEST_CASE("Cu versus B shifts") {
  const auto& cu = find_table(tables(), "cu-implanted");
  const auto& b = find_table(tables(), "b-implanted");
  const Pairing pairs{{1, 0}, {2, 1}, {3, 2}};
  const auto s = peak_shifts(cu, b, pairs);
  const double reported[] = {2.8, 7.0, 11.3};
  for (int i = 0; i < 3; ++i) CHECK(std::abs(s[i].value - reported[i]) <= s[i].uncertainty);
  CHECK(s[0].value == doctest::Approx(2.7));
  CHECK(s[0].uncertainty == doctest::Approx(std::sqrt(2.0)));
  CHECK(shifts_increasing(s));

  Pairing swapped;
  for (auto [i, j] : pairs) swapped.emplace_back(j, i);
  const auto r = peak_shifts(b, cu, swapped);
  for (int i = 0; i < 3; ++i) CHECK(r[i].value == -s[i].value);

  for (const auto& m : peak_shifts(cu, cu, {{0, 0}, {2, 2}})) CHECK(m.value == 0.0);
  CHECK_THROWS_AS(peak_shifts(cu, b, {{4, 0}}), DomainError);
}

TEST_CASE("ratios and their first-order consistency with shifts") {
  const auto& cu = find_table(tables(), "cu-implanted");
  const auto& back = find_table(tables(), "cu-unimplanted");
  const Pairing pairs{{3, 5}, {2, 4}};
  const auto r = peak_ratios(cu, back, pairs);
  CHECK(std::abs(r[0].value - 1.151) <= 0.003);
  CHECK(std::abs(r[1].value - 1.134) <= 0.003);
  CHECK(peak_ratios(cu, cu, {{1, 1}})[0].value == 1.0);

  const auto s = peak_shifts(cu, back, pairs);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double denom = back.peaks[pairs[i].second].position;
    CHECK(std::abs(r[i].value - (1.0 + s[i].value / denom)) <= r[i].uncertainty);
    const double a = cu.peaks[pairs[i].first].position;
    const double da = cu.peaks[pairs[i].first].uncertainty;
    const double db = back.peaks[pairs[i].second].uncertainty;
    CHECK(r[i].uncertainty == doctest::Approx(std::hypot(da / denom, a * db / (denom * denom))));
  }
}

TEST_CASE("AFESWR satellites around 641.8") {
  const auto& back = find_table(tables(), "cu-unimplanted");
  const auto s = afeswr_splittings(back, 1, {2, 0});
  CHECK(s.offsets[0] == doctest::Approx(335.3));
  CHECK(s.offsets[1] == doctest::Approx(287.2));
  CHECK(s.mean == doctest::Approx(311.25));
  CHECK(std::round(s.mean * 10.0) / 10.0 == doctest::Approx(311.3));

  PeakTable t;
  t.sample_id = "constructed";
  t.peaks = {{500.0, 1.0, ""}, {600.0, 1.0, ""}};
  const auto one = afeswr_splittings(t, 0, {1});
  CHECK(one.offsets == std::vector<double>{100.0});
  CHECK(one.mean == 100.0);
  CHECK_THROWS_AS(afeswr_splittings(t, 0, {}), DomainError);
  CHECK_THROWS_AS(afeswr_splittings(t, 0, {0}), DomainError);
}

TEST_CASE("closed windows") {
  CHECK(window_check(656.8, 402.5, 673.7));
  CHECK(window_check(540, 386.7, 603));
  CHECK(window_check(603, 386.7, 603));
  CHECK(window_check(386.7, 386.7, 603));
  CHECK_FALSE(window_check(700, 402.5, 673.7));
  CHECK_THROWS_AS(window_check(1, 5, 5), DomainError);
}

TEST_CASE("coherence length") {
  // hbar and e from CODATA 2018 (exact e, hbar to 10 digits).
  const double hbar = 1.054571817e-34;
  const double e = 1.602176634e-19;
  const double xi = coherence_length({1e6, 1.0});
  CHECK(xi == doctest::Approx(hbar * 1e6 / e * 1e10).epsilon(1e-12));
  CHECK(xi == doctest::Approx(6.582).epsilon(1e-3));
  CHECK(coherence_length({1e6, 2.0}) == doctest::Approx(xi / 2.0).epsilon(1e-15));
  CHECK(coherence_length({2e6, 1.0}) == doctest::Approx(2.0 * xi).epsilon(1e-15));
  CHECK_THROWS_AS(coherence_length({0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(coherence_length({1e6, -1.0}), DomainError);
}

TEST_CASE("regularity report") {
  const auto text = fixture_text();
  const auto rep = run_regularity_checks(parse_fixtures(text), fixture_checksum(text));
  CHECK(rep.all_passed);
  int informational = 0;
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    if (c.passed) {
      CHECK(*c.passed);
    } else {
      ++informational;
    }
  }
  CHECK(informational == 1);

  const auto j = nlohmann::json::parse(report_to_json(rep));
  CHECK(j["fixture_crc32"] == 0xcba16aa9u);
  CHECK(j["all_passed"] == true);
  CHECK(j["checks"].size() == rep.checks.size());
  CHECK(j["checks"][0].contains("claim"));

  const auto csv = report_to_csv(rep);
  CHECK(csv.rfind("name,expected,computed,tolerance,pass\n", 0) == 0);
}

TEST_CASE("a shifted fixture fails the shift checks") {
  auto text = fixture_text();
  const auto pos = text.find("peak 2022.3 0.5");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 15, "peak 2030.3 0.5");
  const auto rep = run_regularity_checks(parse_fixtures(text));
  CHECK_FALSE(rep.all_passed);
}
