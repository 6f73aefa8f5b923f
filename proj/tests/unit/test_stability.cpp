#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sshrabi/errors.hpp"
#include "sshrabi/stability.hpp"

using namespace sshrabi;

namespace {

// Direct re-evaluation of the inequalities, independent of the library predicates.
struct Literal {
  bool c1;
  bool c2;
  bool c3;
};

Literal literal(double eps, double gap, double E, double dn, Branch b) {
  const double s = b == Branch::LowerSignSSH ? -1.0 : 1.0;
  const double lhs1 = eps * (1.0 + s * eps / E);
  const double rhs1 = gap * gap / E;
  const bool c1 = dn < 0 ? lhs1 < rhs1 : lhs1 > rhs1;
  const double t = eps * eps / E - 2.0 * gap * gap / E;
  const bool c2 = t * t - E * E + 0.75 * gap * gap > 0.0;
  const double pre = 3.0 * gap * gap / E - s * 4.0 * eps * eps / E;
  const bool c3 = pre * dn > 0.0;
  return {c1, c2, c3};
}

double margin(const ChainParams& p, double k) {
  const double eps = 2.0 * p.t0 * std::cos(k * p.a);
  const double gap = 4.0 * p.alpha * p.u * std::sin(k * p.a);
  const double E = std::hypot(eps, gap);
  const double t = (eps * eps - 2.0 * gap * gap) / E;
  return t * t - E * E + 0.75 * gap * gap;
}

}  // namespace

TEST_CASE("first condition at the zone edge and centre") {
  const auto p = sample_chain_params().with_u(0.05);
  const auto eq = OccupationState::equilibrium();
  CHECK(condition_first(band_sample(p, p.zone_edge(), Branch::LowerSignSSH), eq));
  CHECK_FALSE(condition_first(band_sample(p, 0.0, Branch::UpperSign), eq));
}

TEST_CASE("second condition collapses at Delta = 0 and holds at eps = 0") {
  const auto p = sample_chain_params().with_u(0.05);
  CHECK_FALSE(condition_second(band_sample(p, 0.0, Branch::UpperSign)));
  CHECK(condition_second(band_sample(p, p.zone_edge(), Branch::UpperSign)));
  const auto edge = band_sample(p, p.zone_edge(), Branch::UpperSign);
  CHECK(condition_second_margin(edge) == doctest::Approx(3.75 * edge.gap * edge.gap).epsilon(1e-13));
}

TEST_CASE("second condition sign changes located by bisection") {
  const auto p = sample_chain_params().with_u(0.05);
  const auto grid = half_zone_grid(p, 4096);
  int crossings = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double lo = grid[i - 1];
    double hi = grid[i];
    if ((margin(p, lo) > 0.0) == (margin(p, hi) > 0.0)) continue;
    ++crossings;
    const bool lo_positive = margin(p, lo) > 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
      const double mid = 0.5 * (lo + hi);
      ((margin(p, mid) > 0.0) == lo_positive ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);
    const bool before = condition_second(band_sample(p, root - 1e-10, Branch::UpperSign));
    const bool after = condition_second(band_sample(p, root + 1e-10, Branch::UpperSign));
    CHECK(before == lo_positive);
    CHECK(after != lo_positive);
  }
  CHECK(crossings >= 1);
}

TEST_CASE("second condition is branch independent") {
  const auto p = sample_chain_params().with_u(0.05);
  for (double k : half_zone_grid(p, 300)) {
    auto s = band_sample(p, k, Branch::UpperSign);
    const bool up = condition_second(s);
    s.branch = Branch::LowerSignSSH;
    CHECK(condition_second(s) == up);
  }
}

TEST_CASE("third condition: SSH branch never stable at equilibrium") {
  const auto p = sample_chain_params().with_u(0.05);
  const auto eq = OccupationState::equilibrium();
  const auto inv = OccupationState::inverted();
  for (double k : reduced_zone_grid(p, 2048)) {
    const auto s = band_sample(p, k, Branch::LowerSignSSH);
    REQUIRE(s.E > 0.0);
    CHECK_FALSE(condition_third(s, eq));
    CHECK(condition_third(s, inv));
  }
  CHECK(condition_third(band_sample(p, 0.0, Branch::UpperSign), eq));
}

TEST_CASE("third condition, upper branch, equals 3 gap^2 < 4 eps^2 at equilibrium") {
  const auto p = sample_chain_params().with_u(0.05);
  for (double k : reduced_zone_grid(p, 1000)) {
    const auto s = band_sample(p, k, Branch::UpperSign);
    CHECK(condition_third(s, OccupationState::equilibrium()) == (3.0 * s.gap * s.gap < 4.0 * s.eps * s.eps));
  }
}

TEST_CASE("truth table matches a literal re-evaluation") {
  const auto p = sample_chain_params().with_u(0.05);
  for (const auto& occ : {OccupationState::equilibrium(), OccupationState::inverted(), OccupationState{0.2, 0.7}}) {
    for (Branch b : {Branch::UpperSign, Branch::LowerSignSSH}) {
      const auto scan = stability_scan(p, occ, b, reduced_zone_grid(p, 2048));
      for (const auto& r : scan.reports) {
        const auto s = band_sample(p, r.k, b);
        const auto ref = literal(s.eps, s.gap, s.E, occ.n_c - occ.n_v, b);
        CHECK(r.cond1 == ref.c1);
        CHECK(r.cond2 == ref.c2);
        CHECK(r.cond3 == ref.c3);
        CHECK(r.all_satisfied == (ref.c1 && ref.c2 && ref.c3));
      }
    }
  }
}

TEST_CASE("inversion duality flips the sign-conditioned predicates") {
  const auto p = sample_chain_params().with_u(0.05);
  for (Branch b : {Branch::UpperSign, Branch::LowerSignSSH}) {
    const double s = b == Branch::LowerSignSSH ? -1.0 : 1.0;
    for (double k : reduced_zone_grid(p, 777)) {
      const auto x = band_sample(p, k, b);
      const double side1 = x.eps * (1.0 + s * x.eps / x.E) - x.gap * x.gap / x.E;
      const double side3 = 3.0 * x.gap * x.gap / x.E - s * 4.0 * x.eps * x.eps / x.E;
      if (side1 != 0.0) {
        CHECK(condition_first(x, OccupationState::equilibrium()) != condition_first(x, OccupationState::inverted()));
      }
      if (side3 != 0.0) {
        CHECK(condition_third(x, OccupationState::equilibrium()) != condition_third(x, OccupationState::inverted()));
      }
    }
  }
}

TEST_CASE("predicates are invariant under u -> -u") {
  const auto p = sample_chain_params().with_u(0.05);
  const auto m = p.with_u(-0.05);
  const auto eq = OccupationState::equilibrium();
  for (Branch b : {Branch::UpperSign, Branch::LowerSignSSH}) {
    for (double k : reduced_zone_grid(p, 301)) {
      const auto a = band_sample(p, k, b);
      const auto c = band_sample(m, k, b);
      CHECK(condition_first(a, eq) == condition_first(c, eq));
      CHECK(condition_second(a) == condition_second(c));
      CHECK(condition_third(a, eq) == condition_third(c, eq));
    }
  }
}

TEST_CASE("equal populations are indeterminate") {
  const auto p = sample_chain_params().with_u(0.05);
  const OccupationState half{0.5, 0.5};
  CHECK_THROWS_AS(condition_first(band_sample(p, 0.1, Branch::UpperSign), half), IndeterminatePopulationError);
  const auto scan = stability_scan(p, half, Branch::UpperSign, reduced_zone_grid(p, 16));
  CHECK(scan.error_count == 16);
  CHECK_FALSE(scan.all_k_satisfied);
  CHECK(scan.reports[3].error.has_value());
  CHECK_THROWS_AS((OccupationState{1.2, 0.0}.validate()), DomainError);
}

TEST_CASE("equilibrium upper-branch scan matches the pointwise oracle") {
  const auto p = sample_chain_params().with_u(0.01);
  const auto scan = stability_scan(p, OccupationState::equilibrium(), Branch::UpperSign, reduced_zone_grid(p, 2048));
  std::size_t expected = 0;
  for (const auto& r : scan.reports) {
    const auto s = band_sample(p, r.k, Branch::UpperSign);
    const auto ref = literal(s.eps, s.gap, s.E, -1.0, Branch::UpperSign);
    expected += ref.c1 && ref.c2 && ref.c3;
  }
  CHECK(scan.satisfied_count == expected);
  const auto ssh = stability_scan(p, OccupationState::equilibrium(), Branch::LowerSignSSH, reduced_zone_grid(p, 2048));
  CHECK(ssh.satisfied_count == 0);
}

TEST_CASE("profile scan and degenerate points") {
  const auto p = sample_chain_params();
  const auto grid = reduced_zone_grid(p, 9);
  const auto scan = stability_scan(
      p, [](double k) { return k < 0 ? OccupationState::inverted() : OccupationState::equilibrium(); },
      Branch::UpperSign, grid);
  CHECK(scan.error_count == 2);
  CHECK(scan.reports.front().population_sign == 1);
  CHECK(scan.reports.back().population_sign == -1);
}

TEST_CASE("scan CSV layout") {
  const auto p = sample_chain_params().with_u(0.05);
  const auto scan = stability_scan(p, OccupationState::equilibrium(), Branch::UpperSign, reduced_zone_grid(p, 4));
  std::ostringstream out;
  write_scan_csv(out, scan);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "k[1/A],branch,cond1,cond2,cond3,all_satisfied");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
}
