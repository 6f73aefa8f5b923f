#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sshrabi/band.hpp"
#include "sshrabi/errors.hpp"

using namespace sshrabi;

namespace {

ChainParams chain(double t0, double alpha, double u) {
  ChainParams p = sample_chain_params();
  p.t0 = t0;
  p.alpha = alpha;
  p.u = u;
  return p;
}

}  // namespace

TEST_CASE("dispersion at zone centre, edge and quarter zone") {
  const auto p = chain(2.0, 4.1, 0.05);
  CHECK(dispersion(p, 0.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(std::abs(dispersion(p, p.zone_edge())) < 1e-15);
  const auto q = chain(2.5, 4.1, 0.05);
  CHECK(dispersion(q, std::numbers::pi / (4.0 * q.a)) == doctest::Approx(2.5 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("gap function values and oddness in u") {
  const auto p = chain(2.5, 4.0, 0.05);
  CHECK(gap_function(p, 0.0) == 0.0);
  CHECK(gap_function(p, p.zone_edge()) == doctest::Approx(0.8).epsilon(1e-15));
  for (double k : reduced_zone_grid(p, 257)) {
    CHECK(gap_function(p, k) == -gap_function(p.with_u(-p.u), k));
  }
}

TEST_CASE("out-of-zone wavenumber is rejected") {
  const auto p = sample_chain_params().with_u(0.05);
  CHECK_THROWS_AS(dispersion(p, 1.001 * p.zone_edge()), DomainError);
  CHECK_THROWS_AS(band_sample(p, -1.001 * p.zone_edge(), Branch::UpperSign), DomainError);
  CHECK_NOTHROW(band_sample(p, -p.zone_edge(), Branch::UpperSign));
}

TEST_CASE("invalid chain parameters") {
  ChainParams p;
  p.t0 = -1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = ChainParams{};
  p.N = 0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = ChainParams{};
  p.a = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("Bogoliubov coefficients at special points") {
  const auto p = sample_chain_params().with_u(0.05);
  for (Branch b : {Branch::UpperSign, Branch::LowerSignSSH}) {
    const auto s = band_sample(p, p.zone_edge(), b);
    CHECK(s.alpha_k == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(s.beta_k == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  }
  const auto up = band_sample(p, 0.0, Branch::UpperSign);
  CHECK(up.alpha_k == 0.0);
  CHECK(up.beta_k == doctest::Approx(1.0).epsilon(1e-15));
  const auto ssh = band_sample(p, 0.0, Branch::LowerSignSSH);
  CHECK(ssh.alpha_k == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ssh.beta_k == 0.0);
}

TEST_CASE("normalization of the coefficients on a 1000-point grid") {
  const auto p = sample_chain_params().with_u(0.05);
  for (Branch b : {Branch::UpperSign, Branch::LowerSignSSH}) {
    for (double k : reduced_zone_grid(p, 1000)) {
      const auto s = band_sample(p, k, b);
      CHECK(std::abs(s.alpha_k * s.alpha_k + s.beta_k * s.beta_k - 1.0) < 1e-14);
    }
  }
}

TEST_CASE("degenerate point at the zone edge of the undimerized chain") {
  const auto p = sample_chain_params();
  CHECK_THROWS_AS(band_sample(p, p.zone_edge(), Branch::UpperSign), DegeneratePointError);
  CHECK_THROWS_AS(quasiparticle_energy(p, -p.zone_edge(), Branch::LowerSignSSH), DegeneratePointError);
}

TEST_CASE("quasiparticle energy special points") {
  const auto p = sample_chain_params().with_u(0.05);
  CHECK(quasiparticle_energy(p, 0.0, Branch::UpperSign).conduction == doctest::Approx(-2.0 * p.t0).epsilon(1e-15));
  CHECK(quasiparticle_energy(p, 0.0, Branch::LowerSignSSH).conduction ==
        doctest::Approx(2.0 * p.t0).epsilon(1e-15));
  // eps = gap where tan(ka) = 2 t0 / (4 alpha u)
  const double k = std::atan(2.0 * p.t0 / (4.0 * p.alpha * p.u)) / p.a;
  CHECK(std::abs(quasiparticle_energy(p, k, Branch::UpperSign).conduction) < 1e-13);
}

TEST_CASE("diagonal form reproduces the branch energies") {
  for (double u : {0.05, -0.05, 0.2}) {
    const auto p = sample_chain_params().with_u(u);
    for (Branch b : {Branch::UpperSign, Branch::LowerSignSSH}) {
      for (double k : reduced_zone_grid(p, 2048)) {
        const auto s = band_sample(p, k, b);
        const double a2 = s.alpha_k * s.alpha_k;
        const double b2 = s.beta_k * s.beta_k;
        const double diagonal = s.eps * (a2 - b2) + 2.0 * s.alpha_k * s.beta_k * std::abs(s.gap);
        CHECK(std::abs(quasiparticle_energy(p, k, b).conduction - diagonal) < 1e-12);
      }
    }
  }
}

TEST_CASE("particle-hole symmetry, parity in u and branch ordering") {
  const auto p = sample_chain_params().with_u(0.07);
  for (double k : reduced_zone_grid(p, 513)) {
    for (Branch b : {Branch::UpperSign, Branch::LowerSignSSH}) {
      const auto lv = quasiparticle_energy(p, k, b);
      CHECK(lv.conduction == -lv.valence);
      CHECK(band_sample(p, k, b).E == band_sample(p.with_u(-p.u), k, b).E);
    }
    const double up = quasiparticle_energy(p, k, Branch::UpperSign).conduction;
    const double ssh = quasiparticle_energy(p, k, Branch::LowerSignSSH).conduction;
    if (std::abs(dispersion(p, k)) > 1e-12) {
      CHECK(up < ssh);
    } else {
      CHECK(up == doctest::Approx(ssh).epsilon(1e-14));
    }
  }
}

TEST_CASE("grids") {
  const auto p = sample_chain_params();
  const auto g = reduced_zone_grid(p, 2048);
  REQUIRE(g.size() == 2048);
  CHECK(g.front() == -p.zone_edge());
  CHECK(g.back() == p.zone_edge());
  const auto h = half_zone_grid(p, 11);
  CHECK(h.front() == 0.0);
  CHECK(h.back() == p.zone_edge());
  CHECK_THROWS_AS(reduced_zone_grid(p, 1), DomainError);
}

TEST_CASE("branch names round trip") {
  CHECK(parse_branch(to_string(Branch::UpperSign)) == Branch::UpperSign);
  CHECK(parse_branch(to_string(Branch::LowerSignSSH)) == Branch::LowerSignSSH);
  CHECK_THROWS_AS(parse_branch("middle"), DomainError);
}
