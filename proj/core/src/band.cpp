#include "sshrabi/band.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "sshrabi/errors.hpp"

namespace sshrabi {
namespace {

// Grid endpoints built as i*h can overshoot pi/2a by an ulp or two.
constexpr double kZoneSlack = 1e-12;

void check_in_zone(const ChainParams& p, double k) {
  const double edge = p.zone_edge();
  if (!std::isfinite(k) || std::abs(k) > edge * (1.0 + kZoneSlack)) {
    std::ostringstream msg;
    msg << "wavenumber k = " << k << " 1/A lies outside the reduced zone |k| <= pi/(2a) = " << edge
        << " 1/A";
    throw DomainError(msg.str());
  }
}

// cos(ka) and sin(ka), snapped to exact values at the zone edge so that
// eps = 0 there and the u = 0 degeneracy is detectable.
struct Phase {
  double cos;
  double sin;
};

Phase zone_phase(const ChainParams& p, double k) {
  const double theta = k * p.a;
  const double half_pi = 0.5 * std::numbers::pi;
  if (std::abs(std::abs(theta) - half_pi) <= kZoneSlack * half_pi) {
    return {0.0, theta > 0.0 ? 1.0 : -1.0};
  }
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace

void ChainParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("invalid chain parameters: ") + what);
  };
  require(std::isfinite(t0) && t0 > 0.0, "t0 must be > 0");
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be > 0");
  require(std::isfinite(K) && K > 0.0, "K must be > 0");
  require(std::isfinite(a) && a > 0.0, "a must be > 0");
  require(N >= 2, "N must be >= 2");
  require(std::isfinite(u), "u must be finite");
}

double ChainParams::zone_edge() const { return std::numbers::pi / (2.0 * a); }

ChainParams sample_chain_params() { return ChainParams{2.5, 4.1, 21.0, 1.22, 100, 0.0}; }

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::UpperSign:
      return "upper";
    case Branch::LowerSignSSH:
      return "ssh";
  }
  return "?";
}

Branch parse_branch(std::string_view text) {
  if (text == "upper" || text == "UpperSign") return Branch::UpperSign;
  if (text == "ssh" || text == "lower" || text == "LowerSignSSH") return Branch::LowerSignSSH;
  throw DomainError("unknown branch '" + std::string(text) + "' (expected upper or ssh)");
}

void OccupationState::validate() const {
  if (!(n_c >= 0.0 && n_c <= 1.0) || !(n_v >= 0.0 && n_v <= 1.0)) {
    throw DomainError("occupations must lie in [0, 1]");
  }
}

int OccupationState::population_sign() const {
  const double d = n_c - n_v;
  return (d > 0.0) - (d < 0.0);
}

double dispersion(const ChainParams& p, double k) {
  check_in_zone(p, k);
  return 2.0 * p.t0 * zone_phase(p, k).cos;
}

double gap_function(const ChainParams& p, double k) {
  check_in_zone(p, k);
  return 4.0 * p.alpha * p.u * zone_phase(p, k).sin;
}

BandSample band_sample(const ChainParams& p, double k, Branch b) {
  BandSample s;
  s.k = k;
  s.branch = b;
  s.eps = dispersion(p, k);
  s.gap = gap_function(p, k);
  s.E = std::hypot(s.eps, s.gap);
  if (s.E == 0.0) {
    throw DegeneratePointError("E_k = 0 at k = " + std::to_string(k) +
                               " (u = 0 at the zone edge); Bogoliubov coefficients undefined");
  }
  const double ratio = s.eps / s.E;
  const double minus = std::sqrt(0.5 * (1.0 - ratio));
  const double plus = std::sqrt(0.5 * (1.0 + ratio));
  if (b == Branch::UpperSign) {
    s.alpha_k = minus;
    s.beta_k = plus;
  } else {
    s.alpha_k = plus;
    s.beta_k = minus;
  }
  return s;
}

QuasiparticleLevels quasiparticle_energy(const ChainParams& p, double k, Branch b) {
  const double eps = dispersion(p, k);
  const double gap = gap_function(p, k);
  const double E = std::hypot(eps, gap);
  if (E == 0.0) {
    throw DegeneratePointError("E_k = 0 at k = " + std::to_string(k) +
                               "; quasiparticle energy undefined");
  }
  const double c = (b == Branch::UpperSign) ? (gap - eps) * (gap + eps) / E : E;
  return {c, -c};
}

std::vector<double> reduced_zone_grid(const ChainParams& p, std::size_t points) {
  if (points < 2) throw DomainError("k grid needs at least 2 points");
  const double edge = p.zone_edge();
  std::vector<double> grid(points);
  const double step = 2.0 * edge / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = -edge + step * static_cast<double>(i);
  grid.back() = edge;
  return grid;
}

std::vector<double> half_zone_grid(const ChainParams& p, std::size_t points) {
  if (points < 2) throw DomainError("k grid needs at least 2 points");
  const double edge = p.zone_edge();
  std::vector<double> grid(points);
  const double step = edge / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = step * static_cast<double>(i);
  grid.back() = edge;
  return grid;
}

}  // namespace sshrabi
