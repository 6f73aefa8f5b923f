#pragma once

#include <cstddef>
#include <vector>

#include "sshrabi/band.hpp"

namespace sshrabi {

// Continuum-limit ground-state energy of the upper-sign branch (n_c = 0,
// n_v = 1 at every k). Three routes are provided:
//
//   energy_quadrature  direct adaptive integration over the half zone
//   energy_elliptic    closed form in complete elliptic integrals
//   energy_expansion   small-z truncation with the u^2 ln u term
//
// All three use the dimensionless ratio z = 2 alpha |u| / t0, the ratio of
// the gap amplitude 4 alpha u to the band amplitude 2 t0. With it the closed
// form reads
//
//   E0 = (4 N t0 / pi) { K(m) + (1 + z^2)/(1 - z^2) [E(m) - K(m)] } + 2 N K u^2
//
// where K(m), E(m) are complete elliptic integrals of parameter m = 1 - z^2.

struct QuadratureOptions {
  double relative_tolerance = 1e-10;
  unsigned max_depth = 30;
};

/// z = 2 alpha |u| / t0.
double dimerization_ratio(const ChainParams& p);

/// Dimerization amplitude |u| that gives the requested z.
double u_for_ratio(const ChainParams& p, double z);

/// Throws NumericalFailure if the requested tolerance is not reached.
double energy_quadrature(const ChainParams& p, const QuadratureOptions& opts = {});

/// Requires z < 1, otherwise DomainError. Even in u.
double energy_elliptic(const ChainParams& p);

/// Valid for z < z_threshold (DomainError otherwise). The u -> 0 limit of
/// u^2 ln u is taken explicitly.
double energy_expansion(const ChainParams& p, double z_threshold = 0.3);

struct MinimizeOptions {
  /// Line-search resolution relative to the bracket length u_max.
  double tolerance = 1e-8;
  /// Upper end of the search bracket, expressed as z(u_max).
  double z_max = 0.9;
  /// Geometric pre-scan used to bracket the minimum.
  std::size_t scan_points = 240;
  /// Search the u < 0 well instead of u > 0.
  bool negative_well = false;
};

struct GroundStateResult {
  double u0 = 0.0;          ///< |minimizer|, A
  double minimizer = 0.0;   ///< signed location of the minimum found, A
  double E_min = 0.0;       ///< eV
  double E_at_zero = 0.0;   ///< eV
  double z0 = 0.0;          ///< 2 alpha u0 / t0
  double well_depth = 0.0;  ///< E_at_zero - E_min, eV
  double u_max = 0.0;       ///< search bracket, A
  bool dimerized = false;   ///< false: no interior minimum, u0 reported as 0
  unsigned iterations = 0;
};

GroundStateResult minimize_dimerization(const ChainParams& p, const MinimizeOptions& opts = {});

struct WellPoint {
  double u = 0.0;
  double energy = 0.0;
};

/// energy_elliptic sampled on a uniform grid over [-u_extent, u_extent].
std::vector<WellPoint> well_profile(const ChainParams& p, double u_extent, std::size_t points);

}  // namespace sshrabi
