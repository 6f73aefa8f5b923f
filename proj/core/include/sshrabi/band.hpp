#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace sshrabi {

/// Physical parameters of one dimerized chain.
///
/// Units follow the usual polyacetylene conventions: energies in eV,
/// lengths in Angstrom.
struct ChainParams {
  double t0 = 2.5;      ///< hopping energy, eV
  double alpha = 4.1;   ///< electron-phonon coupling, eV/A
  double K = 21.0;      ///< spring constant, eV/A^2
  double a = 1.22;      ///< lattice constant, A
  long N = 100;         ///< number of lattice sites
  double u = 0.0;       ///< dimerization coordinate, A (may be negative)

  /// Throws DomainError if any invariant is violated.
  void validate() const;

  /// Half-width of the reduced zone, pi / (2a).
  double zone_edge() const;

  ChainParams with_u(double value) const {
    ChainParams copy = *this;
    copy.u = value;
    return copy;
  }
};

/// Sample parameters shipped with the tool. Conventional trans-polyacetylene
/// literature values, used for demonstrations and property tests only.
ChainParams sample_chain_params();

/// Sign choice in the Bogoliubov coefficients.
enum class Branch {
  UpperSign,     ///< alpha_k = sqrt((1 - eps/E)/2), the additional branch
  LowerSignSSH,  ///< alpha_k = sqrt((1 + eps/E)/2), the SSH solution
};

std::string_view to_string(Branch b);
Branch parse_branch(std::string_view text);

struct BandSample {
  double k = 0.0;
  double eps = 0.0;
  double gap = 0.0;
  double E = 0.0;
  double alpha_k = 0.0;
  double beta_k = 0.0;
  Branch branch = Branch::UpperSign;
};

/// Occupations of the conduction and valence level at one k.
struct OccupationState {
  double n_c = 0.0;
  double n_v = 1.0;

  static OccupationState equilibrium() { return {0.0, 1.0}; }
  static OccupationState inverted() { return {1.0, 0.0}; }

  void validate() const;
  /// Sign of n_c - n_v: -1, 0 or +1.
  int population_sign() const;
};

struct QuasiparticleLevels {
  double conduction = 0.0;
  double valence = 0.0;
};

double dispersion(const ChainParams& p, double k);
double gap_function(const ChainParams& p, double k);

/// Throws DegeneratePointError when eps and gap both vanish.
BandSample band_sample(const ChainParams& p, double k, Branch b);

QuasiparticleLevels quasiparticle_energy(const ChainParams& p, double k, Branch b);

/// Uniform grid of `points` wavenumbers spanning [-pi/2a, pi/2a].
std::vector<double> reduced_zone_grid(const ChainParams& p, std::size_t points = 2048);

/// Uniform grid on the half zone [0, pi/2a].
std::vector<double> half_zone_grid(const ChainParams& p, std::size_t points = 2048);

}  // namespace sshrabi
