#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sshrabi/band.hpp"

namespace sshrabi {

// Sufficient conditions for a minimum of the reduced-zone energy with
// respect to the Bogoliubov amplitudes (constrained by alpha^2 + beta^2 = 1).
// All inequalities are strict; equality is reported as "not a minimum".

/// First condition. Lower (SSH) branch compares eps(1 - eps/E) with gap^2/E,
/// the upper branch eps(1 + eps/E); the direction of the comparison follows
/// the sign of n_c - n_v.
bool condition_first(const BandSample& sample, const OccupationState& occ);

/// Branch-independent second condition:
/// (eps^2/E - 2 gap^2/E)^2 - E^2 + (3/4) gap^2 > 0.
bool condition_second(const BandSample& sample);

/// Left-hand side of the second condition.
double condition_second_margin(const BandSample& sample);

/// Third condition: (3 gap^2/E +- 4 eps^2/E)(n_c - n_v) > 0, with + for the
/// SSH branch and - for the upper branch.
bool condition_third(const BandSample& sample, const OccupationState& occ);

struct ConditionReport {
  double k = 0.0;
  Branch branch = Branch::UpperSign;
  bool cond1 = false;
  bool cond2 = false;
  bool cond3 = false;
  bool all_satisfied = false;
  int population_sign = 0;
  /// Set when this grid point could not be evaluated (degenerate k, n_c == n_v).
  std::optional<std::string> error;
};

struct StabilityScan {
  std::vector<ConditionReport> reports;
  /// True iff every point evaluated without error and satisfied all three.
  bool all_k_satisfied = false;
  std::size_t satisfied_count = 0;
  std::size_t error_count = 0;
};

using OccupationProfile = std::function<OccupationState(double k)>;

/// Evaluates the three conditions at every grid point. Per-point failures are
/// recorded on the report rather than thrown.
StabilityScan stability_scan(const ChainParams& p, const OccupationProfile& occ, Branch b,
                             std::span<const double> grid);

StabilityScan stability_scan(const ChainParams& p, const OccupationState& uniform, Branch b,
                             std::span<const double> grid);

/// CSV with header `k[1/A],branch,cond1,cond2,cond3,all_satisfied`.
void write_scan_csv(std::ostream& out, const StabilityScan& scan);

}  // namespace sshrabi
