#include "sshrabi/stability.hpp"

#include <ostream>

#include "sshrabi/errors.hpp"
#include "sshrabi/table_writer.hpp"

namespace sshrabi {
namespace {

void require_positive_E(const BandSample& s) {
  if (!(s.E > 0.0)) throw DegeneratePointError("stability conditions need E_k > 0");
}

int require_imbalance(const OccupationState& occ) {
  occ.validate();
  const int sign = occ.population_sign();
  if (sign == 0) {
    throw IndeterminatePopulationError(
        "n_c == n_v: the stability conditions are stated for a strict population imbalance");
  }
  return sign;
}

}  // namespace

bool condition_first(const BandSample& s, const OccupationState& occ) {
  require_positive_E(s);
  const int sign = require_imbalance(occ);
  const double ratio = s.eps / s.E;
  const double factor = (s.branch == Branch::LowerSignSSH) ? 1.0 - ratio : 1.0 + ratio;
  const double lhs = s.eps * factor;
  const double rhs = s.gap * s.gap / s.E;
  return sign < 0 ? lhs < rhs : lhs > rhs;
}

double condition_second_margin(const BandSample& s) {
  require_positive_E(s);
  const double eps2 = s.eps * s.eps;
  const double gap2 = s.gap * s.gap;
  const double inner = eps2 / s.E - 2.0 * gap2 / s.E;
  return inner * inner - s.E * s.E + 0.75 * gap2;
}

bool condition_second(const BandSample& s) { return condition_second_margin(s) > 0.0; }

bool condition_third(const BandSample& s, const OccupationState& occ) {
  require_positive_E(s);
  const int sign = require_imbalance(occ);
  const double gap_term = 3.0 * s.gap * s.gap / s.E;
  const double eps_term = 4.0 * s.eps * s.eps / s.E;
  const double prefactor =
      (s.branch == Branch::LowerSignSSH) ? gap_term + eps_term : gap_term - eps_term;
  return prefactor * static_cast<double>(sign) > 0.0;
}

StabilityScan stability_scan(const ChainParams& p, const OccupationProfile& occ, Branch b,
                             std::span<const double> grid) {
  StabilityScan scan;
  scan.reports.reserve(grid.size());
  for (double k : grid) {
    ConditionReport r;
    r.k = k;
    r.branch = b;
    try {
      const OccupationState o = occ(k);
      r.population_sign = o.population_sign();
      const BandSample s = band_sample(p, k, b);
      r.cond1 = condition_first(s, o);
      r.cond2 = condition_second(s);
      r.cond3 = condition_third(s, o);
      r.all_satisfied = r.cond1 && r.cond2 && r.cond3;
    } catch (const DomainError& e) {
      r.error = e.what();
    }
    if (r.error) ++scan.error_count;
    if (r.all_satisfied) ++scan.satisfied_count;
    scan.reports.push_back(std::move(r));
  }
  scan.all_k_satisfied = !grid.empty() && scan.satisfied_count == grid.size();
  return scan;
}

StabilityScan stability_scan(const ChainParams& p, const OccupationState& uniform, Branch b,
                             std::span<const double> grid) {
  return stability_scan(
      p, [uniform](double) { return uniform; }, b, grid);
}

void write_scan_csv(std::ostream& out, const StabilityScan& scan) {
  CsvWriter csv(out, {"k[1/A]", "branch", "cond1", "cond2", "cond3", "all_satisfied"});
  for (const auto& r : scan.reports) {
    csv.row(r.k, to_string(r.branch), r.cond1, r.cond2, r.cond3, r.all_satisfied);
  }
}

}  // namespace sshrabi
