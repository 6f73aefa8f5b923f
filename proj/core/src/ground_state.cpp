#include "sshrabi/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "sshrabi/errors.hpp"

namespace sshrabi {
namespace {

double elastic_energy(const ChainParams& p) {
  return 2.0 * static_cast<double>(p.N) * p.K * p.u * p.u;
}

double band_energy_at_zero(const ChainParams& p) {
  return 4.0 * static_cast<double>(p.N) * p.t0 / std::numbers::pi;
}

}  // namespace

double dimerization_ratio(const ChainParams& p) { return 2.0 * p.alpha * std::abs(p.u) / p.t0; }

double u_for_ratio(const ChainParams& p, double z) { return z * p.t0 / (2.0 * p.alpha); }

double energy_quadrature(const ChainParams& p, const QuadratureOptions& opts) {
  p.validate();
  const double gap_amp = 4.0 * p.alpha * p.u;
  const double band_amp = 2.0 * p.t0;
  // Integrand in k; at u = 0 and the zone edge it has the finite limit 0.
  auto integrand = [&](double k) {
    const double eps = band_amp * std::cos(k * p.a);
    const double gap = gap_amp * std::sin(k * p.a);
    const double E = std::hypot(eps, gap);
    if (E == 0.0) return 0.0;
    return (gap - eps) * (gap + eps) / E;
  };
  double error = 0.0;
  double l1 = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, p.zone_edge(), opts.max_depth, opts.relative_tolerance, &error, &l1);
  if (!std::isfinite(integral) || error > opts.relative_tolerance * std::max(l1, 1e-300)) {
    std::ostringstream msg;
    msg << "ground-state quadrature did not converge: estimate " << integral << ", error bound "
        << error << " (requested relative " << opts.relative_tolerance << ")";
    throw NumericalFailure(msg.str(), integral, error);
  }
  const double N = static_cast<double>(p.N);
  return -(2.0 * N * p.a / std::numbers::pi) * integral + elastic_energy(p);
}

double energy_elliptic(const ChainParams& p) {
  p.validate();
  const double z = dimerization_ratio(p);
  if (!(z < 1.0)) {
    std::ostringstream msg;
    msg << "elliptic ground-state energy needs z = 2 alpha |u| / t0 < 1, got z = " << z;
    throw DomainError(msg.str());
  }
  if (z == 0.0) return band_energy_at_zero(p);
  const double z2 = z * z;
  double K = 0.0;
  double E = 0.0;
  if (z < 1e-6) {
    // The modulus rounds to 1 here; the series in the complementary modulus z
    // is exact to well below double precision.
    const double L = std::log(4.0 / z);
    K = L + 0.25 * z2 * (L - 1.0);
    E = 1.0 + 0.5 * z2 * (L - 0.5);
  } else {
    const double modulus = std::sqrt(1.0 - z2);
    K = std::comp_ellint_1(modulus);
    E = std::comp_ellint_2(modulus);
  }
  // K + (1+z^2)/(1-z^2) (E - K), regrouped as E + 2 z^2 (E - K)/(1 - z^2) so
  // the logarithmic growth of K as z -> 0 never enters with an O(1) weight.
  const double bracket = E + 2.0 * z2 * (E - K) / (1.0 - z2);
  return band_energy_at_zero(p) * bracket + elastic_energy(p);
}

double energy_expansion(const ChainParams& p, double z_threshold) {
  p.validate();
  const double z = dimerization_ratio(p);
  if (!(z < z_threshold)) {
    std::ostringstream msg;
    msg << "small-z expansion requested at z = " << z << " >= threshold " << z_threshold;
    throw DomainError(msg.str());
  }
  const double N = static_cast<double>(p.N);
  if (p.u == 0.0) return band_energy_at_zero(p);
  const double au = p.alpha * std::abs(p.u);
  const double a2u2 = au * au;
  const double pi = std::numbers::pi;
  const double per_site = 4.0 * p.t0 / pi - (6.0 / pi) * std::log(2.0 * p.t0 / au) * (4.0 * a2u2 / p.t0) +
                          28.0 * a2u2 / (pi * p.t0);
  return N * per_site + elastic_energy(p);
}

GroundStateResult minimize_dimerization(const ChainParams& p, const MinimizeOptions& opts) {
  p.validate();
  if (!(opts.z_max > 0.0 && opts.z_max < 1.0)) throw DomainError("z_max must lie in (0, 1)");
  if (!(opts.tolerance > 0.0)) throw DomainError("line-search tolerance must be > 0");
  if (opts.scan_points < 8) throw DomainError("bracketing scan needs at least 8 points");

  const double side = opts.negative_well ? -1.0 : 1.0;
  auto energy = [&](double magnitude) { return energy_elliptic(p.with_u(side * magnitude)); };

  GroundStateResult result;
  result.u_max = u_for_ratio(p, opts.z_max);
  result.E_at_zero = energy(0.0);

  // Geometric scan over nine decades below u_max: the Coleman-Weinberg well
  // can sit exponentially close to u = 0 for stiff lattices.
  const std::size_t n = opts.scan_points;
  const double decades = 9.0;
  std::vector<double> us(n);
  std::vector<double> fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(n - 1);
    us[i] = result.u_max * std::pow(10.0, -decades * (1.0 - frac));
    fs[i] = energy(us[i]);
  }
  us.back() = result.u_max;
  fs.back() = energy(result.u_max);
  const auto best = static_cast<std::size_t>(std::min_element(fs.begin(), fs.end()) - fs.begin());

  if (!(fs[best] < result.E_at_zero)) {
    result.E_min = result.E_at_zero;
    return result;
  }
  if (best == n - 1) {
    std::ostringstream msg;
    msg << "energy still decreasing at u_max = " << result.u_max << " A (z = " << opts.z_max
        << "); minimum not bracketed. E(u_max) = " << fs.back() << " eV, E(0) = " << result.E_at_zero
        << " eV";
    throw SearchFailure(msg.str(), fs.back(), 0.0);
  }

  const double lo = best == 0 ? 0.0 : us[best - 1];
  const double hi = us[best + 1];
  const int bits = std::clamp(
      static_cast<int>(std::ceil(1.0 - std::log2(opts.tolerance))), 8,
      std::numeric_limits<double>::digits / 2);
  std::uintmax_t iterations = 500;
  const auto [u_star, f_star] = boost::math::tools::brent_find_minima(energy, lo, hi, bits, iterations);
  if (iterations >= 500) {
    throw SearchFailure("line search hit its iteration cap", f_star, hi - lo);
  }

  result.dimerized = true;
  result.u0 = u_star;
  result.minimizer = side * u_star;
  result.E_min = f_star;
  result.z0 = dimerization_ratio(p.with_u(u_star));
  result.well_depth = result.E_at_zero - result.E_min;
  result.iterations = static_cast<unsigned>(iterations);
  return result;
}

std::vector<WellPoint> well_profile(const ChainParams& p, double u_extent, std::size_t points) {
  if (points < 2) throw DomainError("well profile needs at least 2 points");
  if (!(u_extent > 0.0)) throw DomainError("well profile extent must be > 0");
  std::vector<WellPoint> out(points);
  const double step = 2.0 * u_extent / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double u = -u_extent + step * static_cast<double>(i);
    out[i] = {u, energy_elliptic(p.with_u(u))};
  }
  return out;
}

}  // namespace sshrabi
