#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sshrabi/circulant.hpp"
#include "sshrabi/fourier.hpp"

namespace sshrabi {

// Multichain Rabi-wave packets.
//
// A tube of n cyclically coupled chains interacting with a quantized field in
// photon sector l. The chain coupling is circulant: every profile is expanded
// in powers [e1]^j of the cyclic shift, so the circulant mode q diagonalizes
// it with the phases exp(2 pi i q j / n). Mode q of the split pair evolves in
// h-space with the pure phase
//
//   omega_q^(-/+)(h) = sum_j exp(2 pi i q j / n) (theta_j(h) -/+ g sqrt(l-1) kappa_j(h))
//
// The packet carries two levels (upper/lower) per mode. The levels mix
// through the two dressed combinations (upper +/- lower)/sqrt(2), which carry
// the -/+ phases above; their phase difference drives the Rabi flopping.
//
// Amplitude conventions: Phi_qp(x) = n^(-1/2) exp(-2 pi i q p / n) phi_q(x) is
// the share of mode q on chain p, and chain p's amplitude is sum_q Phi_qp.

/// Profile coefficient of [e1]^j at wavenumber h, for an n-chain tube.
using ModeProfile = std::function<cplx(std::size_t j, std::size_t n, double h)>;

/// Initial amplitude of chain p at wavenumber h.
using ChainEnvelope = std::function<cplx(std::size_t p, double h)>;

enum class Level : std::size_t { Upper = 0, Lower = 1 };

struct TubeConfig {
  std::size_t n = 1;
  double g = 1.0;   ///< qubit-field coupling, rad/s
  unsigned l = 2;   ///< photon sector index
  ModeProfile theta;
  ModeProfile kappa;
  WaveGrid grid;

  void validate() const;
  double field_coupling() const;  ///< g sqrt(l - 1)
};

// Shipped model profiles. These are model inputs, not fitted values.

/// theta_0(h) = omega0 + 2 hopping cos(h spacing); interchain term on j = 1, n-1.
ModeProfile cosine_dispersion(double omega0, double hopping, double spacing, double interchain = 0.0);
/// theta_0(h) = omega0 + velocity h; interchain term on j = 1, n-1.
ModeProfile linear_dispersion(double omega0, double velocity, double interchain = 0.0);
/// kappa_0 = onsite, interchain on j = 1, n-1.
ModeProfile constant_coupling(double onsite = 1.0, double interchain = 0.0);
/// kappa_0(h) = 1 + modulation cos(h spacing), interchain on j = 1, n-1.
ModeProfile cosine_coupling(double modulation, double spacing, double interchain = 0.0);

/// exp(-(h - centre)^2 / (2 width^2)) on `chain`, or on every chain if empty.
ChainEnvelope gaussian_envelope(double centre, double width, std::optional<std::size_t> chain = std::nullopt);

struct PacketState {
  std::size_t n = 0;
  WaveGrid grid;
  double time = 0.0;  ///< s
  /// Mode amplitudes Theta_q(h), layout [level][q][j].
  std::vector<cplx> spectral;
  /// Mode functions phi_q(x), layout [level][q][m].
  std::vector<cplx> spatial;
  /// False after a spectral-only advance; call synchronize_spatial().
  bool spatial_current = false;

  std::size_t points() const { return grid.points; }
  std::span<cplx> spectral_of(Level lv, std::size_t q);
  std::span<const cplx> spectral_of(Level lv, std::size_t q) const;
  std::span<cplx> spatial_of(Level lv, std::size_t q);
  std::span<const cplx> spatial_of(Level lv, std::size_t q) const;

  /// Phi_qp(x_m) of the given level.
  cplx amplitude(Level lv, std::size_t q, std::size_t p, std::size_t m) const;
  /// sum_q Phi_qp(x_m): amplitude of chain p.
  cplx chain_amplitude(Level lv, std::size_t p, std::size_t m) const;

  /// sum over levels, q, h of |Theta|^2.
  double norm() const;
  /// sum over levels, q, p, x of |Phi_qp|^2.
  double spatial_norm() const;

  void synchronize_spatial(const SpectralTransform& transform);
};

/// Throws DomainError for an envelope with zero norm on the grid.
PacketState build_initial_packet(const TubeConfig& cfg, const ChainEnvelope& envelope,
                                 Level level = Level::Upper);

/// Scales the state to unit norm.
PacketState normalized(PacketState state);

/// Per-step phase factors for a fixed duration, reusable across steps.
struct StepFactors {
  double dt = 0.0;
  std::vector<cplx> minus;  ///< [q][j]
  std::vector<cplx> plus;   ///< [q][j]
};

class Propagator {
 public:
  /// Tabulates the mode dispersions. Throws ModelConsistencyError if any
  /// diagonalized dispersion has an imaginary part above 1e-9 (relative).
  explicit Propagator(const TubeConfig& cfg);

  const TubeConfig& config() const { return cfg_; }
  const SpectralTransform& transform() const { return transform_; }

  /// omega_q^-(h_j) and omega_q^+(h_j), rad/s.
  double omega_minus(std::size_t q, std::size_t j) const { return minus_[q * cfg_.grid.points + j]; }
  double omega_plus(std::size_t q, std::size_t j) const { return plus_[q * cfg_.grid.points + j]; }

  /// Largest beat frequency (Hz) any integral inversion can contain: the
  /// spread of all mode phase rates at a common h.
  double max_inversion_frequency() const;

  StepFactors step_factors(double dt) const;

  PacketState evolve(const PacketState& state, double t) const;
  void advance(PacketState& state, const StepFactors& step, bool update_spatial = true) const;

 private:
  void check_state(const PacketState& state) const;

  TubeConfig cfg_;
  SpectralTransform transform_;
  std::vector<double> minus_;
  std::vector<double> plus_;
};

PacketState evolve(const PacketState& state, const TubeConfig& cfg, double t);

/// Integral population inversion (upper - lower)/(upper + lower) of each
/// chain at the state's time. Chains carrying no population report 0.
/// Throws NormalizationError unless the state has unit norm (1e-8).
std::vector<double> inversion(const PacketState& state);

/// Inversion of the whole tube.
double total_inversion(const PacketState& state);

struct InversionTrajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<std::vector<double>> chains;  ///< [chain][sample]
  std::vector<double> total;
};

/// Samples the inversion at t0 + k dt, k = 0..samples-1. The state is
/// advanced in h-space only; its spatial image is refreshed at the end.
InversionTrajectory record_inversion(PacketState& state, const Propagator& prop, double dt,
                                     std::size_t samples);

struct SpectrumOptions {
  /// Peaks below this fraction of the largest magnitude are ignored.
  double relative_threshold = 0.05;
  bool hann_window = true;
  /// Highest frequency (Hz) the history may contain; 0 disables the check.
  double max_signal_frequency = 0.0;
  /// Slowest component (Hz) that must be covered twice; 0 disables the check.
  double min_signal_frequency = 0.0;
};

struct SpectralPeak {
  std::size_t bin = 0;
  double frequency = 0.0;  ///< bin centre, Hz
  double refined_frequency = 0.0;  ///< log-parabolic interpolation, Hz
  double magnitude = 0.0;
};

struct Spectrum {
  double sample_rate = 0.0;
  double resolution = 0.0;  ///< Hz per bin
  std::vector<double> frequency;
  std::vector<double> magnitude;
  std::vector<SpectralPeak> peaks;  ///< ascending frequency
};

/// One-sided amplitude spectrum of a uniformly sampled inversion history.
Spectrum revival_spectrum(std::span<const double> history, double sample_rate,
                          const SpectrumOptions& opts = {});

/// Largest peak, skipping the zero-frequency bin when exclude_dc is set.
std::optional<SpectralPeak> dominant_peak(const Spectrum& spectrum, bool exclude_dc = true);

/// Peaks above the primary Rabi peak: the revival group.
std::vector<SpectralPeak> revival_peaks(const Spectrum& spectrum, const SpectralPeak& primary);

}  // namespace sshrabi
