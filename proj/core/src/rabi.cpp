#include "sshrabi/rabi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sshrabi/errors.hpp"

namespace sshrabi {
namespace {

constexpr double kConsistencyTolerance = 1e-9;
constexpr double kNormTolerance = 1e-8;
// Chain populations below this (of a unit-norm packet) are rounding residue.
constexpr double kEmptyChain = 1e-20;

bool is_interchain(std::size_t j, std::size_t n) { return n > 1 && (j == 1 || j == n - 1); }

std::size_t index(std::size_t n, std::size_t M, Level lv, std::size_t q, std::size_t j) {
  return (static_cast<std::size_t>(lv) * n + q) * M + j;
}

// Chain-resolved level weights sum_h |sum_q n^-1/2 e^{-2 pi i q p/n} Theta_q(h)|^2,
// equal to the spatial integrals by Parseval.
std::vector<double> chain_weights(const PacketState& s, Level lv) {
  const std::size_t n = s.n;
  const std::size_t M = s.points();
  std::vector<cplx> phase(n * n);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t p = 0; p < n; ++p) phase[q * n + p] = std::conj(mode_phase(n, q, p));
  const double scale = 1.0 / static_cast<double>(n);
  std::vector<double> w(n, 0.0);
  std::vector<cplx> chain(n);
  for (std::size_t j = 0; j < M; ++j) {
    std::fill(chain.begin(), chain.end(), cplx{});
    for (std::size_t q = 0; q < n; ++q) {
      const cplx theta = s.spectral[index(n, M, lv, q, j)];
      if (theta == cplx{}) continue;
      for (std::size_t p = 0; p < n; ++p) chain[p] += phase[q * n + p] * theta;
    }
    for (std::size_t p = 0; p < n; ++p) w[p] += std::norm(chain[p]) * scale;
  }
  return w;
}

void require_unit_norm(const PacketState& s) {
  const double nrm = s.norm();
  if (!(std::abs(nrm - 1.0) <= kNormTolerance)) {
    std::ostringstream msg;
    msg << "inversion needs a normalized packet; norm is " << nrm;
    throw NormalizationError(msg.str());
  }
}

}  // namespace

void TubeConfig::validate() const {
  if (n < 1) throw DomainError("tube needs at least one chain");
  if (l < 1) throw DomainError("photon sector index l must be >= 1");
  if (!std::isfinite(g)) throw DomainError("coupling g must be finite");
  if (!theta || !kappa) throw DomainError("tube profiles theta and kappa must be set");
  grid.validate();
}

double TubeConfig::field_coupling() const { return g * std::sqrt(static_cast<double>(l) - 1.0); }

ModeProfile cosine_dispersion(double omega0, double hopping, double spacing, double interchain) {
  return [=](std::size_t j, std::size_t n, double h) -> cplx {
    if (j == 0) return omega0 + 2.0 * hopping * std::cos(h * spacing);
    return is_interchain(j, n) ? interchain : 0.0;
  };
}

ModeProfile linear_dispersion(double omega0, double velocity, double interchain) {
  return [=](std::size_t j, std::size_t n, double h) -> cplx {
    if (j == 0) return omega0 + velocity * h;
    return is_interchain(j, n) ? interchain : 0.0;
  };
}

ModeProfile constant_coupling(double onsite, double interchain) {
  return [=](std::size_t j, std::size_t n, double) -> cplx {
    if (j == 0) return onsite;
    return is_interchain(j, n) ? interchain : 0.0;
  };
}

ModeProfile cosine_coupling(double modulation, double spacing, double interchain) {
  return [=](std::size_t j, std::size_t n, double h) -> cplx {
    if (j == 0) return 1.0 + modulation * std::cos(h * spacing);
    return is_interchain(j, n) ? interchain : 0.0;
  };
}

ChainEnvelope gaussian_envelope(double centre, double width, std::optional<std::size_t> chain) {
  return [=](std::size_t p, double h) -> cplx {
    if (chain && p != *chain) return 0.0;
    const double d = (h - centre) / width;
    return std::exp(-0.5 * d * d);
  };
}

std::span<cplx> PacketState::spectral_of(Level lv, std::size_t q) {
  return {spectral.data() + index(n, points(), lv, q, 0), points()};
}
std::span<const cplx> PacketState::spectral_of(Level lv, std::size_t q) const {
  return {spectral.data() + index(n, points(), lv, q, 0), points()};
}
std::span<cplx> PacketState::spatial_of(Level lv, std::size_t q) {
  return {spatial.data() + index(n, points(), lv, q, 0), points()};
}
std::span<const cplx> PacketState::spatial_of(Level lv, std::size_t q) const {
  return {spatial.data() + index(n, points(), lv, q, 0), points()};
}

cplx PacketState::amplitude(Level lv, std::size_t q, std::size_t p, std::size_t m) const {
  if (!spatial_current) throw Error("spatial amplitudes are stale; synchronize_spatial() first");
  return std::conj(mode_phase(n, q, p)) * spatial[index(n, points(), lv, q, m)] /
         std::sqrt(static_cast<double>(n));
}

cplx PacketState::chain_amplitude(Level lv, std::size_t p, std::size_t m) const {
  cplx acc{};
  for (std::size_t q = 0; q < n; ++q) acc += amplitude(lv, q, p, m);
  return acc;
}

double PacketState::norm() const {
  double acc = 0.0;
  for (const cplx& c : spectral) acc += std::norm(c);
  return acc;
}

double PacketState::spatial_norm() const {
  double acc = 0.0;
  for (Level lv : {Level::Upper, Level::Lower})
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t m = 0; m < points(); ++m) acc += std::norm(amplitude(lv, q, p, m));
  return acc;
}

void PacketState::synchronize_spatial(const SpectralTransform& transform) {
  spatial.resize(spectral.size());
  for (Level lv : {Level::Upper, Level::Lower})
    for (std::size_t q = 0; q < n; ++q) transform.to_spatial(spectral_of(lv, q), spatial_of(lv, q));
  spatial_current = true;
}

PacketState build_initial_packet(const TubeConfig& cfg, const ChainEnvelope& envelope, Level level) {
  cfg.validate();
  if (!envelope) throw DomainError("initial envelope is not set");
  const std::size_t n = cfg.n;
  const std::size_t M = cfg.grid.points;

  PacketState s;
  s.n = n;
  s.grid = cfg.grid;
  s.spectral.assign(2 * n * M, cplx{});

  // Chain envelopes to circulant modes: Theta_q = n^-1/2 sum_p e^{2 pi i q p/n} env_p.
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<cplx> env(n);
  for (std::size_t j = 0; j < M; ++j) {
    const double h = cfg.grid.h(j);
    for (std::size_t p = 0; p < n; ++p) env[p] = envelope(p, h);
    for (std::size_t q = 0; q < n; ++q) {
      cplx acc{};
      for (std::size_t p = 0; p < n; ++p) acc += mode_phase(n, q, p) * env[p];
      s.spectral[index(n, M, level, q, j)] = acc * scale;
    }
  }
  const double nrm = s.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw DomainError("initial envelope has zero (or non-finite) norm on the h grid");
  }
  s.synchronize_spatial(SpectralTransform(cfg.grid));
  return s;
}

PacketState normalized(PacketState state) {
  const double nrm = state.norm();
  if (!(nrm > 0.0)) throw NormalizationError("cannot normalize a zero packet");
  const double scale = 1.0 / std::sqrt(nrm);
  for (cplx& c : state.spectral) c *= scale;
  for (cplx& c : state.spatial) c *= scale;
  return state;
}

Propagator::Propagator(const TubeConfig& cfg) : cfg_(cfg), transform_(cfg.grid) {
  cfg_.validate();
  const std::size_t n = cfg_.n;
  const std::size_t M = cfg_.grid.points;
  const double G = cfg_.field_coupling();
  minus_.resize(n * M);
  plus_.resize(n * M);

  std::vector<cplx> theta(n);
  std::vector<cplx> kappa(n);
  for (std::size_t jh = 0; jh < M; ++jh) {
    const double h = cfg_.grid.h(jh);
    for (std::size_t j = 0; j < n; ++j) {
      theta[j] = cfg_.theta(j, n, h);
      kappa[j] = cfg_.kappa(j, n, h);
    }
    for (std::size_t q = 0; q < n; ++q) {
      cplx wm{};
      cplx wp{};
      for (std::size_t j = 0; j < n; ++j) {
        const cplx ph = mode_phase(n, q, j);
        wm += ph * (theta[j] - G * kappa[j]);
        wp += ph * (theta[j] + G * kappa[j]);
      }
      for (const cplx& w : {wm, wp}) {
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) ||
            std::abs(w.imag()) > kConsistencyTolerance * std::max(1.0, std::abs(w.real()))) {
          std::ostringstream msg;
          msg << "mode " << q << " dispersion at h = " << h << " is not real (" << w.real() << " + "
              << w.imag() << "i); chain profiles must satisfy c_j = conj(c_{n-j})";
          throw ModelConsistencyError(msg.str());
        }
      }
      minus_[q * M + jh] = wm.real();
      plus_[q * M + jh] = wp.real();
    }
  }
}

double Propagator::max_inversion_frequency() const {
  const std::size_t n = cfg_.n;
  const std::size_t M = cfg_.grid.points;
  double widest = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    double lo = minus_[j];
    double hi = minus_[j];
    for (std::size_t q = 0; q < n; ++q) {
      for (double w : {minus_[q * M + j], plus_[q * M + j]}) {
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
    }
    widest = std::max(widest, hi - lo);
  }
  return widest / (2.0 * std::numbers::pi);
}

StepFactors Propagator::step_factors(double dt) const {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw DomainError("evolution time must be finite and >= 0");
  StepFactors f;
  f.dt = dt;
  f.minus.resize(minus_.size());
  f.plus.resize(plus_.size());
  for (std::size_t i = 0; i < minus_.size(); ++i) {
    f.minus[i] = std::polar(1.0, dt * minus_[i]);
    f.plus[i] = std::polar(1.0, dt * plus_[i]);
  }
  return f;
}

void Propagator::check_state(const PacketState& s) const {
  if (s.n != cfg_.n || s.grid.points != cfg_.grid.points || s.grid.h_min != cfg_.grid.h_min ||
      s.grid.h_max != cfg_.grid.h_max || s.spectral.size() != 2 * cfg_.n * cfg_.grid.points) {
    throw DomainError("packet dimensions do not match the tube configuration");
  }
}

void Propagator::advance(PacketState& s, const StepFactors& step, bool update_spatial) const {
  check_state(s);
  const std::size_t n = cfg_.n;
  const std::size_t M = cfg_.grid.points;
  for (std::size_t q = 0; q < n; ++q) {
    auto up = s.spectral_of(Level::Upper, q);
    auto lo = s.spectral_of(Level::Lower, q);
    for (std::size_t j = 0; j < M; ++j) {
      // Dressed pair: (U + L)/sqrt2 carries omega^-, (U - L)/sqrt2 carries omega^+.
      // Rotated back to the bare levels this is U' = c U + d L, L' = d U + c L.
      const cplx c = 0.5 * (step.minus[q * M + j] + step.plus[q * M + j]);
      const cplx d = 0.5 * (step.minus[q * M + j] - step.plus[q * M + j]);
      const cplx u = up[j];
      up[j] = c * u + d * lo[j];
      lo[j] = d * u + c * lo[j];
    }
  }
  s.time += step.dt;
  if (update_spatial) {
    s.synchronize_spatial(transform_);
  } else {
    s.spatial_current = false;
  }
}

PacketState Propagator::evolve(const PacketState& state, double t) const {
  PacketState out = state;
  advance(out, step_factors(t), true);
  return out;
}

PacketState evolve(const PacketState& state, const TubeConfig& cfg, double t) {
  return Propagator(cfg).evolve(state, t);
}

std::vector<double> inversion(const PacketState& state) {
  require_unit_norm(state);
  const auto up = chain_weights(state, Level::Upper);
  const auto lo = chain_weights(state, Level::Lower);
  std::vector<double> w(state.n, 0.0);
  for (std::size_t p = 0; p < state.n; ++p) {
    const double pop = up[p] + lo[p];
    if (pop > kEmptyChain) w[p] = std::clamp((up[p] - lo[p]) / pop, -1.0, 1.0);
  }
  return w;
}

double total_inversion(const PacketState& state) {
  require_unit_norm(state);
  double up = 0.0;
  double lo = 0.0;
  for (std::size_t q = 0; q < state.n; ++q) {
    for (const cplx& c : state.spectral_of(Level::Upper, q)) up += std::norm(c);
    for (const cplx& c : state.spectral_of(Level::Lower, q)) lo += std::norm(c);
  }
  return (up - lo) / (up + lo);
}

InversionTrajectory record_inversion(PacketState& state, const Propagator& prop, double dt,
                                     std::size_t samples) {
  if (samples == 0) throw DomainError("trajectory needs at least one sample");
  const StepFactors step = prop.step_factors(dt);
  InversionTrajectory traj;
  traj.dt = dt;
  traj.times.reserve(samples);
  traj.total.reserve(samples);
  traj.chains.assign(state.n, {});
  for (auto& c : traj.chains) c.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    if (k) prop.advance(state, step, false);
    traj.times.push_back(state.time);
    const auto w = inversion(state);
    for (std::size_t p = 0; p < state.n; ++p) traj.chains[p].push_back(w[p]);
    traj.total.push_back(total_inversion(state));
  }
  state.synchronize_spatial(prop.transform());
  return traj;
}

Spectrum revival_spectrum(std::span<const double> history, double sample_rate, const SpectrumOptions& opts) {
  if (history.size() < 2) throw DomainError("inversion history needs at least 2 samples");
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) throw DomainError("sample rate must be > 0");
  if (opts.max_signal_frequency > 0.0 && sample_rate < 2.0 * opts.max_signal_frequency) {
    std::ostringstream msg;
    msg << "sample rate " << sample_rate << " Hz is below the Nyquist rate "
        << 2.0 * opts.max_signal_frequency << " Hz of the fastest inversion beat";
    throw AliasingError(msg.str());
  }
  const std::size_t T = history.size();
  const double duration = static_cast<double>(T) / sample_rate;
  if (opts.min_signal_frequency > 0.0 && duration < 2.0 / opts.min_signal_frequency) {
    std::ostringstream msg;
    msg << "history of " << duration << " s covers fewer than two periods of "
        << opts.min_signal_frequency << " Hz";
    throw DomainError(msg.str());
  }

  std::vector<cplx> buf(T);
  double wsum = 0.0;
  for (std::size_t i = 0; i < T; ++i) {
    const double w = opts.hann_window
                         ? 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                                 static_cast<double>(T)))
                         : 1.0;
    wsum += w;
    buf[i] = history[i] * w;
  }
  const auto X = dft_forward(buf);

  Spectrum sp;
  sp.sample_rate = sample_rate;
  sp.resolution = sample_rate / static_cast<double>(T);
  const std::size_t bins = T / 2 + 1;
  sp.frequency.resize(bins);
  sp.magnitude.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const bool single = (k == 0) || (T % 2 == 0 && k == T / 2);
    sp.frequency[k] = sp.resolution * static_cast<double>(k);
    sp.magnitude[k] = std::abs(X[k]) * (single ? 1.0 : 2.0) / wsum;
  }

  const double top = *std::max_element(sp.magnitude.begin(), sp.magnitude.end());
  if (!(top > 0.0)) return sp;
  const double floor = opts.relative_threshold * top;
  constexpr double rise = 1.0 + 1e-9;
  for (std::size_t k = 0; k < bins; ++k) {
    const double m = sp.magnitude[k];
    if (m < floor) continue;
    const bool left_ok = k == 0 || m > sp.magnitude[k - 1] * rise;
    const bool right_ok = k + 1 == bins || m >= sp.magnitude[k + 1];
    if (!left_ok || !right_ok) continue;
    SpectralPeak pk;
    pk.bin = k;
    pk.frequency = sp.frequency[k];
    pk.magnitude = m;
    pk.refined_frequency = pk.frequency;
    if (k > 0 && k + 1 < bins) {
      const double a = sp.magnitude[k - 1];
      const double c = sp.magnitude[k + 1];
      if (a > 0.0 && c > 0.0) {
        const double la = std::log(a);
        const double lb = std::log(m);
        const double lc = std::log(c);
        const double denom = la - 2.0 * lb + lc;
        if (denom < 0.0) {
          const double offset = 0.5 * (la - lc) / denom;
          pk.refined_frequency = pk.frequency + std::clamp(offset, -0.5, 0.5) * sp.resolution;
        }
      }
    }
    sp.peaks.push_back(pk);
  }
  return sp;
}

std::optional<SpectralPeak> dominant_peak(const Spectrum& spectrum, bool exclude_dc) {
  std::optional<SpectralPeak> best;
  for (const auto& pk : spectrum.peaks) {
    if (exclude_dc && pk.bin == 0) continue;
    if (!best || pk.magnitude > best->magnitude) best = pk;
  }
  return best;
}

std::vector<SpectralPeak> revival_peaks(const Spectrum& spectrum, const SpectralPeak& primary) {
  std::vector<SpectralPeak> out;
  for (const auto& pk : spectrum.peaks) {
    if (pk.bin > primary.bin) out.push_back(pk);
  }
  return out;
}

}  // namespace sshrabi
