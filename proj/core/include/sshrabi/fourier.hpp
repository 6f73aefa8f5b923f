#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace sshrabi {

using cplx = std::complex<double>;

/// Uniform wavenumber grid h_j = h_min + j dh, j = 0..points-1, with
/// dh = (h_max - h_min) / points (periodic: h_max itself is excluded).
///
/// The conjugate spatial grid is x_m = (m - points/2) dx, dx = 2 pi / (points dh).
struct WaveGrid {
  std::size_t points = 4096;
  double h_min = -8.0;
  double h_max = 8.0;

  void validate() const;
  double dh() const;
  double dx() const;
  double h(std::size_t j) const;
  double x(std::size_t m) const;
  std::size_t centre_index() const { return points / 2; }
};

/// Unitary transform pair between a WaveGrid and its spatial grid:
///
///   phi(x_m)   = points^(-1/2) sum_j theta(h_j) exp(i h_j x_m)
///   theta(h_j) = points^(-1/2) sum_m phi(x_m) exp(-i h_j x_m)
///
/// Backed by FFTW with precomputed grid-offset twiddles.
class SpectralTransform {
 public:
  explicit SpectralTransform(const WaveGrid& grid);
  ~SpectralTransform();
  SpectralTransform(SpectralTransform&&) noexcept;
  SpectralTransform& operator=(SpectralTransform&&) noexcept;
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  const WaveGrid& grid() const { return grid_; }

  void to_spatial(std::span<const cplx> spectral, std::span<cplx> spatial) const;
  void to_spectral(std::span<const cplx> spatial, std::span<cplx> spectral) const;

 private:
  struct Plans;
  WaveGrid grid_;
  std::vector<cplx> pre_;   // exp(-2 pi i j c / M)
  std::vector<cplx> post_;  // exp(i h_min x_m)
  std::unique_ptr<Plans> plans_;
};

/// Unnormalized forward DFT, X_k = sum_n x_n exp(-2 pi i k n / N).
std::vector<cplx> dft_forward(std::span<const cplx> in);

}  // namespace sshrabi
