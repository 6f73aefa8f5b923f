#include "sshrabi/fourier.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include <fftw3.h>

#include "sshrabi/errors.hpp"

namespace sshrabi {
namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

fftw_plan make_plan(std::size_t n, int sign) {
  std::vector<cplx> scratch(n);
  std::lock_guard lock(planner_mutex());
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(scratch.data()), as_fftw(scratch.data()),
                                    sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw Error("FFTW could not create a plan of size " + std::to_string(n));
  return plan;
}

void destroy_plan(fftw_plan plan) {
  if (!plan) return;
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

void WaveGrid::validate() const {
  if (points < 2) throw DomainError("wave grid needs at least 2 points");
  if (!(std::isfinite(h_min) && std::isfinite(h_max) && h_max > h_min)) {
    throw DomainError("wave grid extent must satisfy h_min < h_max");
  }
}

double WaveGrid::dh() const { return (h_max - h_min) / static_cast<double>(points); }

double WaveGrid::dx() const { return 2.0 * std::numbers::pi / (static_cast<double>(points) * dh()); }

double WaveGrid::h(std::size_t j) const { return h_min + dh() * static_cast<double>(j); }

double WaveGrid::x(std::size_t m) const {
  return (static_cast<double>(m) - static_cast<double>(centre_index())) * dx();
}

struct SpectralTransform::Plans {
  fftw_plan backward = nullptr;
  fftw_plan forward = nullptr;
  ~Plans() {
    destroy_plan(backward);
    destroy_plan(forward);
  }
};

SpectralTransform::SpectralTransform(const WaveGrid& grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
  grid_.validate();
  const std::size_t M = grid_.points;
  pre_.resize(M);
  post_.resize(M);
  const std::size_t c = grid_.centre_index();
  for (std::size_t j = 0; j < M; ++j) {
    const std::size_t r = (j * c) % M;
    pre_[j] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(M));
  }
  for (std::size_t m = 0; m < M; ++m) post_[m] = std::polar(1.0, grid_.h_min * grid_.x(m));
  plans_->backward = make_plan(M, FFTW_BACKWARD);
  plans_->forward = make_plan(M, FFTW_FORWARD);
}

SpectralTransform::~SpectralTransform() = default;
SpectralTransform::SpectralTransform(SpectralTransform&&) noexcept = default;
SpectralTransform& SpectralTransform::operator=(SpectralTransform&&) noexcept = default;

void SpectralTransform::to_spatial(std::span<const cplx> spectral, std::span<cplx> spatial) const {
  const std::size_t M = grid_.points;
  if (spectral.size() != M || spatial.size() != M) throw DomainError("transform length mismatch");
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  for (std::size_t j = 0; j < M; ++j) spatial[j] = spectral[j] * pre_[j];
  fftw_execute_dft(plans_->backward, as_fftw(spatial.data()), as_fftw(spatial.data()));
  for (std::size_t m = 0; m < M; ++m) spatial[m] *= post_[m] * scale;
}

void SpectralTransform::to_spectral(std::span<const cplx> spatial, std::span<cplx> spectral) const {
  const std::size_t M = grid_.points;
  if (spectral.size() != M || spatial.size() != M) throw DomainError("transform length mismatch");
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  for (std::size_t m = 0; m < M; ++m) spectral[m] = spatial[m] * std::conj(post_[m]);
  fftw_execute_dft(plans_->forward, as_fftw(spectral.data()), as_fftw(spectral.data()));
  for (std::size_t j = 0; j < M; ++j) spectral[j] *= std::conj(pre_[j]) * scale;
}

std::vector<cplx> dft_forward(std::span<const cplx> in) {
  std::vector<cplx> out(in.begin(), in.end());
  if (out.empty()) return out;
  fftw_plan plan = make_plan(out.size(), FFTW_FORWARD);
  fftw_execute_dft(plan, as_fftw(out.data()), as_fftw(out.data()));
  destroy_plan(plan);
  return out;
}

}  // namespace sshrabi
