#include "sshrabi/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sshrabi/errors.hpp"

namespace sshrabi {

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (rhs.n != n) throw DomainError("matrix dimension mismatch");
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx lhs = (*this)(r, k);
      if (lhs == cplx{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += lhs * rhs(k, c);
    }
  }
  return out;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& rhs) const {
  if (rhs.n != n) throw DomainError("matrix dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) worst = std::max(worst, std::abs(data[i] - rhs.data[i]));
  return worst;
}

CirculantShift::CirculantShift(std::size_t n) : n_(n) {
  if (n == 0) throw DomainError("circulant dimension must be >= 1");
}

std::vector<cplx> CirculantShift::apply(std::span<const cplx> v) const {
  if (v.size() != n_) throw DomainError("vector length does not match circulant dimension");
  std::vector<cplx> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = v[(k + 1) % n_];
  return out;
}

ComplexMatrix CirculantShift::dense() const {
  ComplexMatrix m(n_);
  for (std::size_t r = 0; r < n_; ++r) m(r, (r + 1) % n_) = 1.0;
  return m;
}

ComplexMatrix CirculantShift::dense_power(std::size_t power) const {
  ComplexMatrix result = ComplexMatrix::identity(n_);
  const ComplexMatrix shift = dense();
  for (std::size_t i = 0; i < power; ++i) result = result * shift;
  return result;
}

cplx mode_phase(std::size_t n, std::size_t q, std::size_t j) {
  // Reduce q*j mod n first so large products keep full phase accuracy.
  const std::size_t r = (q * j) % n;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

cplx CirculantModes::eigenvector_component(std::size_t alpha, std::size_t k) const {
  return mode_phase(n, alpha, k) / std::sqrt(static_cast<double>(n));
}

ComplexMatrix CirculantModes::reconstruct_power(std::size_t power) const {
  ComplexMatrix out(n);
  std::vector<cplx> lambda_pow(n);
  for (std::size_t a = 0; a < n; ++a) {
    lambda_pow[a] = 1.0;
    for (std::size_t i = 0; i < power; ++i) lambda_pow[a] *= eigenvalues[a];
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      cplx acc{};
      for (std::size_t a = 0; a < n; ++a) {
        acc += eigenvector_component(a, r) * lambda_pow[a] * std::conj(eigenvector_component(a, c));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

CirculantModes circulant_modes(std::size_t n) {
  if (n == 0) throw DomainError("circulant dimension must be >= 1");
  CirculantModes modes;
  modes.n = n;
  modes.eigenvalues.resize(n);
  for (std::size_t a = 0; a < n; ++a) modes.eigenvalues[a] = mode_phase(n, a, 1);
  return modes;
}

}  // namespace sshrabi
