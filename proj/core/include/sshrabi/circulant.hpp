#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sshrabi {

using cplx = std::complex<double>;

/// Dense row-major complex matrix, just enough for circulant checks.
struct ComplexMatrix {
  std::size_t n = 0;
  std::vector<cplx> data;

  explicit ComplexMatrix(std::size_t dim = 0) : n(dim), data(dim * dim) {}
  static ComplexMatrix identity(std::size_t dim);

  cplx& operator()(std::size_t r, std::size_t c) { return data[r * n + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data[r * n + c]; }

  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  double max_abs_diff(const ComplexMatrix& rhs) const;
};

/// The cyclic shift [e1]: ones on the superdiagonal and a one in the
/// bottom-left corner, so ([e1] v)_k = v_{(k+1) mod n}.
class CirculantShift {
 public:
  explicit CirculantShift(std::size_t n);

  std::size_t size() const { return n_; }
  std::vector<cplx> apply(std::span<const cplx> v) const;
  ComplexMatrix dense() const;
  /// [e1]^power formed by repeated multiplication of the dense matrix.
  ComplexMatrix dense_power(std::size_t power) const;

 private:
  std::size_t n_;
};

/// Eigen-decomposition of [e1]. Eigenvalue alpha is exp(2 pi i alpha / n);
/// its normalized eigenvector has components exp(2 pi i alpha k / n) / sqrt(n).
struct CirculantModes {
  std::size_t n = 0;
  std::vector<cplx> eigenvalues;

  cplx eigenvector_component(std::size_t alpha, std::size_t k) const;
  /// V diag(lambda^power) V^H.
  ComplexMatrix reconstruct_power(std::size_t power) const;
};

CirculantModes circulant_modes(std::size_t n);

/// exp(2 pi i q j / n), the mode phase that diagonalizes sum_j c_j [e1]^j.
cplx mode_phase(std::size_t n, std::size_t q, std::size_t j);

}  // namespace sshrabi
