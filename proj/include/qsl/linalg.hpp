#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qsl {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major. Desk-scale sizes only.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);
  /// |v><v|
  static ComplexMatrix outer(std::span<const cplx> v);

  std::size_t dimension() const noexcept { return n_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

 private:
  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

inline constexpr double kHermitianTol = 1e-12;

/// A ComplexMatrix checked to equal its conjugate transpose within
/// kHermitianTol elementwise; the stored copy is exactly Hermitian.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  /// Throws NotHermitian.
  explicit HermitianMatrix(ComplexMatrix m);

  static HermitianMatrix diagonal(std::span<const double> d);
  static HermitianMatrix identity(std::size_t n);

  std::size_t dimension() const noexcept { return m_.dimension(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
};

struct Eigensystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors
};

/// Cyclic Jacobi diagonalisation.
Eigensystem eigh(const HermitianMatrix& m);

inline constexpr double kPsdClampTol = 1e-12;

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// [-kPsdClampTol, 0) are treated as zero; anything lower throws NotPSD.
HermitianMatrix matrix_sqrt_psd(const HermitianMatrix& m);

/// V diag(f(lambda)) V^dagger
ComplexMatrix reconstruct(const Eigensystem& es, std::span<const double> diag);

}  // namespace qsl
