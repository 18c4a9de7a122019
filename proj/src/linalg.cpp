#include "qsl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qsl/error.hpp"

namespace qsl {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> v) {
  ComplexMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  }
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rhs.n_ != n_) throw Error(Errc::SpectrumMismatch, "matrix dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rhs.n_ != n_) throw Error(Errc::SpectrumMismatch, "matrix dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.n_ != b.n_) throw Error(Errc::SpectrumMismatch, "matrix dimension mismatch");
  const std::size_t n = a.n_;
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  const std::size_t n = m_.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const cplx a = m_(i, j);
      const cplx b = std::conj(m_(j, i));
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw Error(Errc::NonFinite, "matrix entry is not finite");
      }
      if (std::abs(a - b) > kHermitianTol) {
        throw Error(Errc::NotHermitian, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                            ") differs from its transpose conjugate");
      }
      const cplx avg = 0.5 * (a + b);
      if (i == j) {
        m_(i, i) = avg.real();
      } else {
        m_(i, j) = avg;
        m_(j, i) = std::conj(avg);
      }
    }
  }
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  return HermitianMatrix(ComplexMatrix::diagonal(d));
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return HermitianMatrix(ComplexMatrix::identity(n));
}

namespace {

double off_diagonal_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  const std::size_t n = a.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return s;
}

// Applies A <- U^dagger A U and V <- V U for the unitary that is the identity
// outside rows/columns p, q and [[upp, upq], [uqp, uqq]] inside.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q, cplx upp, cplx upq,
            cplx uqp, cplx uqq) {
  const std::size_t n = a.dimension();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * upp + akq * uqp;
    a(k, q) = akp * upq + akq * uqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = vkp * upp + vkq * uqp;
    v(k, q) = vkp * upq + vkq * uqq;
  }
}

}  // namespace

Eigensystem eigh(const HermitianMatrix& m) {
  const std::size_t n = m.dimension();
  ComplexMatrix a = m.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(a.frobenius_norm(), 1e-300);
  const double stop = std::numeric_limits<double>::epsilon() * scale;
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (std::sqrt(off_diagonal_norm2(a)) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // phase the (p,q) entry real, then a real symmetric Jacobi rotation
        const cplx phase = apq / g;
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx conj_phase = std::conj(phase);
        rotate(a, v, p, q, c, s, -s * conj_phase, c * conj_phase);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  Eigensystem es;
  es.values.resize(n);
  es.vectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) es.vectors(r, k) = v(r, order[k]);
  }
  return es;
}

ComplexMatrix reconstruct(const Eigensystem& es, std::span<const double> diag) {
  const std::size_t n = es.vectors.dimension();
  ComplexMatrix r(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (diag[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = es.vectors(i, k) * diag[k];
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(es.vectors(j, k));
    }
  }
  return r;
}

HermitianMatrix matrix_sqrt_psd(const HermitianMatrix& m) {
  const Eigensystem es = eigh(m);
  std::vector<double> roots(es.values.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const double lambda = es.values[k];
    if (lambda < -kPsdClampTol) {
      throw Error(Errc::NotPSD, "eigenvalue " + std::to_string(lambda) + " is negative");
    }
    roots[k] = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  return HermitianMatrix(reconstruct(es, roots));
}

}  // namespace qsl
