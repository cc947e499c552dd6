#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qudit/core/dim.hpp"
#include "qudit/core/error.hpp"
#include "qudit/core/matrix.hpp"

namespace qudit {

/// Precondition bound for exp_i_hermitian: ||h - h^dagger||_max.
inline constexpr double kHermitianTolerance = 1e-12;

/// ||a - b||_max over all entries.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimMismatch("cannot compare " + a.shape() + " with " + b.shape());
  }
  double worst = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) worst = std::max(worst, std::abs(ea[i] - eb[i]));
  return worst;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimMismatch("vector size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double identity_residual(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimMismatch("identity residual needs a square matrix");
  return max_abs_diff(m, ComplexMatrix::identity(m.rows()));
}

inline double hermiticity_residual(const ComplexMatrix& h) {
  if (!h.is_square()) throw DimMismatch("hermiticity needs a square matrix");
  double worst = 0.0;
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = r; c < h.cols(); ++c)
      worst = std::max(worst, std::abs(h(r, c) - std::conj(h(c, r))));
  return worst;
}

/// ||u^dagger u - I||_max.
inline double unitarity_residual(const ComplexMatrix& u) {
  if (!u.is_square()) throw DimMismatch("unitarity needs a square matrix");
  return identity_residual(u.adjoint() * u);
}

/// Tr(a^dagger b).
inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimMismatch("hs_inner needs equal square dims, got " + a.shape() + " and " +
                      b.shape());
  }
  Complex acc = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) acc += std::conj(ea[i]) * eb[i];
  return acc;
}

inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimMismatch("inner product size mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

/// Kronecker product. Result dimensions are capped at kMaxModeDim^2 so that
/// two-mode operators of the largest supported modes still fit the contract.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  constexpr std::size_t kMaxRows = static_cast<std::size_t>(kMaxModeDim) * kMaxModeDim;
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxRows || cols > kMaxRows) {
    throw DimensionOverflow("kron result " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " exceeds " + std::to_string(kMaxRows));
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      if (s == Complex{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

/// Integer power by repeated squaring; power 0 is the identity.
inline ComplexMatrix matrix_power(const ComplexMatrix& m, unsigned long long power) {
  if (!m.is_square()) throw DimMismatch("matrix_power needs a square matrix");
  ComplexMatrix result = ComplexMatrix::identity(m.rows());
  ComplexMatrix base = m;
  while (power > 0) {
    if (power & 1ULL) result = result * base;
    power >>= 1ULL;
    if (power > 0) base = base * base;
  }
  return result;
}

struct HermitianEigen {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

/// Eigendecomposition of a Hermitian matrix (lower triangle is read).
inline HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
  if (!h.is_square()) throw DimMismatch("hermitian_eigen needs a square matrix");
  const auto n = static_cast<Eigen::Index>(h.rows());
  Eigen::MatrixXcd dense(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) dense(r, c) = h(r, c);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("Hermitian eigendecomposition did not converge (n = " +
                       std::to_string(n) + ")");
  }
  HermitianEigen out{std::vector<double>(static_cast<std::size_t>(n)), ComplexMatrix(h.rows(), h.cols())};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    for (Eigen::Index r = 0; r < n; ++r) {
      out.eigenvectors(static_cast<std::size_t>(r), static_cast<std::size_t>(k)) =
          solver.eigenvectors()(r, k);
    }
  }
  return out;
}

/// V diag(f(lambda)) V^dagger for a precomputed eigendecomposition.
template <typename Fn>
ComplexMatrix spectral_apply(const HermitianEigen& eig, Fn&& f) {
  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix weighted = v;
  for (std::size_t r = 0; r < v.rows(); ++r)
    for (std::size_t k = 0; k < v.cols(); ++k) weighted(r, k) *= f(eig.eigenvalues[k]);
  return weighted * v.adjoint();
}

/// U = exp(i * scale * h) for Hermitian h, via eigendecomposition so that U is
/// unitary up to roundoff.
inline ComplexMatrix exp_i_hermitian(const ComplexMatrix& h, double scale) {
  if (!h.is_square()) throw DimMismatch("exp_i_hermitian needs a square matrix");
  if (!std::isfinite(scale)) throw InvalidArgument("exp_i_hermitian scale must be finite");
  const double herm = hermiticity_residual(h);
  if (herm > kHermitianTolerance) {
    throw NotHermitian("||h - h^dagger||_max = " + std::to_string(herm));
  }
  if (scale == 0.0) return ComplexMatrix::identity(h.rows());
  return spectral_apply(hermitian_eigen(h),
                        [scale](double lambda) { return std::polar(1.0, scale * lambda); });
}

/// F[n, s] = exp(sign * 2 pi i n s / d) / sqrt(d).
inline ComplexMatrix dft_matrix(QuditDim dim, int sign) {
  if (sign != 1 && sign != -1) throw InvalidArgument("DFT sign must be +1 or -1");
  const std::size_t d = dim.size();
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  ComplexMatrix f(d, d);
  for (std::size_t n = 0; n < d; ++n)
    for (std::size_t s = 0; s < d; ++s)
      f(n, s) = norm * root_of_unity(sign * static_cast<long long>(n * s), dim.value());
  return f;
}

}  // namespace qudit
