#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "qudit/core/dim.hpp"
#include "qudit/core/error.hpp"
#include "qudit/core/linalg.hpp"
#include "qudit/core/matrix.hpp"

namespace qudit {

/// Bound used when a constructor checks that a generator exponentiates to the
/// shift it is meant to produce. Eigensolver roundoff grows with d, so the
/// bound relaxes past d = 100; a wrong convention misses by O(1).
inline double convention_tolerance(QuditDim dim) {
  const double d = dim.value();
  return std::max(Tolerance::kDefault, 1e-14 * d * d);
}

/// Cyclic shift: column s has a single 1 in row (s + 1) mod d.
inline ComplexMatrix shift_matrix(QuditDim dim) {
  const std::size_t d = dim.size();
  ComplexMatrix x(d, d);
  for (std::size_t s = 0; s < d; ++s) x((s + 1) % d, s) = 1.0;
  return x;
}

/// Clock: diag(exp(2 pi i s / d)).
inline ComplexMatrix clock_matrix(QuditDim dim) {
  std::vector<Complex> diag(dim.size());
  for (std::size_t s = 0; s < dim.size(); ++s) {
    diag[s] = root_of_unity(static_cast<long long>(s), dim.value());
  }
  return ComplexMatrix::diagonal(diag);
}

/// Label operator F diag(0, ..., d-1) F^dagger with F = dft_matrix(d, sign).
/// The product is circulant, so it is filled from its first column.
inline ComplexMatrix dft_label_operator(QuditDim dim, int sign) {
  const std::size_t d = dim.size();
  std::vector<Complex> first_col(d);
  for (std::size_t r = 0; r < d; ++r) {
    Complex acc = 0.0;
    for (std::size_t k = 1; k < d; ++k) {
      acc += static_cast<double>(k) *
             root_of_unity(sign * static_cast<long long>(r * k), dim.value());
    }
    first_col[r] = acc / static_cast<double>(d);
  }
  ComplexMatrix theta(d, d);
  for (std::size_t n = 0; n < d; ++n)
    for (std::size_t m = 0; m < d; ++m) theta(n, m) = first_col[(n + d - m) % d];
  // Exact Hermitian symmetry; the two triangles differ only in roundoff.
  ComplexMatrix sym = theta + theta.adjoint();
  sym *= 0.5;
  return sym;
}

/// Harmonic-oscillator number-basis realization of the qudit Pauli generators.
///
/// The computational basis is |s> = |n = s>. theta_z is the label-valued
/// phase operator (eigenvalues 0..d-1), so X_d = exp(2 pi i theta_z / d)
/// holds with no extra factor; angle_operator() rescales it to the
/// conventional eigenvalues 2 pi k / d.
class NumberRep {
 public:
  QuditDim dim() const noexcept { return dim_; }
  const ComplexMatrix& n_op() const noexcept { return n_op_; }
  const ComplexMatrix& x_op() const noexcept { return x_op_; }
  const ComplexMatrix& z_op() const noexcept { return z_op_; }
  const ComplexMatrix& theta_z() const noexcept { return theta_z_; }

  /// Sign of the DFT whose columns are the eigenvectors of theta_z.
  int dft_sign() const noexcept { return dft_sign_; }
  /// ||exp(2 pi i theta_z / d) - X_d||_max measured at construction.
  double convention_residual() const noexcept { return convention_residual_; }

  ComplexMatrix angle_operator() const { return theta_z_ * (kTwoPi / dim_.value()); }

  friend NumberRep build_number_rep(QuditDim dim);

 private:
  explicit NumberRep(QuditDim dim) : dim_(dim) {}

  QuditDim dim_;
  ComplexMatrix n_op_;
  ComplexMatrix x_op_;
  ComplexMatrix z_op_;
  ComplexMatrix theta_z_;
  int dft_sign_ = 1;
  double convention_residual_ = 0.0;
};

/// Builds N, X_d, Z_d and theta_z. The DFT sign inside theta_z is found by
/// trying +1 and then -1 against X_d; the winner is recorded in dft_sign().
/// Throws ConventionMismatch if neither sign reproduces the shift.
inline NumberRep build_number_rep(QuditDim dim) {
  NumberRep rep(dim);
  const std::size_t d = dim.size();

  std::vector<double> labels(d);
  for (std::size_t s = 0; s < d; ++s) labels[s] = static_cast<double>(s);
  rep.n_op_ = ComplexMatrix::diagonal(labels);
  rep.x_op_ = shift_matrix(dim);
  rep.z_op_ = clock_matrix(dim);

  const double tol = convention_tolerance(dim);
  double best = 0.0;
  for (int sign : {1, -1}) {
    ComplexMatrix theta = dft_label_operator(dim, sign);
    const double residual =
        max_abs_diff(exp_i_hermitian(theta, kTwoPi / dim.value()), rep.x_op_);
    if (residual <= tol) {
      rep.theta_z_ = std::move(theta);
      rep.dft_sign_ = sign;
      rep.convention_residual_ = residual;
      return rep;
    }
    best = sign == 1 ? residual : std::min(best, residual);
  }
  throw ConventionMismatch("exp(2 pi i theta_z / d) does not reproduce X_d for d = " +
                           std::to_string(dim.value()) + " with either DFT sign (best residual " +
                           std::to_string(best) + ")");
}

/// X(x) = exp(i x theta_z).
inline ComplexMatrix continuous_x(const NumberRep& rep, double x) {
  if (!std::isfinite(x)) throw InvalidArgument("continuous_x parameter must be finite");
  return exp_i_hermitian(rep.theta_z(), x);
}

/// Z(z) = exp(i z N) = diag(exp(i z n)).
inline ComplexMatrix continuous_z(const NumberRep& rep, double z) {
  if (!std::isfinite(z)) throw InvalidArgument("continuous_z parameter must be finite");
  const std::size_t d = rep.dim().size();
  std::vector<Complex> diag(d);
  for (std::size_t n = 0; n < d; ++n) diag[n] = std::polar(1.0, z * static_cast<double>(n));
  return ComplexMatrix::diagonal(diag);
}

}  // namespace qudit
