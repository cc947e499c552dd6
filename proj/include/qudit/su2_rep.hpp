#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "qudit/core/dim.hpp"
#include "qudit/core/error.hpp"
#include "qudit/core/linalg.hpp"
#include "qudit/core/matrix.hpp"
#include "qudit/number_rep.hpp"

namespace qudit {

// Weight ordering: matrix index i holds the weight m = j - i, so index 0 is
// the highest weight. Weights are passed around as 2m to stay integral.

inline std::size_t weight_index(QuditDim dim, int two_m) {
  const int d = dim.value();
  int i = (dim.two_j() - two_m) / 2;
  i %= d;
  if (i < 0) i += d;
  return static_cast<std::size_t>(i);
}

inline int weight_two_m(QuditDim dim, std::size_t index) {
  return dim.two_j() - 2 * static_cast<int>(index);
}

/// Spin-j irrep generators, j = (d - 1) / 2, in the z-weight basis.
struct SU2Generators {
  QuditDim dim;
  ComplexMatrix jz;
  ComplexMatrix jp;
  ComplexMatrix jm;
  ComplexMatrix jx;
  ComplexMatrix jy;

  double spin() const noexcept { return dim.spin(); }
};

inline SU2Generators build_su2(QuditDim dim) {
  const std::size_t d = dim.size();
  const double j = dim.spin();
  SU2Generators g{dim, ComplexMatrix(d, d), ComplexMatrix(d, d), {}, {}, {}};
  for (std::size_t i = 0; i < d; ++i) {
    const double m = 0.5 * weight_two_m(dim, i);
    g.jz(i, i) = m;
    // J+ |j, m) = sqrt(j(j+1) - m(m+1)) |j, m+1); weight m+1 sits at index i-1.
    if (i > 0) g.jp(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  g.jm = g.jp.adjoint();
  g.jx = (g.jp + g.jm) * Complex{0.5, 0.0};
  g.jy = (g.jp - g.jm) * Complex{0.0, -0.5};
  return g;
}

/// Columns are |j, m)_x in z-weight coordinates, obtained by rotating the
/// z-weight basis with exp(-i (pi/2) J_y). Column i carries weight m = j - i.
inline ComplexMatrix x_weight_basis(const SU2Generators& g) {
  return exp_i_hermitian(g.jy, -0.5 * std::numbers::pi);
}

/// Cross-check path: eigenvectors of J_x from the eigensolver, ordered by
/// descending eigenvalue. Column phases are whatever the solver returns.
inline ComplexMatrix x_weight_basis_by_diagonalization(const SU2Generators& g) {
  const HermitianEigen eig = hermitian_eigen(g.jx);
  const std::size_t d = g.dim.size();
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t k = d - 1 - i;
    for (std::size_t r = 0; r < d; ++r) out(r, i) = eig.eigenvectors(r, k);
  }
  return out;
}

/// Permutation taking z-weight coordinates to computational-label
/// coordinates under |s> = |j, j - s)_z.
inline ComplexMatrix weight_to_label(QuditDim dim) {
  const std::size_t d = dim.size();
  ComplexMatrix p(d, d);
  for (std::size_t s = 0; s < d; ++s) {
    const int two_m = dim.two_j() - 2 * static_cast<int>(s);
    p(s, weight_index(dim, two_m)) = 1.0;
  }
  return p;
}

/// Relabels an operator written in z-weight coordinates into label coordinates.
inline ComplexMatrix relabel_weight_operator(const ComplexMatrix& op, QuditDim dim) {
  const ComplexMatrix p = weight_to_label(dim);
  return p * op * p.adjoint();
}

/// Generalized Pauli generators acting on the SU(2) z-weight basis.
struct WeightRep {
  QuditDim dim;
  ComplexMatrix x_op;     // sum_m |j,m)(j,m+1| with cyclic wrap
  ComplexMatrix z_op;     // exp(2 pi i (j - J_z) / d)
  ComplexMatrix theta_z;  // X_d = exp(2 pi i theta_z / d)
  int dft_sign;
};

inline WeightRep build_weight_rep(QuditDim dim) {
  const std::size_t d = dim.size();
  const SU2Generators g = build_su2(dim);

  ComplexMatrix x(d, d);
  for (int two_m = -dim.two_j(); two_m <= dim.two_j(); two_m += 2) {
    // |j, j+1) is identified with |j, -j).
    x(weight_index(dim, two_m), weight_index(dim, two_m + 2)) = 1.0;
  }

  ComplexMatrix generator = ComplexMatrix::identity(d) * Complex{g.spin(), 0.0} - g.jz;
  ComplexMatrix z = exp_i_hermitian(generator, kTwoPi / dim.value());

  const ComplexMatrix p = weight_to_label(dim);
  if (max_abs_diff(p * x * p.adjoint(), shift_matrix(dim)) != 0.0) {
    throw ConventionMismatch("weight-basis X_d does not shift |s> to |s+1>");
  }
  const double clock_residual = max_abs_diff(p * z * p.adjoint(), clock_matrix(dim));
  if (clock_residual > convention_tolerance(dim)) {
    throw ConventionMismatch("weight-basis Z_d does not act as the clock (residual " +
                             std::to_string(clock_residual) + ")");
  }

  const double tol = convention_tolerance(dim);
  for (int sign : {1, -1}) {
    ComplexMatrix theta = p.adjoint() * dft_label_operator(dim, sign) * p;
    if (max_abs_diff(exp_i_hermitian(theta, kTwoPi / dim.value()), x) <= tol) {
      return WeightRep{dim, std::move(x), std::move(z), std::move(theta), sign};
    }
  }
  throw ConventionMismatch("no DFT sign makes exp(2 pi i theta_z / d) equal the weight-basis X_d");
}

/// Dual realization whose computational basis is the SU(2) phase states.
/// Everything is stored in z-weight coordinates.
///
/// For even d the prefactor exp(-i pi / d) on exp(2 pi i J_x / d) makes
/// (X_d)^d = I but leaves X_d |s> = exp(-2 pi i / d) |s+1>. That uniform phase
/// is measured and exposed as shift_phase(); it is 1 for odd d.
class PhaseRep {
 public:
  QuditDim dim() const noexcept { return dim_; }
  /// Column s is the phase state |s>.
  const ComplexMatrix& phase_states() const noexcept { return phase_states_; }
  /// Column i is |j, m = j - i)_x.
  const ComplexMatrix& x_weight_states() const noexcept { return x_weight_; }
  const ComplexMatrix& x_op() const noexcept { return x_op_; }
  const ComplexMatrix& z_op() const noexcept { return z_op_; }
  const ComplexMatrix& theta_x() const noexcept { return theta_x_; }
  /// Sign of the exponent in the phase-state sum that passed verification.
  int label_sign() const noexcept { return label_sign_; }
  Complex shift_phase() const noexcept { return shift_phase_; }
  double shift_residual() const noexcept { return shift_residual_; }

  StateVector phase_state(std::size_t s) const {
    return StateVector(phase_states_.column(s), BasisTag::ZWeightBasis);
  }

  /// Phase state s written in the x-weight basis, i.e. its defining sum.
  StateVector phase_state_x_coords(std::size_t s) const {
    const std::vector<Complex> col = phase_states_.column(s);
    return StateVector(x_weight_.adjoint() * std::span<const Complex>(col),
                       BasisTag::XWeightBasis);
  }

  friend PhaseRep build_phase_rep(QuditDim dim);

 private:
  explicit PhaseRep(QuditDim dim) : dim_(dim) {}

  QuditDim dim_;
  ComplexMatrix phase_states_;
  ComplexMatrix x_weight_;
  ComplexMatrix x_op_;
  ComplexMatrix z_op_;
  ComplexMatrix theta_x_;
  int label_sign_ = 1;
  Complex shift_phase_{1.0, 0.0};
  double shift_residual_ = 0.0;
};

/// |s> = d^{-1/2} sum_m exp(sign 2 pi i (m + offset) s / d) |j, m)_x with
/// offset 0 for odd d and 1/2 for even d.
inline ComplexMatrix su2_phase_states(QuditDim dim, const ComplexMatrix& x_weight, int sign) {
  const std::size_t d = dim.size();
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  ComplexMatrix coeffs(d, d);  // coeffs(i, s): amplitude of |j, m_i)_x in |s>
  for (std::size_t i = 0; i < d; ++i) {
    // 2(m + offset) is 2m for odd d and 2m + 1 for even d; either way an integer.
    const long long twice_shifted = weight_two_m(dim, i) + (dim.is_even() ? 1 : 0);
    for (std::size_t s = 0; s < d; ++s) {
      // exp(2 pi i (m + offset) s / d) = exp(2 pi i (2(m + offset) s) / (2d))
      coeffs(i, s) = norm * root_of_unity(sign * twice_shifted * static_cast<long long>(s),
                                          2LL * dim.value());
    }
  }
  return x_weight * coeffs;
}

inline PhaseRep build_phase_rep(QuditDim dim) {
  PhaseRep rep(dim);
  const std::size_t d = dim.size();
  const SU2Generators g = build_su2(dim);
  rep.x_weight_ = x_weight_basis(g);

  rep.x_op_ = exp_i_hermitian(g.jx, kTwoPi / dim.value());
  if (dim.is_even()) rep.x_op_ *= root_of_unity(-1, 2LL * dim.value());

  const double tol = convention_tolerance(dim);
  double best = 0.0;
  for (int sign : {1, -1}) {
    ComplexMatrix states = su2_phase_states(dim, rep.x_weight_, sign);
    const ComplexMatrix moved = rep.x_op_ * states;

    // X_d |s> must equal c |s+1 mod d> with one unit-modulus c for all s.
    const std::vector<Complex> s1 = states.column(1 % d);
    const Complex c = inner(s1, moved.column(0));
    double residual = std::abs(std::abs(c) - 1.0);
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t r = 0; r < d; ++r)
        residual = std::max(residual, std::abs(moved(r, s) - c * states(r, (s + 1) % d)));

    if (residual <= tol) {
      std::vector<Complex> clock(d);
      std::vector<Complex> labels(d);
      for (std::size_t s = 0; s < d; ++s) {
        clock[s] = root_of_unity(static_cast<long long>(s), dim.value());
        labels[s] = static_cast<double>(s);
      }
      const ComplexMatrix adj = states.adjoint();
      rep.z_op_ = states * ComplexMatrix::diagonal(clock) * adj;
      ComplexMatrix theta = states * ComplexMatrix::diagonal(labels) * adj;
      rep.theta_x_ = (theta + theta.adjoint()) * Complex{0.5, 0.0};
      rep.phase_states_ = std::move(states);
      rep.label_sign_ = sign;
      rep.shift_phase_ = c;
      rep.shift_residual_ = residual;
      if (identity_residual(matrix_power(rep.x_op_, d)) > 10.0 * tol) {
        throw ConventionMismatch("phase-rep (X_d)^d != I for d = " + std::to_string(d));
      }
      return rep;
    }
    best = sign == 1 ? residual : std::min(best, residual);
  }
  throw ConventionMismatch("phase-rep X_d does not shift the phase states for d = " +
                           std::to_string(d) + " (best residual " + std::to_string(best) + ")");
}

struct QubitRotationReport {
  /// ||(-i) exp(i (pi/2) X_2) |0> - |1>||_max with X_2 = 2 J_x.
  double residual;
  /// 1 - |<0| R R |0>| for R = (-i) exp(i (pi/2) X_2).
  double double_application_residual;
  /// ||2 J_x - X_2(number rep)||_max after relabeling.
  double cross_rep_residual;
};

inline QubitRotationReport qubit_rotation_identity_check() {
  const QuditDim two(2);
  const SU2Generators g = build_su2(two);
  const ComplexMatrix x2 = relabel_weight_operator(g.jx * Complex{2.0, 0.0}, two);
  const ComplexMatrix rotation = exp_i_hermitian(x2, 0.5 * std::numbers::pi) * Complex{0.0, -1.0};

  const std::vector<Complex> zero{1.0, 0.0};
  const std::vector<Complex> one{0.0, 1.0};
  const std::vector<Complex> once = rotation * std::span<const Complex>(zero);
  const std::vector<Complex> twice = rotation * std::span<const Complex>(once);

  QubitRotationReport report{};
  report.residual = max_abs_diff(once, one);
  report.double_application_residual = 1.0 - std::abs(inner(zero, twice));
  report.cross_rep_residual = max_abs_diff(x2, build_number_rep(two).x_op());
  return report;
}

}  // namespace qudit
