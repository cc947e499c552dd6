#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qudit/number_rep.hpp"
#include "qudit/su2_rep.hpp"
#include "test_support.hpp"

namespace qudit {
namespace {

using testing::omega;

double column_eigen_residual(const ComplexMatrix& op, const ComplexMatrix& vecs, std::size_t c,
                             double value) {
  const std::vector<Complex> v = vecs.column(c);
  const std::vector<Complex> av = op * std::span<const Complex>(v);
  double worst = 0.0;
  for (std::size_t r = 0; r < v.size(); ++r) worst = std::max(worst, std::abs(av[r] - value * v[r]));
  return worst;
}

TEST(Su2Generators, SpinHalf) {
  const SU2Generators g = build_su2(QuditDim(2));
  EXPECT_LE(max_abs_diff(g.jx, ComplexMatrix{{0.0, 0.5}, {0.5, 0.0}}), 1e-15);
  EXPECT_LE(max_abs_diff(g.jz, ComplexMatrix{{0.5, 0.0}, {0.0, -0.5}}), 1e-15);
}

TEST(Su2Generators, SpinOneLadder) {
  const SU2Generators g = build_su2(QuditDim(3));
  const std::vector<double> weights{1.0, 0.0, -1.0};
  EXPECT_EQ(max_abs_diff(g.jz, ComplexMatrix::diagonal(weights)), 0.0);
  // j = 1: sqrt(j(j+1) - m(m+1)) = sqrt(2) for m = 0 and m = -1.
  ComplexMatrix expected(3, 3);
  expected(0, 1) = std::sqrt(2.0);
  expected(1, 2) = std::sqrt(2.0);
  EXPECT_LE(max_abs_diff(g.jp, expected), 1e-15);
}

TEST(Su2Generators, CommutatorsAndCasimir) {
  for (int d = 2; d <= 32; ++d) {
    const QuditDim dim(d);
    const SU2Generators g = build_su2(dim);
    const double j = dim.spin();
    EXPECT_LE(max_abs_diff(commutator(g.jz, g.jp), g.jp), 1e-10) << d;
    EXPECT_LE(max_abs_diff(commutator(g.jp, g.jm), g.jz * Complex{2.0, 0.0}), 1e-10) << d;
    EXPECT_LE(max_abs_diff(commutator(g.jx, g.jy), g.jz * kI), 1e-10) << d;
    const ComplexMatrix casimir = g.jx * g.jx + g.jy * g.jy + g.jz * g.jz;
    EXPECT_LE(max_abs_diff(casimir, ComplexMatrix::identity(dim.size()) * Complex{j * (j + 1), 0.0}),
              1e-9)
        << d;
  }
}

TEST(WeightIndex, WrapsCyclically) {
  const QuditDim three(3);
  EXPECT_EQ(weight_index(three, 2), 0u);
  EXPECT_EQ(weight_index(three, -2), 2u);
  // |j, j+1) is |j, -j).
  EXPECT_EQ(weight_index(three, 4), weight_index(three, -2));
  EXPECT_EQ(weight_two_m(QuditDim(4), 3), -3);
}

TEST(WeightRep, QubitIsPauli) {
  const QuditDim two(2);
  const WeightRep rep = build_weight_rep(two);
  EXPECT_LE(max_abs_diff(relabel_weight_operator(rep.x_op, two), ComplexMatrix{{0, 1}, {1, 0}}),
            1e-15);
  EXPECT_LE(max_abs_diff(relabel_weight_operator(rep.z_op, two), ComplexMatrix{{1, 0}, {0, -1}}),
            1e-15);
}

TEST(WeightRep, QutritClockInLabelOrder) {
  const QuditDim three(3);
  const ComplexMatrix z = relabel_weight_operator(build_weight_rep(three).z_op, three);
  for (std::size_t s = 0; s < 3; ++s) EXPECT_LE(std::abs(z(s, s) - omega(3, s)), 1e-12);
  EXPECT_LE(max_abs_diff(z, ComplexMatrix::diagonal(std::vector<Complex>{1.0, omega(3), omega(3, 2)})),
            1e-12);
}

TEST(WeightRep, ShiftIsNumberRepPermutation) {
  const QuditDim three(3);
  const ComplexMatrix x = relabel_weight_operator(build_weight_rep(three).x_op, three);
  EXPECT_EQ(max_abs_diff(x, build_number_rep(three).x_op()), 0.0);
}

TEST(WeightRep, AgreesWithNumberRep) {
  for (int d = 2; d <= 32; ++d) {
    const QuditDim dim(d);
    const WeightRep w = build_weight_rep(dim);
    const NumberRep n = build_number_rep(dim);
    EXPECT_LE(max_abs_diff(relabel_weight_operator(w.x_op, dim), n.x_op()), 1e-10) << d;
    EXPECT_LE(max_abs_diff(relabel_weight_operator(w.z_op, dim), n.z_op()), 1e-10) << d;
    EXPECT_LE(max_abs_diff(exp_i_hermitian(w.theta_z, kTwoPi / d), w.x_op), 1e-10) << d;
  }
}

TEST(XWeightBasis, SpinHalfColumns) {
  const ComplexMatrix b = x_weight_basis(build_su2(QuditDim(2)));
  const double h = 1.0 / std::numbers::sqrt2;
  // Column 0 has m = +1/2: (|0> + |1>)/sqrt2; column 1: (|0> - |1>)/sqrt2, up to phase.
  EXPECT_NEAR(std::abs(b(0, 0)), h, 1e-15);
  EXPECT_LE(std::abs(b(1, 0) - b(0, 0)), 1e-15);
  EXPECT_LE(std::abs(b(1, 1) + b(0, 1)), 1e-15);
}

TEST(XWeightBasis, QutritEigenResiduals) {
  const SU2Generators g = build_su2(QuditDim(3));
  const ComplexMatrix b = x_weight_basis(g);
  const double m[] = {1.0, 0.0, -1.0};
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LE(column_eigen_residual(g.jx, b, i, m[i]), 1e-10);
}

TEST(XWeightBasis, RotationAgreesWithDiagonalization) {
  for (int d = 2; d <= 24; ++d) {
    const SU2Generators g = build_su2(QuditDim(d));
    const ComplexMatrix rotated = x_weight_basis(g);
    const ComplexMatrix solved = x_weight_basis_by_diagonalization(g);
    EXPECT_LE(unitarity_residual(rotated), 1e-12) << d;
    for (std::size_t i = 0; i < g.dim.size(); ++i) {
      const double m = 0.5 * weight_two_m(g.dim, i);
      EXPECT_LE(column_eigen_residual(g.jx, rotated, i, m), 1e-10) << d;
      // Nondegenerate spectrum: the columns agree up to phase.
      const Complex overlap = inner(rotated.column(i), solved.column(i));
      EXPECT_NEAR(std::abs(overlap), 1.0, 1e-10) << d;
    }
  }
}

TEST(PhaseRep, QubitPrefactorAndCyclicity) {
  const QuditDim two(2);
  const PhaseRep rep = build_phase_rep(two);
  const SU2Generators g = build_su2(two);
  const ComplexMatrix expected =
      exp_i_hermitian(g.jx, std::numbers::pi) * std::polar(1.0, -std::numbers::pi / 2);
  EXPECT_LE(max_abs_diff(rep.x_op(), expected), 1e-15);
  EXPECT_LE(identity_residual(rep.x_op() * rep.x_op()), 1e-12);
}

TEST(PhaseRep, QutritClockDiagonalInPhaseStates) {
  const PhaseRep rep = build_phase_rep(QuditDim(3));
  for (std::size_t s = 0; s < 3; ++s) {
    const std::vector<Complex> v = rep.phase_states().column(s);
    const std::vector<Complex> zv = rep.z_op() * std::span<const Complex>(v);
    for (std::size_t r = 0; r < 3; ++r) EXPECT_LE(std::abs(zv[r] - omega(3, s) * v[r]), 1e-12);
  }
}

TEST(PhaseRep, PhaseStatesAreOrthonormal) {
  for (int d = 2; d <= 16; ++d) {
    const PhaseRep rep = build_phase_rep(QuditDim(d));
    const ComplexMatrix& s = rep.phase_states();
    EXPECT_LE(identity_residual(testing::naive_product(s.adjoint(), s)), 1e-10) << d;
  }
}

TEST(PhaseRep, DefiningSumInXWeightCoordinates) {
  // Independent evaluation of d^{-1/2} sum_m exp(2 pi i (m + offset) s / d) |j, m)_x.
  for (int d : {2, 3, 4, 5, 8}) {
    const QuditDim dim(d);
    const PhaseRep rep = build_phase_rep(dim);
    const double offset = dim.is_even() ? 0.5 : 0.0;
    for (std::size_t s = 0; s < dim.size(); ++s) {
      const StateVector v = rep.phase_state_x_coords(s);
      EXPECT_EQ(v.basis(), BasisTag::XWeightBasis);
      for (std::size_t i = 0; i < dim.size(); ++i) {
        const double m = dim.spin() - static_cast<double>(i);
        const Complex expected = std::polar(1.0 / std::sqrt(double(d)),
                                            rep.label_sign() * kTwoPi * (m + offset) * s / d);
        EXPECT_LE(std::abs(v[i] - expected), 1e-12) << d << " s=" << s << " i=" << i;
      }
    }
  }
}

TEST(PhaseRep, ShiftAndGeneratorRelations) {
  for (int d = 2; d <= 32; ++d) {
    const QuditDim dim(d);
    const PhaseRep rep = build_phase_rep(dim);
    const ComplexMatrix& states = rep.phase_states();
    const ComplexMatrix moved = rep.x_op() * states;
    for (std::size_t s = 0; s < dim.size(); ++s)
      for (std::size_t r = 0; r < dim.size(); ++r)
        ASSERT_LE(std::abs(moved(r, s) - rep.shift_phase() * states(r, (s + 1) % dim.size())),
                  1e-10)
            << d;
    EXPECT_NEAR(std::abs(rep.shift_phase()), 1.0, 1e-12);
    EXPECT_LE(identity_residual(matrix_power(rep.x_op(), dim.size())), 1e-9) << d;
    EXPECT_LE(max_abs_diff(exp_i_hermitian(rep.theta_x(), kTwoPi / d), rep.z_op()), 1e-10) << d;
    const SU2Generators g = build_su2(dim);
    ComplexMatrix from_jx = exp_i_hermitian(g.jx, kTwoPi / d);
    if (dim.is_even()) from_jx *= std::polar(1.0, -std::numbers::pi / d);
    EXPECT_LE(max_abs_diff(from_jx, rep.x_op()), 1e-10) << d;
  }
}

TEST(PhaseRep, EvenDimensionShiftCarriesUniformPhase) {
  for (int d : {2, 4, 6, 16}) {
    const PhaseRep rep = build_phase_rep(QuditDim(d));
    EXPECT_LE(std::abs(rep.shift_phase() - std::polar(1.0, -kTwoPi / d)), 1e-10) << d;
  }
  for (int d : {3, 5, 9}) {
    EXPECT_LE(std::abs(build_phase_rep(QuditDim(d)).shift_phase() - 1.0), 1e-10) << d;
  }
}

TEST(PhaseRep, ThetaXHasIntegerSpectrumOnPhaseStates) {
  for (int d = 2; d <= 16; ++d) {
    const PhaseRep rep = build_phase_rep(QuditDim(d));
    for (std::size_t s = 0; s < rep.dim().size(); ++s) {
      EXPECT_LE(column_eigen_residual(rep.theta_x(), rep.phase_states(), s, double(s)), 1e-9) << d;
    }
  }
}

TEST(PhaseRep, QubitZWeightStatesArePhaseStates) {
  const PhaseRep rep = build_phase_rep(QuditDim(2));
  for (std::size_t z = 0; z < 2; ++z) {
    double best = 0.0;
    for (std::size_t s = 0; s < 2; ++s) {
      best = std::max(best, std::abs(rep.phase_states()(z, s)));
    }
    EXPECT_NEAR(best, 1.0, 1e-10);
  }
}

TEST(QubitRotation, IdentityHolds) {
  const QubitRotationReport report = qubit_rotation_identity_check();
  EXPECT_LE(report.residual, 1e-12);
  EXPECT_LE(report.double_application_residual, 1e-12);
  EXPECT_LE(report.cross_rep_residual, 1e-12);
}

}  // namespace
}  // namespace qudit
