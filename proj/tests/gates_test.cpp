#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qudit/gates.hpp"
#include "qudit/number_rep.hpp"
#include "test_support.hpp"

namespace qudit {
namespace {

using testing::omega;

// Dense Kerr evolution of |s1> (x) |theta_s2>, checked against the target
// product state by a full d^2 inner product.
double brute_force_sum_fidelity(int d, double chi_t, int sign, std::size_t s1, std::size_t s2) {
  const QuditDim dim(d);
  const std::size_t n = dim.size();
  const ComplexMatrix u = kerr_evolution(dim, 1.0, chi_t);
  std::vector<Complex> in(n * n), target(n * n);
  const double norm = 1.0 / std::sqrt(double(d));
  for (std::size_t n2 = 0; n2 < n; ++n2) {
    in[s1 * n + n2] = norm * std::polar(1.0, sign * kTwoPi * double(n2 * s2) / d);
    target[s1 * n + n2] = norm * std::polar(1.0, sign * kTwoPi * double(n2 * ((s1 + s2) % n)) / d);
  }
  const std::vector<Complex> out = u * std::span<const Complex>(in);
  return std::norm(inner(target, out));
}

TEST(FourierGate, QubitIsHadamard) {
  const double h = 1.0 / std::numbers::sqrt2;
  EXPECT_LE(max_abs_diff(fourier_gate(QuditDim(2)), ComplexMatrix{{h, h}, {h, -h}}), 1e-15);
}

TEST(FourierGate, MapsNumberStatesToPhaseStates) {
  for (int d : {2, 3, 7}) {
    const QuditDim dim(d);
    const ComplexMatrix f = fourier_gate(dim);
    for (std::size_t s = 0; s < dim.size(); ++s) {
      const StateVector phase = oscillator_phase_state(dim, s);
      EXPECT_LE(max_abs_diff(f.column(s), phase.amplitudes()), 1e-15);
    }
  }
}

TEST(FourierGate, UnitaryAndOrderFour) {
  for (int d = 2; d <= 32; ++d) {
    const ComplexMatrix f = fourier_gate(QuditDim(d));
    EXPECT_LE(identity_residual(f * f.adjoint()), 1e-12) << d;
    EXPECT_LE(identity_residual(matrix_power(f, 4)), 1e-9) << d;
  }
}

TEST(FourierGate, ConjugatesClockToInverseShift) {
  for (int d = 2; d <= 24; ++d) {
    const QuditDim dim(d);
    const NumberRep rep = build_number_rep(dim);
    const ComplexMatrix f = fourier_gate(dim);
    EXPECT_LE(max_abs_diff(f.adjoint() * rep.z_op() * f, rep.x_op().adjoint()), 1e-12) << d;
    EXPECT_LE(max_abs_diff(f.adjoint() * rep.x_op() * f, rep.z_op()), 1e-12) << d;
  }
}

TEST(KerrEvolution, ZeroTimeIsIdentity) {
  EXPECT_EQ(identity_residual(kerr_evolution(QuditDim(4), 1.0, 0.0)), 0.0);
}

TEST(KerrEvolution, VacuumRowIsTrivial) {
  const std::vector<Complex> p = kerr_phases(QuditDim(5), 1.3, 0.7);
  for (std::size_t n2 = 0; n2 < 5; ++n2) EXPECT_EQ(p[n2], Complex(1.0, 0.0));
}

TEST(KerrEvolution, QutritCornerPhase) {
  const ComplexMatrix u = kerr_evolution(QuditDim(3), 1.0, kTwoPi / 3);
  EXPECT_LE(std::abs(u(8, 8) - omega(3, -1)), 1e-14);
  EXPECT_LE(std::abs(u(8, 8) - std::polar(1.0, -8.0 * std::numbers::pi / 3)), 1e-14);
}

TEST(KerrEvolution, TimesAddAndStayUnitary) {
  const QuditDim dim(6);
  const double t1 = 0.37, t2 = 1.9;
  const ComplexMatrix lhs = kerr_evolution(dim, 0.8, t1) * kerr_evolution(dim, 0.8, t2);
  EXPECT_LE(max_abs_diff(lhs, kerr_evolution(dim, 0.8, t1 + t2)), 1e-14);
  EXPECT_LE(unitarity_residual(lhs), 1e-15);
}

TEST(KerrEvolution, DenseGuardAndFiniteInputs) {
  EXPECT_THROW(kerr_evolution(QuditDim(65), 1.0, 1.0), DimensionOverflow);
  EXPECT_THROW(kerr_phases(QuditDim(2), std::nan(""), 1.0), InvalidArgument);
  EXPECT_THROW(sum_permutation(QuditDim(65)), DimensionOverflow);
}

TEST(ApplyKerr, ModeOneMarginalIsUnchanged) {
  const QuditDim dim(5);
  const TwoModeState in = hybrid_input(dim, 3, 1);
  const TwoModeState out = apply_kerr(in, 1.0, 0.9);
  for (std::size_t n1 = 0; n1 < 5; ++n1) {
    double p_in = 0.0, p_out = 0.0;
    for (std::size_t n2 = 0; n2 < 5; ++n2) {
      p_in += std::norm(in.amplitudes()[n1 * 5 + n2]);
      p_out += std::norm(out.amplitudes()[n1 * 5 + n2]);
    }
    EXPECT_NEAR(p_in, p_out, 1e-15);
  }
  EXPECT_EQ(out.encodings().second, BasisTag::PhaseBasis);
}

TEST(CalibrateSum, QubitTruthTableEntry) {
  const SumCalibration cal = calibrate_sum(QuditDim(2));
  EXPECT_GE(brute_force_sum_fidelity(2, cal.chi_t(), cal.sign, 1, 1), 1.0 - 1e-12);
  EXPECT_GE(kerr_mode2_fidelity(cal.dim, cal.chi_t(), cal.sign, 1, 1, 0), 1.0 - 1e-12);
}

TEST(CalibrateSum, QutritTruthTableEntry) {
  const SumCalibration cal = calibrate_sum(QuditDim(3));
  EXPECT_GE(brute_force_sum_fidelity(3, cal.chi_t(), cal.sign, 1, 2), 1.0 - 1e-10);
  EXPECT_GE(cal.fidelity, 1.0 - 1e-9);
}

TEST(CalibrateSum, WinnerIsOneOverDTurnWithModuleSign) {
  for (int d = 2; d <= 16; ++d) {
    const SumCalibration cal = calibrate_sum(QuditDim(d));
    EXPECT_GE(cal.fidelity, kSumFidelityBar) << d;
    EXPECT_NEAR(cal.chi_t(), kTwoPi / d, 1e-12) << d;
    EXPECT_EQ(cal.sign, kPhaseStateSign) << d;
    for (std::size_t s1 = 0; s1 < cal.dim.size(); ++s1)
      for (std::size_t s2 = 0; s2 < cal.dim.size(); ++s2)
        EXPECT_GE(brute_force_sum_fidelity(d, cal.chi_t(), cal.sign, s1, s2), 1.0 - 1e-9) << d;
  }
}

TEST(CalibrateSum, NominalFullTurnIsTrivial) {
  // chi t = 2 pi leaves every integer-label phase at 1, so SUM is not realized.
  for (int d : {2, 3, 5}) {
    EXPECT_LT(sum_worst_fidelity(QuditDim(d), 1.0, kTwoPi, kPhaseStateSign), 1e-9) << d;
  }
}

TEST(CalibrateSum, ScalesWithCoupling) {
  const SumCalibration cal = calibrate_sum(QuditDim(4), 2.5);
  EXPECT_NEAR(cal.t_star, kTwoPi / (4 * 2.5), 1e-12);
  EXPECT_THROW(calibrate_sum(QuditDim(4), 0.0), InvalidArgument);
}

TEST(SumGate, QubitIsCnotInHybridBasis) {
  const QuditDim two(2);
  const ComplexMatrix hybrid = to_hybrid_basis(sum_gate(calibrate_sum(two)), two);
  const ComplexMatrix cnot{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  EXPECT_LE(max_abs_diff(hybrid, cnot), 1e-12);
}

TEST(SumGate, HybridBasisPermutation) {
  for (int d = 2; d <= 16; ++d) {
    const QuditDim dim(d);
    const ComplexMatrix hybrid = to_hybrid_basis(sum_gate(calibrate_sum(dim)), dim);
    EXPECT_LE(max_abs_diff(hybrid, sum_permutation(dim)), 1e-9) << d;
    for (const Complex& z : hybrid.entries()) {
      const double m = std::abs(z);
      EXPECT_TRUE(m < 1e-9 || std::abs(m - 1.0) < 1e-9) << d;
    }
  }
}

TEST(SumGate, PowerDIsIdentity) {
  for (int d = 2; d <= 16; ++d) {
    const QuditDim dim(d);
    EXPECT_LE(identity_residual(matrix_power(sum_gate(calibrate_sum(dim)), dim.size())), 1e-8) << d;
  }
}

TEST(FractionalSumLabel, Endpoints) {
  const SumCalibration cal = calibrate_sum(QuditDim(5));
  for (std::size_t s1 = 0; s1 < 5; ++s1)
    for (std::size_t s2 = 0; s2 < 5; ++s2) {
      const LabelDecode start = fractional_sum_label(cal, s1, s2, 0.0);
      EXPECT_EQ(start.label, s2);
      EXPECT_NEAR(start.fidelity, 1.0, 1e-12);
      const LabelDecode end = fractional_sum_label(cal, s1, s2, cal.t_star);
      EXPECT_EQ(end.label, (s1 + s2) % 5);
      EXPECT_GE(end.fidelity, 1.0 - 1e-9);
    }
}

TEST(FractionalSumLabel, HalfwayLeavesTheGrid) {
  for (int d : {2, 3, 6}) {
    const SumCalibration cal = calibrate_sum(QuditDim(d));
    for (std::size_t s1 = 1; s1 < cal.dim.size(); ++s1) {
      const LabelDecode mid = fractional_sum_label(cal, s1, 0, 0.5 * cal.t_star);
      // Oracle: direct overlap sum with the evolved state.
      double best = 0.0;
      for (std::size_t k = 0; k < cal.dim.size(); ++k) {
        Complex acc = 0.0;
        for (std::size_t n = 0; n < cal.dim.size(); ++n) {
          acc += std::polar(1.0 / d, -0.5 * cal.chi_t() * double(s1 * n) -
                                         cal.sign * kTwoPi * double(n * k) / d);
        }
        best = std::max(best, std::norm(acc));
      }
      EXPECT_NEAR(mid.fidelity, best, 1e-12) << d;
      if (s1 % 2 == 1) {
        EXPECT_LT(mid.fidelity, 1.0 - 1e-6) << d;
      } else {
        // Half the gate time with even s1 is a whole shift by s1 / 2.
        EXPECT_EQ(mid.label, s1 / 2);
        EXPECT_NEAR(mid.fidelity, 1.0, 1e-12) << d;
      }
    }
  }
  EXPECT_THROW(fractional_sum_label(calibrate_sum(QuditDim(2)), 2, 0, 0.0), InvalidArgument);
}

TEST(TwoModeStateTest, Validation) {
  EXPECT_THROW(TwoModeState(QuditDim(2), std::vector<Complex>(3), {}), DimMismatch);
  EXPECT_THROW(TwoModeState(QuditDim(2), std::vector<Complex>(4), {}), InvalidArgument);
  EXPECT_THROW(oscillator_phase_state(QuditDim(3), 3), InvalidArgument);
}

}  // namespace
}  // namespace qudit
