#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qudit/core/dim.hpp"
#include "qudit/core/error.hpp"
#include "qudit/core/linalg.hpp"
#include "qudit/core/matrix.hpp"

namespace qudit {

/// Sign of the DFT used for oscillator phase states
/// |theta_s> = d^{-1/2} sum_n exp(sign 2 pi i n s / d) |n>. With -1 these
/// are exactly the eigenvectors of the number-rep theta_z, and the Fourier
/// gate conjugates the clock into the inverse shift: F^dagger Z F = X^dagger.
inline constexpr int kPhaseStateSign = -1;

/// Dense two-mode operators are only built up to this per-mode dimension.
inline constexpr int kMaxDenseTwoModeDim = 64;

inline constexpr double kSumFidelityBar = 1.0 - 1e-9;

/// Columns are the oscillator phase states |theta_s> for the given sign.
inline ComplexMatrix oscillator_phase_states(QuditDim dim, int sign = kPhaseStateSign) {
  return dft_matrix(dim, sign);
}

inline StateVector oscillator_phase_state(QuditDim dim, std::size_t s,
                                          int sign = kPhaseStateSign) {
  if (s >= dim.size()) throw InvalidArgument("phase label out of range");
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim.size()));
  std::vector<Complex> amps(dim.size());
  for (std::size_t n = 0; n < dim.size(); ++n) {
    amps[n] = norm * root_of_unity(sign * static_cast<long long>(n * s), dim.value());
  }
  return StateVector(std::move(amps), BasisTag::NumberBasis);
}

/// F |n> = |theta_n>: number eigenstates to phase eigenstates. Hadamard at d = 2.
inline ComplexMatrix fourier_gate(QuditDim dim) { return dft_matrix(dim, kPhaseStateSign); }

/// Two oscillators sharing one dimension. Amplitudes are always in the
/// two-mode number basis, index n1 * d + n2; `encodings` records how each
/// mode carries its logical label.
class TwoModeState {
 public:
  TwoModeState(QuditDim dim, std::vector<Complex> amplitudes,
               std::pair<BasisTag, BasisTag> encodings)
      : dim_(dim), amplitudes_(std::move(amplitudes)), encodings_(encodings) {
    if (amplitudes_.size() != dim.size() * dim.size()) {
      throw DimMismatch("two-mode state needs d^2 amplitudes");
    }
    double norm2 = 0.0;
    for (const Complex& a : amplitudes_) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > StateVector::kNormTolerance) {
      throw InvalidArgument("two-mode state is not normalized");
    }
  }

  static TwoModeState product(QuditDim dim, const StateVector& mode1, const StateVector& mode2,
                              std::pair<BasisTag, BasisTag> encodings) {
    if (mode1.dim() != dim.size() || mode2.dim() != dim.size()) {
      throw DimMismatch("mode dimension mismatch");
    }
    std::vector<Complex> amps(dim.size() * dim.size());
    for (std::size_t n1 = 0; n1 < dim.size(); ++n1)
      for (std::size_t n2 = 0; n2 < dim.size(); ++n2)
        amps[n1 * dim.size() + n2] = mode1[n1] * mode2[n2];
    return TwoModeState(dim, std::move(amps), encodings);
  }

  QuditDim dim() const noexcept { return dim_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::pair<BasisTag, BasisTag> encodings() const noexcept { return encodings_; }

 private:
  QuditDim dim_;
  std::vector<Complex> amplitudes_;
  std::pair<BasisTag, BasisTag> encodings_;
};

/// |s1>_number (x) |theta_s2>_phase, the input format of the SUM gate.
inline TwoModeState hybrid_input(QuditDim dim, std::size_t s1, std::size_t s2,
                                 int sign = kPhaseStateSign) {
  return TwoModeState::product(dim, StateVector::basis_state(dim.size(), s1, BasisTag::NumberBasis),
                               oscillator_phase_state(dim, s2, sign),
                               {BasisTag::NumberBasis, BasisTag::PhaseBasis});
}

/// Diagonal of exp(-i chi t N1 N2): entry n1 * d + n2 is exp(-i chi t n1 n2).
inline std::vector<Complex> kerr_phases(QuditDim dim, double chi, double t) {
  if (!std::isfinite(chi) || !std::isfinite(t)) {
    throw InvalidArgument("kerr coupling and time must be finite");
  }
  const std::size_t d = dim.size();
  std::vector<Complex> phases(d * d);
  for (std::size_t n1 = 0; n1 < d; ++n1)
    for (std::size_t n2 = 0; n2 < d; ++n2)
      phases[n1 * d + n2] = std::polar(1.0, -chi * t * static_cast<double>(n1 * n2));
  return phases;
}

inline void require_dense_two_mode(QuditDim dim) {
  if (dim.value() > kMaxDenseTwoModeDim) {
    throw DimensionOverflow("dense two-mode operators are limited to d <= " +
                            std::to_string(kMaxDenseTwoModeDim));
  }
}

/// exp(-i chi t N1 (x) N2) as a dense d^2 x d^2 matrix.
inline ComplexMatrix kerr_evolution(QuditDim dim, double chi, double t) {
  require_dense_two_mode(dim);
  return ComplexMatrix::diagonal(kerr_phases(dim, chi, t));
}

inline TwoModeState apply_kerr(const TwoModeState& state, double chi, double t) {
  const std::vector<Complex> phases = kerr_phases(state.dim(), chi, t);
  std::vector<Complex> out(phases.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = phases[i] * state.amplitudes()[i];
  return TwoModeState(state.dim(), std::move(out), state.encodings());
}

/// Two-mode basis whose columns are |n1> (x) |theta_s2>.
inline ComplexMatrix hybrid_basis(QuditDim dim, int sign = kPhaseStateSign) {
  require_dense_two_mode(dim);
  return kron(ComplexMatrix::identity(dim.size()), oscillator_phase_states(dim, sign));
}

/// Writes a two-mode operator in the hybrid (number, phase) basis.
inline ComplexMatrix to_hybrid_basis(const ComplexMatrix& op, QuditDim dim,
                                     int sign = kPhaseStateSign) {
  const ComplexMatrix b = hybrid_basis(dim, sign);
  return b.adjoint() * op * b;
}

/// The SUM permutation |s1, s2> -> |s1, s1 + s2 mod d>.
inline ComplexMatrix sum_permutation(QuditDim dim) {
  require_dense_two_mode(dim);
  const std::size_t d = dim.size();
  ComplexMatrix p(d * d, d * d);
  for (std::size_t s1 = 0; s1 < d; ++s1)
    for (std::size_t s2 = 0; s2 < d; ++s2) p(s1 * d + (s1 + s2) % d, s1 * d + s2) = 1.0;
  return p;
}

/// |<theta_target| exp(-i chi t s1 N) |theta_s2>|^2: the mode-2 overlap after
/// the Kerr evolution of |s1> (x) |theta_s2>. Mode 1 stays |s1> exactly.
inline double kerr_mode2_fidelity(QuditDim dim, double chi_t, int sign, std::size_t s1,
                                  std::size_t s2, std::size_t target) {
  const std::size_t d = dim.size();
  Complex acc = 0.0;
  for (std::size_t n = 0; n < d; ++n) {
    const Complex evolved = std::polar(1.0, -chi_t * static_cast<double>(s1 * n)) *
                            root_of_unity(sign * static_cast<long long>(n * s2), dim.value());
    acc += std::conj(root_of_unity(sign * static_cast<long long>(n * target), dim.value())) *
           evolved;
  }
  return std::norm(acc) / static_cast<double>(d * d);
}

struct SumCalibration {
  QuditDim dim;
  double chi;
  double t_star;
  int sign;         // phase-state sign under which the SUM truth table holds
  double fidelity;  // worst case over all d^2 basis inputs

  double chi_t() const noexcept { return chi * t_star; }
};

/// Worst-case fidelity of |s1> (x) |theta_s2> -> |s1> (x) |theta_{s1+s2}> over all inputs.
inline double sum_worst_fidelity(QuditDim dim, double chi, double t, int sign) {
  const std::size_t d = dim.size();
  const ComplexMatrix states = oscillator_phase_states(dim, sign);
  std::vector<Complex> kerr_row(d);
  double worst = 1.0;
  for (std::size_t s1 = 0; s1 < d; ++s1) {
    for (std::size_t n = 0; n < d; ++n) {
      kerr_row[n] = std::polar(1.0, -chi * t * static_cast<double>(s1 * n));
    }
    for (std::size_t s2 = 0; s2 < d; ++s2) {
      const std::size_t target = (s1 + s2) % d;
      Complex acc = 0.0;
      for (std::size_t n = 0; n < d; ++n) {
        acc += std::conj(states(n, target)) * kerr_row[n] * states(n, s2);
      }
      worst = std::min(worst, std::norm(acc));
    }
  }
  return worst;
}

/// Finds the Kerr gate time that realizes SUM. Candidates are
/// t in {2 pi / chi, 2 pi / (d chi)} crossed with the phase-state sign
/// (module convention first); the best worst-case fidelity wins and ties keep
/// the earlier candidate.
inline SumCalibration calibrate_sum(QuditDim dim, double chi = 1.0) {
  if (!std::isfinite(chi) || chi == 0.0) throw InvalidArgument("chi must be finite and nonzero");
  const double times[] = {kTwoPi / chi, kTwoPi / (dim.value() * chi)};
  const int signs[] = {kPhaseStateSign, -kPhaseStateSign};

  SumCalibration best{dim, chi, times[0], signs[0], -1.0};
  for (double t : times)
    for (int sign : signs) {
      const double f = sum_worst_fidelity(dim, chi, t, sign);
      if (f > best.fidelity) best = SumCalibration{dim, chi, t, sign, f};
    }
  if (best.fidelity < kSumFidelityBar) {
    throw CalibrationFailed("no candidate gate time realizes SUM for d = " +
                                std::to_string(dim.value()) + " (best worst-case fidelity " +
                                std::to_string(best.fidelity) + ")",
                            best.fidelity);
  }
  return best;
}

/// Kerr evolution at the calibrated time, in the two-mode number basis.
inline ComplexMatrix sum_gate(const SumCalibration& cal) {
  return kerr_evolution(cal.dim, cal.chi, cal.t_star);
}

struct LabelDecode {
  std::size_t label;
  double fidelity;
};

/// Evolves |s1> (x) |theta_s2> for time t and decodes mode 2 against the d
/// phase states, returning the closest label. Off the calibrated time the
/// state generally sits between grid points and the fidelity drops below 1.
inline LabelDecode fractional_sum_label(const SumCalibration& cal, std::size_t s1,
                                        std::size_t s2, double t) {
  const std::size_t d = cal.dim.size();
  if (s1 >= d || s2 >= d) throw InvalidArgument("label out of range");
  LabelDecode best{0, -1.0};
  for (std::size_t k = 0; k < d; ++k) {
    const double f = kerr_mode2_fidelity(cal.dim, cal.chi * t, cal.sign, s1, s2, k);
    if (f > best.fidelity) best = {k, f};
  }
  return best;
}

}  // namespace qudit
