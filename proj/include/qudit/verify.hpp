#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qudit/core/dim.hpp"
#include "qudit/core/error.hpp"
#include "qudit/core/linalg.hpp"
#include "qudit/core/matrix.hpp"
#include "qudit/gates.hpp"
#include "qudit/number_rep.hpp"
#include "qudit/pauli_group.hpp"
#include "qudit/su2_rep.hpp"

namespace qudit {

/// One verified invariant: a residual measured against its pinned bound.
struct Check {
  std::string name;
  std::string scope;  // representation or subsystem the residual belongs to
  int dim;
  double residual;
  double tolerance;

  bool passed() const noexcept { return std::isfinite(residual) && residual <= tolerance; }
};

struct VerifyOptions {
  /// Replaces every pinned bound when set.
  std::optional<double> tolerance_override;
};

namespace detail {

class CheckList {
 public:
  CheckList(std::string scope, int dim, const VerifyOptions& opts)
      : scope_(std::move(scope)), dim_(dim), opts_(opts) {}

  void add(std::string name, double residual, double tolerance) {
    checks_.push_back(Check{std::move(name), scope_, dim_, residual,
                            opts_.tolerance_override.value_or(tolerance)});
  }

  std::vector<Check> take() { return std::move(checks_); }

 private:
  std::string scope_;
  int dim_;
  const VerifyOptions& opts_;
  std::vector<Check> checks_;
};

inline double max_eigen_residual(const ComplexMatrix& op, const ComplexMatrix& vectors,
                                 std::span<const double> values) {
  const ComplexMatrix applied = op * vectors;
  double worst = 0.0;
  for (std::size_t c = 0; c < vectors.cols(); ++c)
    for (std::size_t r = 0; r < vectors.rows(); ++r)
      worst = std::max(worst, std::abs(applied(r, c) - values[c] * vectors(r, c)));
  return worst;
}

inline double label_spectrum_deviation(const ComplexMatrix& theta) {
  const HermitianEigen eig = hermitian_eigen(theta);
  double worst = 0.0;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    worst = std::max(worst, std::abs(eig.eigenvalues[k] - static_cast<double>(k)));
  }
  return worst;
}

}  // namespace detail

inline std::vector<Check> verify_pauli(RepKind kind, QuditDim dim, const VerifyOptions& opts = {}) {
  detail::CheckList out(std::string("pauli/") + to_string(kind), dim.value(), opts);
  const Representation rep = make_representation(kind, dim);
  const int d = dim.value();

  const ComplexMatrix zx = rep.z * rep.x;
  const ComplexMatrix xz = rep.x * rep.z;
  out.add("commutation_zx_omega_xz", max_abs_diff(zx, xz * root_of_unity(1, d)), 1e-10);
  out.add("x_unitarity", unitarity_residual(rep.x), 1e-10);
  out.add("z_unitarity", unitarity_residual(rep.z), 1e-10);
  out.add("x_power_d_identity", identity_residual(matrix_power(rep.x, dim.size())), 1e-9);
  out.add("z_power_d_identity", identity_residual(matrix_power(rep.z, dim.size())), 1e-9);

  if (d <= 16) {
    const PauliTable table(rep);
    const std::size_t n = dim.size() * dim.size();
    double worst = 0.0;
    std::vector<ComplexMatrix> elements;
    elements.reserve(n);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) elements.push_back(table.element(a, b));
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p; q < n; ++q) {
        const double expected = p == q ? static_cast<double>(d) : 0.0;
        worst = std::max(worst, std::abs(hs_inner(elements[p], elements[q]) - expected));
      }
    out.add("operator_basis_gram", worst, kGramTolerance);
  } else {
    out.add("operator_basis_sampled", sampled_basis_check(rep).max_deviation, kGramTolerance);
  }

  if (d <= 8) {
    const PauliTable table(rep);
    double worst = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) {
            const ComplexMatrix lhs = table.element(a, b) * table.element(c, e);
            const ComplexMatrix rhs =
                table.element(a + c, b + e) * root_of_unity(static_cast<long long>(b) * c, d);
            worst = std::max(worst, max_abs_diff(lhs, rhs));
          }
    out.add("group_law_with_phases", worst, 1e-9);
  }
  return out.take();
}

inline std::vector<Check> verify_number(QuditDim dim, const VerifyOptions& opts = {}) {
  detail::CheckList out("number", dim.value(), opts);
  const NumberRep rep = build_number_rep(dim);
  const double d = dim.value();

  std::vector<double> labels(dim.size());
  for (std::size_t s = 0; s < dim.size(); ++s) labels[s] = static_cast<double>(s);
  out.add("n_op_diagonal_labels", max_abs_diff(rep.n_op(), ComplexMatrix::diagonal(labels)), 0.0);
  out.add("x_is_cyclic_shift", max_abs_diff(rep.x_op(), shift_matrix(dim)), 0.0);
  out.add("x_unitarity", unitarity_residual(rep.x_op()), 1e-12);
  out.add("z_unitarity", unitarity_residual(rep.z_op()), 1e-12);
  out.add("theta_z_hermitian", hermiticity_residual(rep.theta_z()), 1e-12);
  out.add("exp_theta_z_equals_x",
          max_abs_diff(exp_i_hermitian(rep.theta_z(), kTwoPi / d), rep.x_op()), 1e-10);
  out.add("theta_z_spectrum_labels", detail::label_spectrum_deviation(rep.theta_z()), 1e-9);
  out.add("continuous_x_at_step_equals_x",
          max_abs_diff(continuous_x(rep, kTwoPi / d), rep.x_op()), 1e-10);
  out.add("continuous_z_at_step_equals_z",
          max_abs_diff(continuous_z(rep, kTwoPi / d), rep.z_op()), 1e-12);
  out.add("x_power_d_identity", identity_residual(matrix_power(rep.x_op(), dim.size())), 1e-10);
  return out.take();
}

inline std::vector<Check> verify_weight(QuditDim dim, const VerifyOptions& opts = {}) {
  detail::CheckList out("weight", dim.value(), opts);
  const SU2Generators g = build_su2(dim);
  const double j = g.spin();
  const std::size_t d = dim.size();

  out.add("su2_jz_jp", max_abs_diff(commutator(g.jz, g.jp), g.jp), 1e-10);
  out.add("su2_jz_jm", max_abs_diff(commutator(g.jz, g.jm), g.jm * Complex{-1.0, 0.0}), 1e-10);
  out.add("su2_jp_jm", max_abs_diff(commutator(g.jp, g.jm), g.jz * Complex{2.0, 0.0}), 1e-10);
  out.add("jx_hermitian", hermiticity_residual(g.jx), 1e-12);
  out.add("jy_hermitian", hermiticity_residual(g.jy), 1e-12);
  const ComplexMatrix casimir = g.jx * g.jx + g.jy * g.jy + g.jz * g.jz;
  out.add("casimir", max_abs_diff(casimir, ComplexMatrix::identity(d) * Complex{j * (j + 1.0), 0.0}),
          1e-9);

  const ComplexMatrix xw = x_weight_basis(g);
  std::vector<double> weights(d);
  for (std::size_t i = 0; i < d; ++i) weights[i] = 0.5 * weight_two_m(dim, i);
  out.add("x_weight_eigen", detail::max_eigen_residual(g.jx, xw, weights), 1e-9);
  out.add("x_weight_unitarity", unitarity_residual(xw), 1e-12);

  const WeightRep rep = build_weight_rep(dim);
  const NumberRep number = build_number_rep(dim);
  out.add("x_matches_number_rep", max_abs_diff(relabel_weight_operator(rep.x_op, dim), number.x_op()),
          1e-10);
  out.add("z_matches_number_rep", max_abs_diff(relabel_weight_operator(rep.z_op, dim), number.z_op()),
          1e-10);
  out.add("exp_theta_z_equals_x",
          max_abs_diff(exp_i_hermitian(rep.theta_z, kTwoPi / dim.value()), rep.x_op), 1e-10);
  return out.take();
}

inline std::vector<Check> verify_phase(QuditDim dim, const VerifyOptions& opts = {}) {
  detail::CheckList out("phase", dim.value(), opts);
  const PhaseRep rep = build_phase_rep(dim);
  const std::size_t d = dim.size();
  const ComplexMatrix& states = rep.phase_states();

  out.add("phase_state_gram", identity_residual(states.adjoint() * states), 1e-10);
  std::vector<double> labels(d);
  for (std::size_t s = 0; s < d; ++s) labels[s] = static_cast<double>(s);
  out.add("theta_x_eigenstates", detail::max_eigen_residual(rep.theta_x(), states, labels), 1e-9);
  out.add("theta_x_hermitian", hermiticity_residual(rep.theta_x()), 1e-12);
  out.add("exp_theta_x_equals_z",
          max_abs_diff(exp_i_hermitian(rep.theta_x(), kTwoPi / dim.value()), rep.z_op()), 1e-10);

  // X_d rebuilt from the x-weight basis instead of exponentiating J_x.
  std::vector<Complex> diag(d);
  for (std::size_t i = 0; i < d; ++i) {
    // exp(2 pi i m / d), times exp(-i pi / d) for even d: exponent (2m - [even]) / (2d)
    diag[i] = root_of_unity(weight_two_m(dim, i) - (dim.is_even() ? 1 : 0), 2LL * dim.value());
  }
  const ComplexMatrix& xw = rep.x_weight_states();
  const ComplexMatrix x_from_weights = xw * ComplexMatrix::diagonal(diag) * xw.adjoint();
  out.add("x_generated_by_jx", max_abs_diff(rep.x_op(), x_from_weights), 1e-10);
  out.add("x_shifts_phase_states", rep.shift_residual(), 1e-10);
  out.add("x_unitarity", unitarity_residual(rep.x_op()), 1e-12);
  out.add("z_unitarity", unitarity_residual(rep.z_op()), 1e-12);
  out.add("x_power_d_identity", identity_residual(matrix_power(rep.x_op(), d)), 1e-9);
  out.add("z_power_d_identity", identity_residual(matrix_power(rep.z_op(), d)), 1e-9);
  return out.take();
}

inline std::vector<Check> verify_gates(QuditDim dim, const VerifyOptions& opts = {}) {
  detail::CheckList out("gates", dim.value(), opts);
  const ComplexMatrix f = fourier_gate(dim);
  const NumberRep number = build_number_rep(dim);

  out.add("fourier_unitarity", unitarity_residual(f), 1e-12);
  out.add("fourier_fourth_power_identity", identity_residual(matrix_power(f, 4)), 1e-9);
  out.add("fourier_conjugates_clock_to_inverse_shift",
          max_abs_diff(f.adjoint() * number.z_op() * f, number.x_op().adjoint()), 1e-10);

  const SumCalibration cal = calibrate_sum(dim);
  out.add("sum_calibration_infidelity", 1.0 - cal.fidelity, 1e-9);
  if (dim.value() <= kMaxDenseTwoModeDim) {
    const ComplexMatrix gate = sum_gate(cal);
    out.add("sum_hybrid_permutation",
            max_abs_diff(to_hybrid_basis(gate, dim, cal.sign), sum_permutation(dim)), 1e-9);
    out.add("sum_power_d_identity", identity_residual(matrix_power(gate, dim.size())), 1e-8);
  }
  return out.take();
}

inline std::vector<Check> verify_qubit(const VerifyOptions& opts = {}) {
  detail::CheckList out("qubit", 2, opts);
  const QubitRotationReport rot = qubit_rotation_identity_check();
  out.add("qubit_rotation_identity", rot.residual, 1e-12);
  out.add("qubit_rotation_twice_returns", rot.double_application_residual, 1e-12);
  out.add("qubit_rotation_cross_rep", rot.cross_rep_residual, 1e-12);

  const QuditDim two(2);
  const PhaseRep phase = build_phase_rep(two);
  double worst = 0.0;
  for (std::size_t z = 0; z < 2; ++z) {
    double best = 0.0;
    for (std::size_t s = 0; s < 2; ++s) best = std::max(best, std::abs(phase.phase_states()(z, s)));
    worst = std::max(worst, std::abs(1.0 - best));
  }
  out.add("z_weight_states_are_phase_states", worst, 1e-10);

  const double h = 1.0 / std::numbers::sqrt2;
  out.add("fourier_is_hadamard", max_abs_diff(fourier_gate(two), ComplexMatrix{{h, h}, {h, -h}}),
          1e-15);
  return out.take();
}

inline const std::vector<std::string_view>& verify_suite_names() {
  static const std::vector<std::string_view> names{"all",   "pauli", "number", "weight",
                                                   "phase", "gates", "qubit"};
  return names;
}

/// Runs a named suite for one dimension. `reps` selects the realizations
/// for the pauli suite. Construction errors become failing checks.
inline std::vector<Check> run_verify_suite(std::string_view suite, QuditDim dim,
                                           std::span<const RepKind> reps,
                                           const VerifyOptions& opts = {}) {
  std::vector<Check> all;
  auto guarded = [&](std::string scope, auto&& fn) {
    try {
      auto checks = fn();
      all.insert(all.end(), checks.begin(), checks.end());
    } catch (const Error& e) {
      all.push_back(Check{std::string("error: ") + e.what(), std::move(scope), dim.value(),
                          std::numeric_limits<double>::infinity(), 0.0});
    }
  };
  const bool everything = suite == "all";
  bool known = everything;
  if (everything || suite == "pauli") {
    known = true;
    for (RepKind kind : reps) {
      guarded(std::string("pauli/") + to_string(kind), [&] { return verify_pauli(kind, dim, opts); });
    }
  }
  if (everything || suite == "number") {
    known = true;
    guarded("number", [&] { return verify_number(dim, opts); });
  }
  if (everything || suite == "weight") {
    known = true;
    guarded("weight", [&] { return verify_weight(dim, opts); });
  }
  if (everything || suite == "phase") {
    known = true;
    guarded("phase", [&] { return verify_phase(dim, opts); });
  }
  if (everything || suite == "gates") {
    known = true;
    guarded("gates", [&] { return verify_gates(dim, opts); });
  }
  if (everything || suite == "qubit") {
    known = true;
    guarded("qubit", [&] { return verify_qubit(opts); });
  }
  if (!known) throw InvalidArgument("unknown verify suite '" + std::string(suite) + "'");
  return all;
}

}  // namespace qudit
