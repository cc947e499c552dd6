#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qudit/core/dim.hpp"
#include "qudit/core/error.hpp"
#include "qudit/core/linalg.hpp"
#include "qudit/core/matrix.hpp"
#include "qudit/number_rep.hpp"
#include "qudit/su2_rep.hpp"

namespace qudit {

enum class RepKind { Number, Weight, Phase };

inline const char* to_string(RepKind kind) {
  switch (kind) {
    case RepKind::Number: return "number";
    case RepKind::Weight: return "weight";
    case RepKind::Phase: return "phase";
  }
  return "unknown";
}

inline RepKind parse_rep_kind(std::string_view name) {
  if (name == "number") return RepKind::Number;
  if (name == "weight") return RepKind::Weight;
  if (name == "phase") return RepKind::Phase;
  throw InvalidArgument("unknown representation '" + std::string(name) +
                        "' (expected number, weight or phase)");
}

/// The shift/clock pair of one realization, which is all the group algebra needs.
struct Representation {
  RepKind kind;
  QuditDim dim;
  ComplexMatrix x;
  ComplexMatrix z;
};

inline Representation as_representation(const NumberRep& rep) {
  return {RepKind::Number, rep.dim(), rep.x_op(), rep.z_op()};
}
inline Representation as_representation(const WeightRep& rep) {
  return {RepKind::Weight, rep.dim, rep.x_op, rep.z_op};
}
inline Representation as_representation(const PhaseRep& rep) {
  return {RepKind::Phase, rep.dim(), rep.x_op(), rep.z_op()};
}

inline Representation make_representation(RepKind kind, QuditDim dim) {
  switch (kind) {
    case RepKind::Number: return as_representation(build_number_rep(dim));
    case RepKind::Weight: return as_representation(build_weight_rep(dim));
    case RepKind::Phase: return as_representation(build_phase_rep(dim));
  }
  throw InvalidArgument("unknown representation kind");
}

inline int reduce_mod(long long v, int d) {
  long long r = v % d;
  if (r < 0) r += d;
  return static_cast<int>(r);
}

struct PauliElement {
  QuditDim dim;
  int a;
  int b;
  ComplexMatrix matrix;  // X^a Z^b
};

/// X^a Z^b by repeated multiplication, exponents reduced mod d.
inline PauliElement pauli_element(const Representation& rep, long long a, long long b) {
  const int d = rep.dim.value();
  const int ar = reduce_mod(a, d);
  const int br = reduce_mod(b, d);
  ComplexMatrix m = ComplexMatrix::identity(rep.dim.size());
  for (int i = 0; i < ar; ++i) m = m * rep.x;
  for (int i = 0; i < br; ++i) m = m * rep.z;
  return {rep.dim, ar, br, std::move(m)};
}

/// Caches X^a and Z^b so that many elements can be formed with one product each.
class PauliTable {
 public:
  explicit PauliTable(const Representation& rep) : dim_(rep.dim) {
    const std::size_t d = rep.dim.size();
    x_pow_.reserve(d);
    z_pow_.reserve(d);
    x_pow_.push_back(ComplexMatrix::identity(d));
    z_pow_.push_back(ComplexMatrix::identity(d));
    for (std::size_t k = 1; k < d; ++k) {
      x_pow_.push_back(x_pow_.back() * rep.x);
      z_pow_.push_back(z_pow_.back() * rep.z);
    }
  }

  QuditDim dim() const noexcept { return dim_; }

  ComplexMatrix element(long long a, long long b) const {
    return x_pow_[reduce_mod(a, dim_.value())] * z_pow_[reduce_mod(b, dim_.value())];
  }

 private:
  QuditDim dim_;
  std::vector<ComplexMatrix> x_pow_;
  std::vector<ComplexMatrix> z_pow_;
};

struct CommutationReport {
  Complex measured_omega;  // (ZX)_{rc} / (XZ)_{rc} at the largest |(XZ)_{rc}|
  Complex expected_omega;  // exp(2 pi i / d)
  double residual;         // ||ZX - omega XZ||_max with the expected omega
};

/// Checks Z X = exp(2 pi i / d) X Z entrywise. Throws RelationViolated when the
/// residual exceeds the tolerance.
inline CommutationReport commutation_phase(const Representation& rep,
                                           Tolerance tol = Tolerance{}) {
  const ComplexMatrix zx = rep.z * rep.x;
  const ComplexMatrix xz = rep.x * rep.z;
  const Complex omega = root_of_unity(1, rep.dim.value());

  std::size_t pivot = 0;
  const auto xz_entries = xz.entries();
  for (std::size_t i = 1; i < xz_entries.size(); ++i) {
    if (std::abs(xz_entries[i]) > std::abs(xz_entries[pivot])) pivot = i;
  }
  CommutationReport report{zx.entries()[pivot] / xz_entries[pivot], omega,
                           max_abs_diff(zx, xz * omega)};
  if (!tol.accepts(report.residual)) {
    throw RelationViolated(std::string("ZX != omega XZ in the ") + to_string(rep.kind) +
                           " representation, d = " + std::to_string(rep.dim.value()) +
                           ", residual " + std::to_string(report.residual));
  }
  return report;
}

inline constexpr int kMaxGramDim = 64;
inline constexpr double kGramTolerance = 1e-9;

/// Gram matrix of {X^a Z^b} under the Hilbert-Schmidt product, indexed by
/// a * d + b. Throws BasisDegenerate if it differs from d * I.
inline ComplexMatrix basis_gram(const Representation& rep, double tol = kGramTolerance) {
  const int d = rep.dim.value();
  if (d > kMaxGramDim) {
    throw InvalidArgument("basis_gram is limited to d <= " + std::to_string(kMaxGramDim) +
                          "; use sampled_basis_check");
  }
  const PauliTable table(rep);
  const std::size_t n = rep.dim.size() * rep.dim.size();
  std::vector<ComplexMatrix> elements;
  elements.reserve(n);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) elements.push_back(table.element(a, b));

  ComplexMatrix gram(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p; q < n; ++q) {
      gram(p, q) = hs_inner(elements[p], elements[q]);
      gram(q, p) = std::conj(gram(p, q));
    }

  const double residual =
      max_abs_diff(gram, ComplexMatrix::identity(n) * Complex{static_cast<double>(d), 0.0});
  if (residual > tol) {
    throw BasisDegenerate("Gram matrix deviates from d * I by " + std::to_string(residual));
  }
  return gram;
}

struct SampledBasisReport {
  std::size_t samples;
  double max_deviation;  // max |Tr[(X^a Z^b)^dagger X^c Z^e] - d delta_ac delta_be|
};

/// Orthogonality checked on uniformly drawn (a, b, c, e) quadruples; used
/// where the full Gram matrix is too large.
inline SampledBasisReport sampled_basis_check(const Representation& rep,
                                              std::size_t samples = 1000,
                                              std::uint64_t seed = 0x5eed) {
  const int d = rep.dim.value();
  const PauliTable table(rep);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> label(0, d - 1);
  SampledBasisReport report{samples, 0.0};
  for (std::size_t i = 0; i < samples; ++i) {
    const int a = label(rng), b = label(rng), c = label(rng), e = label(rng);
    const Complex g = hs_inner(table.element(a, b), table.element(c, e));
    const double expected = (a == c && b == e) ? static_cast<double>(d) : 0.0;
    report.max_deviation = std::max(report.max_deviation, std::abs(g - expected));
  }
  return report;
}

}  // namespace qudit
