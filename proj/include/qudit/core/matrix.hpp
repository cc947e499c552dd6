#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qudit/core/dim.hpp"
#include "qudit/core/error.hpp"

namespace qudit {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Absolute tolerance shared by the verification predicates.
class Tolerance {
 public:
  static constexpr double kDefault = 1e-10;

  constexpr Tolerance() = default;
  explicit Tolerance(double abs_tol) : abs_tol_(abs_tol) {
    if (!(abs_tol > 0.0 && abs_tol < 1e-3)) {
      throw InvalidArgument("tolerance must lie in (0, 1e-3), got " + std::to_string(abs_tol));
    }
  }

  constexpr double abs_tol() const noexcept { return abs_tol_; }
  constexpr bool accepts(double residual) const noexcept { return residual <= abs_tol_; }

 private:
  double abs_tol_ = kDefault;
};

/// exp(2 pi i k / d), exact at quarter turns so that qubit matrices come out
/// with clean zeros.
inline Complex root_of_unity(long long k, long long d) {
  long long r = k % d;
  if (r < 0) r += d;
  if (r == 0) return {1.0, 0.0};
  if (2 * r == d) return {-1.0, 0.0};
  if (4 * r == d) return {0.0, 1.0};
  if (4 * r == 3 * d) return {0.0, -1.0};
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(d));
}

/// Dense row-major complex matrix. Every operator in the library is carried
/// by one of these.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) throw InvalidArgument("matrix dimensions must be positive");
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw InvalidArgument("matrix dimensions must be positive");
    if (entries_.size() != rows * cols) {
      throw DimMismatch("entry count " + std::to_string(entries_.size()) + " != " +
                        std::to_string(rows) + "x" + std::to_string(cols));
    }
    for (const Complex& z : entries_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidArgument("matrix entries must be finite");
      }
    }
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    if (rows_ == 0 || cols_ == 0) throw InvalidArgument("matrix dimensions must be positive");
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimMismatch("ragged matrix literal");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  std::vector<Complex> column(std::size_t c) const {
    std::vector<Complex> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) {
    for (Complex& z : entries_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimMismatch("cannot multiply " + a.shape() + " by " + b.shape());
    }
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      Complex* out_row = &out.entries_[i * b.cols_];
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        const Complex* b_row = &b.entries_[k * b.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) out_row[j] += aik * b_row[j];
      }
    }
    return out;
  }

  friend std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> v) {
    if (a.cols_ != v.size()) throw DimMismatch("matrix-vector size mismatch");
    std::vector<Complex> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < a.cols_; ++k) acc += a(i, k) * v[k];
      out[i] = acc;
    }
    return out;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimMismatch("shape mismatch " + shape() + " vs " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// Which basis a state's amplitudes are expressed in. Comparisons across tags
/// always go through an explicit basis-change matrix.
enum class BasisTag { NumberBasis, ZWeightBasis, XWeightBasis, PhaseBasis };

inline const char* to_string(BasisTag tag) {
  switch (tag) {
    case BasisTag::NumberBasis: return "number";
    case BasisTag::ZWeightBasis: return "z-weight";
    case BasisTag::XWeightBasis: return "x-weight";
    case BasisTag::PhaseBasis: return "phase";
  }
  return "unknown";
}

/// Normalized amplitude vector tagged with the basis it is written in.
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-12;

  StateVector(std::vector<Complex> amplitudes, BasisTag basis)
      : amplitudes_(std::move(amplitudes)), basis_(basis) {
    if (amplitudes_.empty()) throw InvalidArgument("state must have positive dimension");
    double norm2 = 0.0;
    for (const Complex& a : amplitudes_) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
      throw InvalidArgument("state is not normalized: |psi|^2 = " + std::to_string(norm2));
    }
  }

  static StateVector basis_state(std::size_t dim, std::size_t index, BasisTag basis) {
    if (index >= dim) throw InvalidArgument("basis index out of range");
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return StateVector(std::move(amps), basis);
  }

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  BasisTag basis() const noexcept { return basis_; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

 private:
  std::vector<Complex> amplitudes_;
  BasisTag basis_;
};

}  // namespace qudit
