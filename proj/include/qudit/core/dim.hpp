#pragma once

#include <cstddef>
#include <string>

#include "qudit/core/error.hpp"

namespace qudit {

/// Largest single-mode dimension accepted anywhere in the library.
inline constexpr int kMaxModeDim = 4096;

/// Validated qudit dimension d >= 2, carrying the spin j = (d - 1) / 2 of the
/// matching SU(2) irrep.
class QuditDim {
 public:
  explicit QuditDim(int d) : d_(d) {
    if (d < 2) throw InvalidArgument("dim must be >= 2, got " + std::to_string(d));
    if (d > kMaxModeDim) {
      throw DimensionOverflow("dim must be <= " + std::to_string(kMaxModeDim) + ", got " +
                              std::to_string(d));
    }
  }

  int value() const noexcept { return d_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(d_); }
  bool is_even() const noexcept { return d_ % 2 == 0; }
  bool is_odd() const noexcept { return !is_even(); }

  /// 2j = d - 1; integral for every d.
  int two_j() const noexcept { return d_ - 1; }
  double spin() const noexcept { return 0.5 * two_j(); }

  friend bool operator==(QuditDim, QuditDim) = default;

 private:
  int d_;
};

}  // namespace qudit
