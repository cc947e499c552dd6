#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "qudit/core/dim.hpp"
#include "qudit/core/error.hpp"
#include "qudit/core/json.hpp"
#include "qudit/core/linalg.hpp"
#include "qudit/core/matrix.hpp"
#include "qudit/gates.hpp"
#include "qudit/number_rep.hpp"
#include "qudit/su2_rep.hpp"

namespace qudit {

struct SweepRecord {
  int d;
  std::string metric;
  double value;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// Lazily built operators for one dimension, shared by every metric at that d.
class DimContext {
 public:
  explicit DimContext(QuditDim dim) : dim_(dim) {}

  QuditDim dim() const noexcept { return dim_; }

  const NumberRep& number() {
    if (!number_) number_.emplace(build_number_rep(dim_));
    return *number_;
  }
  const WeightRep& weight() {
    if (!weight_) weight_.emplace(build_weight_rep(dim_));
    return *weight_;
  }
  const PhaseRep& phase() {
    if (!phase_) phase_.emplace(build_phase_rep(dim_));
    return *phase_;
  }

  /// (X, Z) of the number, weight and phase realizations.
  std::vector<std::pair<const ComplexMatrix*, const ComplexMatrix*>> generator_pairs() {
    return {{&number().x_op(), &number().z_op()},
            {&weight().x_op, &weight().z_op},
            {&phase().x_op(), &phase().z_op()}};
  }

 private:
  QuditDim dim_;
  std::optional<NumberRep> number_;
  std::optional<WeightRep> weight_;
  std::optional<PhaseRep> phase_;
};

using MetricFn = std::function<double(DimContext&)>;

namespace detail {

inline double max_over_reps(DimContext& ctx,
                            const std::function<double(const ComplexMatrix&, const ComplexMatrix&)>& f) {
  double worst = 0.0;
  for (auto [x, z] : ctx.generator_pairs()) worst = std::max(worst, f(*x, *z));
  return worst;
}

/// Best worst-case SUM fidelity over the calibration candidates, reported
/// even when calibration fails.
inline double sum_fidelity_worst(DimContext& ctx) {
  try {
    return calibrate_sum(ctx.dim()).fidelity;
  } catch (const CalibrationFailed& e) {
    return e.best_fidelity();
  }
}

inline double sum_unitarity(DimContext& ctx) {
  const SumCalibration cal = calibrate_sum(ctx.dim());
  // The Kerr gate is diagonal, so U^dagger U - I is diagonal with entries |u_k|^2 - 1.
  double worst = 0.0;
  for (const Complex& p : kerr_phases(ctx.dim(), cal.chi, cal.t_star)) {
    worst = std::max(worst, std::abs(std::norm(p) - 1.0));
  }
  return worst;
}

/// ||[theta_z (2 pi / d), N] - i I||_max on the central (d/2) x (d/2) block.
/// Descriptive only: finite-d phase and number operators are not canonically
/// conjugate, and this number is not expected to vanish.
inline double conjugacy_diagnostic(DimContext& ctx) {
  const NumberRep& rep = ctx.number();
  const ComplexMatrix c = commutator(rep.angle_operator(), rep.n_op());
  const std::size_t d = ctx.dim().size();
  const std::size_t block = d / 2;
  const std::size_t start = (d - block) / 2;
  double worst = 0.0;
  for (std::size_t r = start; r < start + block; ++r)
    for (std::size_t col = start; col < start + block; ++col) {
      const Complex target = r == col ? kI : Complex{};
      worst = std::max(worst, std::abs(c(r, col) - target));
    }
  return worst;
}

}  // namespace detail

/// Registered sweep metrics, keyed by their CSV name.
inline const std::map<std::string, MetricFn, std::less<>>& metric_registry() {
  static const std::map<std::string, MetricFn, std::less<>> registry{
      {"eq4_residual",
       [](DimContext& ctx) {
         const Complex omega = root_of_unity(1, ctx.dim().value());
         return detail::max_over_reps(ctx, [&](const ComplexMatrix& x, const ComplexMatrix& z) {
           return max_abs_diff(z * x, (x * z) * omega);
         });
       }},
      {"x_unitarity",
       [](DimContext& ctx) {
         return detail::max_over_reps(
             ctx, [](const ComplexMatrix& x, const ComplexMatrix&) { return unitarity_residual(x); });
       }},
      {"z_unitarity",
       [](DimContext& ctx) {
         return detail::max_over_reps(
             ctx, [](const ComplexMatrix&, const ComplexMatrix& z) { return unitarity_residual(z); });
       }},
      {"fourier_unitarity",
       [](DimContext& ctx) { return unitarity_residual(fourier_gate(ctx.dim())); }},
      {"sum_unitarity", detail::sum_unitarity},
      {"xd_power_residual",
       [](DimContext& ctx) {
         return detail::max_over_reps(ctx, [&](const ComplexMatrix& x, const ComplexMatrix&) {
           return identity_residual(matrix_power(x, ctx.dim().size()));
         });
       }},
      {"zd_power_residual",
       [](DimContext& ctx) {
         return detail::max_over_reps(ctx, [&](const ComplexMatrix&, const ComplexMatrix& z) {
           return identity_residual(matrix_power(z, ctx.dim().size()));
         });
       }},
      {"phase_state_gram_residual",
       [](DimContext& ctx) {
         const ComplexMatrix& s = ctx.phase().phase_states();
         return identity_residual(s.adjoint() * s);
       }},
      {"theta_spectrum_deviation",
       [](DimContext& ctx) {
         const HermitianEigen eig = hermitian_eigen(ctx.number().theta_z());
         double worst = 0.0;
         for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
           worst = std::max(worst, std::abs(eig.eigenvalues[k] - static_cast<double>(k)));
         }
         return worst;
       }},
      {"sum_fidelity_worst", detail::sum_fidelity_worst},
      {"conjugacy_diagnostic", detail::conjugacy_diagnostic},
  };
  return registry;
}

inline std::vector<std::string> registered_metric_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : metric_registry()) names.push_back(name);
  return names;
}

/// Powers of two 2..256 plus 3, 5, 9, 17, ascending.
inline std::vector<int> default_sweep_dims() {
  return {2, 3, 4, 5, 8, 9, 16, 17, 32, 64, 128, 256};
}

namespace detail {

inline int parse_int(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidArgument("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace detail

/// Parses a dimension grid: comma-separated items, each `d`, `lo:hi`,
/// `lo:hi:step` or `lo:hi:pow2` (powers of two within [lo, hi]).
/// Result is sorted and deduplicated; every entry must be a valid QuditDim.
inline std::vector<int> parse_dims(std::string_view grid) {
  std::vector<int> dims;
  for (std::string_view item : detail::split(grid, ',')) {
    if (item.empty()) throw InvalidArgument("empty item in dimension list");
    const auto fields = detail::split(item, ':');
    if (fields.size() == 1) {
      dims.push_back(detail::parse_int(fields[0]));
      continue;
    }
    if (fields.size() > 3) throw InvalidArgument("bad range '" + std::string(item) + "'");
    const int lo = detail::parse_int(fields[0]);
    const int hi = detail::parse_int(fields[1]);
    if (lo > hi) throw InvalidArgument("empty range '" + std::string(item) + "'");
    if (fields.size() == 3 && fields[2] == "pow2") {
      for (long long p = 1; p <= hi; p *= 2)
        if (p >= lo) dims.push_back(static_cast<int>(p));
    } else {
      const int step = fields.size() == 3 ? detail::parse_int(fields[2]) : 1;
      if (step <= 0) throw InvalidArgument("range step must be positive");
      for (long long v = lo; v <= hi; v += step) dims.push_back(static_cast<int>(v));
    }
  }
  if (dims.empty()) throw InvalidArgument("no dimensions given");
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  for (int d : dims) QuditDim{d};
  return dims;
}

/// One record per (metric, d), sorted by metric name and then d. Dimensions
/// are evaluated concurrently; the output does not depend on scheduling.
inline std::vector<SweepRecord> run_sweep(std::span<const std::string> metrics,
                                          std::span<const int> dims) {
  std::vector<std::pair<std::string, MetricFn>> selected;
  for (const std::string& name : metrics) {
    const auto it = metric_registry().find(name);
    if (it == metric_registry().end()) throw UnknownMetric("unknown metric '" + name + "'");
    selected.emplace_back(it->first, it->second);
  }
  std::vector<QuditDim> grid;
  for (int d : dims) grid.emplace_back(d);

  auto evaluate = [&selected](QuditDim dim) {
    DimContext ctx(dim);
    std::vector<SweepRecord> rows;
    for (const auto& [name, fn] : selected) rows.push_back({dim.value(), name, fn(ctx)});
    return rows;
  };

  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<SweepRecord> records;
  for (std::size_t begin = 0; begin < grid.size(); begin += workers) {
    std::vector<std::future<std::vector<SweepRecord>>> batch;
    for (std::size_t i = begin; i < std::min(grid.size(), begin + workers); ++i) {
      batch.push_back(std::async(std::launch::async, evaluate, grid[i]));
    }
    for (auto& f : batch) {
      auto rows = f.get();
      records.insert(records.end(), rows.begin(), rows.end());
    }
  }

  std::sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return std::tie(a.metric, a.d) < std::tie(b.metric, b.d);
  });
  records.erase(std::unique(records.begin(), records.end()), records.end());
  for (const SweepRecord& r : records) {
    if (!std::isfinite(r.value)) {
      throw Error("metric " + r.metric + " produced a non-finite value at d = " +
                  std::to_string(r.d));
    }
  }
  return records;
}

/// CSV with header `d,metric,value` and 17 significant digits.
inline void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records) {
  os << "d,metric,value\n";
  for (const SweepRecord& r : records) {
    os << r.d << ',' << r.metric << ',' << format_double(r.value) << '\n';
  }
}

}  // namespace qudit
