#include <gtest/gtest.h>

#include <sstream>

#include "qudit/pauli_group.hpp"
#include "qudit/sweep.hpp"

namespace qudit {
namespace {

std::vector<SweepRecord> sweep(std::vector<std::string> metrics, std::vector<int> dims) {
  return run_sweep(metrics, dims);
}

TEST(Sweep, CommutationResidualSmall) {
  const auto records = sweep({"eq4_residual"}, {2, 4, 8});
  ASSERT_EQ(records.size(), 3u);
  for (const SweepRecord& r : records) {
    EXPECT_LE(r.value, 1e-12) << r.d;
    // Oracle: the per-representation commutation report.
    for (RepKind kind : {RepKind::Number, RepKind::Weight, RepKind::Phase}) {
      EXPECT_LE(commutation_phase(make_representation(kind, QuditDim(r.d))).residual, r.value);
    }
  }
}

TEST(Sweep, ShiftPowerAtSixteen) {
  const auto records = sweep({"xd_power_residual"}, {16});
  ASSERT_EQ(records.size(), 1u);
  EXPECT_LE(records[0].value, 1e-10);
}

TEST(Sweep, SumFidelityAtSmallDimensions) {
  const auto records = sweep({"sum_fidelity_worst"}, {2, 3, 4, 5, 6, 7, 8});
  ASSERT_EQ(records.size(), 7u);
  for (const SweepRecord& r : records) {
    EXPECT_GE(r.value, 1.0 - 1e-9) << r.d;
    EXPECT_DOUBLE_EQ(r.value, calibrate_sum(QuditDim(r.d)).fidelity);
  }
}

TEST(Sweep, ResidualMetricsSmallUpTo64) {
  std::vector<std::string> residuals;
  for (const std::string& name : registered_metric_names()) {
    if (name != "sum_fidelity_worst" && name != "conjugacy_diagnostic") residuals.push_back(name);
  }
  for (const SweepRecord& r : sweep(residuals, {2, 3, 5, 8, 17, 32, 64})) {
    EXPECT_LE(r.value, 1e-9) << r.metric << " d=" << r.d;
  }
}

TEST(Sweep, ConjugacyDiagnosticIsFiniteAndNonzero) {
  for (const SweepRecord& r : sweep({"conjugacy_diagnostic"}, {4, 16, 64})) {
    EXPECT_TRUE(std::isfinite(r.value));
    EXPECT_GT(r.value, 1e-3) << r.d;
  }
}

TEST(Sweep, SortedByMetricThenDimension) {
  const auto records = sweep({"z_unitarity", "eq4_residual"}, {5, 2, 3});
  ASSERT_EQ(records.size(), 6u);
  EXPECT_EQ(records[0].metric, "eq4_residual");
  EXPECT_EQ(records[0].d, 2);
  EXPECT_EQ(records[2].d, 5);
  EXPECT_EQ(records[3].metric, "z_unitarity");
}

TEST(Sweep, RepeatedRunsAreBitIdentical) {
  const std::vector<int> dims = parse_dims("2:32:pow2,3,5,9");
  const auto names = registered_metric_names();
  std::ostringstream a, b;
  write_sweep_csv(a, run_sweep(names, dims));
  write_sweep_csv(b, run_sweep(names, dims));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Sweep, UnknownMetricThrows) {
  EXPECT_THROW(sweep({"no_such_metric"}, {2}), UnknownMetric);
}

TEST(SweepCsv, Layout) {
  std::ostringstream os;
  const std::vector<SweepRecord> rows{{2, "m", 0.25}, {3, "m", 1e-17}};
  write_sweep_csv(os, rows);
  EXPECT_EQ(os.str(), "d,metric,value\n2,m,0.25\n3,m,1.0000000000000001e-17\n");
}

TEST(ParseDims, Forms) {
  EXPECT_EQ(parse_dims("2,3,4"), (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(parse_dims("4:7"), (std::vector<int>{4, 5, 6, 7}));
  EXPECT_EQ(parse_dims("2:10:3"), (std::vector<int>{2, 5, 8}));
  EXPECT_EQ(parse_dims("2:256:pow2"), (std::vector<int>{2, 4, 8, 16, 32, 64, 128, 256}));
  EXPECT_EQ(parse_dims("5,2:4,3"), (std::vector<int>{2, 3, 4, 5}));
}

TEST(ParseDims, Rejects) {
  EXPECT_THROW(parse_dims(""), InvalidArgument);
  EXPECT_THROW(parse_dims("1"), InvalidArgument);
  EXPECT_THROW(parse_dims("5:3"), InvalidArgument);
  EXPECT_THROW(parse_dims("2:8:0"), InvalidArgument);
  EXPECT_THROW(parse_dims("two"), InvalidArgument);
  EXPECT_THROW(parse_dims("4097"), DimensionOverflow);
}

TEST(DefaultGrid, PowersOfTwoAndOdds) {
  EXPECT_EQ(default_sweep_dims(), (std::vector<int>{2, 3, 4, 5, 8, 9, 16, 17, 32, 64, 128, 256}));
}

}  // namespace
}  // namespace qudit
