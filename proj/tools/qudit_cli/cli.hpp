#pragma once

// Command-line front end. Exit codes: 0 pass, 1 invariant failure,
// 2 configuration error, 3 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qudit/qudit.hpp"

namespace qudit::cli {

enum ExitCode : int { kPass = 0, kInvariantFailure = 1, kConfigError = 2, kIoError = 3 };

enum class OutputFormat { Pretty, Json, Csv };

struct RunConfig {
  std::string command;
  std::string suite = "all";
  std::vector<int> dims;
  std::vector<std::string> reps;
  std::string rep = "number";
  std::optional<double> tolerance;
  OutputFormat format = OutputFormat::Pretty;
  std::string out_path;
  std::string json_path;
  std::optional<std::uint64_t> seed;  // reserved; every pipeline is deterministic
  double chi = 1.0;
  std::optional<double> time;
  std::string metrics;
  std::string dim_grid;
};

class IoError : public Error {
 public:
  using Error::Error;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << content;
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

/// Writes to `path`, or to `out` when no path was given.
inline void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file(path, content);
  }
}

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

inline int cmd_build(const RunConfig& cfg, std::ostream& out) {
  if (cfg.dims.size() != 1) throw InvalidArgument("build takes exactly one --dim");
  const QuditDim dim(cfg.dims.front());
  std::ostringstream os;
  {
    JsonObjectWriter json(os);
    json.field("rep", cfg.rep);
    json.field("d", dim.value());
    switch (parse_rep_kind(cfg.rep)) {
      case RepKind::Number: {
        const NumberRep rep = build_number_rep(dim);
        json.field("dft_sign", rep.dft_sign());
        json.field("N", rep.n_op());
        json.field("X", rep.x_op());
        json.field("Z", rep.z_op());
        json.field("theta_z", rep.theta_z());
        break;
      }
      case RepKind::Weight: {
        const WeightRep rep = build_weight_rep(dim);
        json.field("dft_sign", rep.dft_sign);
        json.field("X", rep.x_op);
        json.field("Z", rep.z_op);
        json.field("theta_z", rep.theta_z);
        break;
      }
      case RepKind::Phase: {
        const PhaseRep rep = build_phase_rep(dim);
        json.field("label_sign", rep.label_sign());
        json.field("shift_phase", rep.shift_phase());
        json.field("phase_states", rep.phase_states());
        json.field("x_op", rep.x_op());
        json.field("z_op", rep.z_op());
        json.field("theta_x", rep.theta_x());
        break;
      }
    }
  }
  emit(cfg.out_path, os.str(), out);
  return kPass;
}

inline std::string render_checks(const std::vector<Check>& checks, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::Pretty: {
      for (const Check& c : checks) {
        os << (c.passed() ? "PASS" : "FAIL") << "  d=" << c.dim << "  " << c.scope << "  "
           << c.name << "  residual=" << sci(c.residual) << "  tol=" << sci(c.tolerance) << '\n';
      }
      std::size_t failed = 0;
      for (const Check& c : checks) failed += c.passed() ? 0 : 1;
      os << checks.size() - failed << '/' << checks.size() << " checks passed\n";
      break;
    }
    case OutputFormat::Csv: {
      os << "d,scope,check,residual,tolerance,pass\n";
      for (const Check& c : checks) {
        os << c.dim << ',' << c.scope << ',' << c.name << ',' << format_double(c.residual) << ','
           << format_double(c.tolerance) << ',' << (c.passed() ? "true" : "false") << '\n';
      }
      break;
    }
    case OutputFormat::Json: {
      os << "[";
      bool first = true;
      for (const Check& c : checks) {
        os << (first ? "\n  " : ",\n  ");
        first = false;
        os << "{\"d\": " << c.dim << ", \"scope\": " << nlohmann::json(c.scope).dump()
           << ", \"check\": " << nlohmann::json(c.name).dump()
           << ", \"residual\": " << (std::isfinite(c.residual) ? format_double(c.residual) : "null")
           << ", \"tolerance\": " << format_double(c.tolerance)
           << ", \"pass\": " << (c.passed() ? "true" : "false") << "}";
      }
      os << "\n]\n";
      break;
    }
  }
  return os.str();
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.dims.empty()) throw InvalidArgument("verify needs --dim");
  std::vector<RepKind> reps;
  if (cfg.reps.empty()) {
    reps = {RepKind::Number, RepKind::Weight, RepKind::Phase};
  } else {
    for (const std::string& r : cfg.reps) reps.push_back(parse_rep_kind(r));
  }
  VerifyOptions opts;
  if (cfg.tolerance) opts.tolerance_override = Tolerance(*cfg.tolerance).abs_tol();

  std::vector<QuditDim> dims;
  for (int d : cfg.dims) dims.emplace_back(d);
  bool known = false;
  for (std::string_view name : verify_suite_names()) known |= name == cfg.suite;
  if (!known) throw InvalidArgument("unknown verify suite '" + cfg.suite + "'");

  std::vector<Check> checks;
  for (QuditDim dim : dims) {
    auto part = run_verify_suite(cfg.suite, dim, reps, opts);
    checks.insert(checks.end(), part.begin(), part.end());
  }
  emit(cfg.out_path, render_checks(checks, cfg.format), out);
  for (const Check& c : checks)
    if (!c.passed()) return kInvariantFailure;
  return kPass;
}

inline void write_calibration_json(std::ostream& os, const SumCalibration& cal) {
  JsonObjectWriter json(os);
  json.field("d", cal.dim.value());
  json.field("chi", cal.chi);
  json.field("t_star", cal.t_star);
  json.field("chi_t", cal.chi_t());
  json.field("sign", cal.sign);
  json.field("fidelity", cal.fidelity);
}

inline int cmd_sum_demo(const RunConfig& cfg, std::ostream& out) {
  if (cfg.dims.size() != 1) throw InvalidArgument("sum-demo takes exactly one --dim");
  const QuditDim dim(cfg.dims.front());
  if (!std::isfinite(cfg.chi) || cfg.chi == 0.0) throw InvalidArgument("--chi must be nonzero");
  if (cfg.time && !std::isfinite(*cfg.time)) throw InvalidArgument("--time must be finite");

  SumCalibration cal{dim, cfg.chi, 0.0, kPhaseStateSign, 0.0};
  try {
    cal = calibrate_sum(dim, cfg.chi);
  } catch (const CalibrationFailed& e) {
    out << "calibration failed: " << e.what() << '\n';
    return kInvariantFailure;
  }
  const double t = cfg.time.value_or(cal.t_star);

  std::ostringstream os;
  if (cfg.format == OutputFormat::Json) {
    write_calibration_json(os, cal);
  } else {
    const double nominal = sum_worst_fidelity(dim, cfg.chi, kTwoPi / cfg.chi, cal.sign);
    os << "SUM gate calibration, d = " << dim.value() << ", chi = " << format_double(cal.chi)
       << '\n'
       << "  chi*t_star       = " << format_double(cal.chi_t()) << "  (= 2 pi * "
       << format_double(cal.chi_t() * dim.value() / kTwoPi) << " / d)\n"
       << "  t_star           = " << format_double(cal.t_star) << '\n'
       << "  phase-state sign = " << cal.sign << '\n'
       << "  worst fidelity   = " << format_double(cal.fidelity) << '\n'
       << "  at chi*t = 2 pi  : worst fidelity " << format_double(nominal) << '\n'
       << "truth table at t = " << format_double(t)
       << " (mode 1 number basis, mode 2 phase basis)\n"
       << "  s1  s2  ->  label  expected  fidelity\n";
    const std::size_t d = dim.size();
    for (std::size_t s1 = 0; s1 < d; ++s1)
      for (std::size_t s2 = 0; s2 < d; ++s2) {
        const LabelDecode r = fractional_sum_label(cal, s1, s2, t);
        char line[160];
        std::snprintf(line, sizeof(line), "  %2zu  %2zu  ->  %5zu  %8zu  %.17g\n", s1, s2, r.label,
                      (s1 + s2) % d, r.fidelity);
        os << line;
      }
  }
  out << os.str();

  if (!cfg.json_path.empty()) {
    std::ostringstream js;
    write_calibration_json(js, cal);
    write_file(cfg.json_path, js.str());
  }
  return kPass;
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::string> metrics;
  if (cfg.metrics.empty()) {
    metrics = registered_metric_names();
  } else {
    for (std::string_view m : detail::split(cfg.metrics, ',')) metrics.emplace_back(m);
  }
  const std::vector<int> dims =
      cfg.dim_grid.empty() ? default_sweep_dims() : parse_dims(cfg.dim_grid);
  std::vector<SweepRecord> records;
  try {
    records = run_sweep(metrics, dims);
  } catch (const UnknownMetric& e) {
    throw InvalidArgument(e.what());
  }

  std::ostringstream os;
  if (cfg.format == OutputFormat::Json) {
    os << "[";
    bool first = true;
    for (const SweepRecord& r : records) {
      os << (first ? "\n  " : ",\n  ") << "{\"d\": " << r.d << ", \"metric\": \"" << r.metric
         << "\", \"value\": " << format_double(r.value) << "}";
      first = false;
    }
    os << "\n]\n";
  } else {
    write_sweep_csv(os, records);
  }
  emit(cfg.out_path, os.str(), out);
  return kPass;
}

/// Parses `args` (without the program name) and runs the selected command.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qudit Pauli-group simulator: number, SU(2) weight and phase realizations"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string format = "pretty";
  app.add_option("--tol", cfg.tolerance, "Override every verification tolerance")
      ->check(CLI::Range(0.0, 1e-3));
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"pretty", "json", "csv"}));
  app.add_option("--seed", cfg.seed, "Reserved; outputs are deterministic");
  app.fallthrough();

  auto* ops = app.add_subcommand("ops", "Operator construction and export");
  ops->require_subcommand(1);
  auto* build = ops->add_subcommand("build", "Build a representation and export it as JSON");
  build->add_option("--rep", cfg.rep, "number | weight | phase")
      ->check(CLI::IsMember({"number", "weight", "phase"}));
  build->add_option("--dim", cfg.dims, "Qudit dimension")->required()->expected(1);
  build->add_option("--out", cfg.out_path, "Output JSON file (stdout when omitted)");

  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  verify->add_option("suite", cfg.suite, "all | pauli | number | weight | phase | gates | qubit");
  verify->add_option("--dim", cfg.dims, "Qudit dimension(s)")->required()->delimiter(',');
  verify->add_option("--rep", cfg.reps, "Representation(s) for the pauli suite")->delimiter(',');
  verify->add_option("--out", cfg.out_path, "Write the report to a file");

  auto* sum = app.add_subcommand("sum-demo", "Calibrate the Kerr SUM gate and print its truth table");
  sum->add_option("--dim", cfg.dims, "Qudit dimension")->required()->expected(1);
  sum->add_option("--chi", cfg.chi, "Kerr coupling");
  sum->add_option("--time", cfg.time, "Evolution time for the truth table");
  sum->add_option("--json", cfg.json_path, "Write the calibration record as JSON");

  auto* sweep = app.add_subcommand("sweep", "Finite-d diagnostics across a dimension grid");
  sweep->add_option("--metrics", cfg.metrics, "Comma-separated metric names (default: all)");
  sweep->add_option("--dims", cfg.dim_grid, "Grid such as 2:256:pow2 or 2,3,5 (default grid when omitted)");
  sweep->add_option("--out", cfg.out_path, "Output CSV file (stdout when omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  cfg.format = format == "json"  ? OutputFormat::Json
               : format == "csv" ? OutputFormat::Csv
                                 : OutputFormat::Pretty;
  try {
    if (*build) {
      cfg.command = "build";
      if (cfg.format == OutputFormat::Csv) throw InvalidArgument("build only writes JSON");
      return cmd_build(cfg, out);
    }
    if (*verify) {
      cfg.command = "verify";
      return cmd_verify(cfg, out);
    }
    if (*sum) {
      cfg.command = "sum-demo";
      return cmd_sum_demo(cfg, out);
    }
    cfg.command = "sweep";
    return cmd_sweep(cfg, out);
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kIoError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DimensionOverflow& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "failure: " << e.what() << '\n';
    return kInvariantFailure;
  }
}

}  // namespace qudit::cli
