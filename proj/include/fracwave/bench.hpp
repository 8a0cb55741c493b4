#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracwave/manufactured.hpp"

namespace fracwave {

/// Thrown on invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Fully deterministic run description (no seeds anywhere).
struct RunConfig {
  std::string example = "ex1";  // ex1 | ex2 | ex3 | custom
  std::string method = "fdac";  // tss | fdac | both
  int N = 32;
  int h_exp = 3;                // h = 2^-h_exp
  int dim = 1;                  // spatial dimension for example=custom
  std::string alpha = "";      // preset override; empty = example default
  double K = 0.01;
  double T = 1.0;
  std::string output = "";     // CSV destination; empty = stdout
  bool emit_wall = true;        // blank the wall_seconds column when false
  std::vector<double> snapshot_times;
  std::string snapshot_prefix = "snapshot";

  // converge
  std::string vary = "temporal";  // temporal | spatial
  std::vector<int> levels;        // varied exponents; empty = example default
  int fixed_exp = -1;             // held-fixed exponent; -1 = example default
  std::string ex3_weight = "per-dim";  // per-dim | paper-h

  // bench
  std::vector<int> bench_n_exps;  // N = 2^e entries, ascending
  int tss_cutoff_exp = 15;        // skip TSS above N = 2^cutoff

  void validate() const;
  /// Applies "key=value" (from file or command line). Throws ConfigError on
  /// unknown keys or malformed values.
  void apply_kv(const std::string& key, const std::string& value);
};

/// Reads a flat key=value config file ('#' comments allowed).
RunConfig load_config_file(const std::string& path);

/// One CSV row. Columns, exactly:
///   example,method,N,h_exp,error,rate,wall_seconds,max_diff_vs_tss
struct ReportRow {
  std::string example;
  std::string method;
  int N = 0;
  int h_exp = 0;
  std::optional<double> error;
  std::optional<double> rate;
  std::optional<double> wall_seconds;
  std::optional<double> max_diff_vs_tss;
};

std::string csv_header();
std::string csv_row(const ReportRow& row);

struct CommandResult {
  std::vector<ReportRow> rows;
  std::vector<std::string> summary;  // '#'-prefixed trailer lines (bench slopes)
};

/// run / compare: single configuration, one row per method; method "both"
/// also reports the max relative TSS/FDAC difference and writes snapshots.
CommandResult cmd_run(const RunConfig& config);

/// converge: rate-table rows along the chosen axis.
CommandResult cmd_converge(const RunConfig& config);

/// bench: wall-clock scaling at h = 2^-h_exp (default 3) over the given N
/// list; TSS is skipped above the cutoff. Emits least-squares log-log slopes.
CommandResult cmd_bench(const RunConfig& config);

/// Writes header, rows, and summary lines to the stream.
void write_csv(std::ostream& os, const CommandResult& result);

/// Writes to config.output (or stdout when empty).
void emit_result(const RunConfig& config, const CommandResult& result);

/// Least-squares slope of log2(seconds) against log2(N).
double loglog_slope(const std::vector<std::pair<double, double>>& n_seconds);

}  // namespace fracwave
