#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "fracwave/bench.hpp"

namespace {

struct CliState {
  fracwave::RunConfig config;  // command-line values over defaults
  std::string config_path;
  std::string snapshot_times, levels, bench_exps;
};

void add_common_options(CLI::App* cmd, CliState& cli) {
  cmd->add_option("--config", cli.config_path,
                  "flat key=value config file; command-line flags override it");
  cmd->add_option("--example", cli.config.example, "ex1 | ex2 | ex3 | custom");
  cmd->add_option("--method", cli.config.method, "tss | fdac | both");
  cmd->add_option("-N,--steps", cli.config.N, "number of time steps");
  cmd->add_option("--h-exp", cli.config.h_exp, "spatial resolution, h = 2^-h_exp");
  cmd->add_option("--dim", cli.config.dim, "spatial dimension for example=custom");
  cmd->add_option("--alpha", cli.config.alpha, "order preset: zero | one-minus-cos | t-sin-t");
  cmd->add_option("-K,--wave-speed", cli.config.K, "wave-speed factor");
  cmd->add_option("-T,--final-time", cli.config.T, "final time");
  cmd->add_option("-o,--output", cli.config.output, "CSV output path (default stdout)");
  cmd->add_flag("--no-wall", "omit wall_seconds for byte-stable output");
}

// Start from the config file (when given) and overlay exactly the options the
// user passed on the command line.
fracwave::RunConfig effective_config(CLI::App* cmd, const CliState& cli) {
  fracwave::RunConfig config;
  if (!cli.config_path.empty()) config = fracwave::load_config_file(cli.config_path);

  auto passed = [cmd](const std::string& name) { return cmd->count(name) > 0; };
  if (passed("--example")) config.example = cli.config.example;
  if (passed("--method")) config.method = cli.config.method;
  if (passed("--steps")) config.N = cli.config.N;
  if (passed("--h-exp")) config.h_exp = cli.config.h_exp;
  if (passed("--dim")) config.dim = cli.config.dim;
  if (passed("--alpha")) config.alpha = cli.config.alpha;
  if (passed("--wave-speed")) config.K = cli.config.K;
  if (passed("--final-time")) config.T = cli.config.T;
  if (passed("--output")) config.output = cli.config.output;
  if (passed("--no-wall")) config.emit_wall = false;

  auto passed_opt = [cmd](const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (passed_opt("--snapshot-prefix")) config.snapshot_prefix = cli.config.snapshot_prefix;
  if (passed_opt("--vary")) config.vary = cli.config.vary;
  if (passed_opt("--fixed-exp")) config.fixed_exp = cli.config.fixed_exp;
  if (passed_opt("--ex3-weight")) config.ex3_weight = cli.config.ex3_weight;
  if (passed_opt("--tss-cutoff-exp")) config.tss_cutoff_exp = cli.config.tss_cutoff_exp;

  if (!cli.snapshot_times.empty()) config.apply_kv("snapshot_times", cli.snapshot_times);
  if (!cli.levels.empty()) config.apply_kv("levels", cli.levels);
  if (!cli.bench_exps.empty()) config.apply_kv("bench_n_exps", cli.bench_exps);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variable-order fractional wave equation solvers and benchmarks"};
  app.require_subcommand(1);

  CliState cli;

  CLI::App* run = app.add_subcommand("run", "single solve, one CSV row per method");
  add_common_options(run, cli);
  run->add_option("--snapshot-times", cli.snapshot_times,
                  "comma list of times at which to dump nodal values");
  run->add_option("--snapshot-prefix", cli.config.snapshot_prefix, "snapshot file prefix");

  CLI::App* converge = app.add_subcommand("converge", "convergence-rate table");
  add_common_options(converge, cli);
  converge->add_option("--vary", cli.config.vary, "temporal | spatial");
  converge->add_option("--levels", cli.levels, "comma list of varied exponents");
  converge->add_option("--fixed-exp", cli.config.fixed_exp, "held-fixed resolution exponent");
  converge->add_option("--ex3-weight", cli.config.ex3_weight, "per-dim | paper-h");

  CLI::App* bench = app.add_subcommand("bench", "wall-clock scaling of TSS vs FDAC");
  add_common_options(bench, cli);
  bench->add_option("--n-exps", cli.bench_exps, "comma list of N exponents, ascending");
  bench->add_option("--tss-cutoff-exp", cli.config.tss_cutoff_exp, "skip TSS above N = 2^cutoff");

  CLI::App* compare = app.add_subcommand("compare", "TSS vs FDAC equivalence check");
  add_common_options(compare, cli);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(run)) {
      const fracwave::RunConfig config = effective_config(run, cli);
      fracwave::emit_result(config, fracwave::cmd_run(config));
      return 0;
    }
    if (app.got_subcommand(converge)) {
      const fracwave::RunConfig config = effective_config(converge, cli);
      fracwave::emit_result(config, fracwave::cmd_converge(config));
      return 0;
    }
    if (app.got_subcommand(bench)) {
      const fracwave::RunConfig config = effective_config(bench, cli);
      fracwave::emit_result(config, fracwave::cmd_bench(config));
      return 0;
    }
    if (app.got_subcommand(compare)) {
      fracwave::RunConfig config = effective_config(compare, cli);
      config.method = "both";
      fracwave::emit_result(config, fracwave::cmd_run(config));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
