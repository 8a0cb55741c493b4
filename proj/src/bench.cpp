#include "fracwave/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "fracwave/fdac.hpp"

namespace fracwave {

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int i = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return i;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
}

std::vector<std::string> split_csv_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

ManufacturedCase build_case(const RunConfig& config) {
  std::optional<VariableOrder> vo;
  if (!config.alpha.empty()) vo = VariableOrder::from_name(config.alpha, config.T);
  if (config.example == "custom") {
    ManufacturedCase c;
    c.dim = config.dim;
    c.K = config.K;
    c.T = config.T;
    c.vo = vo.value_or(VariableOrder::zero(config.T));
    c.u0 = [](double, double) { return 0.0; };
    c.hat_u0 = [](double, double) { return 0.0; };
    c.f = [](double, double, double) { return 0.0; };
    c.exact = [](double, double, double) { return 0.0; };
    return c;
  }
  return make_example(example_from_name(config.example), config.K, config.T, 1024, vo);
}

Trajectory run_by_name(const std::string& method, const ProblemSetup& setup) {
  return method == "tss" ? run_tss(setup) : run_fdac(setup);
}

void write_snapshot(const RunConfig& config, const Trajectory& traj, const MeshSpec& mesh,
                    double t) {
  const double tau = config.T / config.N;
  const long frame = std::lround(t / tau);
  const std::size_t idx = static_cast<std::size_t>(std::clamp<long>(frame, 0, config.N));
  const FieldVector& u = traj.frames[idx];

  std::ostringstream name;
  name << config.snapshot_prefix << "_t" << t << ".txt";
  std::ofstream out(name.str());
  if (!out) throw std::runtime_error("snapshot: cannot open '" + name.str() + "'");
  out << mesh.dim << " " << mesh.m << " " << format_number(idx * tau) << "\n";
  if (mesh.dim == 1) {
    for (int i = 0; i < mesh.m; ++i)
      out << format_number(u[static_cast<std::size_t>(i)]) << (i + 1 < mesh.m ? " " : "\n");
    return;
  }
  for (int iy = 0; iy < mesh.m; ++iy) {
    for (int ix = 0; ix < mesh.m; ++ix)
      out << format_number(u[static_cast<std::size_t>(iy) * mesh.m + ix])
          << (ix + 1 < mesh.m ? " " : "\n");
  }
}

struct ConvergeDefaults {
  std::vector<int> levels;
  int fixed_exp;
};

ConvergeDefaults converge_defaults(const std::string& example, VaryAxis vary) {
  if (example == "ex1") return vary == VaryAxis::Temporal ? ConvergeDefaults{{5, 6, 7, 8}, 7}
                                                          : ConvergeDefaults{{3, 4, 5, 6}, 13};
  if (example == "ex2") return vary == VaryAxis::Temporal ? ConvergeDefaults{{5, 6, 7, 8}, 7}
                                                          : ConvergeDefaults{{3, 4, 5, 6}, 12};
  return vary == VaryAxis::Temporal ? ConvergeDefaults{{5, 6, 7, 8}, 5}
                                    : ConvergeDefaults{{5, 6, 7, 8}, 5};
}

}  // namespace

void RunConfig::apply_kv(const std::string& key, const std::string& value) {
  if (key == "example") example = value;
  else if (key == "method") method = value;
  else if (key == "N") N = parse_int(key, value);
  else if (key == "h_exp") h_exp = parse_int(key, value);
  else if (key == "dim") dim = parse_int(key, value);
  else if (key == "alpha") alpha = value;
  else if (key == "K") K = parse_double(key, value);
  else if (key == "T") T = parse_double(key, value);
  else if (key == "output") output = value;
  else if (key == "emit_wall") {
    if (value == "on") emit_wall = true;
    else if (value == "off") emit_wall = false;
    else throw ConfigError("emit_wall: expected on or off, got '" + value + "'");
  } else if (key == "snapshot_times") {
    snapshot_times.clear();
    for (const std::string& s : split_csv_list(value)) snapshot_times.push_back(parse_double(key, s));
  } else if (key == "snapshot_prefix") snapshot_prefix = value;
  else if (key == "vary") vary = value;
  else if (key == "levels") {
    levels.clear();
    for (const std::string& s : split_csv_list(value)) levels.push_back(parse_int(key, s));
  } else if (key == "fixed_exp") fixed_exp = parse_int(key, value);
  else if (key == "ex3_weight") ex3_weight = value;
  else if (key == "bench_n_exps") {
    bench_n_exps.clear();
    for (const std::string& s : split_csv_list(value)) bench_n_exps.push_back(parse_int(key, s));
  } else if (key == "tss_cutoff_exp") tss_cutoff_exp = parse_int(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

void RunConfig::validate() const {
  if (example != "ex1" && example != "ex2" && example != "ex3" && example != "custom")
    throw ConfigError("example: expected ex1, ex2, ex3, or custom, got '" + example + "'");
  if (method != "tss" && method != "fdac" && method != "both")
    throw ConfigError("method: expected tss, fdac, or both, got '" + method + "'");
  if (N < 2) throw ConfigError("N: must be >= 2, got " + std::to_string(N));
  if (h_exp < 1 || h_exp > 20)
    throw ConfigError("h_exp: must be in [1, 20], got " + std::to_string(h_exp));
  if (dim != 1 && dim != 2) throw ConfigError("dim: must be 1 or 2, got " + std::to_string(dim));
  if (!alpha.empty() && alpha != "zero" && alpha != "one-minus-cos" && alpha != "t-sin-t")
    throw ConfigError("alpha: expected zero, one-minus-cos, or t-sin-t, got '" + alpha + "'");
  if (!(K > 0.0)) throw ConfigError("K: must be > 0");
  if (!(T > 0.0)) throw ConfigError("T: must be > 0");
  if (vary != "temporal" && vary != "spatial")
    throw ConfigError("vary: expected temporal or spatial, got '" + vary + "'");
  if (ex3_weight != "per-dim" && ex3_weight != "paper-h")
    throw ConfigError("ex3_weight: expected per-dim or paper-h, got '" + ex3_weight + "'");
  for (int e : levels)
    if (e < 1 || e > 22) throw ConfigError("levels: exponents must be in [1, 22]");
  if (fixed_exp != -1 && (fixed_exp < 1 || fixed_exp > 22))
    throw ConfigError("fixed_exp: must be in [1, 22] or -1 for the default");
  for (std::size_t i = 0; i < bench_n_exps.size(); ++i) {
    if (bench_n_exps[i] < 2 || bench_n_exps[i] > 22)
      throw ConfigError("bench_n_exps: exponents must be in [2, 22]");
    if (i > 0 && bench_n_exps[i] <= bench_n_exps[i - 1])
      throw ConfigError("bench_n_exps: list must be strictly ascending");
  }
  if (tss_cutoff_exp < 0) throw ConfigError("tss_cutoff_exp: must be >= 0");
  for (double t : snapshot_times)
    if (t < 0.0 || t > T) throw ConfigError("snapshot_times: values must lie in [0, T]");
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  RunConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(line_no) + ": expected key=value");
    config.apply_kv(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

std::string csv_header() { return "example,method,N,h_exp,error,rate,wall_seconds,max_diff_vs_tss"; }

std::string csv_row(const ReportRow& row) {
  std::ostringstream os;
  os << row.example << ',' << row.method << ',' << row.N << ',' << row.h_exp << ',';
  if (row.error) os << format_number(*row.error);
  os << ',';
  if (row.rate) os << format_number(*row.rate);
  os << ',';
  if (row.wall_seconds) os << format_number(*row.wall_seconds);
  os << ',';
  if (row.max_diff_vs_tss) os << format_number(*row.max_diff_vs_tss);
  return os.str();
}

CommandResult cmd_run(const RunConfig& config) {
  config.validate();
  const ManufacturedCase mcase = build_case(config);
  const ProblemSetup setup = mcase.setup(1 << config.h_exp, config.N);
  const MeshSpec mesh = setup.mesh;

  auto error_at_T = [&](const Trajectory& traj) -> std::optional<double> {
    if (!mcase.has_exact()) return std::nullopt;
    auto exact_T = [&](double x, double y) { return mcase.exact(x, y, mcase.T); };
    return l2_error(traj.final_frame(), exact_T, mesh);
  };

  CommandResult result;
  std::optional<Trajectory> tss_traj, fdac_traj;
  if (config.method == "tss" || config.method == "both") {
    const double t0 = now_seconds();
    tss_traj = run_tss(setup);
    const double wall = now_seconds() - t0;
    ReportRow row{config.example, "tss", config.N, config.h_exp, error_at_T(*tss_traj), {}, {}, {}};
    if (config.emit_wall) row.wall_seconds = wall;
    result.rows.push_back(std::move(row));
  }
  if (config.method == "fdac" || config.method == "both") {
    const double t0 = now_seconds();
    fdac_traj = run_fdac(setup);
    const double wall = now_seconds() - t0;
    ReportRow row{config.example, "fdac", config.N, config.h_exp, error_at_T(*fdac_traj), {}, {}, {}};
    if (config.emit_wall) row.wall_seconds = wall;
    if (tss_traj) row.max_diff_vs_tss = max_rel_diff(*tss_traj, *fdac_traj);
    result.rows.push_back(std::move(row));
  }

  const Trajectory& for_snapshot = fdac_traj ? *fdac_traj : *tss_traj;
  for (double t : config.snapshot_times) write_snapshot(config, for_snapshot, mesh, t);
  return result;
}

CommandResult cmd_converge(const RunConfig& config) {
  config.validate();
  if (config.example == "custom")
    throw ConfigError("example: converge requires ex1, ex2, or ex3");
  const ManufacturedCase mcase = build_case(config);
  const ConvergeDefaults defaults =
      converge_defaults(config.example, config.vary == "temporal" ? VaryAxis::Temporal
                                                                  : VaryAxis::Spatial);

  ConvergeSpec spec;
  spec.vary = config.vary == "temporal" ? VaryAxis::Temporal : VaryAxis::Spatial;
  spec.level_exps = config.levels.empty() ? defaults.levels : config.levels;
  spec.fixed_exp = config.fixed_exp == -1 ? defaults.fixed_exp : config.fixed_exp;
  spec.ex3_weight = config.ex3_weight == "paper-h" ? GridWeight::PaperH : GridWeight::PerDim;
  if (spec.level_exps.size() < 2) throw ConfigError("levels: need at least two levels");

  CommandResult result;
  const std::vector<std::string> methods =
      config.method == "both" ? std::vector<std::string>{"tss", "fdac"}
                              : std::vector<std::string>{config.method};
  for (const std::string& method : methods) {
    spec.method = method_from_name(method);
    const double t0 = now_seconds();
    const RateTable table = converge_table(mcase, spec);
    const double wall = now_seconds() - t0;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const RateRow& r = table.rows[i];
      ReportRow row;
      row.example = config.example;
      row.method = method;
      const bool temporal = spec.vary == VaryAxis::Temporal;
      row.N = temporal ? (1 << r.level_exp) : (1 << spec.fixed_exp);
      row.h_exp = temporal ? spec.fixed_exp : r.level_exp;
      row.error = r.error;
      row.rate = r.rate;
      if (config.emit_wall && i + 1 == table.rows.size()) row.wall_seconds = wall;
      if (r.rate && *r.rate == 0.0)
        result.summary.push_back("# degenerate: rate 0 at level exponent " +
                                 std::to_string(r.level_exp));
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

CommandResult cmd_bench(const RunConfig& config) {
  config.validate();
  const std::vector<int> n_exps =
      config.bench_n_exps.empty() ? std::vector<int>{8, 9, 10, 11, 12, 13} : config.bench_n_exps;

  // The march cost does not depend on source values, so loads are
  // pre-assembled from the example's non-convolution part and handed to the
  // solvers; the timed region is the march alone.
  const ManufacturedCase mcase = build_case(config);
  auto cheap_f = [](double x, double y, double t) {
    return 6.0 * t * std::sin(2.0 * std::numbers::pi * x) * (y == 0.0 ? 1.0 : std::sin(2.0 * std::numbers::pi * y));
  };

  CommandResult result;
  std::vector<std::pair<double, double>> tss_points, fdac_points;
  bool warmed = false;
  for (int e : n_exps) {
    const int N = 1 << e;
    ProblemSetup setup = mcase.setup(1 << config.h_exp, N);
    setup.f = cheap_f;
    auto loads = std::make_shared<std::vector<FieldVector>>(static_cast<std::size_t>(N) + 1);
    for (int n = 2; n <= N; ++n)
      (*loads)[static_cast<std::size_t>(n)] = load_vector(setup.f, n * setup.tau(), setup.mesh);
    setup.loads = [loads](int n) { return (*loads)[static_cast<std::size_t>(n)]; };

    if (!warmed) {  // fault in FFT planning paths before any measurement
      run_fdac(setup);
      warmed = true;
    }

    auto time_method = [&](const std::string& method) {
      // Repeat short runs and keep the best to stabilize small measurements.
      double best = 1e300;
      int reps = 0;
      double spent = 0.0;
      do {
        const double t0 = now_seconds();
        run_by_name(method, setup);
        const double dt = now_seconds() - t0;
        best = std::min(best, dt);
        spent += dt;
        ++reps;
      } while (reps < 3 && spent < 0.2);
      return best;
    };

    if (e <= config.tss_cutoff_exp) {
      const double wall = time_method("tss");
      tss_points.emplace_back(static_cast<double>(N), wall);
      result.rows.push_back(ReportRow{config.example, "tss", N, config.h_exp, {}, {}, wall, {}});
    }
    const double wall = time_method("fdac");
    fdac_points.emplace_back(static_cast<double>(N), wall);
    result.rows.push_back(ReportRow{config.example, "fdac", N, config.h_exp, {}, {}, wall, {}});
  }

  if (tss_points.size() >= 2)
    result.summary.push_back("# tss_slope=" + format_number(loglog_slope(tss_points)));
  if (fdac_points.size() >= 2)
    result.summary.push_back("# fdac_slope=" + format_number(loglog_slope(fdac_points)));
  // Ratio at the largest N where both methods ran.
  if (!tss_points.empty()) {
    const auto& last_tss = tss_points.back();
    for (const auto& p : fdac_points) {
      if (p.first == last_tss.first && p.second > 0.0) {
        result.summary.push_back("# tss_over_fdac_at_N=" + std::to_string(static_cast<long>(p.first)) +
                                 ": " + format_number(last_tss.second / p.second));
      }
    }
  }
  return result;
}

void write_csv(std::ostream& os, const CommandResult& result) {
  os << csv_header() << "\n";
  for (const ReportRow& row : result.rows) os << csv_row(row) << "\n";
  for (const std::string& line : result.summary) os << line << "\n";
}

void emit_result(const RunConfig& config, const CommandResult& result) {
  if (config.output.empty()) {
    write_csv(std::cout, result);
    return;
  }
  std::ofstream out(config.output);
  if (!out) throw ConfigError("output: cannot open '" + config.output + "'");
  write_csv(out, result);
}

double loglog_slope(const std::vector<std::pair<double, double>>& n_seconds) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(n_seconds.size());
  for (const auto& [N, sec] : n_seconds) {
    const double x = std::log2(N);
    const double y = std::log2(sec);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fracwave
