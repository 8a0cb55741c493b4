#include "fracwave/manufactured.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "fracwave/fdac.hpp"

namespace fracwave {

namespace {
constexpr double kPi = std::numbers::pi;
}

double conv_poly3(double t, const VariableOrder& vo, int panels) {
  if (t < 0.0) throw std::invalid_argument("conv_poly3: t must be >= 0");
  if (panels < 2 || panels % 2 != 0)
    throw std::invalid_argument("conv_poly3: panel count must be even and >= 2");
  if (t == 0.0) return 0.0;
  const double dt = t / panels;
  auto integrand = [&](double s) {
    const double d = t - s;
    return eval_k(s, vo) * d * d * d;
  };
  double acc = integrand(0.0) + integrand(t);
  for (int i = 1; i < panels; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * integrand(i * dt);
  return acc * dt / 3.0;
}

struct ConvCache::Impl {
  VariableOrder vo;
  int panels;
  mutable std::mutex mu;
  mutable std::unordered_map<double, double> memo;

  Impl(VariableOrder v, int p) : vo(std::move(v)), panels(p) {}
};

ConvCache::ConvCache(VariableOrder vo, int panels)
    : impl_(std::make_shared<Impl>(std::move(vo), panels)) {}

ConvCache::~ConvCache() = default;

double ConvCache::operator()(double t) const {
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->memo.find(t);
    if (it != impl_->memo.end()) return it->second;
  }
  const double value = conv_poly3(t, impl_->vo, impl_->panels);
  std::lock_guard<std::mutex> lock(impl_->mu);
  impl_->memo.emplace(t, value);
  return value;
}

ProblemSetup ManufacturedCase::setup(int cells, int steps) const {
  ProblemSetup s;
  s.mesh = make_mesh(dim, cells, K);
  s.vo = vo;
  s.T = T;
  s.N = steps;
  s.u0 = u0;
  s.hat_u0 = hat_u0;
  s.f = f;
  return s;
}

ManufacturedCase make_example(ExampleId id, double K, double T, int conv_panels,
                              std::optional<VariableOrder> vo_override) {
  ManufacturedCase c;
  c.id = id;
  c.K = K;
  c.T = T;
  switch (id) {
    case ExampleId::Ex1: {
      c.dim = 1;
      c.vo = vo_override.value_or(VariableOrder::one_minus_cos(T));
      c.u0 = [](double, double) { return 0.0; };
      c.hat_u0 = [](double, double) { return 0.0; };
      c.exact = [](double x, double, double t) { return t * t * t * std::sin(2.0 * kPi * x); };
      ConvCache conv(c.vo, conv_panels);
      c.f = [K, conv](double x, double, double t) {
        const double s = std::sin(2.0 * kPi * x);
        return 6.0 * t * s + 4.0 * K * kPi * kPi * s * (t * t * t + conv(t));
      };
      break;
    }
    case ExampleId::Ex2: {
      c.dim = 2;
      c.vo = vo_override.value_or(VariableOrder::t_sin_t(T));
      c.u0 = [](double, double) { return 0.0; };
      c.hat_u0 = [](double, double) { return 0.0; };
      c.exact = [](double x, double y, double t) {
        return t * t * t * std::sin(2.0 * kPi * x) * std::sin(2.0 * kPi * y);
      };
      ConvCache conv(c.vo, conv_panels);
      // The Laplacian of sin(2 pi x) sin(2 pi y) carries 8 pi^2, twice the 1D
      // factor, which is what makes t^3 sin sin the exact solution.
      c.f = [K, conv](double x, double y, double t) {
        const double s = std::sin(2.0 * kPi * x) * std::sin(2.0 * kPi * y);
        return 6.0 * t * s + 8.0 * K * kPi * kPi * s * (t * t * t + conv(t));
      };
      break;
    }
    case ExampleId::Ex3: {
      c.dim = 2;
      c.vo = vo_override.value_or(VariableOrder::one_minus_cos(T));
      c.u0 = [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); };
      c.hat_u0 = c.u0;
      c.f = [](double, double, double) { return 1.0; };
      break;
    }
  }
  return c;
}

ExampleId example_from_name(const std::string& name) {
  if (name == "ex1") return ExampleId::Ex1;
  if (name == "ex2") return ExampleId::Ex2;
  if (name == "ex3") return ExampleId::Ex3;
  throw std::invalid_argument("unknown example '" + name + "' (expected ex1, ex2, or ex3)");
}

Method method_from_name(const std::string& name) {
  if (name == "tss") return Method::Tss;
  if (name == "fdac") return Method::Fdac;
  throw std::invalid_argument("unknown method '" + name + "' (expected tss or fdac)");
}

std::vector<double> spectral_mode_solve(double lambda, const std::function<double(double)>& q,
                                        double v0, double hat_v0, const VariableOrder& vo,
                                        int steps, double T) {
  if (steps < 2) throw std::invalid_argument("spectral_mode_solve: steps must be >= 2");
  if (!q) throw std::invalid_argument("spectral_mode_solve: q must be callable");
  const double tau = T / steps;
  const double lam2 = lambda * lambda;

  std::vector<double> kernel(static_cast<std::size_t>(steps) + 1);
  for (int j = 0; j <= steps; ++j) kernel[static_cast<std::size_t>(j)] = eval_k(j * tau, vo);

  std::vector<double> v(static_cast<std::size_t>(steps) + 1);
  std::vector<double> w(static_cast<std::size_t>(steps) + 1);  // v'
  v[0] = v0;
  w[0] = hat_v0;

  // conv[n] = lambda^2 * (k * v)(t_n), product trapezoid on the grid. Since
  // k(0) = 0, conv[n+1] depends only on v[0..n] and is available before the
  // step that produces v[n+1].
  auto convolution_at = [&](int n) {
    if (n == 0) return 0.0;
    double acc = 0.5 * kernel[static_cast<std::size_t>(n)] * v[0];
    for (int j = 1; j < n; ++j) acc += kernel[static_cast<std::size_t>(n - j)] * v[static_cast<std::size_t>(j)];
    return lam2 * tau * acc;
  };

  double conv_n = 0.0;
  for (int n = 0; n < steps; ++n) {
    const double t_n = n * tau;
    const double conv_np1 = convolution_at(n + 1);
    // Forcing interpolated linearly between the two known convolution values.
    auto accel = [&](double t, double vv) {
      const double theta = (t - t_n) / tau;
      const double conv_t = (1.0 - theta) * conv_n + theta * conv_np1;
      return q(t) - lam2 * vv - conv_t;
    };
    const double k1v = w[static_cast<std::size_t>(n)];
    const double k1w = accel(t_n, v[static_cast<std::size_t>(n)]);
    const double k2v = w[static_cast<std::size_t>(n)] + 0.5 * tau * k1w;
    const double k2w = accel(t_n + 0.5 * tau, v[static_cast<std::size_t>(n)] + 0.5 * tau * k1v);
    const double k3v = w[static_cast<std::size_t>(n)] + 0.5 * tau * k2w;
    const double k3w = accel(t_n + 0.5 * tau, v[static_cast<std::size_t>(n)] + 0.5 * tau * k2v);
    const double k4v = w[static_cast<std::size_t>(n)] + tau * k3w;
    const double k4w = accel(t_n + tau, v[static_cast<std::size_t>(n)] + tau * k3v);
    v[static_cast<std::size_t>(n) + 1] =
        v[static_cast<std::size_t>(n)] + tau / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    w[static_cast<std::size_t>(n) + 1] =
        w[static_cast<std::size_t>(n)] + tau / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    conv_n = conv_np1;
  }
  return v;
}

namespace {

Trajectory run_method(Method method, const ProblemSetup& setup) {
  return method == Method::Tss ? run_tss(setup) : run_fdac(setup);
}

double level_error(const ManufacturedCase& mcase, const ConvergeSpec& spec, int level_exp,
                   std::map<std::pair<int, int>, Trajectory>& run_cache) {
  auto run_at = [&](int cells_exp, int steps_exp) -> const Trajectory& {
    const auto key = std::make_pair(cells_exp, steps_exp);
    auto it = run_cache.find(key);
    if (it == run_cache.end()) {
      const ProblemSetup setup = mcase.setup(1 << cells_exp, 1 << steps_exp);
      it = run_cache.emplace(key, run_method(spec.method, setup)).first;
    }
    return it->second;
  };

  const bool temporal = spec.vary == VaryAxis::Temporal;
  const int cells_exp = temporal ? spec.fixed_exp : level_exp;
  const int steps_exp = temporal ? level_exp : spec.fixed_exp;
  const Trajectory& coarse = run_at(cells_exp, steps_exp);
  const MeshSpec mesh = make_mesh_pow2(mcase.dim, cells_exp, mcase.K);

  if (mcase.has_exact()) {
    const double T = mcase.T;
    auto exact_T = [&](double x, double y) { return mcase.exact(x, y, T); };
    return l2_error(coarse.final_frame(), exact_T, mesh);
  }

  // Self-convergence: against the doubled resolution on the varied axis.
  if (temporal) {
    const Trajectory& fine = run_at(cells_exp, steps_exp + 1);
    return grid_l2_diff(mesh, coarse.final_frame(), mesh, fine.final_frame(), spec.ex3_weight);
  }
  const Trajectory& fine = run_at(cells_exp + 1, steps_exp);
  const MeshSpec fine_mesh = make_mesh_pow2(mcase.dim, cells_exp + 1, mcase.K);
  return grid_l2_diff(mesh, coarse.final_frame(), fine_mesh, fine.final_frame(), spec.ex3_weight);
}

}  // namespace

RateTable converge_table(const ManufacturedCase& mcase, const ConvergeSpec& spec) {
  if (spec.level_exps.size() < 2)
    throw std::invalid_argument("converge_table: need at least two levels");
  RateTable table;
  std::map<std::pair<int, int>, Trajectory> run_cache;
  for (int level : spec.level_exps) {
    RateRow row;
    row.level_exp = level;
    try {
      row.error = level_error(mcase, spec, level, run_cache);
    } catch (const std::exception& e) {
      throw std::runtime_error("converge_table: level 2^-" + std::to_string(level) + ": " +
                               e.what());
    }
    if (!table.rows.empty()) {
      const double prev = table.rows.back().error;
      row.rate = std::log2(prev / row.error);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace fracwave
