#include "fracwave/variable_order.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fracwave {

namespace {

constexpr double kTimeFloor = 1e-300;  // below this, use the t -> 0 limits

AssumptionReport check_on_dense_grid(const VariableOrder& vo, double horizon, int points) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] = horizon * static_cast<double>(i) / (points - 1);
  return check_assumption_a(vo, grid);
}

}  // namespace

VariableOrder::VariableOrder(AlphaPreset preset, Fn alpha, Fn dalpha, Fn d2alpha, double horizon)
    : preset_(preset),
      alpha_(std::move(alpha)),
      dalpha_(std::move(dalpha)),
      d2alpha_(std::move(d2alpha)),
      horizon_(horizon),
      hypotheses_hold_(false) {
  if (!(horizon > 0.0)) throw std::invalid_argument("VariableOrder: horizon must be > 0");
  hypotheses_hold_ = check_on_dense_grid(*this, horizon, 1 << 14).pass;
}

VariableOrder VariableOrder::zero(double horizon) {
  return VariableOrder(AlphaPreset::Zero,
                       [](double) { return 0.0; },
                       [](double) { return 0.0; },
                       [](double) { return 0.0; },
                       horizon);
}

VariableOrder VariableOrder::one_minus_cos(double horizon) {
  return VariableOrder(AlphaPreset::OneMinusCos,
                       [](double t) { return 1.0 - std::cos(t); },
                       [](double t) { return std::sin(t); },
                       [](double t) { return std::cos(t); },
                       horizon);
}

VariableOrder VariableOrder::t_sin_t(double horizon) {
  return VariableOrder(AlphaPreset::TSinT,
                       [](double t) { return t * std::sin(t); },
                       [](double t) { return std::sin(t) + t * std::cos(t); },
                       [](double t) { return 2.0 * std::cos(t) - t * std::sin(t); },
                       horizon);
}

VariableOrder VariableOrder::custom(Fn alpha, Fn dalpha, Fn d2alpha, double horizon) {
  if (!alpha || !dalpha || !d2alpha)
    throw std::invalid_argument("VariableOrder::custom: all three callbacks are required");
  return VariableOrder(AlphaPreset::Custom, std::move(alpha), std::move(dalpha),
                       std::move(d2alpha), horizon);
}

VariableOrder VariableOrder::from_name(std::string_view name, double horizon) {
  if (name == "zero") return zero(horizon);
  if (name == "one-minus-cos") return one_minus_cos(horizon);
  if (name == "t-sin-t") return t_sin_t(horizon);
  throw std::invalid_argument("unknown alpha preset '" + std::string(name) +
                              "' (expected zero, one-minus-cos, or t-sin-t)");
}

std::string VariableOrder::name_of(AlphaPreset preset) {
  switch (preset) {
    case AlphaPreset::Zero: return "zero";
    case AlphaPreset::OneMinusCos: return "one-minus-cos";
    case AlphaPreset::TSinT: return "t-sin-t";
    case AlphaPreset::Custom: return "custom";
  }
  return "custom";
}

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: argument must be > 0");
  // Shift upward until the asymptotic series applies, then evaluate
  // psi(x) ~ ln x - 1/(2x) - sum B_{2n}/(2n x^{2n}) through B_16.
  double shifted = 0.0;
  while (x < 8.0) {
    shifted -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv2 * (1.0 / 12.0 -
      inv2 * (1.0 / 120.0 -
      inv2 * (1.0 / 252.0 -
      inv2 * (1.0 / 240.0 -
      inv2 * (1.0 / 132.0 -
      inv2 * (691.0 / 32760.0 -
      inv2 * (1.0 / 12.0 -
      inv2 * (3617.0 / 8160.0))))))));
  return shifted + std::log(x) - 0.5 * inv - series;
}

double eval_g(double t, const VariableOrder& vo) {
  if (t < kTimeFloor) return 1.0;
  const double a = vo.alpha(t);
  return std::pow(t, -a) / std::tgamma(1.0 - a);
}

double eval_k(double t, const VariableOrder& vo) {
  if (t < kTimeFloor) return 0.0;
  const double a = vo.alpha(t);
  const double da = vo.dalpha(t);
  const double g = std::pow(t, -a) / std::tgamma(1.0 - a);
  return g * (-da * std::log(t) - a / t + digamma(1.0 - a) * da);
}

LagWeights lag_weights(double tau, int count, const VariableOrder& vo) {
  if (!(tau > 0.0)) throw std::invalid_argument("lag_weights: tau must be > 0");
  if (count < 1) throw std::invalid_argument("lag_weights: count must be >= 1");
  LagWeights w;
  w.tau = tau;
  w.beta.resize(static_cast<std::size_t>(count));
  double g_prev = 1.0;  // g(0)
  for (int j = 1; j <= count; ++j) {
    const double g_cur = eval_g(tau * j, vo);
    w.beta[static_cast<std::size_t>(j - 1)] = g_cur - g_prev;
    g_prev = g_cur;
  }
  return w;
}

std::vector<double> toeplitz_first_column(int n_steps, double tau, const VariableOrder& vo) {
  if (n_steps < 2) throw std::invalid_argument("toeplitz_first_column: N must be >= 2");
  std::vector<double> tc(static_cast<std::size_t>(n_steps - 1));
  tc[0] = 1.0;
  if (n_steps > 2) {
    const LagWeights w = lag_weights(tau, n_steps - 2, vo);
    for (int j = 1; j <= n_steps - 2; ++j) tc[static_cast<std::size_t>(j)] = w.at_lag(j);
  }
  return tc;
}

AssumptionReport check_assumption_a(const VariableOrder& vo, std::span<const double> grid) {
  AssumptionReport rep;
  auto fail = [&rep](double t, const std::string& why) {
    if (rep.pass) {
      rep.pass = false;
      rep.first_violation_t = t;
      rep.reason = why;
    }
  };

  const double a0 = vo.alpha(0.0);
  const double da0 = vo.dalpha(0.0);
  if (std::abs(a0) > 1e-14) fail(0.0, "alpha(0) != 0");
  else if (std::abs(da0) > 1e-14) fail(0.0, "alpha'(0) != 0");

  for (double t : grid) {
    const double a = vo.alpha(t);
    const double da = vo.dalpha(t);
    const double d2a = vo.d2alpha(t);
    if (!std::isfinite(a) || !std::isfinite(da) || !std::isfinite(d2a)) {
      fail(t, "non-finite value at t");
      continue;
    }
    rep.alpha_max = std::max(rep.alpha_max, a);
    rep.dalpha_max = std::max(rep.dalpha_max, std::abs(da));
    rep.d2alpha_max = std::max(rep.d2alpha_max, std::abs(d2a));
    if (a < 0.0) {
      fail(t, "alpha(t) < 0");
    } else if (a >= 1.0) {
      std::ostringstream os;
      os << "alpha(t) = " << a << " >= 1";
      fail(t, os.str());
    }
  }
  return rep;
}

}  // namespace fracwave
