#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracwave {

/// Named choices for the time-dependent order alpha(t).
enum class AlphaPreset { Zero, OneMinusCos, TSinT, Custom };

/// Time-dependent fractional order alpha(t) together with its first two
/// derivatives. A valid order satisfies 0 <= alpha(t) <= alpha* < 1 on the
/// horizon, alpha(0) = alpha'(0) = 0, and has bounded derivatives; these are
/// the hypotheses that make the kernel k(t) bounded.
class VariableOrder {
public:
  using Fn = std::function<double(double)>;

  static VariableOrder zero(double horizon = 1.0);
  static VariableOrder one_minus_cos(double horizon = 1.0);  // alpha = 1 - cos t
  static VariableOrder t_sin_t(double horizon = 1.0);        // alpha = t sin t
  static VariableOrder custom(Fn alpha, Fn dalpha, Fn d2alpha, double horizon = 1.0);

  /// Canonical preset names: "zero", "one-minus-cos", "t-sin-t".
  static VariableOrder from_name(std::string_view name, double horizon = 1.0);
  static std::string name_of(AlphaPreset preset);

  double alpha(double t) const { return alpha_(t); }
  double dalpha(double t) const { return dalpha_(t); }
  double d2alpha(double t) const { return d2alpha_(t); }

  AlphaPreset preset() const { return preset_; }
  double horizon() const { return horizon_; }

  /// Result of the dense sampling performed at construction (2^14 points on
  /// [0, horizon]). Solvers refuse orders whose report does not pass.
  bool hypotheses_hold() const { return hypotheses_hold_; }

private:
  VariableOrder(AlphaPreset preset, Fn alpha, Fn dalpha, Fn d2alpha, double horizon);

  AlphaPreset preset_;
  Fn alpha_, dalpha_, d2alpha_;
  double horizon_;
  bool hypotheses_hold_;
};

/// psi(x) = Gamma'(x)/Gamma(x) for x > 0, accurate to ~1e-12 relative.
/// Throws std::domain_error for x <= 0.
double digamma(double x);

/// g(t) = t^{-alpha(t)} / Gamma(1 - alpha(t)); the limit value 1 at t = 0.
double eval_g(double t, const VariableOrder& vo);

/// k(t) = g'(t), evaluated analytically by logarithmic differentiation:
///   k = g * (-alpha'(t) ln t - alpha(t)/t + psi(1 - alpha(t)) alpha'(t)).
/// Returns the limit value 0 at t = 0.
double eval_k(double t, const VariableOrder& vo);

/// Convolution quadrature weights. The coefficients b_{n,k} of the piecewise
/// constant rule depend only on the lag j = n - k, so a single vector of
/// weights serves every row:
///   beta[j-1] = g(tau j) - g(tau (j-1)),  j = 1..count
/// (0-based storage of the 1-based lag index).
struct LagWeights {
  double tau = 0.0;
  std::vector<double> beta;

  int count() const { return static_cast<int>(beta.size()); }
  /// Weight for lag j >= 1.
  double at_lag(int j) const { return beta.at(static_cast<std::size_t>(j) - 1); }
};

LagWeights lag_weights(double tau, int count, const VariableOrder& vo);

/// First column of the (N-1)x(N-1) lower-triangular Toeplitz block T:
/// entry 0 is 1 (the implicit term), entry j >= 1 is beta[j].
std::vector<double> toeplitz_first_column(int n_steps, double tau, const VariableOrder& vo);

struct AssumptionReport {
  bool pass = true;
  double alpha_max = 0.0;
  double dalpha_max = 0.0;
  double d2alpha_max = 0.0;
  std::optional<double> first_violation_t;
  std::string reason;  // empty when pass
};

/// Checks the order hypotheses on the given grid: 0 <= alpha < 1, finite
/// first and second derivatives, and alpha(0) = alpha'(0) = 0. Reports the
/// first violation instead of throwing.
AssumptionReport check_assumption_a(const VariableOrder& vo, std::span<const double> grid);

}  // namespace fracwave
