#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fracwave/variable_order.hpp"
#include "support/oracles.hpp"

using namespace fracwave;

namespace {
constexpr double kEulerGamma = 0.5772156649015328606;

std::vector<double> dense_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return g;
}
}  // namespace

TEST_CASE("digamma matches frozen identities") {
  CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-12));
  CHECK(digamma(2.0) == doctest::Approx(1.0 - kEulerGamma).epsilon(1e-12));
  CHECK(digamma(0.5) == doctest::Approx(-kEulerGamma - 2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(digamma(0.0), std::domain_error);
  CHECK_THROWS_AS(digamma(-1.5), std::domain_error);
}

TEST_CASE("digamma agrees with lgamma finite differences") {
  // Independent route: psi = (lgamma(x+e) - lgamma(x-e)) / 2e.
  for (double x : {0.3, 0.7, 1.0, 2.5, 5.0, 9.7, 31.0}) {
    const double eps = 1e-5 * std::max(1.0, x);
    const double fd = (std::lgamma(x + eps) - std::lgamma(x - eps)) / (2.0 * eps);
    CHECK(digamma(x) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("digamma recurrence psi(x+1) = psi(x) + 1/x") {
  for (double x : {0.1, 0.9, 3.3, 7.9, 12.0})
    CHECK(digamma(x + 1.0) == doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-13));
}

TEST_CASE("eval_g limits and presets") {
  const VariableOrder zero = VariableOrder::zero();
  const VariableOrder omc = VariableOrder::one_minus_cos();
  CHECK(eval_g(0.0, omc) == 1.0);
  CHECK(eval_g(0.0, zero) == 1.0);
  for (double t : {0.1, 0.37, 0.92}) CHECK(eval_g(t, zero) == 1.0);

  const double a = 1.0 - std::cos(0.5);
  const double expected = std::exp(-a * std::log(0.5)) / std::tgamma(1.0 - a);
  CHECK(eval_g(0.5, omc) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("eval_k limits, presets, and finite differences") {
  const VariableOrder zero = VariableOrder::zero();
  const VariableOrder omc = VariableOrder::one_minus_cos();
  const VariableOrder tst = VariableOrder::t_sin_t();
  for (double t : {0.0, 0.2, 0.8}) CHECK(eval_k(t, zero) == 0.0);
  CHECK(eval_k(0.0, omc) == 0.0);

  const double step = 1e-6;
  const double fd = (eval_g(0.25 + step, tst) - eval_g(0.25 - step, tst)) / (2.0 * step);
  CHECK(std::abs(eval_k(0.25, tst) - fd) < 1e-8);
}

TEST_CASE("eval_k matches central differences at second order on (1e-3, T]") {
  for (const VariableOrder& vo : {VariableOrder::one_minus_cos(), VariableOrder::t_sin_t()}) {
    for (double t : dense_grid(1e-3, 1.0, 41)) {
      const double h1 = 1e-4, h2 = 5e-5;
      const double fd1 = (eval_g(t + h1, vo) - eval_g(t - h1, vo)) / (2.0 * h1);
      const double fd2 = (eval_g(t + h2, vo) - eval_g(t - h2, vo)) / (2.0 * h2);
      const double e1 = std::abs(eval_k(t, vo) - fd1);
      const double e2 = std::abs(eval_k(t, vo) - fd2);
      // Quartered step must roughly quarter the error unless both are noise.
      if (e1 > 1e-11) CHECK(e2 < 0.5 * e1);
    }
  }
}

TEST_CASE("kernel stays bounded on dense grids") {
  for (const VariableOrder& vo : {VariableOrder::one_minus_cos(), VariableOrder::t_sin_t()}) {
    double coarse_max = 0.0, fine_max = 0.0;
    for (double t : dense_grid(1e-12, 1.0, 2000)) coarse_max = std::max(coarse_max, std::abs(eval_k(t, vo)));
    for (double t : dense_grid(1e-12, 1.0, 8000)) fine_max = std::max(fine_max, std::abs(eval_k(t, vo)));
    CHECK(fine_max < 10.0);
    CHECK(fine_max <= coarse_max * 1.05 + 1e-12);  // refinement stable
  }
}

TEST_CASE("lag weights: trivial values and quadrature identity") {
  const VariableOrder zero = VariableOrder::zero();
  const LagWeights wz = lag_weights(1.0 / 64, 64, zero);
  for (double b : wz.beta) CHECK(b == 0.0);

  const VariableOrder omc = VariableOrder::one_minus_cos();
  const double tau = 1.0 / 32;
  const LagWeights w = lag_weights(tau, 32, omc);
  CHECK(w.at_lag(1) == doctest::Approx(eval_g(tau, omc) - 1.0).epsilon(1e-15));

  // beta[j] = integral of k over the lag-j panel (fundamental theorem).
  for (int j : {1, 2, 5, 17, 32}) {
    const double quad = oracles::integrate([&](double s) { return eval_k(s, omc); },
                                           tau * (j - 1), tau * j, 1e-13);
    CHECK(std::abs(w.at_lag(j) - quad) < 1e-10);
  }
}

TEST_CASE("translation invariance: b_{n,k} from the definition equals beta[n-k]") {
  const VariableOrder tst = VariableOrder::t_sin_t();
  const double tau = 1.0 / 16;
  const LagWeights w = lag_weights(tau, 16, tst);
  const std::pair<int, int> samples[] = {{5, 2}, {9, 0}, {16, 15}, {12, 4}};
  for (auto [n, k] : samples) {
    const double bnk = oracles::integrate(
        [&](double s) { return eval_k(n * tau - s, tst); }, k * tau, (k + 1) * tau, 1e-13);
    CHECK(std::abs(w.at_lag(n - k) - bnk) < 1e-10);
  }
}

TEST_CASE("sum of |beta| is bounded uniformly in N") {
  for (const VariableOrder& vo : {VariableOrder::one_minus_cos(), VariableOrder::t_sin_t()}) {
    double lo = 1e300, hi = 0.0;
    for (int e = 8; e <= 14; ++e) {
      const int n = 1 << e;
      const LagWeights w = lag_weights(1.0 / n, n, vo);
      double sum = 0.0;
      for (double b : w.beta) sum += std::abs(b);
      lo = std::min(lo, sum);
      hi = std::max(hi, sum);
    }
    CHECK(hi < 5.0);            // a uniform constant bound
    CHECK(hi - lo < 0.05 * hi);  // and stable across N
  }
}

TEST_CASE("toeplitz first column") {
  const VariableOrder zero = VariableOrder::zero();
  const VariableOrder omc = VariableOrder::one_minus_cos();

  CHECK(toeplitz_first_column(2, 0.5, omc) == std::vector<double>{1.0});

  const std::vector<double> tz = toeplitz_first_column(8, 1.0 / 8, zero);
  CHECK(tz[0] == 1.0);
  for (std::size_t j = 1; j < tz.size(); ++j) CHECK(tz[j] == 0.0);

  const double tau = std::pow(2.0, -5);
  const std::vector<double> tc = toeplitz_first_column(16, tau, omc);
  CHECK(tc[1] == doctest::Approx(eval_g(tau, omc) - 1.0).epsilon(1e-15));
}

TEST_CASE("assumption checks") {
  const auto grid = dense_grid(0.0, 1.0, 512);
  CHECK(check_assumption_a(VariableOrder::zero(), grid).pass);

  const AssumptionReport omc = check_assumption_a(VariableOrder::one_minus_cos(), grid);
  CHECK(omc.pass);
  CHECK(omc.alpha_max == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-6));

  const VariableOrder bad = VariableOrder::custom(
      [](double t) { return 0.5 + t; }, [](double) { return 1.0; }, [](double) { return 0.0; });
  CHECK_FALSE(bad.hypotheses_hold());
  const AssumptionReport rep = check_assumption_a(bad, grid);
  CHECK_FALSE(rep.pass);
  CHECK(rep.first_violation_t.has_value());
  CHECK_FALSE(rep.reason.empty());
}

TEST_CASE("preset names round-trip") {
  CHECK(VariableOrder::from_name("zero").preset() == AlphaPreset::Zero);
  CHECK(VariableOrder::from_name("one-minus-cos").preset() == AlphaPreset::OneMinusCos);
  CHECK(VariableOrder::from_name("t-sin-t").preset() == AlphaPreset::TSinT);
  CHECK_THROWS_AS(VariableOrder::from_name("bogus"), std::invalid_argument);
}
