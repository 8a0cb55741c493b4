#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fracwave/fem.hpp"
#include "fracwave/tss.hpp"

namespace fracwave {

/// integral_0^t k(s) (t - s)^3 ds by composite Simpson with the given
/// (even) panel count.
double conv_poly3(double t, const VariableOrder& vo, int panels);

/// Memoizing wrapper around conv_poly3 for sources that are evaluated at many
/// spatial quadrature points sharing the same time. Thread-safe.
class ConvCache {
public:
  ConvCache(VariableOrder vo, int panels);
  ~ConvCache();
  double operator()(double t) const;

private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

enum class ExampleId { Ex1, Ex2, Ex3 };

/// A benchmark problem: initial data, source, order function, and (when the
/// solution is manufactured) the exact solution.
struct ManufacturedCase {
  ExampleId id = ExampleId::Ex1;
  int dim = 1;
  double K = 0.01;
  double T = 1.0;
  VariableOrder vo = VariableOrder::zero();
  SpaceFn u0, hat_u0;
  SpaceTimeFn f;
  SpaceTimeFn exact;  // null for Ex3

  bool has_exact() const { return static_cast<bool>(exact); }
  ProblemSetup setup(int cells, int steps) const;
};

/// The spec'd benchmark problems. The manufactured sources are built from the
/// case's order function, so an override keeps the same exact solution.
ManufacturedCase make_example(ExampleId id, double K = 0.01, double T = 1.0,
                              int conv_panels = 1024,
                              std::optional<VariableOrder> vo_override = {});
ExampleId example_from_name(const std::string& name);  // "ex1", "ex2", "ex3"

/// High-accuracy solution of the scalar mode equation
///   v'' + lambda^2 v = q(t) - lambda^2 (k * v),  v(0) = v0, v'(0) = hat_v0
/// on steps+1 uniform grid points over [0, T]: RK4 on (v, v') with the
/// convolution evaluated by the product trapezoidal rule (k(0) = 0 makes the
/// new endpoint weight vanish, so each step's convolution forcing is known up
/// front and interpolated linearly across the step).
std::vector<double> spectral_mode_solve(double lambda, const std::function<double(double)>& q,
                                        double v0, double hat_v0, const VariableOrder& vo,
                                        int steps, double T = 1.0);

struct RateRow {
  int level_exp = 0;   // resolution parameter: N = 2^exp or 1/h = 2^exp
  double error = 0.0;
  std::optional<double> rate;  // log2(previous/current); empty on first row
};

struct RateTable {
  std::vector<RateRow> rows;
};

enum class VaryAxis { Temporal, Spatial };
enum class Method { Tss, Fdac };

Method method_from_name(const std::string& name);  // "tss" | "fdac"

struct ConvergeSpec {
  Method method = Method::Fdac;
  VaryAxis vary = VaryAxis::Temporal;
  std::vector<int> level_exps;  // varied resolution exponents, ascending
  int fixed_exp = 7;            // the held-fixed resolution exponent
  GridWeight ex3_weight = GridWeight::PerDim;  // norm convention for Ex3
};

/// Runs the chosen method per level and fills errors and observed rates.
/// Ex1/Ex2 measure the L2 error at t = T against the exact solution; Ex3
/// measures self-convergence: each level is compared against the run with
/// twice the varied resolution (same time grid at t = T; node-matched by
/// index doubling for spatial refinement).
RateTable converge_table(const ManufacturedCase& mcase, const ConvergeSpec& spec);

}  // namespace fracwave
