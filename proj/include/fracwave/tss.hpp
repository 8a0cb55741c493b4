#pragma once

#include <utility>
#include <vector>

#include "fracwave/fem.hpp"
#include "fracwave/step_solver.hpp"
#include "fracwave/variable_order.hpp"

namespace fracwave {

/// Everything needed to march the wave scheme on one configuration.
struct ProblemSetup {
  MeshSpec mesh;
  VariableOrder vo = VariableOrder::zero();
  double T = 1.0;
  int N = 2;
  SpaceFn u0;       // initial displacement
  SpaceFn hat_u0;   // initial velocity
  SpaceTimeFn f;    // source

  /// Optional cache of assembled load vectors F^n; when set it is used in
  /// place of load_vector(f, n tau, mesh). Benchmarks pre-assemble loads so
  /// the timed region contains only the march.
  std::function<FieldVector(int)> loads;

  double tau() const { return T / N; }
  FieldVector load(int n) const;
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Nodal solution frames U^0..U^N.
struct Trajectory {
  std::vector<FieldVector> frames;

  int steps() const { return static_cast<int>(frames.size()) - 1; }
  const FieldVector& final_frame() const { return frames.back(); }
};

struct TssOptions {
  bool drop_history = false;  // omit the convolution sum (testing hook)
};

/// U^0 = nodal interpolant of u0; U^1 = U^0 + tau * M^{-1} load(hat_u0)
/// (forward Euler start).
std::pair<FieldVector, FieldVector> initial_frames(const ProblemSetup& setup,
                                                   const OperatorPair& ops);

/// Classical time-stepping scheme: for n = 2..N solve
///   (M + tau^2 S) U^n = 2 M U^{n-1} - M U^{n-2}
///                       - tau^2 sum_{k=0}^{n-1} beta[n-k] S U^k + tau^2 F^n.
/// The history sum is evaluated directly each step: O(M N^2) total.
Trajectory run_tss(const ProblemSetup& setup, const TssOptions& options = {});

/// Maximum relative distance between two trajectories: the largest
/// entry-wise difference over all frames divided by the largest magnitude
/// attained by the first trajectory.
double max_rel_diff(const Trajectory& a, const Trajectory& b);

}  // namespace fracwave
