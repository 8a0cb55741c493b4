#include "fracwave/tss.hpp"

#include <cmath>
#include <stdexcept>

namespace fracwave {

FieldVector ProblemSetup::load(int n) const {
  return loads ? loads(n) : load_vector(f, n * tau(), mesh);
}

void ProblemSetup::validate() const {
  if (N < 2) throw std::invalid_argument("setup: N must be >= 2");
  if (!(T > 0.0)) throw std::invalid_argument("setup: T must be > 0");
  if (!u0 || !hat_u0 || !f)
    throw std::invalid_argument("setup: u0, hat_u0, and f must all be callable");
  if (!vo.hypotheses_hold())
    throw std::invalid_argument("setup: vo violates the order hypotheses on [0, horizon]");
  if (vo.horizon() < T)
    throw std::invalid_argument("setup: vo horizon shorter than final time T");
}

std::pair<FieldVector, FieldVector> initial_frames(const ProblemSetup& setup,
                                                   const OperatorPair& ops) {
  FieldVector u_first = interpolate(setup.u0, setup.mesh);
  const FieldVector hat_load = load_vector(
      [&setup](double x, double y, double) { return setup.hat_u0(x, y); }, 0.0, setup.mesh);
  const StepSolver mass_solver(ops, 0.0);
  FieldVector u_second = u_first;
  const FieldVector velocity = mass_solver.solve(hat_load);
  const double tau = setup.tau();
  for (std::size_t i = 0; i < u_second.size(); ++i) u_second[i] += tau * velocity[i];
  return {std::move(u_first), std::move(u_second)};
}

Trajectory run_tss(const ProblemSetup& setup, const TssOptions& options) {
  setup.validate();
  const OperatorPair ops = assemble_operators(setup.mesh);
  const double tau = setup.tau();
  const double tau2 = tau * tau;
  const StepSolver solver(ops, tau);
  const LagWeights lag = lag_weights(tau, setup.N, setup.vo);

  Trajectory traj;
  traj.frames.resize(static_cast<std::size_t>(setup.N) + 1);
  auto [u0, u1] = initial_frames(setup, ops);
  traj.frames[0] = std::move(u0);
  traj.frames[1] = std::move(u1);

  const std::size_t M = static_cast<std::size_t>(setup.mesh.M);
  FieldVector rhs(M);
  for (int n = 2; n <= setup.N; ++n) {
    const FieldVector mu1 = apply_mass(ops, traj.frames[static_cast<std::size_t>(n - 1)]);
    const FieldVector mu2 = apply_mass(ops, traj.frames[static_cast<std::size_t>(n - 2)]);
    const FieldVector fn = setup.load(n);
    for (std::size_t i = 0; i < M; ++i) rhs[i] = 2.0 * mu1[i] - mu2[i] + tau2 * fn[i];
    if (!options.drop_history) {
      for (int k = 0; k <= n - 1; ++k) {
        const double w = lag.at_lag(n - k);
        if (w == 0.0) continue;
        const FieldVector su = apply_stiffness(ops, traj.frames[static_cast<std::size_t>(k)]);
        for (std::size_t i = 0; i < M; ++i) rhs[i] -= tau2 * w * su[i];
      }
    }
    traj.frames[static_cast<std::size_t>(n)] = solver.solve(rhs);
  }
  return traj;
}

double max_rel_diff(const Trajectory& a, const Trajectory& b) {
  if (a.frames.size() != b.frames.size())
    throw std::invalid_argument("max_rel_diff: trajectories have different lengths");
  double max_diff = 0.0;
  double max_mag = 0.0;
  for (std::size_t n = 0; n < a.frames.size(); ++n) {
    const FieldVector& fa = a.frames[n];
    const FieldVector& fb = b.frames[n];
    if (fa.size() != fb.size())
      throw std::invalid_argument("max_rel_diff: frame length mismatch");
    for (std::size_t i = 0; i < fa.size(); ++i) {
      max_diff = std::max(max_diff, std::abs(fa[i] - fb[i]));
      max_mag = std::max(max_mag, std::abs(fa[i]));
    }
  }
  if (max_mag == 0.0) return max_diff == 0.0 ? 0.0 : INFINITY;
  return max_diff / max_mag;
}

}  // namespace fracwave
