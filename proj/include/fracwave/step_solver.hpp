#pragma once

#include <memory>
#include <span>

#include "fracwave/fem.hpp"

namespace fracwave {

/// Exact O(M) matvecs by the mass or stiffness operator using the 1D
/// stencils / Kronecker factors. Throws on length mismatch.
FieldVector apply_mass(const OperatorPair& ops, std::span<const double> x);
FieldVector apply_stiffness(const OperatorPair& ops, std::span<const double> x);

/// Direct solver for (M + tau^2 S) x = b, factored once per configuration.
/// tau = 0 yields a pure mass solver.
///
/// 1D: Thomas factorization of the tridiagonal matrix. 2D: the 1D factors are
/// symmetric tridiagonal Toeplitz and share the discrete sine eigenbasis, so
/// the solve is two DST-I passes around a diagonal division, O(M log M).
/// Solves are reentrant; concurrent calls on distinct right-hand sides are
/// safe.
class StepSolver {
public:
  StepSolver(const OperatorPair& ops, double tau);
  ~StepSolver();
  StepSolver(StepSolver&&) noexcept;
  StepSolver& operator=(StepSolver&&) noexcept;
  StepSolver(const StepSolver&) = delete;
  StepSolver& operator=(const StepSolver&) = delete;

  void solve(std::span<const double> b, std::span<double> x) const;
  FieldVector solve(const FieldVector& b) const;

  const OperatorPair& ops() const;
  double tau() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

StepSolver build_step_solver(const OperatorPair& ops, double tau);

/// Conjugate-gradient fallback on the same operator (relative residual
/// 1e-12), for configurations without tensor structure.
FieldVector solve_cg(const OperatorPair& ops, double tau, const FieldVector& b);

}  // namespace fracwave
