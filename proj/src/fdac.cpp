#include "fracwave/fdac.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace fracwave {

void BlockSystemView::validate() const {
  if (lo < 0 || hi <= lo) throw std::invalid_argument("view: require 0 <= lo < hi");
  if (static_cast<std::size_t>(hi) > tc.size())
    throw std::invalid_argument("view: range exceeds the Toeplitz column");
  if (!solver || !ops) throw std::invalid_argument("view: solver and ops are required");
  if (!(tau > 0.0)) throw std::invalid_argument("view: tau must be > 0");
  if (base_threshold < 1) throw std::invalid_argument("view: base_threshold must be >= 1");
}

AllAtOnceRhs assemble_rhs(const ProblemSetup& setup, const OperatorPair& ops,
                          const FieldVector& u_first, const FieldVector& u_second) {
  const double tau = setup.tau();
  const double tau2 = tau * tau;
  const std::size_t M = static_cast<std::size_t>(setup.mesh.M);
  const LagWeights lag = lag_weights(tau, setup.N, setup.vo);
  const FieldVector su0 = apply_stiffness(ops, u_first);
  const FieldVector su1 = apply_stiffness(ops, u_second);
  const FieldVector mu0 = apply_mass(ops, u_first);
  const FieldVector mu1 = apply_mass(ops, u_second);

  AllAtOnceRhs rhs;
  rhs.blocks.resize(static_cast<std::size_t>(setup.N - 1));
  for (int n = 2; n <= setup.N; ++n) {
    FieldVector block = setup.load(n);
    // History contributions of the known frames k = 0, 1.
    const double w0 = lag.at_lag(n);
    const double w1 = lag.at_lag(n - 1);
    for (std::size_t i = 0; i < M; ++i)
      block[i] = tau2 * (block[i] - w0 * su0[i] - w1 * su1[i]);
    // Second-difference terms that reference the known frames.
    if (n == 2) {
      for (std::size_t i = 0; i < M; ++i) block[i] += 2.0 * mu1[i] - mu0[i];
    } else if (n == 3) {
      for (std::size_t i = 0; i < M; ++i) block[i] -= mu1[i];
    }
    rhs.blocks[static_cast<std::size_t>(n - 2)] = std::move(block);
  }
  return rhs;
}

namespace {

/// Recursive solver state shared across levels: the working right-hand side,
/// the solution blocks, and a cache of Toeplitz operators. L blocks from
/// same-size splits coincide regardless of where the range sits, so the cache
/// is keyed by the split geometry only.
class FdacEngine {
public:
  FdacEngine(const BlockSystemView& view, std::vector<FieldVector> work)
      : view_(view), work_(std::move(work)), sol_(work_.size()) {}

  std::vector<FieldVector> run() {
    solve_range(0, static_cast<int>(work_.size()));
    return std::move(sol_);
  }

private:
  void solve_range(int lo, int hi) {
    const int size = hi - lo;
    if (size <= view_.base_threshold) {
      forward_substitute(lo, hi);
      return;
    }
    const int mid = size / 2;
    solve_range(lo, lo + mid);
    apply_h_correction(lo, mid, size);
    apply_l_correction(lo, mid, size);
    solve_range(lo + mid, hi);
  }

  // Plain block forward substitution within [lo, hi); couplings to blocks
  // before lo were already folded in by the parent corrections.
  void forward_substitute(int lo, int hi) {
    const std::size_t M = work_.empty() ? 0 : work_[0].size();
    const double tau2 = view_.tau * view_.tau;
    for (int j = lo; j < hi; ++j) {
      FieldVector& b = work_[static_cast<std::size_t>(j)];
      if (j - 1 >= lo) {
        const FieldVector mu = apply_mass(*view_.ops, sol_[static_cast<std::size_t>(j - 1)]);
        for (std::size_t i = 0; i < M; ++i) b[i] += 2.0 * mu[i];
      }
      if (j - 2 >= lo) {
        const FieldVector mu = apply_mass(*view_.ops, sol_[static_cast<std::size_t>(j - 2)]);
        for (std::size_t i = 0; i < M; ++i) b[i] -= mu[i];
      }
      for (int c = lo; c < j; ++c) {
        const double w = view_.tc[static_cast<std::size_t>(j - c)];
        if (w == 0.0) continue;
        const FieldVector su = apply_stiffness(*view_.ops, sol_[static_cast<std::size_t>(c)]);
        for (std::size_t i = 0; i < M; ++i) b[i] -= tau2 * w * su[i];
      }
      sol_[static_cast<std::size_t>(j)] = view_.solver->solve(b);
    }
  }

  // Subtract (H (x) M) U_1. H couples the first two rows of the second half
  // to the last two columns of the first half with the stencil [[1,-2],[0,1]].
  void apply_h_correction(int lo, int mid, int size) {
    const std::size_t M = work_[0].size();
    const FieldVector mu_last = apply_mass(*view_.ops, sol_[static_cast<std::size_t>(lo + mid - 1)]);
    FieldVector& row0 = work_[static_cast<std::size_t>(lo + mid)];
    for (std::size_t i = 0; i < M; ++i) row0[i] += 2.0 * mu_last[i];
    if (mid >= 2) {
      const FieldVector mu_prev = apply_mass(*view_.ops, sol_[static_cast<std::size_t>(lo + mid - 2)]);
      for (std::size_t i = 0; i < M; ++i) row0[i] -= mu_prev[i];
    }
    if (size - mid >= 2) {
      FieldVector& row1 = work_[static_cast<std::size_t>(lo + mid + 1)];
      for (std::size_t i = 0; i < M; ++i) row1[i] -= mu_last[i];
    }
  }

  // Subtract tau^2 (L (x) S) U_1 computed as vec(S (L X^T)^T): one batched
  // FFT Toeplitz product across the spatial rows, then a stiffness matvec per
  // time block.
  void apply_l_correction(int lo, int mid, int size) {
    const int rows = size - mid;
    const int cols = mid;
    const std::size_t M = work_[0].size();
    const double tau2 = view_.tau * view_.tau;
    const ToeplitzOperator& op = cached_operator(mid, rows, cols);

    std::vector<double> X(static_cast<std::size_t>(M) * cols);
    for (int c = 0; c < cols; ++c) {
      const FieldVector& u = sol_[static_cast<std::size_t>(lo + c)];
      for (std::size_t i = 0; i < M; ++i) X[i * static_cast<std::size_t>(cols) + c] = u[i];
    }
    std::vector<double> Y(static_cast<std::size_t>(M) * rows);
    op.apply_rows(X, static_cast<int>(M), Y);

    FieldVector column(M);
    for (int r = 0; r < rows; ++r) {
      for (std::size_t i = 0; i < M; ++i) column[i] = Y[i * static_cast<std::size_t>(rows) + r];
      const FieldVector su = apply_stiffness(*view_.ops, column);
      FieldVector& b = work_[static_cast<std::size_t>(lo + mid + r)];
      for (std::size_t i = 0; i < M; ++i) b[i] -= tau2 * su[i];
    }
  }

  // Lags are range-independent: entry (lo + r, lo + c) of the parent equals
  // tc[r - c], so every same-geometry split shares one operator.
  const ToeplitzOperator& cached_operator(int mid, int rows, int cols) {
    const auto key = std::make_pair(mid, std::make_pair(rows, cols));
    auto it = toeplitz_cache_.find(key);
    if (it == toeplitz_cache_.end()) {
      ToeplitzSpec spec = build_L_block(view_.tc, mid, mid + rows);
      const int batch_hint = view_.ops->mesh.M;
      it = toeplitz_cache_.emplace(key, ToeplitzOperator(std::move(spec), batch_hint)).first;
    }
    return it->second;
  }

  BlockSystemView view_;
  std::vector<FieldVector> work_;
  std::vector<FieldVector> sol_;
  std::map<std::pair<int, std::pair<int, int>>, ToeplitzOperator> toeplitz_cache_;
};

}  // namespace

std::vector<FieldVector> fdac_solve(const BlockSystemView& view, const AllAtOnceRhs& rhs) {
  view.validate();
  if (rhs.count() != view.size())
    throw std::invalid_argument("fdac_solve: rhs block count does not match the view range");
  const std::size_t M = static_cast<std::size_t>(view.ops->mesh.M);
  for (const FieldVector& b : rhs.blocks)
    if (b.size() != M) throw std::invalid_argument("fdac_solve: rhs block length mismatch");

  std::vector<FieldVector> work = rhs.blocks;
  FdacEngine engine(view, std::move(work));
  return engine.run();
}

Trajectory run_fdac(const ProblemSetup& setup, const FdacOptions& options) {
  setup.validate();
  const OperatorPair ops = assemble_operators(setup.mesh);
  const double tau = setup.tau();
  const StepSolver solver(ops, tau);
  const std::vector<double> tc = toeplitz_first_column(setup.N, tau, setup.vo);

  Trajectory traj;
  traj.frames.resize(static_cast<std::size_t>(setup.N) + 1);
  auto [u_first, u_second] = initial_frames(setup, ops);
  const AllAtOnceRhs rhs = assemble_rhs(setup, ops, u_first, u_second);
  traj.frames[0] = std::move(u_first);
  traj.frames[1] = std::move(u_second);

  BlockSystemView view;
  view.lo = 0;
  view.hi = setup.N - 1;
  view.tc = tc;
  view.solver = &solver;
  view.ops = &ops;
  view.tau = tau;
  view.base_threshold = options.base_threshold;

  std::vector<FieldVector> sol = fdac_solve(view, rhs);
  for (int j = 0; j < view.size(); ++j)
    traj.frames[static_cast<std::size_t>(j + 2)] = std::move(sol[static_cast<std::size_t>(j)]);
  return traj;
}

}  // namespace fracwave
