#include "fracwave/step_solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fftw_support.hpp"

namespace fracwave {

namespace {

void check_length(const OperatorPair& ops, std::span<const double> x, const char* what) {
  if (x.size() != static_cast<std::size_t>(ops.mesh.M))
    throw std::invalid_argument(std::string(what) + ": field length mismatch");
}

// y = A x for the 1D three-point stencil (diag, off) on one line of n values.
void stencil_line(double diag, double off, const double* x, double* y, int n, int stride) {
  for (int i = 0; i < n; ++i) {
    double v = diag * x[i * stride];
    if (i > 0) v += off * x[(i - 1) * stride];
    if (i + 1 < n) v += off * x[(i + 1) * stride];
    y[i * stride] = v;
  }
}

// 2D: apply the stencil along x (contiguous) or y (strided) for all lines.
void stencil_2d(double diag, double off, const double* x, double* y, int m, bool along_x) {
  if (along_x) {
    for (int iy = 0; iy < m; ++iy) stencil_line(diag, off, x + iy * m, y + iy * m, m, 1);
  } else {
    for (int ix = 0; ix < m; ++ix) stencil_line(diag, off, x + ix, y + ix, m, m);
  }
}

FieldVector apply_operator(const OperatorPair& ops, std::span<const double> x, bool stiffness) {
  const MeshSpec& mesh = ops.mesh;
  const double diag = stiffness ? ops.stiff_diag : ops.mass_diag;
  const double off = stiffness ? ops.stiff_off : ops.mass_off;
  FieldVector y(x.size());
  if (mesh.dim == 1) {
    stencil_line(diag, off, x.data(), y.data(), mesh.m, 1);
    return y;
  }
  const int m = mesh.m;
  std::vector<double> tmp(x.size());
  if (!stiffness) {
    // M1 (x) M1: mass along x, then along y.
    stencil_2d(ops.mass_diag, ops.mass_off, x.data(), tmp.data(), m, true);
    stencil_2d(ops.mass_diag, ops.mass_off, tmp.data(), y.data(), m, false);
    return y;
  }
  // S1 (x) M1 + M1 (x) S1: (mass_x, stiff_y) + (stiff_x, mass_y).
  std::vector<double> tmp2(x.size());
  stencil_2d(ops.mass_diag, ops.mass_off, x.data(), tmp.data(), m, true);
  stencil_2d(ops.stiff_diag, ops.stiff_off, tmp.data(), y.data(), m, false);
  stencil_2d(ops.stiff_diag, ops.stiff_off, x.data(), tmp.data(), m, true);
  stencil_2d(ops.mass_diag, ops.mass_off, tmp.data(), tmp2.data(), m, false);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += tmp2[i];
  return y;
}

}  // namespace

FieldVector apply_mass(const OperatorPair& ops, std::span<const double> x) {
  check_length(ops, x, "apply_mass");
  return apply_operator(ops, x, false);
}

FieldVector apply_stiffness(const OperatorPair& ops, std::span<const double> x) {
  check_length(ops, x, "apply_stiffness");
  return apply_operator(ops, x, true);
}

struct StepSolver::Impl {
  OperatorPair ops;
  double tau = 0.0;

  // 1D Thomas factorization of the constant tridiagonal (diag, off).
  std::vector<double> upper;      // c'_i
  std::vector<double> inv_denom;  // 1 / (diag - off * c'_{i-1})
  double off = 0.0;

  // 2D sine-transform diagonalization.
  std::vector<double> inv_eig;  // 1 / eigenvalue, m*m entries, x fastest
  detail::FftwPlan dst_x, dst_y;
  double dst_scale = 1.0;

  void init_1d() {
    const double diag = ops.mass_diag + tau * tau * ops.stiff_diag;
    off = ops.mass_off + tau * tau * ops.stiff_off;
    const int n = ops.mesh.m;
    upper.resize(static_cast<std::size_t>(n));
    inv_denom.resize(static_cast<std::size_t>(n));
    double denom = diag;
    for (int i = 0; i < n; ++i) {
      if (i > 0) denom = diag - off * upper[static_cast<std::size_t>(i - 1)];
      inv_denom[static_cast<std::size_t>(i)] = 1.0 / denom;
      upper[static_cast<std::size_t>(i)] = off / denom;
    }
  }

  void init_2d() {
    const int m = ops.mesh.m;
    const double h = ops.mesh.h;
    // Eigenvalues of the 1D factors on the sine basis sin(i k pi h).
    std::vector<double> lam_mass(static_cast<std::size_t>(m)), lam_stiff(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k) {
      const double c = std::cos(k * std::numbers::pi * h);
      lam_mass[static_cast<std::size_t>(k - 1)] = ops.mass_diag + 2.0 * ops.mass_off * c;
      lam_stiff[static_cast<std::size_t>(k - 1)] = ops.stiff_diag + 2.0 * ops.stiff_off * c;
    }
    inv_eig.resize(static_cast<std::size_t>(m) * m);
    const double t2 = tau * tau;
    for (int l = 0; l < m; ++l) {
      for (int k = 0; k < m; ++k) {
        const double mk = lam_mass[static_cast<std::size_t>(k)], ml = lam_mass[static_cast<std::size_t>(l)];
        const double sk = lam_stiff[static_cast<std::size_t>(k)], sl = lam_stiff[static_cast<std::size_t>(l)];
        inv_eig[static_cast<std::size_t>(l) * m + k] = 1.0 / (mk * ml + t2 * (sk * ml + mk * sl));
      }
    }
    // RODFT00 applied twice along each axis scales by 2(m+1).
    dst_scale = 1.0 / (4.0 * (m + 1.0) * (m + 1.0));

    detail::FftwBuffer<double> a(static_cast<std::size_t>(m) * m);
    detail::FftwBuffer<double> b(static_cast<std::size_t>(m) * m);
    const fftw_r2r_kind kind = FFTW_RODFT00;
    int n = m;
    dst_x = detail::FftwPlan(fftw_plan_many_r2r(1, &n, m, a.data(), nullptr, 1, m, b.data(),
                                                nullptr, 1, m, &kind, FFTW_ESTIMATE));
    dst_y = detail::FftwPlan(fftw_plan_many_r2r(1, &n, m, a.data(), nullptr, m, 1, b.data(),
                                                nullptr, m, 1, &kind, FFTW_ESTIMATE));
    if (!dst_x || !dst_y) throw std::runtime_error("StepSolver: DST plan creation failed");
  }

  void solve_1d(std::span<const double> b, std::span<double> x) const {
    const int n = ops.mesh.m;
    x[0] = b[0] * inv_denom[0];
    for (int i = 1; i < n; ++i)
      x[static_cast<std::size_t>(i)] =
          (b[static_cast<std::size_t>(i)] - off * x[static_cast<std::size_t>(i - 1)]) *
          inv_denom[static_cast<std::size_t>(i)];
    for (int i = n - 2; i >= 0; --i)
      x[static_cast<std::size_t>(i)] -=
          upper[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i + 1)];
  }

  void solve_2d(std::span<const double> b, std::span<double> x) const {
    const std::size_t n = static_cast<std::size_t>(ops.mesh.M);
    detail::FftwBuffer<double> u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = b[i];
    fftw_execute_r2r(dst_x.get(), u.data(), v.data());
    fftw_execute_r2r(dst_y.get(), v.data(), u.data());
    for (std::size_t i = 0; i < n; ++i) u[i] *= inv_eig[i];
    fftw_execute_r2r(dst_x.get(), u.data(), v.data());
    fftw_execute_r2r(dst_y.get(), v.data(), u.data());
    for (std::size_t i = 0; i < n; ++i) x[i] = u[i] * dst_scale;
  }
};

StepSolver::StepSolver(const OperatorPair& ops, double tau) : impl_(std::make_unique<Impl>()) {
  if (tau < 0.0) throw std::invalid_argument("StepSolver: tau must be >= 0");
  impl_->ops = ops;
  impl_->tau = tau;
  if (ops.mesh.dim == 1)
    impl_->init_1d();
  else
    impl_->init_2d();
}

StepSolver::~StepSolver() = default;
StepSolver::StepSolver(StepSolver&&) noexcept = default;
StepSolver& StepSolver::operator=(StepSolver&&) noexcept = default;

void StepSolver::solve(std::span<const double> b, std::span<double> x) const {
  check_length(impl_->ops, b, "StepSolver::solve");
  if (x.size() != b.size()) throw std::invalid_argument("StepSolver::solve: output length mismatch");
  if (impl_->ops.mesh.dim == 1)
    impl_->solve_1d(b, x);
  else
    impl_->solve_2d(b, x);
}

FieldVector StepSolver::solve(const FieldVector& b) const {
  FieldVector x(b.size());
  solve(b, x);
  return x;
}

const OperatorPair& StepSolver::ops() const { return impl_->ops; }
double StepSolver::tau() const { return impl_->tau; }

StepSolver build_step_solver(const OperatorPair& ops, double tau) { return StepSolver(ops, tau); }

FieldVector solve_cg(const OperatorPair& ops, double tau, const FieldVector& b) {
  check_length(ops, b, "solve_cg");
  const double t2 = tau * tau;
  auto apply = [&](const FieldVector& v) {
    FieldVector y = apply_mass(ops, v);
    const FieldVector s = apply_stiffness(ops, v);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += t2 * s[i];
    return y;
  };
  const std::size_t n = b.size();
  FieldVector x(n, 0.0), r = b, p = b;
  double rr = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rr += r[i] * r[i];
    bb += b[i] * b[i];
  }
  if (bb == 0.0) return x;
  const double tol2 = 1e-24 * bb;
  const int max_iter = 10 * static_cast<int>(n) + 100;
  for (int it = 0; it < max_iter && rr > tol2; ++it) {
    const FieldVector Ap = apply(p);
    double pAp = 0.0;
    for (std::size_t i = 0; i < n; ++i) pAp += p[i] * Ap[i];
    const double alpha = rr / pAp;
    double rr_next = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
      rr_next += r[i] * r[i];
    }
    const double beta = rr_next / rr;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    rr = rr_next;
  }
  return x;
}

}  // namespace fracwave
