#pragma once

// Test-side oracles, kept independent of the library's computation paths:
// adaptive quadrature, dense linear algebra, and dense assembly helpers.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracles {

// Adaptive Simpson with absolute tolerance; plenty for the smooth integrands
// exercised here.
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Dense row-major matrix with partial-pivoting LU solve.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t size) : n(size), a(size * size, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return a[r * n + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * n + c]; }

  std::vector<double> apply(const std::vector<double>& x) const {
    std::vector<double> y(n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) y[r] += at(r, c) * x[c];
    return y;
  }

  std::vector<double> solve(std::vector<double> b) const {
    DenseMatrix lu = *this;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      for (std::size_t r = col + 1; r < n; ++r)
        if (std::abs(lu.at(r, col)) > std::abs(lu.at(pivot, col))) pivot = r;
      if (lu.at(pivot, col) == 0.0) throw std::runtime_error("singular matrix");
      if (pivot != col) {
        for (std::size_t c = 0; c < n; ++c) std::swap(lu.at(pivot, c), lu.at(col, c));
        std::swap(b[pivot], b[col]);
      }
      for (std::size_t r = col + 1; r < n; ++r) {
        const double factor = lu.at(r, col) / lu.at(col, col);
        lu.at(r, col) = 0.0;
        for (std::size_t c = col + 1; c < n; ++c) lu.at(r, c) -= factor * lu.at(col, c);
        b[r] -= factor * b[col];
      }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t ri = n; ri-- > 0;) {
      double acc = b[ri];
      for (std::size_t c = ri + 1; c < n; ++c) acc -= lu.at(ri, c) * x[c];
      x[ri] = acc / lu.at(ri, ri);
    }
    return x;
  }
};

inline std::vector<double> random_vector(std::mt19937& rng, std::size_t n, double lo = -1.0,
                                         double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

}  // namespace oracles
