#include "fracwave/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "fftw_support.hpp"

namespace fracwave {

namespace {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Rows are transformed in bounded batches so scratch stays modest even for
// very wide spatial blocks.
constexpr std::size_t kMaxBatchDoubles = 1u << 22;

}  // namespace

void ToeplitzSpec::validate() const {
  if (first_col.empty() || first_row.empty())
    throw std::invalid_argument("ToeplitzSpec: first row/column must be nonempty");
  if (first_col[0] != first_row[0])
    throw std::invalid_argument("ToeplitzSpec: corner entry mismatch between row and column");
}

ToeplitzSpec build_L_block(std::span<const double> tc, int lo, int hi) {
  const int n = static_cast<int>(tc.size());
  if (lo < 1 || hi <= lo || hi > n)
    throw std::invalid_argument("build_L_block: bounds outside the parent Toeplitz matrix");
  ToeplitzSpec spec;
  spec.first_col.resize(static_cast<std::size_t>(hi - lo));
  for (int r = 0; r < hi - lo; ++r) spec.first_col[static_cast<std::size_t>(r)] = tc[static_cast<std::size_t>(lo + r)];
  spec.first_row.resize(static_cast<std::size_t>(lo));
  for (int c = 0; c < lo; ++c) spec.first_row[static_cast<std::size_t>(c)] = tc[static_cast<std::size_t>(lo - c)];
  return spec;
}

struct ToeplitzOperator::Impl {
  int rows = 0;
  int cols = 0;
  std::size_t padded = 0;
  std::size_t spectrum = 0;  // padded/2 + 1
  std::size_t batch = 0;     // rows transformed per pass
  detail::FftwBuffer<fftw_complex> symbol_fft;
  detail::FftwPlan fwd, bwd;

  void build(const ToeplitzSpec& spec, int batch_hint) {
    spec.validate();
    rows = spec.rows();
    cols = spec.cols();
    padded = next_pow2(static_cast<std::size_t>(rows) + cols - 1);
    spectrum = padded / 2 + 1;
    batch = std::max<std::size_t>(1, kMaxBatchDoubles / padded);
    if (batch_hint > 0) batch = std::min(batch, static_cast<std::size_t>(batch_hint));

    // Circulant first column: T entries on lags 0..rows-1, the row entries
    // wrapped to the tail so that circ[(i - j) mod padded] = T(i, j).
    detail::FftwBuffer<double> circ(padded);
    for (int i = 0; i < rows; ++i) circ[static_cast<std::size_t>(i)] = spec.first_col[static_cast<std::size_t>(i)];
    for (int d = 1; d < cols; ++d) circ[padded - static_cast<std::size_t>(d)] = spec.first_row[static_cast<std::size_t>(d)];

    symbol_fft = detail::FftwBuffer<fftw_complex>(spectrum);
    detail::FftwPlan symbol_plan(fftw_plan_dft_r2c_1d(static_cast<int>(padded), circ.data(),
                                                      symbol_fft.data(), FFTW_ESTIMATE));
    if (!symbol_plan) throw std::runtime_error("ToeplitzOperator: plan creation failed");
    fftw_execute(symbol_plan.get());

    detail::FftwBuffer<double> re(batch * padded);
    detail::FftwBuffer<fftw_complex> cp(batch * spectrum);
    const int n = static_cast<int>(padded);
    fwd = detail::FftwPlan(fftw_plan_many_dft_r2c(1, &n, static_cast<int>(batch), re.data(),
                                                  nullptr, 1, n, cp.data(), nullptr, 1,
                                                  static_cast<int>(spectrum), FFTW_ESTIMATE));
    bwd = detail::FftwPlan(fftw_plan_many_dft_c2r(1, &n, static_cast<int>(batch), cp.data(),
                                                  nullptr, 1, static_cast<int>(spectrum),
                                                  re.data(), nullptr, 1, n, FFTW_ESTIMATE));
    if (!fwd || !bwd) throw std::runtime_error("ToeplitzOperator: plan creation failed");
  }

  void apply(std::span<const double> X, int n_rows, std::span<double> Y) const {
    detail::FftwBuffer<double> re(batch * padded);
    detail::FftwBuffer<fftw_complex> cp(batch * spectrum);
    const double inv_p = 1.0 / static_cast<double>(padded);
    for (std::size_t base = 0; base < static_cast<std::size_t>(n_rows); base += batch) {
      const std::size_t chunk = std::min(batch, n_rows - base);
      for (std::size_t r = 0; r < chunk; ++r) {
        const double* src = X.data() + (base + r) * static_cast<std::size_t>(cols);
        double* dst = re.data() + r * padded;
        std::copy(src, src + cols, dst);
        std::fill(dst + cols, dst + padded, 0.0);
      }
      // Unused batch rows keep stale data; they are transformed but never read back.
      fftw_execute_dft_r2c(fwd.get(), re.data(), cp.data());
      for (std::size_t r = 0; r < chunk; ++r) {
        fftw_complex* row = cp.data() + r * spectrum;
        for (std::size_t k = 0; k < spectrum; ++k) {
          const double xr = row[k][0], xi = row[k][1];
          const double sr = symbol_fft[k][0], si = symbol_fft[k][1];
          row[k][0] = xr * sr - xi * si;
          row[k][1] = xr * si + xi * sr;
        }
      }
      fftw_execute_dft_c2r(bwd.get(), cp.data(), re.data());
      for (std::size_t r = 0; r < chunk; ++r) {
        const double* src = re.data() + r * padded;
        double* dst = Y.data() + (base + r) * static_cast<std::size_t>(rows);
        for (int i = 0; i < rows; ++i) dst[static_cast<std::size_t>(i)] = src[i] * inv_p;
      }
    }
  }
};

ToeplitzOperator::ToeplitzOperator(ToeplitzSpec spec, int batch_hint)
    : impl_(std::make_unique<Impl>()) {
  impl_->build(spec, batch_hint);
}

ToeplitzOperator::~ToeplitzOperator() = default;
ToeplitzOperator::ToeplitzOperator(ToeplitzOperator&&) noexcept = default;
ToeplitzOperator& ToeplitzOperator::operator=(ToeplitzOperator&&) noexcept = default;

int ToeplitzOperator::rows() const { return impl_->rows; }
int ToeplitzOperator::cols() const { return impl_->cols; }

void ToeplitzOperator::apply_rows(std::span<const double> X, int n_rows,
                                  std::span<double> Y) const {
  if (n_rows < 1) throw std::invalid_argument("ToeplitzOperator: n_rows must be >= 1");
  if (X.size() != static_cast<std::size_t>(n_rows) * impl_->cols)
    throw std::invalid_argument("ToeplitzOperator: input block size mismatch");
  if (Y.size() != static_cast<std::size_t>(n_rows) * impl_->rows)
    throw std::invalid_argument("ToeplitzOperator: output block size mismatch");
  impl_->apply(X, n_rows, Y);
}

std::vector<double> toeplitz_matvec(const ToeplitzSpec& spec, std::span<const double> X,
                                    int n_rows) {
  ToeplitzOperator op(spec, n_rows);
  std::vector<double> Y(static_cast<std::size_t>(n_rows) * spec.rows());
  op.apply_rows(X, n_rows, Y);
  return Y;
}

}  // namespace fracwave
