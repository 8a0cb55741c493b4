#pragma once

#include <memory>
#include <span>
#include <vector>

namespace fracwave {

/// A (possibly rectangular) Toeplitz matrix given by its first column and
/// first row; first_row[0] must equal first_col[0].
struct ToeplitzSpec {
  std::vector<double> first_col;
  std::vector<double> first_row;

  int rows() const { return static_cast<int>(first_col.size()); }
  int cols() const { return static_cast<int>(first_row.size()); }
  double entry(int r, int c) const {
    return r >= c ? first_col[static_cast<std::size_t>(r - c)]
                  : first_row[static_cast<std::size_t>(c - r)];
  }
  void validate() const;
};

/// Off-diagonal block of a lower-triangular Toeplitz parent with first
/// column tc: rows [lo, hi) against columns [0, lo), in block-local indices.
/// Entry (r, c) = tc[lo + r - c]. Throws on out-of-range bounds.
ToeplitzSpec build_L_block(std::span<const double> tc, int lo, int hi);

/// Applies a Toeplitz matrix to many vectors at once via circulant embedding:
/// the symbol is padded to the next power of two >= rows + cols - 1 and
/// transformed once; each input row is transformed, multiplied, and
/// transformed back. Row i of the output is T * (row i of X), i.e. the result
/// block is X * T^T.
class ToeplitzOperator {
public:
  /// batch_hint: expected number of rows per apply; transforms are planned
  /// for min(batch_hint, memory cap) rows at a time. 0 means cap only.
  explicit ToeplitzOperator(ToeplitzSpec spec, int batch_hint = 0);
  ~ToeplitzOperator();
  ToeplitzOperator(ToeplitzOperator&&) noexcept;
  ToeplitzOperator& operator=(ToeplitzOperator&&) noexcept;
  ToeplitzOperator(const ToeplitzOperator&) = delete;
  ToeplitzOperator& operator=(const ToeplitzOperator&) = delete;

  int rows() const;
  int cols() const;

  /// X: n_rows x cols() row-major; Y: n_rows x rows() row-major.
  /// Reentrant (scratch is per invocation).
  void apply_rows(std::span<const double> X, int n_rows, std::span<double> Y) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot convenience: returns X * T^T for an n_rows x spec.cols() block.
std::vector<double> toeplitz_matvec(const ToeplitzSpec& spec, std::span<const double> X,
                                    int n_rows);

}  // namespace fracwave
