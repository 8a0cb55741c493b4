#pragma once

#include <span>
#include <vector>

#include "fracwave/toeplitz.hpp"
#include "fracwave/tss.hpp"

namespace fracwave {

/// Right-hand side of the all-at-once system
///   (E (x) M + tau^2 T (x) S) U = tau^2 F
/// over the unknowns U^2..U^N. The blocks already fold in the source, the
/// known initial frames, and their history terms.
struct AllAtOnceRhs {
  std::vector<FieldVector> blocks;  // N-1 entries, for U^2..U^N

  int count() const { return static_cast<int>(blocks.size()); }
};

/// A contiguous range of time-block indices together with the shared pieces
/// every recursion level needs. Sub-ranges see the same E/T structure as the
/// parent because both are translation invariant.
struct BlockSystemView {
  int lo = 0;                       // first block index (0 = unknown U^2)
  int hi = 0;                       // one past the last block index
  std::span<const double> tc;       // Toeplitz first column, length >= hi
  const StepSolver* solver = nullptr;
  const OperatorPair* ops = nullptr;
  double tau = 0.0;
  int base_threshold = 4;           // forward-substitute at or below this size

  int size() const { return hi - lo; }
  void validate() const;
};

struct FdacOptions {
  int base_threshold = 4;
};

AllAtOnceRhs assemble_rhs(const ProblemSetup& setup, const OperatorPair& ops,
                          const FieldVector& u_first, const FieldVector& u_second);

/// Solves the block lower-triangular all-at-once system restricted to the
/// view's range by recursive halving: solve the first half, subtract the
/// (H (x) M + tau^2 L (x) S) coupling from the second half's right-hand side
/// (L applied with the FFT Toeplitz matvec), then recurse. The rhs is left
/// untouched; work happens on an internal copy.
std::vector<FieldVector> fdac_solve(const BlockSystemView& view, const AllAtOnceRhs& rhs);

/// Full fast solve: initial frames, all-at-once assembly, divide-and-conquer
/// solve; O(M N log^2 N).
Trajectory run_fdac(const ProblemSetup& setup, const FdacOptions& options = {});

}  // namespace fracwave
