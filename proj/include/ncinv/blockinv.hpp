#pragma once

// Recursive inversion of 2^n x 2^n matrices viewed as 2x2 matrices over the
// ring of 2^(n-1) x 2^(n-1) blocks.
//
// Each level writes the quasideterminant entries through one diagonal pivot.
// Pivoting on A:
//
//   X22 = (D - C A^-1 B)^-1        X12 = -A^-1 B X22
//   X21 = -X22 C A^-1              X11 = A^-1 - X12 C A^-1
//
// and symmetrically on D with X11 = (A - B D^-1 C)^-1. These equal the
// Gel'fand entries wherever those exist, but only need one diagonal block and
// its quasideterminant to be invertible. A route that gets through without
// nested swaps is preferred. When neither pivot works the block rows are
// swapped once, so the off-diagonal blocks become the pivots, and the swap is
// recorded in the pivot trace.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ncinv/algebra.hpp"

namespace ncinv {

// Row-major n x n matrix of ring elements sharing one ring.
struct FlatMatrix {
  std::size_t n = 0;
  std::vector<RingElement> entries;

  const RingElement& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

  static FlatMatrix identity(const RingContext& ring, std::size_t n);
  friend bool operator==(const FlatMatrix& lhs, const FlatMatrix& rhs);
};

FlatMatrix operator*(const FlatMatrix& x, const FlatMatrix& y);

class BlockMatrix {
 public:
  explicit BlockMatrix(RingElement leaf);
  // Quadrants in row-major order [[A, B], [C, D]]; all must share depth and ring.
  BlockMatrix(BlockMatrix a, BlockMatrix b, BlockMatrix c, BlockMatrix d);

  static BlockMatrix identity(const RingContext& ring, int depth);
  static BlockMatrix zero(const RingContext& ring, int depth);

  int depth() const { return depth_; }
  std::size_t size() const { return std::size_t{1} << depth_; }
  bool is_leaf() const { return depth_ == 0; }
  const RingElement& leaf() const { return std::get<RingElement>(payload_); }
  // 0 = A, 1 = B, 2 = C, 3 = D.
  const BlockMatrix& quadrant(int q) const { return std::get<std::vector<BlockMatrix>>(payload_)[q]; }
  RingContext context() const;

  friend bool operator==(const BlockMatrix& lhs, const BlockMatrix& rhs);

 private:
  int depth_ = 0;
  std::variant<std::vector<BlockMatrix>, RingElement> payload_;
};

BlockMatrix operator+(const BlockMatrix& x, const BlockMatrix& y);
BlockMatrix operator-(const BlockMatrix& x, const BlockMatrix& y);
BlockMatrix operator-(const BlockMatrix& x);
BlockMatrix operator*(const BlockMatrix& x, const BlockMatrix& y);

struct PivotStep {
  int depth;
  std::string swap;  // "rows"
  friend bool operator==(const PivotStep&, const PivotStep&) = default;
};

using PivotTrace = std::vector<PivotStep>;

struct BlockInverse {
  BlockMatrix inverse;
  PivotTrace trace;
};

// Throws Error(BadDimension) unless M is 2^n x 2^n.
BlockMatrix block_from_flat(const FlatMatrix& M);
FlatMatrix block_to_flat(const BlockMatrix& M);

// Throws BlockSingular (depth and quadrant path of the failure) when no
// swap variant at some level yields invertible pivots.
BlockInverse block_inverse(const BlockMatrix& A);

}  // namespace ncinv
