#include "ncinv/blockinv.hpp"

#include <bit>
#include <optional>

namespace ncinv {

// ---------------------------------------------------------------------------
// FlatMatrix

FlatMatrix FlatMatrix::identity(const RingContext& ring, std::size_t n) {
  FlatMatrix m{n, {}};
  m.entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.entries.push_back(i == j ? ring.one() : ring.zero());
  return m;
}

bool operator==(const FlatMatrix& lhs, const FlatMatrix& rhs) {
  return lhs.n == rhs.n && lhs.entries == rhs.entries;
}

FlatMatrix operator*(const FlatMatrix& x, const FlatMatrix& y) {
  if (x.n != y.n) throw Error(ErrorCode::BadDimension, "matrix sizes differ");
  FlatMatrix r{x.n, {}};
  r.entries.reserve(x.n * x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) {
      RingElement acc = x.at(i, 0) * y.at(0, j);
      for (std::size_t k = 1; k < x.n; ++k) acc = acc + x.at(i, k) * y.at(k, j);
      r.entries.push_back(std::move(acc));
    }
  return r;
}

// ---------------------------------------------------------------------------
// BlockMatrix

BlockMatrix::BlockMatrix(RingElement leaf) : depth_(0), payload_(std::move(leaf)) {}

BlockMatrix::BlockMatrix(BlockMatrix a, BlockMatrix b, BlockMatrix c, BlockMatrix d)
    : depth_(a.depth() + 1) {
  const RingContext ring = a.context();
  for (const BlockMatrix* q : {&b, &c, &d}) {
    if (q->depth() != a.depth())
      throw Error(ErrorCode::BadInput, "block quadrants must have equal depth");
    if (!(q->context() == ring)) throw MixedRingKinds(ring.descriptor(), q->context().descriptor());
  }
  std::vector<BlockMatrix> quads;
  quads.reserve(4);
  quads.push_back(std::move(a));
  quads.push_back(std::move(b));
  quads.push_back(std::move(c));
  quads.push_back(std::move(d));
  payload_ = std::move(quads);
}

RingContext BlockMatrix::context() const {
  const BlockMatrix* m = this;
  while (!m->is_leaf()) m = &m->quadrant(0);
  return m->leaf().context();
}

BlockMatrix BlockMatrix::identity(const RingContext& ring, int depth) {
  if (depth == 0) return BlockMatrix(ring.one());
  return BlockMatrix(identity(ring, depth - 1), zero(ring, depth - 1), zero(ring, depth - 1),
                     identity(ring, depth - 1));
}

BlockMatrix BlockMatrix::zero(const RingContext& ring, int depth) {
  if (depth == 0) return BlockMatrix(ring.zero());
  BlockMatrix z = zero(ring, depth - 1);
  return BlockMatrix(z, z, z, z);
}

bool operator==(const BlockMatrix& lhs, const BlockMatrix& rhs) {
  if (lhs.depth_ != rhs.depth_) return false;
  if (lhs.is_leaf()) return lhs.leaf() == rhs.leaf();
  for (int q = 0; q < 4; ++q)
    if (!(lhs.quadrant(q) == rhs.quadrant(q))) return false;
  return true;
}

namespace {

void require_same_depth(const BlockMatrix& x, const BlockMatrix& y) {
  if (x.depth() != y.depth()) throw Error(ErrorCode::BadDimension, "block depths differ");
}

}  // namespace

BlockMatrix operator+(const BlockMatrix& x, const BlockMatrix& y) {
  require_same_depth(x, y);
  if (x.is_leaf()) return BlockMatrix(x.leaf() + y.leaf());
  return BlockMatrix(x.quadrant(0) + y.quadrant(0), x.quadrant(1) + y.quadrant(1),
                     x.quadrant(2) + y.quadrant(2), x.quadrant(3) + y.quadrant(3));
}

BlockMatrix operator-(const BlockMatrix& x, const BlockMatrix& y) {
  require_same_depth(x, y);
  if (x.is_leaf()) return BlockMatrix(x.leaf() - y.leaf());
  return BlockMatrix(x.quadrant(0) - y.quadrant(0), x.quadrant(1) - y.quadrant(1),
                     x.quadrant(2) - y.quadrant(2), x.quadrant(3) - y.quadrant(3));
}

BlockMatrix operator-(const BlockMatrix& x) {
  if (x.is_leaf()) return BlockMatrix(-x.leaf());
  return BlockMatrix(-x.quadrant(0), -x.quadrant(1), -x.quadrant(2), -x.quadrant(3));
}

BlockMatrix operator*(const BlockMatrix& x, const BlockMatrix& y) {
  require_same_depth(x, y);
  if (x.is_leaf()) return BlockMatrix(x.leaf() * y.leaf());
  const BlockMatrix &a = x.quadrant(0), &b = x.quadrant(1), &c = x.quadrant(2), &d = x.quadrant(3);
  const BlockMatrix &e = y.quadrant(0), &f = y.quadrant(1), &g = y.quadrant(2), &h = y.quadrant(3);
  return BlockMatrix(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h);
}

// ---------------------------------------------------------------------------
// Flat <-> block

namespace {

BlockMatrix split(const FlatMatrix& M, std::size_t row, std::size_t col, std::size_t size) {
  if (size == 1) return BlockMatrix(M.at(row, col));
  const std::size_t half = size / 2;
  return BlockMatrix(split(M, row, col, half), split(M, row, col + half, half),
                     split(M, row + half, col, half), split(M, row + half, col + half, half));
}

void join(const BlockMatrix& B, std::size_t row, std::size_t col, FlatMatrix& out) {
  if (B.is_leaf()) {
    out.entries[row * out.n + col] = B.leaf();
    return;
  }
  const std::size_t half = B.size() / 2;
  join(B.quadrant(0), row, col, out);
  join(B.quadrant(1), row, col + half, out);
  join(B.quadrant(2), row + half, col, out);
  join(B.quadrant(3), row + half, col + half, out);
}

}  // namespace

BlockMatrix block_from_flat(const FlatMatrix& M) {
  if (M.n == 0 || !std::has_single_bit(M.n) || M.entries.size() != M.n * M.n)
    throw Error(ErrorCode::BadDimension,
                "block inversion needs a 2^n x 2^n matrix, got size " + std::to_string(M.n));
  const RingContext ring = M.entries[0].context();
  for (const auto& e : M.entries)
    if (!(e.context() == ring)) throw MixedRingKinds(ring.descriptor(), e.context().descriptor());
  return split(M, 0, 0, M.n);
}

FlatMatrix block_to_flat(const BlockMatrix& M) {
  const std::size_t n = M.size();
  FlatMatrix out{n, std::vector<RingElement>(n * n, M.context().zero())};
  join(M, 0, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Inversion

namespace {

BlockInverse invert_node(const BlockMatrix& M, const std::string& path);

void append(PivotTrace& into, const PivotTrace& from) { into.insert(into.end(), from.begin(), from.end()); }

// Pivot on A: X22 = (D - C A^-1 B)^-1, the other entries follow from A^-1.
BlockInverse pivot_on_a(const BlockMatrix& M, const std::string& path) {
  const BlockMatrix& a = M.quadrant(0);
  const BlockMatrix& b = M.quadrant(1);
  const BlockMatrix& c = M.quadrant(2);
  const BlockMatrix& d = M.quadrant(3);
  BlockInverse ai = invert_node(a, path + "/A");
  BlockInverse x22 = invert_node(d - c * ai.inverse * b, path + "/(D-CA^-1B)");
  BlockMatrix x12 = -(ai.inverse * b * x22.inverse);
  BlockMatrix ca = c * ai.inverse;
  BlockMatrix x21 = -(x22.inverse * ca);
  BlockMatrix x11 = ai.inverse - x12 * ca;
  PivotTrace trace = std::move(ai.trace);
  append(trace, x22.trace);
  return {BlockMatrix(std::move(x11), std::move(x12), std::move(x21), std::move(x22.inverse)), std::move(trace)};
}

// Pivot on D: X11 = (A - B D^-1 C)^-1.
BlockInverse pivot_on_d(const BlockMatrix& M, const std::string& path) {
  const BlockMatrix& a = M.quadrant(0);
  const BlockMatrix& b = M.quadrant(1);
  const BlockMatrix& c = M.quadrant(2);
  const BlockMatrix& d = M.quadrant(3);
  BlockInverse di = invert_node(d, path + "/D");
  BlockInverse x11 = invert_node(a - b * di.inverse * c, path + "/(A-BD^-1C)");
  BlockMatrix x21 = -(di.inverse * c * x11.inverse);
  BlockMatrix bd = b * di.inverse;
  BlockMatrix x12 = -(x11.inverse * bd);
  BlockMatrix x22 = di.inverse - x21 * bd;
  PivotTrace trace = std::move(di.trace);
  append(trace, x11.trace);
  return {BlockMatrix(std::move(x11.inverse), std::move(x12), std::move(x21), std::move(x22)), std::move(trace)};
}

// Prefers whichever pivot gets through without nested swaps.
BlockInverse diagonal_pivot(const BlockMatrix& M, const std::string& path) {
  std::optional<BlockInverse> via_a;
  try {
    via_a = pivot_on_a(M, path);
    if (via_a->trace.empty()) return std::move(*via_a);
  } catch (const BlockSingular&) {
  }
  try {
    BlockInverse via_d = pivot_on_d(M, path);
    if (!via_a || via_d.trace.size() < via_a->trace.size()) return via_d;
  } catch (const BlockSingular&) {
    if (!via_a) throw;
  }
  return std::move(*via_a);
}

BlockInverse invert_node(const BlockMatrix& M, const std::string& path) {
  if (M.is_leaf()) {
    try {
      return {BlockMatrix(invert(M.leaf(), path)), {}};
    } catch (const NotInvertible&) {
      throw BlockSingular(0, path);
    }
  }
  try {
    return diagonal_pivot(M, path);
  } catch (const BlockSingular&) {
  }
  // Row swap P M with P = [[0, I], [I, 0]]; M^-1 = (P M)^-1 P swaps the block
  // columns of the result back.
  const BlockMatrix swapped(M.quadrant(2), M.quadrant(3), M.quadrant(0), M.quadrant(1));
  try {
    BlockInverse r = diagonal_pivot(swapped, path + "[rows]");
    const BlockMatrix& x = r.inverse;
    PivotTrace trace{{M.depth(), "rows"}};
    append(trace, r.trace);
    return {BlockMatrix(x.quadrant(1), x.quadrant(0), x.quadrant(3), x.quadrant(2)), std::move(trace)};
  } catch (const BlockSingular&) {
    throw BlockSingular(M.depth(), path);
  }
}

}  // namespace

BlockInverse block_inverse(const BlockMatrix& A) { return invert_node(A, "root"); }

}  // namespace ncinv
