#include "ncinv/nc2x2.hpp"

#include <initializer_list>
#include <utility>

namespace ncinv {

// ---------------------------------------------------------------------------
// Matrix2

Matrix2 Matrix2::identity(const RingContext& ring) {
  return Matrix2{ring.one(), ring.zero(), ring.zero(), ring.one()};
}

Matrix2 Matrix2::zero(const RingContext& ring) {
  return Matrix2{ring.zero(), ring.zero(), ring.zero(), ring.zero()};
}

const RingElement& Matrix2::at(int row, int col) const {
  if (row == 0) return col == 0 ? a : b;
  return col == 0 ? c : d;
}

bool Matrix2::is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }

bool Matrix2::is_identity() const { return *this == identity(context()); }

bool operator==(const Matrix2& lhs, const Matrix2& rhs) {
  return lhs.a == rhs.a && lhs.b == rhs.b && lhs.c == rhs.c && lhs.d == rhs.d;
}

Matrix2 make_matrix2(RingElement a, RingElement b, RingElement c, RingElement d) {
  const RingContext ring = a.context();
  for (const RingElement* e : {&b, &c, &d})
    if (!(e->context() == ring)) throw MixedRingKinds(ring.descriptor(), e->context().descriptor());
  return Matrix2{std::move(a), std::move(b), std::move(c), std::move(d)};
}

Matrix2 operator+(const Matrix2& x, const Matrix2& y) {
  return Matrix2{x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}

Matrix2 operator-(const Matrix2& x, const Matrix2& y) {
  return Matrix2{x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}

Matrix2 operator-(const Matrix2& x) { return Matrix2{-x.a, -x.b, -x.c, -x.d}; }

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
  return Matrix2{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                 x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

// ---------------------------------------------------------------------------
// Names

std::string_view method_name(Method m) {
  switch (m) {
    case Method::LeftResidue: return "left";
    case Method::RightResidue: return "right";
    case Method::LeftResiduePrime: return "left-prime";
    case Method::RightResiduePrime: return "right-prime";
    case Method::Gelfand: return "gelfand";
    case Method::Triangular: return "triangular";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::LeftResidue, Method::RightResidue, Method::LeftResiduePrime,
                   Method::RightResiduePrime, Method::Gelfand, Method::Triangular})
    if (method_name(m) == name) return m;
  return std::nullopt;
}

std::string_view ordering_name(Ordering o) { return o == Ordering::DeltaACB ? "acb" : "abc"; }

std::optional<Ordering> parse_ordering(std::string_view name) {
  if (name == "acb") return Ordering::DeltaACB;
  if (name == "abc") return Ordering::DeltaABC;
  return std::nullopt;
}

std::string_view side_name(Side s) { return s == Side::Left ? "left" : "right"; }

std::optional<Side> parse_side(std::string_view name) {
  if (name == "left") return Side::Left;
  if (name == "right") return Side::Right;
  return std::nullopt;
}

std::optional<std::pair<Side, Ordering>> residue_route(Method m) {
  switch (m) {
    case Method::LeftResidue: return std::pair{Side::Left, Ordering::DeltaACB};
    case Method::RightResidue: return std::pair{Side::Right, Ordering::DeltaACB};
    case Method::LeftResiduePrime: return std::pair{Side::Left, Ordering::DeltaABC};
    case Method::RightResiduePrime: return std::pair{Side::Right, Ordering::DeltaABC};
    default: return std::nullopt;
  }
}

Method residue_method(Side side, Ordering ordering) {
  if (ordering == Ordering::DeltaACB) return side == Side::Left ? Method::LeftResidue : Method::RightResidue;
  return side == Side::Left ? Method::LeftResiduePrime : Method::RightResiduePrime;
}

// ---------------------------------------------------------------------------
// Building blocks

namespace {

const char* delta_name(Ordering ord) { return ord == Ordering::DeltaACB ? "Delta" : "Delta'"; }

RingElement delta_inverse(const Matrix2& A, Ordering ord) {
  return invert(determinant(A, ord), delta_name(ord));
}

// Entry inverses demanded by a closed form, checked in a-b-c-d order so the
// reported failure is stable.
struct EntryInverses {
  std::optional<RingElement> a, b, c, d;

  EntryInverses(const Matrix2& A, std::string_view needed) {
    for (char e : needed) {
      switch (e) {
        case 'a': a = invert(A.a, "a"); break;
        case 'b': b = invert(A.b, "b"); break;
        case 'c': c = invert(A.c, "c"); break;
        case 'd': d = invert(A.d, "d"); break;
      }
    }
  }
};

// The four quasi-entries and their sign-flipped companions.
RingElement q_a(const Matrix2& A, const EntryInverses& inv) { return A.a - A.b * *inv.d * A.c; }  // a - b d^-1 c
RingElement q_c(const Matrix2& A, const EntryInverses& inv) { return A.c - A.d * *inv.b * A.a; }  // c - d b^-1 a
RingElement q_b(const Matrix2& A, const EntryInverses& inv) { return A.b - A.a * *inv.c * A.d; }  // b - a c^-1 d
RingElement q_d(const Matrix2& A, const EntryInverses& inv) { return A.d - A.c * *inv.a * A.b; }  // d - c a^-1 b

}  // namespace

RingElement determinant(const Matrix2& A, Ordering ord) {
  if (ord == Ordering::DeltaACB) return A.a * A.d - A.c * A.b;
  return A.a * A.d - A.b * A.c;
}

Matrix2 commutative_inverse(const Matrix2& A, Side side, Ordering ord) {
  const RingElement di = delta_inverse(A, ord);
  const Matrix2 adj{A.d, -A.b, -A.c, A.a};
  if (side == Side::Left) return map_entries(adj, [&](const RingElement& e) { return di * e; });
  return map_entries(adj, [&](const RingElement& e) { return e * di; });
}

ResidueMatrix residue(const Matrix2& A, Side side, Ordering ord) {
  const Matrix2 ci = commutative_inverse(A, side, ord);
  const Matrix2 id = Matrix2::identity(A.context());
  if (side == Side::Left) return {side, ord, ci * A - id};
  return {side, ord, A * ci - id};
}

ResidueMatrix residue_commutator_form(const Matrix2& A, Side side, Ordering ord) {
  const auto& [a, b, c, d] = A;
  const RingElement di = delta_inverse(A, ord);
  const RingElement zero = A.context().zero();
  Matrix2 raw = Matrix2::zero(A.context());
  if (ord == Ordering::DeltaACB) {
    if (side == Side::Left)
      raw = {commutator(d, a) - commutator(b, c), commutator(d, b), commutator(a, c), zero};
    else
      raw = {commutator(c, b), commutator(b, a), commutator(c, d), commutator(d, a)};
  } else {
    if (side == Side::Left)
      raw = {commutator(d, a), commutator(d, b), commutator(a, c), commutator(b, c)};
    else
      raw = {zero, commutator(b, a), commutator(c, d), commutator(d, a) - commutator(c, b)};
  }
  if (side == Side::Left) return {side, ord, map_entries(raw, [&](const RingElement& e) { return di * e; })};
  return {side, ord, map_entries(raw, [&](const RingElement& e) { return e * di; })};
}

// ---------------------------------------------------------------------------
// Decompositions

namespace {

Matrix2 left_decomposition_acb(const Matrix2& A) {
  const auto& [a, b, c, d] = A;
  const RingElement delta = determinant(A, Ordering::DeltaACB);
  const RingElement di = invert(delta, "Delta");
  const EntryInverses inv(A, "bd");
  const RingElement qa_inv = invert(q_a(A, inv), "a - b d^-1 c");
  const RingElement qc_inv = invert(q_c(A, inv), "c - d b^-1 a");
  const RingElement ac = commutator(a, c);
  return {di * (d - delta * qa_inv), -(di * (b + delta * qc_inv)),
          di * ac * qa_inv, di * ac * qc_inv};
}

Matrix2 right_decomposition_acb(const Matrix2& A) {
  const auto& [a, b, c, d] = A;
  const RingElement delta = determinant(A, Ordering::DeltaACB);
  const RingElement di = invert(delta, "Delta");
  const EntryInverses inv(A, "abcd");
  const RingElement qa_inv = invert(q_a(A, inv), "a - b d^-1 c");
  const RingElement qc_inv = invert(q_c(A, inv), "c - d b^-1 a");
  const RingElement qb_inv = invert(q_b(A, inv), "b - a c^-1 d");
  const RingElement qd_inv = invert(q_d(A, inv), "d - c a^-1 b");
  return {(d - qa_inv * delta) * di, (-b - qc_inv * delta) * di,
          (-c - qb_inv * delta) * di, (a - qd_inv * delta) * di};
}

Matrix2 right_decomposition_abc(const Matrix2& A) {
  const auto& [a, b, c, d] = A;
  const RingElement di = delta_inverse(A, Ordering::DeltaABC);
  const EntryInverses inv(A, "ab");
  // d b^-1 a - c
  const RingElement p_inv = invert(d * *inv.b * a - c, "d b^-1 a - c");
  const RingElement qd_inv = invert(q_d(A, inv), "d - c a^-1 b");
  const RingElement mixed = commutator(a, d) + commutator(c, b);
  return {p_inv * commutator(d, c) * di,
          p_inv * (mixed + d * *inv.b * commutator(b, a)) * di,
          qd_inv * commutator(c, d) * di,
          // (c a^-1 b - d)^-1 = -(d - c a^-1 b)^-1
          -qd_inv * (mixed + c * *inv.a * commutator(b, a)) * di};
}

Matrix2 left_decomposition_abc(const Matrix2& A) {
  const auto& [a, b, c, d] = A;
  const RingElement delta = determinant(A, Ordering::DeltaABC);
  const RingElement di = invert(delta, "Delta'");
  const EntryInverses inv(A, "acd");
  const RingElement qa_inv = invert(q_a(A, inv), "a - b d^-1 c");
  const RingElement r_inv = invert(a * *inv.c * d - b, "a c^-1 d - b");
  const RingElement qd_inv = invert(q_d(A, inv), "d - c a^-1 b");
  const RingElement ai_b = *inv.a * b;
  return {di * (d - delta * qa_inv),
          di * (commutator(d, b) - commutator(d, a) * ai_b) * qd_inv,
          di * (-c + delta * r_inv),
          di * (commutator(b, c) - commutator(a, c) * ai_b) * qd_inv};
}

}  // namespace

DecompositionMatrix decomposition(const Matrix2& A, Side side, Ordering ord) {
  if (ord == Ordering::DeltaACB)
    return {side, ord, side == Side::Left ? left_decomposition_acb(A) : right_decomposition_acb(A)};
  return {side, ord, side == Side::Left ? left_decomposition_abc(A) : right_decomposition_abc(A)};
}

DecompositionMatrix left_decomposition_commutator_form(const Matrix2& A) {
  const auto& [a, b, c, d] = A;
  const RingElement di = delta_inverse(A, Ordering::DeltaACB);
  const EntryInverses inv(A, "bd");
  const RingElement qa_inv = invert(q_a(A, inv), "a - b d^-1 c");
  const RingElement qc_inv = invert(q_c(A, inv), "c - d b^-1 a");
  const RingElement bd = commutator(b, d);
  const RingElement da_cb = commutator(d, a) + commutator(c, b);
  const RingElement ac = commutator(a, c);
  return {Side::Left, Ordering::DeltaACB,
          Matrix2{di * (bd * *inv.d * c + da_cb) * qa_inv,
                  di * (da_cb + bd * *inv.b * a) * qc_inv,
                  di * ac * qa_inv, di * ac * qc_inv}};
}

// ---------------------------------------------------------------------------
// Inverses

namespace {

Matrix2 gelfand_inverse(const Matrix2& A) {
  const auto& [a, b, c, d] = A;
  const EntryInverses inv(A, "abcd");
  return {invert(q_a(A, inv), "a - b d^-1 c"),
          -invert(d * *inv.b * a - c, "d b^-1 a - c"),
          -invert(a * *inv.c * d - b, "a c^-1 d - b"),
          invert(q_d(A, inv), "d - c a^-1 b")};
}

}  // namespace

Inverse2 inverse(const Matrix2& A, Method method) {
  if (method == Method::Gelfand) return {gelfand_inverse(A), method};
  if (method == Method::Triangular) return triangular_inverse(A);
  const auto [side, ord] = *residue_route(method);
  const DecompositionMatrix t = decomposition(A, side, ord);
  return {commutative_inverse(A, side, ord) - t.m, method};
}

Inverse2 triangular_inverse(const Matrix2& A, Ordering) {
  const auto& [a, b, c, d] = A;
  if (!c.is_zero() && !b.is_zero())
    throw Error(ErrorCode::InvalidArgument, "triangular inverse needs b = 0 or c = 0");
  const RingElement ai = invert(a, "a");
  const RingElement di = invert(d, "d");
  const RingElement zero = A.context().zero();
  if (c.is_zero()) return {Matrix2{ai, -(ai * b * di), zero, di}, Method::Triangular};
  return {Matrix2{ai, zero, -(di * c * ai), di}, Method::Triangular};
}

}  // namespace ncinv
