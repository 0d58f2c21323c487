#pragma once

// Inversion of 2x2 matrices whose entries do not commute.
//
// For A = [[a, b], [c, d]] the commutative inverse uses the classical
// adjugate with one of two determinant orderings,
//
//   DeltaACB:  Delta  = a d - c b
//   DeltaABC:  Delta' = a d - b c
//
// and places Delta^{-1} on the left (Side::Left) or right (Side::Right) of
// every adjugate entry. The residue B measures how far that guess is from an
// inverse, the decomposition T factors it through A, and A^{-1} = cA^{-1} - T.
// All routes coincide with the quasideterminant inverse
//
//   [[ (a - b d^-1 c)^-1,  -(d b^-1 a - c)^-1 ],
//    [ -(a c^-1 d - b)^-1,  (d - c a^-1 b)^-1 ]].
//
// Every closed form needs a different set of invertible subexpressions; a
// failure throws NotInvertible naming the first one that is singular.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "ncinv/algebra.hpp"

namespace ncinv {

struct Matrix2 {
  RingElement a, b, c, d;

  static Matrix2 identity(const RingContext& ring);
  static Matrix2 zero(const RingContext& ring);

  // Row-major, (0,0) = a.
  const RingElement& at(int row, int col) const;
  RingContext context() const { return a.context(); }
  bool is_zero() const;
  bool is_identity() const;

  friend bool operator==(const Matrix2& lhs, const Matrix2& rhs);
};

// Throws MixedRingKinds unless all entries share one ring.
Matrix2 make_matrix2(RingElement a, RingElement b, RingElement c, RingElement d);

Matrix2 operator+(const Matrix2& x, const Matrix2& y);
Matrix2 operator-(const Matrix2& x, const Matrix2& y);
Matrix2 operator-(const Matrix2& x);
Matrix2 operator*(const Matrix2& x, const Matrix2& y);
Matrix2 map_entries(const Matrix2& m, const auto& fn) {
  return Matrix2{fn(m.a), fn(m.b), fn(m.c), fn(m.d)};
}

enum class Ordering { DeltaACB, DeltaABC };
enum class Side { Left, Right };
enum class Method { LeftResidue, RightResidue, LeftResiduePrime, RightResiduePrime, Gelfand, Triangular };

inline constexpr std::array<Method, 5> kEquivalentMethods = {
    Method::LeftResidue, Method::RightResidue, Method::LeftResiduePrime,
    Method::RightResiduePrime, Method::Gelfand};

// "left", "right", "left-prime", "right-prime", "gelfand", "triangular".
std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);
// "acb", "abc".
std::string_view ordering_name(Ordering o);
std::optional<Ordering> parse_ordering(std::string_view name);
std::string_view side_name(Side s);
std::optional<Side> parse_side(std::string_view name);

// The residue methods map onto one (side, ordering) pair; Gelfand and
// Triangular have none.
std::optional<std::pair<Side, Ordering>> residue_route(Method m);
Method residue_method(Side side, Ordering ordering);

struct ResidueMatrix {
  Side side;
  Ordering ordering;
  Matrix2 m;
};

struct DecompositionMatrix {
  Side side;
  Ordering ordering;
  Matrix2 m;
};

struct Inverse2 {
  Matrix2 m;
  Method method;
};

RingElement determinant(const Matrix2& A, Ordering ord);

Matrix2 commutative_inverse(const Matrix2& A, Side side, Ordering ord);

// cA^{-1} A - I (left) or A cA^{-1} - I (right), multiplied out directly.
ResidueMatrix residue(const Matrix2& A, Side side, Ordering ord);

// The same residue assembled from commutators:
//   B_L  = Delta^-1  [[ [d,a]-[b,c], [d,b] ], [ [a,c], 0 ]]
//   B_R  = [[ [c,b], [b,a] ], [ [c,d], [d,a] ]] Delta^-1
//   B'_L = Delta'^-1 [[ [d,a], [d,b] ], [ [a,c], [b,c] ]]
//   B'_R = [[ 0, [b,a] ], [ [c,d], [d,a]-[c,b] ]] Delta'^-1
ResidueMatrix residue_commutator_form(const Matrix2& A, Side side, Ordering ord);

// Closed-form T with T A = B_L (left) or A T = B_R (right).
DecompositionMatrix decomposition(const Matrix2& A, Side side, Ordering ord);

// Second closed form of the left decomposition under Delta = ad - cb, with
// the first row written through commutators.
DecompositionMatrix left_decomposition_commutator_form(const Matrix2& A);

Inverse2 inverse(const Matrix2& A, Method method);

// For b = 0 or c = 0, where the closed forms above would need b^-1 or c^-1.
// The ordering is accepted for interface symmetry; the result does not
// depend on it.
Inverse2 triangular_inverse(const Matrix2& A, Ordering ord = Ordering::DeltaACB);

}  // namespace ncinv
