#pragma once

// Inversion order by order in a deformation parameter h.
//
// Entries are truncated series c0 + h c1 + ... + h^K cK. When the order-0
// coefficients commute with one another (the quantization regime) every
// commutator, and therefore the residue B, starts at order h. The inverse is
// then the commutative inverse corrected by a finite Neumann sum,
//
//   left:   A^-1 = (sum_{j=0..K} (-B_L)^j) cA_L^-1
//   right:  A^-1 = cA_R^-1 (sum_{j=0..K} (-B_R)^j)
//
// which is exact modulo h^{K+1} because (-B)^{K+1} vanishes there.

#include <cstddef>
#include <vector>

#include "ncinv/nc2x2.hpp"

namespace ncinv {

class DeformedMatrix2 {
 public:
  // Throws BadInput unless every entry is a series and all share one ring.
  explicit DeformedMatrix2(Matrix2 m);

  const Matrix2& matrix() const { return m_; }
  std::size_t order() const { return m_.a.as_series().order(); }
  RingContext base() const { return m_.a.as_series().coeffs[0].context(); }
  // Matrix of order-0 coefficients.
  Matrix2 classical_part() const;

 private:
  Matrix2 m_;
};

// Drops coefficients above h^order; throws BadDimension when order exceeds
// the matrix's own truncation order.
DeformedMatrix2 truncate(const DeformedMatrix2& A, std::size_t order);

// orders[k] holds the h^k coefficients of each entry of the inverse.
struct OrderLedger {
  std::vector<Matrix2> orders;
};

struct NeumannResult {
  Inverse2 inverse;
  OrderLedger ledger;
};

OrderLedger slice_orders(const Matrix2& series_matrix);

// Order-0 coefficients pairwise commute.
bool in_quantization_regime(const DeformedMatrix2& A);

// Classical adjugate inverse of the order-0 matrix. Throws
// NotInvertible("classical determinant").
Matrix2 classical_inverse(const DeformedMatrix2& A, Ordering ord = Ordering::DeltaACB);

// Throws Error(RegimeViolation) outside the quantization regime and
// NotInvertible("classical determinant") when the order-0 determinant is
// singular.
NeumannResult neumann_inverse(const DeformedMatrix2& A, Side side, Ordering ord);

// nc2x2 closed forms evaluated in the series ring.
Inverse2 closed_form_inverse(const DeformedMatrix2& A, Method method);

// Lowest order with a nonzero residue coefficient, K + 1 when B == 0.
std::size_t residue_order(const DeformedMatrix2& A, Side side, Ordering ord);

// Entries lambda * 1 + h m1 + ... + h^K mK with nonzero rational lambda and
// random base-ring coefficients; resamples until the classical determinant is
// nonzero.
DeformedMatrix2 sample_regime_matrix(Sampler& sampler, const RingContext& series_ring,
                                     std::uint32_t bound, unsigned retry_budget = 1000);

}  // namespace ncinv
