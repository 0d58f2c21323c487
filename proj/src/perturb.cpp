#include "ncinv/perturb.hpp"

namespace ncinv {

DeformedMatrix2::DeformedMatrix2(Matrix2 m) : m_(std::move(m)) {
  for (const RingElement* e : {&m_.a, &m_.b, &m_.c, &m_.d})
    if (!std::holds_alternative<Series>(e->value()))
      throw Error(ErrorCode::BadInput, "deformed matrix entries must be series, got " +
                                           e->context().descriptor());
  m_ = make_matrix2(m_.a, m_.b, m_.c, m_.d);
}

Matrix2 DeformedMatrix2::classical_part() const {
  return map_entries(m_, [](const RingElement& e) { return coefficient(e, 0); });
}

DeformedMatrix2 truncate(const DeformedMatrix2& A, std::size_t order) {
  if (order > A.order())
    throw Error(ErrorCode::BadDimension, "cannot raise truncation order " + std::to_string(A.order()) +
                                             " to " + std::to_string(order));
  return DeformedMatrix2(map_entries(A.matrix(), [order](const RingElement& e) {
    const auto& coeffs = e.as_series().coeffs;
    return RingElement(Series{std::vector<RingElement>(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(order) + 1)});
  }));
}

OrderLedger slice_orders(const Matrix2& series_matrix) {
  OrderLedger ledger;
  const std::size_t order = series_matrix.a.as_series().order();
  for (std::size_t k = 0; k <= order; ++k)
    ledger.orders.push_back(map_entries(series_matrix, [k](const RingElement& e) { return coefficient(e, k); }));
  return ledger;
}

bool in_quantization_regime(const DeformedMatrix2& A) {
  const Matrix2 c = A.classical_part();
  const RingElement* e[] = {&c.a, &c.b, &c.c, &c.d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!commutator(*e[i], *e[j]).is_zero()) return false;
  return true;
}

namespace {

void require_classical_determinant(const DeformedMatrix2& A, Ordering ord) {
  if (!is_invertible(determinant(A.classical_part(), ord))) throw NotInvertible("classical determinant");
}

}  // namespace

Matrix2 classical_inverse(const DeformedMatrix2& A, Ordering ord) {
  require_classical_determinant(A, ord);
  return commutative_inverse(A.classical_part(), Side::Left, ord);
}

NeumannResult neumann_inverse(const DeformedMatrix2& A, Side side, Ordering ord) {
  if (!in_quantization_regime(A))
    throw Error(ErrorCode::RegimeViolation, "order-0 coefficients do not commute");
  require_classical_determinant(A, ord);

  const Matrix2& M = A.matrix();
  const Matrix2 ci = commutative_inverse(M, side, ord);
  const Matrix2 minus_b = -residue(M, side, ord).m;
  const Matrix2 id = Matrix2::identity(M.context());

  Matrix2 sum = id;
  Matrix2 power = id;
  for (std::size_t j = 1; j <= A.order(); ++j) {
    power = power * minus_b;
    sum = sum + power;
  }
  Matrix2 x = side == Side::Left ? sum * ci : ci * sum;
  OrderLedger ledger = slice_orders(x);
  return {Inverse2{std::move(x), residue_method(side, ord)}, std::move(ledger)};
}

Inverse2 closed_form_inverse(const DeformedMatrix2& A, Method method) {
  return inverse(A.matrix(), method);
}

std::size_t residue_order(const DeformedMatrix2& A, Side side, Ordering ord) {
  require_classical_determinant(A, ord);
  const Matrix2 b = residue(A.matrix(), side, ord).m;
  std::size_t lowest = A.order() + 1;
  for (const RingElement* e : {&b.a, &b.b, &b.c, &b.d}) lowest = std::min(lowest, valuation(*e));
  return lowest;
}

DeformedMatrix2 sample_regime_matrix(Sampler& sampler, const RingContext& series_ring,
                                     std::uint32_t bound, unsigned retry_budget) {
  if (series_ring.kind() != RingContext::Kind::Series)
    throw Error(ErrorCode::InvalidArgument, "regime samples need a series ring, got " + series_ring.descriptor());
  const RingContext& base = series_ring.base();
  auto entry = [&] {
    Series s;
    s.coeffs.push_back(base.embed(sampler.nonzero_rational(bound)));
    for (std::size_t k = 1; k <= series_ring.order(); ++k) s.coeffs.push_back(sampler.element(base, bound));
    return RingElement(std::move(s));
  };
  for (unsigned attempt = 0; attempt < retry_budget; ++attempt) {
    DeformedMatrix2 A(Matrix2{entry(), entry(), entry(), entry()});
    if (is_invertible(determinant(A.classical_part(), Ordering::DeltaACB))) return A;
  }
  throw Error(ErrorCode::SamplingExhausted, "no regime sample with invertible classical determinant");
}

}  // namespace ncinv
