#pragma once

// JSON encoding of ring elements and matrices.
//
//   scalar       {"num": "-3", "den": "2"}   (strings; "-3/2" and integers
//                                             are also accepted on input)
//   quaternion   {"w": s, "x": s, "y": s, "z": s}
//   matrix:N     [[s, ...], ...] row-major
//   series:K     {"order": K, "coeffs": [c0, ..., cK]}
//   matrix doc   {"ring": "<descriptor>", "entries": [[e, ...], ...]}

#include <string>

#include "json.hpp"

#include "ncinv/blockinv.hpp"
#include "ncinv/nc2x2.hpp"
#include "ncinv/perturb.hpp"

namespace ncinv {

using Json = nlohmann::ordered_json;

Json encode_rational(const Rational& q);
Rational decode_rational(const Json& j);

Json encode_element(const RingElement& x);
RingElement decode_element(const Json& j, const RingContext& ring);

Json encode_entries(const Matrix2& m);
Json encode_entries(const FlatMatrix& m);
Json encode_matrix(const FlatMatrix& m);
Json encode_matrix(const Matrix2& m);

// Reads a matrix document; throws Error(ParseError) on malformed input and
// Error(BadDimension) when "entries" is not square.
FlatMatrix decode_matrix(const Json& doc);
FlatMatrix parse_matrix(const std::string& text);

Matrix2 to_matrix2(const FlatMatrix& m);
FlatMatrix to_flat(const Matrix2& m);

Json encode_ledger(const OrderLedger& ledger);
Json encode_trace(const PivotTrace& trace);

}  // namespace ncinv
