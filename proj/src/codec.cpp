#include "ncinv/codec.hpp"

namespace ncinv {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

mpz_class parse_integer(const std::string& text) {
  mpz_class z;
  if (text.empty() || z.set_str(text, 10) != 0) parse_fail("bad integer '" + text + "'");
  return z;
}

Rational rational_from_string(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  mpz_class den = parse_integer(text.substr(slash + 1));
  if (den == 0) parse_fail("zero denominator in '" + text + "'");
  Rational q(parse_integer(text.substr(0, slash)), den);
  q.canonicalize();
  return q;
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json encode_rational(const Rational& q) {
  return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational decode_rational(const Json& j) {
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  if (!j.is_object()) parse_fail("expected a rational, got " + j.dump());
  const Json& num = member(j, "num");
  const Json& den = member(j, "den");
  if (!num.is_string() || !den.is_string()) parse_fail("num/den must be strings: " + j.dump());
  mpz_class d = parse_integer(den.get<std::string>());
  if (d == 0) parse_fail("zero denominator: " + j.dump());
  Rational q(parse_integer(num.get<std::string>()), d);
  q.canonicalize();
  return q;
}

Json encode_element(const RingElement& x) {
  switch (x.value().index()) {
    case 0: return encode_rational(x.as_scalar());
    case 1: {
      const Quaternion& q = x.as_quaternion();
      return Json{{"w", encode_rational(q.w)}, {"x", encode_rational(q.x)},
                  {"y", encode_rational(q.y)}, {"z", encode_rational(q.z)}};
    }
    case 2: {
      const SquareMatrix& m = x.as_matrix();
      Json rows = Json::array();
      for (std::size_t i = 0; i < m.n; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.n; ++j) row.push_back(encode_rational(m.at(i, j)));
        rows.push_back(std::move(row));
      }
      return rows;
    }
    default: {
      const Series& s = x.as_series();
      Json coeffs = Json::array();
      for (const auto& c : s.coeffs) coeffs.push_back(encode_element(c));
      return Json{{"order", s.order()}, {"coeffs", std::move(coeffs)}};
    }
  }
}

RingElement decode_element(const Json& j, const RingContext& ring) {
  switch (ring.kind()) {
    case RingContext::Kind::Scalar: return RingElement(decode_rational(j));
    case RingContext::Kind::Quaternion:
      return RingElement(Quaternion{decode_rational(member(j, "w")), decode_rational(member(j, "x")),
                                    decode_rational(member(j, "y")), decode_rational(member(j, "z"))});
    case RingContext::Kind::Matrix: {
      const std::size_t n = ring.size();
      if (!j.is_array() || j.size() != n) parse_fail("expected " + ring.descriptor() + " rows: " + j.dump());
      SquareMatrix m = SquareMatrix::zero(n);
      for (std::size_t r = 0; r < n; ++r) {
        if (!j[r].is_array() || j[r].size() != n) parse_fail("bad matrix row: " + j[r].dump());
        for (std::size_t c = 0; c < n; ++c) m.at(r, c) = decode_rational(j[r][c]);
      }
      return RingElement(std::move(m));
    }
    case RingContext::Kind::Series: {
      const Json& order = member(j, "order");
      const Json& coeffs = member(j, "coeffs");
      if (!order.is_number_unsigned() || order.get<std::size_t>() != ring.order())
        parse_fail("series order does not match ring " + ring.descriptor());
      if (!coeffs.is_array() || coeffs.size() != ring.order() + 1)
        parse_fail("series needs order+1 coefficients: " + j.dump());
      Series s;
      for (const auto& c : coeffs) s.coeffs.push_back(decode_element(c, ring.base()));
      return RingElement(std::move(s));
    }
  }
  parse_fail("bad ring kind");
}

Json encode_entries(const FlatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.n; ++j) row.push_back(encode_element(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json encode_entries(const Matrix2& m) { return encode_entries(to_flat(m)); }

Json encode_matrix(const FlatMatrix& m) {
  return Json{{"ring", m.entries.at(0).context().descriptor()}, {"entries", encode_entries(m)}};
}

Json encode_matrix(const Matrix2& m) { return encode_matrix(to_flat(m)); }

FlatMatrix decode_matrix(const Json& doc) {
  const Json& ring_field = member(doc, "ring");
  if (!ring_field.is_string()) parse_fail("'ring' must be a descriptor string");
  const RingContext ring = RingContext::parse(ring_field.get<std::string>());
  const Json& rows = member(doc, "entries");
  if (!rows.is_array() || rows.empty()) parse_fail("'entries' must be a non-empty array of rows");
  const std::size_t n = rows.size();
  FlatMatrix m{n, {}};
  m.entries.reserve(n * n);
  for (const auto& row : rows) {
    if (!row.is_array()) parse_fail("matrix row must be an array: " + row.dump());
    if (row.size() != n)
      throw Error(ErrorCode::BadDimension, "matrix is not square: row of length " +
                                               std::to_string(row.size()) + " in " + std::to_string(n) + " rows");
    for (const auto& e : row) m.entries.push_back(decode_element(e, ring));
  }
  return m;
}

FlatMatrix parse_matrix(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  return decode_matrix(doc);
}

Matrix2 to_matrix2(const FlatMatrix& m) {
  if (m.n != 2) throw Error(ErrorCode::BadDimension, "expected a 2x2 matrix, got " + std::to_string(m.n) + "x" + std::to_string(m.n));
  return make_matrix2(m.entries[0], m.entries[1], m.entries[2], m.entries[3]);
}

FlatMatrix to_flat(const Matrix2& m) { return FlatMatrix{2, {m.a, m.b, m.c, m.d}}; }

Json encode_ledger(const OrderLedger& ledger) {
  Json orders = Json::array();
  for (const auto& m : ledger.orders) orders.push_back(encode_entries(m));
  return Json{{"orders", std::move(orders)}};
}

Json encode_trace(const PivotTrace& trace) {
  Json out = Json::array();
  for (const auto& step : trace) out.push_back(Json{{"depth", step.depth}, {"swap", step.swap}});
  return out;
}

}  // namespace ncinv
