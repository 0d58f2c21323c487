#include "ncinv/algebra.hpp"

#include <charconv>
#include <limits>
#include <sstream>

namespace ncinv {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MixedRingKinds: return "MixedRingKinds";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::BlockSingular: return "BlockSingular";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::RegimeViolation: return "RegimeViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// SquareMatrix

SquareMatrix SquareMatrix::zero(std::size_t n) {
  SquareMatrix m;
  m.n = n;
  m.entries.assign(n * n, Rational(0));
  return m;
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  SquareMatrix m = zero(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

namespace {

SquareMatrix matrix_mul(const SquareMatrix& x, const SquareMatrix& y) {
  const std::size_t n = x.n;
  SquareMatrix r = SquareMatrix::zero(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(x.at(i, k)) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return r;
}

// Gauss-Jordan over Q. Returns false when the matrix is singular.
bool matrix_inverse(const SquareMatrix& x, SquareMatrix& out) {
  const std::size_t n = x.n;
  SquareMatrix a = x;
  out = SquareMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a.at(pivot, col)) == 0) ++pivot;
    if (pivot == n) return false;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a.at(pivot, j), a.at(col, j));
        std::swap(out.at(pivot, j), out.at(col, j));
      }
    }
    const Rational inv = 1 / a.at(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a.at(col, j) *= inv;
      out.at(col, j) *= inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(a.at(i, col)) == 0) continue;
      const Rational f = a.at(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a.at(i, j) -= f * a.at(col, j);
        out.at(i, j) -= f * out.at(col, j);
      }
    }
  }
  return true;
}

bool matrix_is_singular(const SquareMatrix& x) {
  const std::size_t n = x.n;
  SquareMatrix a = x;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a.at(pivot, col)) == 0) ++pivot;
    if (pivot == n) return true;
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(pivot, j), a.at(col, j));
    for (std::size_t i = col + 1; i < n; ++i) {
      if (sgn(a.at(i, col)) == 0) continue;
      const Rational f = a.at(i, col) / a.at(col, col);
      for (std::size_t j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
    }
  }
  return false;
}

Quaternion hamilton(const Quaternion& p, const Quaternion& q) {
  return Quaternion{p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
                    p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
                    p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
                    p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

bool same_kind(const RingElement& x, const RingElement& y) {
  if (x.value().index() != y.value().index()) return false;
  if (const auto* m = std::get_if<SquareMatrix>(&x.value())) return m->n == y.as_matrix().n;
  if (const auto* s = std::get_if<Series>(&x.value())) {
    const Series& t = y.as_series();
    return s->order() == t.order() && same_kind(s->coeffs[0], t.coeffs[0]);
  }
  return true;
}

void require_same_kind(const RingElement& x, const RingElement& y) {
  if (!same_kind(x, y)) throw MixedRingKinds(x.context().descriptor(), y.context().descriptor());
}

template <typename Op>
RingElement zip(const RingElement& x, const RingElement& y, Op op) {
  require_same_kind(x, y);
  switch (x.value().index()) {
    case 0:
      return RingElement(Rational(op(x.as_scalar(), y.as_scalar())));
    case 1: {
      const Quaternion& p = x.as_quaternion();
      const Quaternion& q = y.as_quaternion();
      return RingElement(Quaternion{op(p.w, q.w), op(p.x, q.x), op(p.y, q.y), op(p.z, q.z)});
    }
    case 2: {
      SquareMatrix r = x.as_matrix();
      const SquareMatrix& m = y.as_matrix();
      for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] = op(r.entries[i], m.entries[i]);
      return RingElement(std::move(r));
    }
    default: {
      const Series& s = x.as_series();
      const Series& t = y.as_series();
      Series r;
      r.coeffs.reserve(s.coeffs.size());
      for (std::size_t k = 0; k < s.coeffs.size(); ++k) r.coeffs.push_back(zip(s.coeffs[k], t.coeffs[k], op));
      return RingElement(std::move(r));
    }
  }
}

std::string rational_string(const Rational& q) { return q.get_str(); }

}  // namespace

// ---------------------------------------------------------------------------
// RingContext

RingContext RingContext::scalar() { return RingContext(Kind::Scalar, 0, nullptr); }
RingContext RingContext::quaternion() { return RingContext(Kind::Quaternion, 0, nullptr); }

RingContext RingContext::matrix(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::BadDimension, "matrix ring needs N >= 1");
  return RingContext(Kind::Matrix, n, nullptr);
}

RingContext RingContext::series(const RingContext& base, std::size_t order) {
  if (base.kind() == Kind::Series)
    throw Error(ErrorCode::BadInput, "series coefficients cannot themselves be series");
  return RingContext(Kind::Series, order, std::make_shared<const RingContext>(base));
}

const RingContext& RingContext::base() const {
  if (!base_) throw Error(ErrorCode::InvalidArgument, descriptor() + " has no base ring");
  return *base_;
}

namespace {

std::size_t parse_size(std::string_view text, std::string_view whole) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw Error(ErrorCode::ParseError, "bad ring descriptor '" + std::string(whole) + "'");
  return value;
}

}  // namespace

RingContext RingContext::parse(std::string_view descriptor) {
  if (descriptor == "scalar") return scalar();
  if (descriptor == "quaternion") return quaternion();
  if (descriptor.starts_with("matrix:")) return matrix(parse_size(descriptor.substr(7), descriptor));
  if (descriptor.starts_with("series:")) {
    std::string_view rest = descriptor.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) return series(matrix(2), parse_size(rest, descriptor));
    return series(parse(rest.substr(colon + 1)), parse_size(rest.substr(0, colon), descriptor));
  }
  throw Error(ErrorCode::ParseError, "unknown ring descriptor '" + std::string(descriptor) + "'");
}

std::string RingContext::descriptor() const {
  switch (kind_) {
    case Kind::Scalar: return "scalar";
    case Kind::Quaternion: return "quaternion";
    case Kind::Matrix: return "matrix:" + std::to_string(size_);
    case Kind::Series: return "series:" + std::to_string(size_) + ":" + base_->descriptor();
  }
  return "?";
}

RingElement RingContext::zero() const { return embed(Rational(0)); }
RingElement RingContext::one() const { return embed(Rational(1)); }

RingElement RingContext::embed(const Rational& q) const {
  switch (kind_) {
    case Kind::Scalar: return RingElement(q);
    case Kind::Quaternion: return RingElement(Quaternion{q, 0, 0, 0});
    case Kind::Matrix: {
      SquareMatrix m = SquareMatrix::zero(size_);
      for (std::size_t i = 0; i < size_; ++i) m.at(i, i) = q;
      return RingElement(std::move(m));
    }
    case Kind::Series: {
      Series s;
      s.coeffs.push_back(base_->embed(q));
      for (std::size_t k = 1; k <= size_; ++k) s.coeffs.push_back(base_->zero());
      return RingElement(std::move(s));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "bad ring kind");
}

bool operator==(const RingContext& lhs, const RingContext& rhs) {
  if (lhs.kind_ != rhs.kind_ || lhs.size_ != rhs.size_) return false;
  if (lhs.kind_ == RingContext::Kind::Series) return *lhs.base_ == *rhs.base_;
  return true;
}

// ---------------------------------------------------------------------------
// RingElement

RingElement::RingElement(SquareMatrix m) {
  if (m.n == 0 || m.entries.size() != m.n * m.n)
    throw Error(ErrorCode::BadDimension, "matrix element must be N x N with N >= 1");
  value_ = std::move(m);
}

RingElement::RingElement(Series s) {
  if (s.coeffs.empty()) throw Error(ErrorCode::BadInput, "series needs at least one coefficient");
  for (const auto& c : s.coeffs) {
    if (std::holds_alternative<Series>(c.value()))
      throw Error(ErrorCode::BadInput, "series coefficients cannot themselves be series");
    require_same_kind(s.coeffs[0], c);
  }
  value_ = std::move(s);
}

RingContext RingElement::context() const {
  switch (value_.index()) {
    case 0: return RingContext::scalar();
    case 1: return RingContext::quaternion();
    case 2: return RingContext::matrix(as_matrix().n);
    default: {
      const Series& s = as_series();
      return RingContext::series(s.coeffs[0].context(), s.order());
    }
  }
}

bool RingElement::is_zero() const {
  switch (value_.index()) {
    case 0: return sgn(as_scalar()) == 0;
    case 1: {
      const Quaternion& q = as_quaternion();
      return sgn(q.w) == 0 && sgn(q.x) == 0 && sgn(q.y) == 0 && sgn(q.z) == 0;
    }
    case 2:
      for (const auto& e : as_matrix().entries)
        if (sgn(e) != 0) return false;
      return true;
    default:
      for (const auto& c : as_series().coeffs)
        if (!c.is_zero()) return false;
      return true;
  }
}

bool operator==(const RingElement& lhs, const RingElement& rhs) {
  if (!same_kind(lhs, rhs)) return false;
  switch (lhs.value_.index()) {
    case 0: return lhs.as_scalar() == rhs.as_scalar();
    case 1: {
      const Quaternion& p = lhs.as_quaternion();
      const Quaternion& q = rhs.as_quaternion();
      return p.w == q.w && p.x == q.x && p.y == q.y && p.z == q.z;
    }
    case 2: return lhs.as_matrix().entries == rhs.as_matrix().entries;
    default: return lhs.as_series().coeffs == rhs.as_series().coeffs;
  }
}

// ---------------------------------------------------------------------------
// Arithmetic

RingElement add(const RingElement& x, const RingElement& y) {
  return zip(x, y, [](const Rational& p, const Rational& q) { return Rational(p + q); });
}

RingElement sub(const RingElement& x, const RingElement& y) {
  return zip(x, y, [](const Rational& p, const Rational& q) { return Rational(p - q); });
}

RingElement scale(const Rational& q, const RingElement& x) {
  switch (x.value().index()) {
    case 0: return RingElement(Rational(q * x.as_scalar()));
    case 1: {
      const Quaternion& p = x.as_quaternion();
      return RingElement(Quaternion{q * p.w, q * p.x, q * p.y, q * p.z});
    }
    case 2: {
      SquareMatrix m = x.as_matrix();
      for (auto& e : m.entries) e *= q;
      return RingElement(std::move(m));
    }
    default: {
      Series s = x.as_series();
      for (auto& c : s.coeffs) c = scale(q, c);
      return RingElement(std::move(s));
    }
  }
}

RingElement neg(const RingElement& x) { return scale(Rational(-1), x); }

RingElement mul(const RingElement& x, const RingElement& y) {
  require_same_kind(x, y);
  switch (x.value().index()) {
    case 0: return RingElement(Rational(x.as_scalar() * y.as_scalar()));
    case 1: return RingElement(hamilton(x.as_quaternion(), y.as_quaternion()));
    case 2: return RingElement(matrix_mul(x.as_matrix(), y.as_matrix()));
    default: {
      // Cauchy product, dropping h^k for k > K.
      const Series& s = x.as_series();
      const Series& t = y.as_series();
      const std::size_t order = s.order();
      Series r;
      r.coeffs.reserve(order + 1);
      for (std::size_t k = 0; k <= order; ++k) {
        RingElement acc = mul(s.coeffs[0], t.coeffs[k]);
        for (std::size_t j = 1; j <= k; ++j) acc = add(acc, mul(s.coeffs[j], t.coeffs[k - j]));
        r.coeffs.push_back(std::move(acc));
      }
      return RingElement(std::move(r));
    }
  }
}

RingElement commutator(const RingElement& x, const RingElement& y) {
  return sub(mul(x, y), mul(y, x));
}

bool is_invertible(const RingElement& x) {
  switch (x.value().index()) {
    case 0:
    case 1: return !x.is_zero();
    case 2: return !matrix_is_singular(x.as_matrix());
    default: return is_invertible(x.as_series().coeffs[0]);
  }
}

RingElement invert(const RingElement& x, const std::string& subject) {
  switch (x.value().index()) {
    case 0:
      if (x.is_zero()) throw NotInvertible(subject);
      return RingElement(Rational(1 / x.as_scalar()));
    case 1: {
      if (x.is_zero()) throw NotInvertible(subject);
      const Quaternion& q = x.as_quaternion();
      const Rational norm = q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
      return RingElement(Quaternion{q.w / norm, -q.x / norm, -q.y / norm, -q.z / norm});
    }
    case 2: {
      SquareMatrix out;
      if (!matrix_inverse(x.as_matrix(), out)) throw NotInvertible(subject);
      return RingElement(std::move(out));
    }
    default: {
      // Order by order: y_k = -x_0^{-1} sum_{j=1..k} x_j y_{k-j}.
      const Series& s = x.as_series();
      Series r;
      r.coeffs.reserve(s.coeffs.size());
      RingElement lead_inverse = invert(s.coeffs[0], subject);
      r.coeffs.push_back(lead_inverse);
      for (std::size_t k = 1; k <= s.order(); ++k) {
        RingElement acc = mul(s.coeffs[1], r.coeffs[k - 1]);
        for (std::size_t j = 2; j <= k; ++j) acc = add(acc, mul(s.coeffs[j], r.coeffs[k - j]));
        r.coeffs.push_back(neg(mul(lead_inverse, acc)));
      }
      return RingElement(std::move(r));
    }
  }
}

bool is_central(const RingElement& x) {
  switch (x.value().index()) {
    case 0: return true;
    case 1: {
      const Quaternion& q = x.as_quaternion();
      return sgn(q.x) == 0 && sgn(q.y) == 0 && sgn(q.z) == 0;
    }
    case 2: {
      const SquareMatrix& m = x.as_matrix();
      for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) {
          if (i != j && sgn(m.at(i, j)) != 0) return false;
          if (i == j && m.at(i, i) != m.at(0, 0)) return false;
        }
      return true;
    }
    default:
      for (const auto& c : x.as_series().coeffs)
        if (!is_central(c)) return false;
      return true;
  }
}

RingElement coefficient(const RingElement& x, std::size_t k) {
  if (const auto* s = std::get_if<Series>(&x.value())) {
    if (k > s->order()) return s->coeffs[0].context().zero();
    return s->coeffs[k];
  }
  return k == 0 ? x : x.context().zero();
}

RingElement lift_to_series(const RingElement& x, std::size_t order) {
  if (std::holds_alternative<Series>(x.value()))
    throw Error(ErrorCode::BadInput, "element is already a series");
  Series s;
  s.coeffs.push_back(x);
  for (std::size_t k = 1; k <= order; ++k) s.coeffs.push_back(x.context().zero());
  return RingElement(std::move(s));
}

std::size_t valuation(const RingElement& x) {
  if (const auto* s = std::get_if<Series>(&x.value())) {
    for (std::size_t k = 0; k <= s->order(); ++k)
      if (!s->coeffs[k].is_zero()) return k;
    return s->order() + 1;
  }
  return x.is_zero() ? 1 : 0;
}

std::string to_string(const RingElement& x) {
  std::ostringstream out;
  switch (x.value().index()) {
    case 0: out << rational_string(x.as_scalar()); break;
    case 1: {
      const Quaternion& q = x.as_quaternion();
      out << "(" << rational_string(q.w) << ", " << rational_string(q.x) << "i, "
          << rational_string(q.y) << "j, " << rational_string(q.z) << "k)";
      break;
    }
    case 2: {
      const SquareMatrix& m = x.as_matrix();
      out << "[";
      for (std::size_t i = 0; i < m.n; ++i) {
        out << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.n; ++j) out << (j ? ", " : "") << rational_string(m.at(i, j));
        out << "]";
      }
      out << "]";
      break;
    }
    default: {
      const Series& s = x.as_series();
      for (std::size_t k = 0; k <= s.order(); ++k) {
        if (k) out << " + h^" << k << " ";
        out << to_string(s.coeffs[k]);
      }
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Sampling

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Sampler::below(std::uint64_t n) {
  // Rejection keeps the draw uniform and independent of the standard
  // library's distribution implementation.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do v = rng_();
  while (v >= limit);
  return v % n;
}

Rational Sampler::rational(std::uint32_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidArgument, "coefficient bound must be positive");
  const long num = static_cast<long>(below(2ULL * bound + 1)) - static_cast<long>(bound);
  const long den = static_cast<long>(below(bound)) + 1;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational Sampler::nonzero_rational(std::uint32_t bound) {
  Rational q;
  do q = rational(bound);
  while (sgn(q) == 0);
  return q;
}

RingElement Sampler::element(const RingContext& ring, std::uint32_t bound) {
  switch (ring.kind()) {
    case RingContext::Kind::Scalar: return RingElement(rational(bound));
    case RingContext::Kind::Quaternion: {
      Quaternion q;
      q.w = rational(bound);
      q.x = rational(bound);
      q.y = rational(bound);
      q.z = rational(bound);
      return RingElement(std::move(q));
    }
    case RingContext::Kind::Matrix: {
      SquareMatrix m = SquareMatrix::zero(ring.size());
      for (auto& e : m.entries) e = rational(bound);
      return RingElement(std::move(m));
    }
    case RingContext::Kind::Series: {
      Series s;
      for (std::size_t k = 0; k <= ring.order(); ++k) s.coeffs.push_back(element(ring.base(), bound));
      return RingElement(std::move(s));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "bad ring kind");
}

RingElement Sampler::element(const RingContext& ring, std::uint32_t bound, SamplePolicy policy,
                             unsigned retry_budget) {
  for (unsigned attempt = 0; attempt < retry_budget; ++attempt) {
    RingElement x = element(ring, bound);
    if (policy == SamplePolicy::Any || is_invertible(x)) return x;
  }
  throw Error(ErrorCode::SamplingExhausted,
              "no invertible " + ring.descriptor() + " sample after " +
                  std::to_string(retry_budget) + " draws");
}

RingElement sample(const RandomSpec& spec) {
  Sampler sampler(spec.seed);
  return sampler.element(spec.ring, spec.bound, spec.policy, spec.retry_budget);
}

}  // namespace ncinv
