#pragma once

// Exact noncommutative rings used as matrix entry domains.
//
// Four kinds of element are supported, all over arbitrary-precision
// rationals:
//
//   scalar       Q (commutative, the reference case)
//   quaternion   Hamilton quaternions over Q (a division ring)
//   matrix:N     the full matrix ring M_N(Q) (has zero divisors)
//   series:K     truncated power series c0 + h c1 + ... + h^K cK whose
//                coefficients live in one of the kinds above; h is central
//
// Elements are immutable values. Every binary operation checks that both
// operands come from the same ring and throws MixedRingKinds otherwise.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "ncinv/error.hpp"

namespace ncinv {

using Rational = mpq_class;

struct Quaternion {
  Rational w, x, y, z;
};

// Row-major N x N block of rationals, N >= 1.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<Rational> entries;

  const Rational& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  Rational& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }

  static SquareMatrix identity(std::size_t n);
  static SquareMatrix zero(std::size_t n);
};

class RingElement;

// coeffs[k] is the coefficient of h^k; the truncation order is coeffs.size()-1.
struct Series {
  std::vector<RingElement> coeffs;

  std::size_t order() const { return coeffs.size() - 1; }
};

class RingContext {
 public:
  enum class Kind { Scalar, Quaternion, Matrix, Series };

  static RingContext scalar();
  static RingContext quaternion();
  static RingContext matrix(std::size_t n);
  static RingContext series(const RingContext& base, std::size_t order);

  // Accepts "scalar", "quaternion", "matrix:N", "series:K" (base matrix:2)
  // and "series:K:<base descriptor>".
  static RingContext parse(std::string_view descriptor);

  Kind kind() const { return kind_; }
  // Matrix side length for matrix:N, truncation order for series:K.
  std::size_t size() const { return size_; }
  std::size_t order() const { return size_; }
  const RingContext& base() const;

  std::string descriptor() const;

  RingElement zero() const;
  RingElement one() const;
  // q times the identity of this ring.
  RingElement embed(const Rational& q) const;

  friend bool operator==(const RingContext& lhs, const RingContext& rhs);

 private:
  RingContext(Kind kind, std::size_t size, std::shared_ptr<const RingContext> base)
      : kind_(kind), size_(size), base_(std::move(base)) {}

  Kind kind_ = Kind::Scalar;
  std::size_t size_ = 0;
  std::shared_ptr<const RingContext> base_;
};

class RingElement {
 public:
  using Value = std::variant<Rational, Quaternion, SquareMatrix, Series>;

  explicit RingElement(Rational q) : value_(std::move(q)) {}
  explicit RingElement(Quaternion q) : value_(std::move(q)) {}
  explicit RingElement(SquareMatrix m);
  explicit RingElement(Series s);

  const Value& value() const { return value_; }
  RingContext context() const;

  bool is_zero() const;

  const Rational& as_scalar() const { return std::get<Rational>(value_); }
  const Quaternion& as_quaternion() const { return std::get<Quaternion>(value_); }
  const SquareMatrix& as_matrix() const { return std::get<SquareMatrix>(value_); }
  const Series& as_series() const { return std::get<Series>(value_); }

  friend bool operator==(const RingElement& lhs, const RingElement& rhs);

 private:
  Value value_;
};

RingElement add(const RingElement& x, const RingElement& y);
RingElement sub(const RingElement& x, const RingElement& y);
RingElement neg(const RingElement& x);
RingElement mul(const RingElement& x, const RingElement& y);
RingElement scale(const Rational& q, const RingElement& x);
// Throws NotInvertible(subject) when x has no two-sided inverse.
RingElement invert(const RingElement& x, const std::string& subject = "element");
RingElement commutator(const RingElement& x, const RingElement& y);

bool is_invertible(const RingElement& x);
// True when x commutes with every element of its ring.
bool is_central(const RingElement& x);

// Series helpers. coefficient() on a non-series element returns the element
// itself for k == 0 and zero otherwise.
RingElement coefficient(const RingElement& x, std::size_t k);
RingElement lift_to_series(const RingElement& x, std::size_t order);
// Lowest k with a nonzero h^k coefficient; order()+1 when x == 0.
std::size_t valuation(const RingElement& x);

std::string to_string(const RingElement& x);

inline RingElement operator+(const RingElement& x, const RingElement& y) { return add(x, y); }
inline RingElement operator-(const RingElement& x, const RingElement& y) { return sub(x, y); }
inline RingElement operator-(const RingElement& x) { return neg(x); }
inline RingElement operator*(const RingElement& x, const RingElement& y) { return mul(x, y); }

// ---------------------------------------------------------------------------
// Deterministic sampling

enum class SamplePolicy { Any, Invertible };

struct RandomSpec {
  std::uint64_t seed = 0;
  std::uint32_t bound = 5;
  RingContext ring = RingContext::scalar();
  SamplePolicy policy = SamplePolicy::Any;
  unsigned retry_budget = 1000;
};

// splitmix64 mix of (seed, stream); used to give every trial its own stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Owns its generator state; the same seed always yields the same sequence.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n);
  // p/q with |p| <= bound and 1 <= q <= bound.
  Rational rational(std::uint32_t bound);
  Rational nonzero_rational(std::uint32_t bound);

  RingElement element(const RingContext& ring, std::uint32_t bound);
  // Throws Error(SamplingExhausted) after retry_budget failed draws.
  RingElement element(const RingContext& ring, std::uint32_t bound, SamplePolicy policy,
                      unsigned retry_budget = 1000);

 private:
  std::mt19937_64 rng_;
};

RingElement sample(const RandomSpec& spec);

}  // namespace ncinv
