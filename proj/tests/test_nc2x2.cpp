#include <gtest/gtest.h>

#include "ncinv/nc2x2.hpp"
#include "oracles.hpp"

using namespace ncinv;
using oracle::q1;
using oracle::qi;
using oracle::qj;
using oracle::qk;
using oracle::quat;

namespace {

RingElement scalar(long p, long q = 1) { return RingElement(Rational(p, q)); }

Matrix2 scalars(long a, long b, long c, long d) { return make_matrix2(scalar(a), scalar(b), scalar(c), scalar(d)); }

// [[1, i], [j, 1]]
Matrix2 sample_one() { return make_matrix2(q1(), qi(), qj(), q1()); }

Matrix2 random_matrix(Sampler& s, const RingContext& ring, std::uint32_t bound = 5) {
  return make_matrix2(s.element(ring, bound), s.element(ring, bound), s.element(ring, bound), s.element(ring, bound));
}

// Quaternion 2x2 product through the left-regular oracle.
std::array<Quaternion, 4> oracle_product(const Matrix2& x, const Matrix2& y) {
  auto q = [](const RingElement& e) { return e.as_quaternion(); };
  auto add = [](const Quaternion& p, const Quaternion& r) {
    return Quaternion{p.w + r.w, p.x + r.x, p.y + r.y, p.z + r.z};
  };
  using oracle::product;
  return {add(product(q(x.a), q(y.a)), product(q(x.b), q(y.c))),
          add(product(q(x.a), q(y.b)), product(q(x.b), q(y.d))),
          add(product(q(x.c), q(y.a)), product(q(x.d), q(y.c))),
          add(product(q(x.c), q(y.b)), product(q(x.d), q(y.d)))};
}

bool oracle_is_identity(const std::array<Quaternion, 4>& m) {
  const Quaternion one{1, 0, 0, 0}, zero{0, 0, 0, 0};
  return oracle::same(m[0], one) && oracle::same(m[1], zero) && oracle::same(m[2], zero) &&
         oracle::same(m[3], one);
}

constexpr std::array<std::pair<Side, Ordering>, 4> kRoutes = {{{Side::Left, Ordering::DeltaACB},
                                                               {Side::Right, Ordering::DeltaACB},
                                                               {Side::Left, Ordering::DeltaABC},
                                                               {Side::Right, Ordering::DeltaABC}}};

}  // namespace

TEST(Nc2x2, DeterminantExamples) {
  for (Ordering o : {Ordering::DeltaACB, Ordering::DeltaABC}) EXPECT_EQ(determinant(scalars(1, 2, 3, 4), o), scalar(-2));
  // 1*1 - j*i = 1 + k
  EXPECT_EQ(determinant(sample_one(), Ordering::DeltaACB), q1() + qk());
  const Matrix2 w = make_matrix2(qi(), qj(), qk(), q1());
  // i - kj = 2i and i - jk = 0 by the Hamilton table.
  const Quaternion kj = oracle::product(qk().as_quaternion(), qj().as_quaternion());
  const Quaternion jk = oracle::product(qj().as_quaternion(), qk().as_quaternion());
  EXPECT_EQ(determinant(w, Ordering::DeltaACB), qi() - RingElement(kj));
  EXPECT_EQ(determinant(w, Ordering::DeltaACB), quat(0, 2));
  EXPECT_EQ(determinant(w, Ordering::DeltaABC), qi() - RingElement(jk));
  EXPECT_TRUE(determinant(w, Ordering::DeltaABC).is_zero());
}

TEST(Nc2x2, CommutativeInverseExamples) {
  const Matrix2 expected = make_matrix2(scalar(-2), scalar(1), scalar(3, 2), scalar(-1, 2));
  for (Side s : {Side::Left, Side::Right})
    for (Ordering o : {Ordering::DeltaACB, Ordering::DeltaABC})
      EXPECT_EQ(commutative_inverse(scalars(1, 2, 3, 4), s, o), expected);

  const Quaternion half_one_minus_k{Rational(1, 2), 0, 0, Rational(-1, 2)};
  auto right = [&](const RingElement& x) { return RingElement(oracle::product(x.as_quaternion(), half_one_minus_k)); };
  const Matrix2 cA = commutative_inverse(sample_one(), Side::Right, Ordering::DeltaACB);
  EXPECT_EQ(cA, make_matrix2(right(q1()), right(-qi()), right(-qj()), right(q1())));

  try {
    commutative_inverse(make_matrix2(qi(), qj(), qk(), q1()), Side::Left, Ordering::DeltaABC);
    FAIL();
  } catch (const NotInvertible& e) {
    EXPECT_EQ(e.subject(), "Delta'");
  }
}

TEST(Nc2x2, ResidueExamples) {
  // [c, b] Delta^-1 = (-2k)(1 - k)/2 = -(1 + k)
  const Quaternion cb = oracle::product(Quaternion{0, 0, 0, -2}, Quaternion{Rational(1, 2), 0, 0, Rational(-1, 2)});
  EXPECT_EQ(RingElement(cb), -(q1() + qk()));
  const Matrix2 expected = make_matrix2(RingElement(cb), quat(0), quat(0), quat(0));
  EXPECT_EQ(residue(sample_one(), Side::Right, Ordering::DeltaACB).m, expected);
  EXPECT_EQ(residue_commutator_form(sample_one(), Side::Right, Ordering::DeltaACB).m, expected);

  for (auto [side, ord] : kRoutes) {
    EXPECT_TRUE(residue(scalars(1, 2, 3, 4), side, ord).m.is_zero());
    EXPECT_TRUE(residue_commutator_form(scalars(1, 2, 3, 4), side, ord).m.is_zero());
    EXPECT_TRUE(decomposition(scalars(1, 2, 3, 4), side, ord).m.is_zero());
  }
}

TEST(Nc2x2, DecompositionExample) {
  const Matrix2 T = decomposition(sample_one(), Side::Right, Ordering::DeltaACB).m;
  EXPECT_EQ(T.a, -qk());
  // T_R = cA_R^-1 - A^-1 with A^-1 from the quaternion oracle example.
  const Matrix2 inv = make_matrix2(quat(Rational(1, 2), 0, 0, Rational(1, 2)), quat(0, Rational(-1, 2), Rational(-1, 2)),
                                   quat(0, Rational(-1, 2), Rational(-1, 2)), quat(Rational(1, 2), 0, 0, Rational(-1, 2)));
  EXPECT_EQ(T, commutative_inverse(sample_one(), Side::Right, Ordering::DeltaACB) - inv);
}

TEST(Nc2x2, InverseExamples) {
  const Matrix2 classical = make_matrix2(scalar(-2), scalar(1), scalar(3, 2), scalar(-1, 2));
  for (Method m : kEquivalentMethods) EXPECT_EQ(inverse(scalars(1, 2, 3, 4), m).m, classical) << method_name(m);

  const Matrix2 expected = make_matrix2(quat(Rational(1, 2), 0, 0, Rational(1, 2)), quat(0, Rational(-1, 2), Rational(-1, 2)),
                                        quat(0, Rational(-1, 2), Rational(-1, 2)), quat(Rational(1, 2), 0, 0, Rational(-1, 2)));
  EXPECT_TRUE(oracle_is_identity(oracle_product(sample_one(), expected)));
  EXPECT_TRUE(oracle_is_identity(oracle_product(expected, sample_one())));
  // [[1, i], [j, 1]] satisfies every precondition set.
  for (Method m : kEquivalentMethods) EXPECT_EQ(inverse(sample_one(), m).m, expected) << method_name(m);
}

TEST(Nc2x2, PreconditionSubjects) {
  // a = 0: the Gelfand route needs a^-1.
  const Matrix2 a_zero = make_matrix2(quat(0), qi(), qj(), q1());
  try {
    inverse(a_zero, Method::Gelfand);
    FAIL();
  } catch (const NotInvertible& e) {
    EXPECT_EQ(e.subject(), "a");
  }
  // Left/acb only needs b, d and the quasi-entries, so a = 0 is fine.
  const Matrix2 x = inverse(a_zero, Method::LeftResidue).m;
  EXPECT_TRUE(oracle_is_identity(oracle_product(x, a_zero)));
  EXPECT_TRUE(oracle_is_identity(oracle_product(a_zero, x)));

  // [[i, j], [k, 1]]: Delta' = 0.
  try {
    inverse(make_matrix2(qi(), qj(), qk(), q1()), Method::RightResiduePrime);
    FAIL();
  } catch (const NotInvertible& e) {
    EXPECT_EQ(e.subject(), "Delta'");
  }
}

TEST(Nc2x2, Triangular) {
  EXPECT_TRUE(triangular_inverse(Matrix2::identity(RingContext::quaternion())).m.is_identity());
  const Matrix2 up = make_matrix2(qi(), qj(), quat(0), qk());
  const Matrix2 x = triangular_inverse(up).m;
  EXPECT_TRUE(oracle_is_identity(oracle_product(x, up)));
  EXPECT_TRUE(oracle_is_identity(oracle_product(up, x)));
  EXPECT_EQ(x, make_matrix2(-qi(), q1(), quat(0), -qk()));

  const Matrix2 lower = make_matrix2(q1(), quat(0), qj(), q1());
  EXPECT_EQ(triangular_inverse(lower).m, make_matrix2(q1(), quat(0), -qj(), q1()));
  EXPECT_EQ(inverse(lower, Method::Triangular).m, make_matrix2(q1(), quat(0), -qj(), q1()));

  EXPECT_THROW(triangular_inverse(sample_one()), Error);
  // The closed forms need b^-1 here.
  EXPECT_THROW(inverse(lower, Method::LeftResidue), NotInvertible);
}

TEST(Nc2x2, MethodNames) {
  for (Method m : {Method::LeftResidue, Method::RightResidue, Method::LeftResiduePrime, Method::RightResiduePrime,
                   Method::Gelfand, Method::Triangular})
    EXPECT_EQ(parse_method(method_name(m)), m);
  EXPECT_FALSE(parse_method("cramer"));
  EXPECT_EQ(residue_method(Side::Right, Ordering::DeltaABC), Method::RightResiduePrime);
  EXPECT_FALSE(residue_route(Method::Gelfand));
}

TEST(Nc2x2, MixedEntriesRejected) {
  EXPECT_THROW(make_matrix2(q1(), scalar(1), q1(), q1()), MixedRingKinds);
}

// ---------------------------------------------------------------------------
// Random samples

class Nc2x2Random : public ::testing::TestWithParam<std::string> {
 protected:
  RingContext ring() const { return RingContext::parse(GetParam()); }
};

TEST_P(Nc2x2Random, RoutesAgreeAndInvert) {
  Sampler s(derive_seed(2024, 0));
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    const Matrix2 A = random_matrix(s, ring());
    std::optional<Matrix2> reference;
    try {
      reference = inverse(A, Method::Gelfand).m;
    } catch (const NotInvertible&) {
      continue;
    }
    ++checked;
    ASSERT_TRUE((*reference * A).is_identity());
    ASSERT_TRUE((A * *reference).is_identity());
    for (Method m : kEquivalentMethods) {
      try {
        ASSERT_EQ(inverse(A, m).m, *reference) << method_name(m);
      } catch (const NotInvertible&) {
      }
    }
  }
  EXPECT_GT(checked, 200);
}

TEST_P(Nc2x2Random, ResidueAndDecompositionForms) {
  Sampler s(derive_seed(2024, 1));
  for (int t = 0; t < 200; ++t) {
    const Matrix2 A = random_matrix(s, ring());
    for (auto [side, ord] : kRoutes) {
      try {
        const Matrix2 B = residue(A, side, ord).m;
        ASSERT_EQ(B, residue_commutator_form(A, side, ord).m);
        if (side == Side::Left && ord == Ordering::DeltaACB) ASSERT_TRUE(B.d.is_zero());
        if (side == Side::Right && ord == Ordering::DeltaABC) ASSERT_TRUE(B.a.is_zero());
        const Matrix2 T = decomposition(A, side, ord).m;
        ASSERT_EQ(side == Side::Left ? T * A : A * T, B);
        ASSERT_EQ(T, commutative_inverse(A, side, ord) - inverse(A, Method::Gelfand).m);
        if (side == Side::Left && ord == Ordering::DeltaACB) ASSERT_EQ(T, left_decomposition_commutator_form(A).m);
      } catch (const NotInvertible&) {
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Rings, Nc2x2Random, ::testing::Values("quaternion", "matrix:2", "matrix:3"),
                         [](const auto& info) {
                           std::string name = info.param;
                           for (char& c : name)
                             if (c == ':') c = '_';
                           return name;
                         });

TEST(Nc2x2, CentralEntriesCollapse) {
  Sampler s(31);
  for (int t = 0; t < 100; ++t) {
    const Matrix2 A = make_matrix2(quat(s.rational(5)), quat(s.rational(5)), quat(s.rational(5)), quat(s.rational(5)));
    for (auto [side, ord] : kRoutes) {
      try {
        ASSERT_TRUE(residue(A, side, ord).m.is_zero());
        ASSERT_TRUE(decomposition(A, side, ord).m.is_zero());
      } catch (const NotInvertible&) {
      }
    }
  }
}
