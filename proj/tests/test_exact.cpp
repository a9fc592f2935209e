#include <gtest/gtest.h>

#include "mukai/integer.hpp"
#include "mukai/linalg.hpp"
#include "mukai/quad_ext.hpp"

using namespace mukai;

TEST(Rational, CanonicalForm) {
  Rational r(6, -4);
  EXPECT_EQ(r.to_string(), "-3/2");
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("7").to_string(), "7");
  EXPECT_THROW(Rational::parse("1/0"), Error);
  EXPECT_THROW(Rational::parse("x"), Error);
}

TEST(Rational, OverflowFallsBackToBigAndDemotes) {
  Rational big(INT64_MAX);
  Rational sq = big * big;
  EXPECT_FALSE(sq.is_small());
  EXPECT_EQ(sq.to_string(), "85070591730234615847396907784232501249");
  Rational back = sq / big;
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, big);
  Rational tiny = Rational(1) / sq;
  EXPECT_EQ(tiny * sq, Rational(1));
  EXPECT_LT(tiny, Rational(1, INT64_MAX));
  EXPECT_EQ(big + big - big, big);
}

TEST(Rational, ArithmeticMatchesGmp) {
  // cross-check the inline fast path against plain mpq arithmetic
  std::vector<Rational> xs;
  for (long n : {-7L, -3L, 0L, 1L, 5L, 1000000007L, 4611686018427387904L})
    for (long d : {1L, 2L, 9L, 3037000499L}) xs.emplace_back(n, d);
  for (const auto& a : xs)
    for (const auto& b : xs) {
      mpq_class qa = a.to_mpq(), qb = b.to_mpq();
      EXPECT_EQ((a + b).to_mpq(), qa + qb);
      EXPECT_EQ((a - b).to_mpq(), qa - qb);
      EXPECT_EQ((a * b).to_mpq(), qa * qb);
      if (!b.is_zero()) {
        EXPECT_EQ((a / b).to_mpq(), qa / qb);
      }
      EXPECT_EQ(a < b, qa < qb);
      EXPECT_EQ(a == b, qa == qb);
    }
}

TEST(QuadExt, FieldArithmetic) {
  QuadExt i(0, 1, -1);
  EXPECT_EQ(i * i, QuadExt(-1));
  QuadExt z(Rational(1, 2), 3, -3);
  EXPECT_EQ(z * z.inverse(), QuadExt(1));
  EXPECT_EQ(z.conj().b(), Rational(-3));
  EXPECT_EQ(z.to_string(), "1/2+3*sqrt(-3)");
  EXPECT_EQ(QuadExt::parse("1/2+3*sqrt(-3)"), z);
  EXPECT_THROW(i * z, Error);
  EXPECT_THROW(QuadExt(1, 1, -4), Error);
  EXPECT_THROW(QuadExt(1, 1, 5), Error);
}

TEST(MatMul, Basics) {
  QMatrix a{{1, 1}, {0, 1}}, b{{1, 0}, {1, 1}};
  EXPECT_EQ(mat_mul(a, b), (QMatrix{{2, 1}, {1, 1}}));
  EXPECT_EQ(mat_mul(QMatrix::identity(2), a), a);
  EXPECT_THROW(mat_mul(a, QMatrix(3, 1)), Error);
  Matrix<QuadExt> qa{{QuadExt(0, 1, -1)}}, qb{{QuadExt(0, 1, -2)}};
  EXPECT_THROW(mat_mul(qa, qb), Error);
}

TEST(Kernel, CanonicalForm) {
  EXPECT_EQ(kernel_basis(QMatrix(2, 2)).cols(), 2u);
  EXPECT_EQ(kernel_basis(QMatrix::identity(3)).cols(), 0u);
  QMatrix k = kernel_basis(QMatrix{{1, 2}});
  EXPECT_EQ(k, (QMatrix{{-2}, {1}}));
  QMatrix m{{Rational(1, 2), Rational(1, 3), 0, 1}, {0, 0, 1, Rational(-2, 5)}};
  QMatrix kb = kernel_basis(m);
  EXPECT_EQ(kb.cols(), 2u);
  EXPECT_TRUE((m * kb).is_zero());
  EXPECT_EQ(kb.column(0), qvec({-2, 3, 0, 0}));
  EXPECT_EQ(kb.column(1), qvec({-10, 0, 2, 5}));
}

TEST(Solve, Outcomes) {
  QMatrix rhs{{1}, {1}};
  auto u = solve(QMatrix::identity(2), rhs);
  EXPECT_EQ(u.status, SolveStatus::Unique);
  EXPECT_EQ(u.x, rhs);
  EXPECT_EQ(solve(QMatrix{{1, 0}, {0, 0}}, rhs).status, SolveStatus::NoSolution);
  EXPECT_EQ(solve(QMatrix{{1, 1}}, QMatrix{{1}}).status, SolveStatus::NonUnique);
  QMatrix m{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  EXPECT_EQ(m * inverse(m), QMatrix::identity(3));
  Matrix<QuadExt> q{{QuadExt(1, 1, -1), QuadExt(2)}, {QuadExt(0), QuadExt(0, 3, -1)}};
  EXPECT_EQ(q * inverse(q), Matrix<QuadExt>::identity(2));
}

TEST(ExpNilpotent, Basics) {
  EXPECT_EQ(exp_nilpotent(QMatrix(3, 3)), QMatrix::identity(3));
  EXPECT_EQ(exp_nilpotent(QMatrix{{0, 1}, {0, 0}}), (QMatrix{{1, 1}, {0, 1}}));
  EXPECT_THROW(exp_nilpotent(QMatrix{{0, 1}, {1, 0}}), Error);
  QMatrix n{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  EXPECT_EQ(exp_nilpotent(n), (QMatrix{{1, 0, 0}, {1, 1, 0}, {Rational(1, 2), 1, 1}}));
}

TEST(Determinant, Values) {
  EXPECT_EQ(determinant(QMatrix{{1, 2}, {3, 4}}), Rational(-2));
  EXPECT_EQ(determinant(QMatrix{{0, 1}, {1, 0}}), Rational(-1));
  EXPECT_EQ(determinant(QMatrix(2, 2)), Rational(0));
}

TEST(RowEchelon, IncrementalRank) {
  RowEchelon<Rational> e(3);
  EXPECT_TRUE(e.insert(qvec({1, 2, 3})));
  EXPECT_TRUE(e.insert(qvec({0, 1, 1})));
  EXPECT_FALSE(e.insert(qvec({1, 3, 4})));
  EXPECT_TRUE(e.contains(qvec({2, 5, 7})));
  EXPECT_FALSE(e.contains(qvec({0, 0, 1})));
  EXPECT_EQ(e.rank(), 2u);
}

TEST(Integer, KernelAndSpan) {
  IMatrix a(1, 3);
  a(0, 0) = 2;
  a(0, 1) = 4;
  a(0, 2) = 6;
  IMatrix k = integer_kernel(a);
  EXPECT_EQ(k.cols(), 2u);
  EXPECT_TRUE((a * k).is_zero());
  IMatrix g(2, 3);
  g(0, 0) = 2; g(0, 1) = 0; g(0, 2) = 1;
  g(1, 0) = 0; g(1, 1) = 2; g(1, 2) = 1;
  IMatrix b = z_span_basis(g);
  EXPECT_EQ(b.cols(), 2u);
  EXPECT_EQ(determinant(to_rational(b)).to_string(), "2");
  auto [gg, x] = extended_gcd({Integer(12), Integer(-18), Integer(8)});
  EXPECT_EQ(gg, 2);
  EXPECT_EQ(12 * x[0] - 18 * x[1] + 8 * x[2], 2);
}
