#include <gtest/gtest.h>

#include <random>

#include "mukai/quadspace.hpp"

using namespace mukai;

namespace {

QMatrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
  QMatrix m = QMatrix::identity(n);
  for (int step = 0; step < 12; ++step) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    long c = static_cast<long>(rng() % 5) - 2;
    for (std::size_t r = 0; r < n; ++r) m(r, j) += Rational(c) * m(r, i);
  }
  return m;
}

}  // namespace

TEST(MakeSpace, Validation) {
  EXPECT_NO_THROW(make_space(hyperbolic_gram()));
  try {
    make_space(QMatrix{{0, 0}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Degenerate);
  }
  try {
    make_space(QMatrix{{0, 1}, {2, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotSymmetric);
  }
}

TEST(Signature, Examples) {
  EXPECT_EQ(signature(make_space(hyperbolic_gram())), (Signature{1, 1}));
  EXPECT_EQ(signature(make_space(diagonal_gram({-2}))), (Signature{0, 1}));
  EXPECT_EQ(signature(make_space(e8_negative_gram())), (Signature{0, 8}));
  EXPECT_EQ(determinant(e8_negative_gram()), Rational(1));
  EXPECT_EQ(signature(mukai_extend(make_space(k3_gram())).total()), (Signature{4, 20}));
  EXPECT_EQ(signature(mukai_extend(make_space(k3_hilb_gram())).total()), (Signature{4, 21}));
  EXPECT_EQ(signature(make_space(k3_hilb_gram())), (Signature{3, 20}));
  EXPECT_EQ(signature(mukai_extend(make_space(diagonal_gram({2}))).total()), (Signature{2, 1}));
  EXPECT_EQ(signature(mukai_extend(make_space(QMatrix())).total()), (Signature{1, 1}));
}

TEST(Signature, InvariantUnderBaseChange) {
  std::mt19937_64 rng(11);
  for (const QMatrix& g : {k3_hilb_gram(), orthogonal_sum({hyperbolic_gram(), diagonal_gram({2, -6, 1})})}) {
    auto s = signature(make_space(g));
    for (int t = 0; t < 5; ++t) {
      QMatrix P = random_unimodular(g.rows(), rng);
      EXPECT_EQ(signature(make_space(P.transpose() * g * P)), s);
    }
  }
}

TEST(Diagonalization, IsCongruence) {
  QMatrix g = orthogonal_sum({hyperbolic_gram(), e8_negative_gram()});
  auto d = congruence_diagonalize(g);
  QMatrix D = d.basis.transpose() * g * d.basis;
  EXPECT_EQ(D, QMatrix::diagonal(d.diag));
}

TEST(MukaiExtend, Structure) {
  auto base = make_space(QMatrix{{2, 1}, {1, -4}});
  auto m = mukai_extend(base);
  EXPECT_EQ(m.rank(), 4u);
  EXPECT_EQ(m.total().pair(m.alpha(), m.beta()), Rational(-1));
  EXPECT_EQ(m.total().norm(m.alpha()), Rational(0));
  EXPECT_EQ(m.total().norm(m.beta()), Rational(0));
  EXPECT_EQ(m.total().gram().block(1, 1, 2, 2), base.gram());
  EXPECT_EQ(m.grading(), (std::vector<int>{-2, 0, 0, 2}));
}

TEST(Reflection, Basics) {
  auto U = make_space(hyperbolic_gram());
  QVec amb = qvec({1, -1});  // alpha - beta, norm 2
  auto s = reflection(U, amb);
  EXPECT_EQ(s(qvec({1, 1})), qvec({1, 1}));
  EXPECT_EQ(s(amb), qvec({-1, 1}));
  EXPECT_EQ((s * s).matrix(), QMatrix::identity(2));
  EXPECT_EQ(determinant(s.matrix()), Rational(-1));
  EXPECT_NO_THROW(Isometry::make(U, s.matrix()));
  try {
    reflection(U, qvec({1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IsotropicVector);
  }
}

namespace {
QMatrix compose(const QuadSpace& V, const std::vector<QVec>& vs) {
  QMatrix m = QMatrix::identity(V.rank());
  for (const auto& v : vs) m = m * reflection_matrix(V, v);
  return m;
}
}  // namespace

TEST(CartanDieudonne, Decompositions) {
  auto UU = make_space(orthogonal_sum({hyperbolic_gram(), hyperbolic_gram()}));
  EXPECT_TRUE(cartan_dieudonne(UU, Isometry::identity(UU)).empty());
  QVec v = qvec({1, 2, 0, 1});
  auto r = cartan_dieudonne(UU, reflection(UU, v));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(rank(QMatrix::from_columns({r[0], v}, 4)), 1u);
  auto minus = Isometry::make(UU, -QMatrix::identity(4));
  auto rm = cartan_dieudonne(UU, minus);
  EXPECT_EQ(rm.size(), 4u);
  EXPECT_EQ(compose(UU, rm), minus.matrix());
}

TEST(CartanDieudonne, RandomProductsWithinBound) {
  auto V = make_space(orthogonal_sum({hyperbolic_gram(), hyperbolic_gram(), diagonal_gram({-2})}));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    QMatrix g = QMatrix::identity(V.rank());
    for (int k = 0; k < 6; ++k) {
      QVec v(V.rank());
      for (auto& x : v) x = Rational(static_cast<long>(rng() % 5) - 2);
      if (V.norm(v).is_zero()) continue;
      g = g * reflection_matrix(V, v);
    }
    auto rs = cartan_dieudonne(V, Isometry::make(V, g));
    EXPECT_LE(rs.size(), V.rank() + 1);
    EXPECT_EQ(compose(V, rs), g);
  }
}

TEST(IsPlus, OrientationRules) {
  auto X = mukai_extend(make_space(k3_gram())).total();
  EXPECT_TRUE(is_plus(X, Isometry::identity(X)));
  EXPECT_TRUE(is_plus(X, Isometry::make(X, -QMatrix::identity(X.rank()))));
  auto V = make_space(orthogonal_sum({hyperbolic_gram(), hyperbolic_gram(), diagonal_gram({-2})}));
  std::mt19937_64 rng(9);
  std::vector<QVec> vs;
  while (vs.size() < 12) {
    QVec v(V.rank());
    for (auto& x : v) x = Rational(static_cast<long>(rng() % 7) - 3);
    if (!V.norm(v).is_zero()) vs.push_back(v);
  }
  for (const auto& v : vs) EXPECT_EQ(is_plus(V, reflection(V, v)), V.norm(v).sign() < 0);
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    auto g = reflection(V, vs[i]), h = reflection(V, vs[i + 1]);
    EXPECT_EQ(is_plus(V, g * h), is_plus(V, g) == is_plus(V, h));
  }
}

TEST(Isometry, RejectsNonIsometry) {
  auto U = make_space(hyperbolic_gram());
  try {
    Isometry::make(U, QMatrix{{2, 0}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotIsometry);
  }
  auto s = reflection(U, qvec({1, -1}));
  EXPECT_EQ((s * s.inverse()).matrix(), QMatrix::identity(2));
}
