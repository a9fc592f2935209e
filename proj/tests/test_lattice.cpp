#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mukai/lattice.hpp"

using namespace mukai;

namespace {

const HilbSqModel& k3() {
  static const HilbSqModel m = HilbSqModel::k3();
  return m;
}

QVec random_int_vec(std::mt19937_64& rng, std::size_t n, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> dist(lo, hi);
  QVec v(n);
  for (auto& x : v) x = Rational(dist(rng));
  return v;
}

// v = x + y sqrt(D) in H^2 of the K3 model
Period period_minus_one() {
  Period p;
  p.D = -1;
  p.x = QVec(23);
  p.y = QVec(23);
  p.x[0] = 1, p.x[1] = -1;
  p.y[2] = 1, p.y[3] = -1;
  return p;
}
Period period_minus_three() {
  Period p = period_minus_one();
  p.D = -3;
  p.x[1] = -3;
  return p;
}
UWitness third_u() { return {unit_vector<Rational>(23, 4), unit_vector<Rational>(23, 5)}; }

}  // namespace

TEST(Lambda, Properties) {
  const auto& m = k3();
  Lattice L = lambda_lattice(m, m.delta());
  EXPECT_EQ(L.rank(), 25u);
  EXPECT_TRUE(L.is_even());
  EXPECT_EQ(abs(L.discriminant()), Rational(2));
  EXPECT_TRUE(L == lambda_lattice(m, -m.delta()));
  Lattice S = standard_mukai_lattice(m.mukai_x());
  EXPECT_FALSE(L.contains(S));
  EXPECT_FALSE(S.contains(L));
  // B_{-delta/2} alpha = alpha - delta/2 - beta/4
  QVec a = m.mukai_x().alpha();
  a[m.delta_index() + 1] = Rational(-1, 2);
  a[m.mukai_x().beta_index()] = Rational(-1, 4);
  EXPECT_TRUE(L.contains(a));
  EXPECT_FALSE(L.contains(m.mukai_x().alpha()));
}

TEST(Lambda, BadDelta) {
  const auto& m = k3();
  QVec odd = m.delta();
  odd[0] = 1;  // norm -2 - 0 but b(odd, f1) = -1
  odd[1] = 0;
  EXPECT_EQ(m.h2().norm(odd), Rational(-2));
  try {
    lambda_lattice(m, odd);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadDelta);
  }
  EXPECT_THROW(lambda_lattice(m, Rational(2) * m.delta()), Error);
  QVec half = m.delta();
  half[0] = Rational(1, 2);
  EXPECT_THROW(lambda_lattice(m, half), Error);
}

TEST(SplitOffU, LambdaComplement) {
  const auto& m = k3();
  Lattice L = lambda_lattice(m, m.delta());
  auto sp = split_off_U(L);
  const auto& V = L.ambient();
  EXPECT_TRUE(V.norm(sp.u).is_zero());
  EXPECT_TRUE(V.norm(sp.v).is_zero());
  EXPECT_EQ(V.pair(sp.u, sp.v), Rational(-1));
  EXPECT_TRUE(L.contains(sp.u) && L.contains(sp.v));
  const auto& X = m.mukai_x();
  QVec u = X.alpha();
  u[m.delta_index() + 1] = Rational(-1, 2);
  u[X.beta_index()] = Rational(-1, 4);
  EXPECT_EQ(sp.u, u);
  EXPECT_EQ(sp.v, X.beta());
  EXPECT_EQ(sp.complement.rank(), 23u);
  EXPECT_EQ(sp.complement.gram(), m.h2().gram());
  // surface block, then delta + beta
  for (std::size_t i = 0; i < 22; ++i) EXPECT_EQ(sp.complement.vector(i), X.embed(unit_vector<Rational>(23, i)));
  EXPECT_EQ(sp.complement.vector(22), X.embed(m.delta()) + X.beta());
  for (std::size_t i = 0; i < sp.complement.rank(); ++i) {
    EXPECT_TRUE(V.pair(sp.complement.vector(i), sp.u).is_zero());
    EXPECT_TRUE(V.pair(sp.complement.vector(i), sp.v).is_zero());
    EXPECT_TRUE(L.contains(sp.complement.vector(i)));
  }
}

TEST(SplitOffU, SumsAndFailure) {
  // hyperbolic plane hidden behind the basis (e + f, f)
  QuadSpace s = QuadSpace::make(orthogonal_sum({hyperbolic_gram(), diagonal_gram({-2})}));
  QMatrix B{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}};
  auto sp = split_off_U(Lattice::make(s, B));
  EXPECT_EQ(s.pair(sp.u, sp.v), Rational(-1));
  EXPECT_EQ(sp.complement.gram(), QMatrix{{-2}});
  QuadSpace d = QuadSpace::make(diagonal_gram({2, -2}));
  try {
    split_off_U(Lattice::make(d, QMatrix::identity(2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NoUnimodularPlaneFound);
  }
}

TEST(Transvection, Identities) {
  MukaiSpace m(QuadSpace::make(orthogonal_sum({hyperbolic_gram(), diagonal_gram({-2})})));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) {
    QVec lam = random_int_vec(rng, 3);
    QVec a = m.embed(lam);
    auto t = eichler_transvection(m.total(), m.beta(), -a);
    EXPECT_EQ(t.matrix(), b_lambda(m, lam).matrix());
    auto G = gamma_L(m);
    EXPECT_EQ((G * t * G.inverse()).matrix(), eichler_transvection(m.total(), m.alpha(), a).matrix());
    EXPECT_NO_THROW(Isometry::make(m.total(), t.matrix()));
  }
  EXPECT_THROW(eichler_transvection(m.total(), m.alpha() + m.beta(), m.alpha()), Error);
}

TEST(Words, EvalAndInverse) {
  MukaiSpace m(QuadSpace::make(hyperbolic_gram()));
  TransvectionWord w;
  w.tags = {WordTag::gamma(), WordTag::b(QVec{1, 2}), WordTag::eichler(m.alpha(), m.embed(QVec{0, 1})),
            WordTag::b(QVec{-1, 0})};
  QMatrix expect = gamma_L(m).matrix() * b_lambda(m, QVec{1, 2}).matrix() *
                   eichler_transvection(m.total(), m.alpha(), m.embed(QVec{0, 1})).matrix() *
                   b_lambda(m, QVec{-1, 0}).matrix();
  EXPECT_EQ(eval(m, w).matrix(), expect);
  EXPECT_EQ((eval(m, inverse(w)) * eval(m, w)).matrix(), QMatrix::identity(4));
  EXPECT_FALSE(w.uses_only_gamma_and_b());
}

class ReduceOnBase : public ::testing::TestWithParam<int> {};

TEST_P(ReduceOnBase, HundredSeeds) {
  std::vector<QMatrix> bases = {orthogonal_sum({hyperbolic_gram(), hyperbolic_gram()}),
                                orthogonal_sum({hyperbolic_gram(), hyperbolic_gram(), diagonal_gram({-2})})};
  MukaiSpace m(QuadSpace::make(bases[GetParam()]));
  UWitness wit{unit_vector<Rational>(m.base_rank(), 0), unit_vector<Rational>(m.base_rank(), 1)};
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = random_isometry(m, seed);
    QVec v = random_int_vec(rng, m.rank());
    auto word = reduce(m, g, v, wit);
    EXPECT_TRUE(word.uses_only_gamma_and_b());
    EXPECT_EQ((eval(m, word) * g)(v), v) << "seed " << seed;
    for (const auto& t : word.tags)
      if (t.kind == WordTag::Kind::BVec) {
        EXPECT_TRUE(is_integral(t.lambda));
      }
  }
}
INSTANTIATE_TEST_SUITE_P(Bases, ReduceOnBase, ::testing::Values(0, 1));

TEST(Reduce, FixedVectorGivesEmptyWord) {
  MukaiSpace m(QuadSpace::make(orthogonal_sum({hyperbolic_gram(), hyperbolic_gram()})));
  UWitness wit{unit_vector<Rational>(4, 0), unit_vector<Rational>(4, 1)};
  EXPECT_TRUE(reduce(m, Isometry::identity(m.total()), m.alpha() + m.beta(), wit).empty());
}

TEST(Reduce, BadWitness) {
  MukaiSpace m(QuadSpace::make(orthogonal_sum({hyperbolic_gram(), hyperbolic_gram()})));
  UWitness wit{unit_vector<Rational>(4, 0), unit_vector<Rational>(4, 2)};
  auto g = random_isometry(m, 3);
  try {
    reduce(m, g, m.alpha(), wit);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PreconditionViolated);
  }
  // flipped orientation is normalized
  UWitness flipped{unit_vector<Rational>(4, 0), -unit_vector<Rational>(4, 1)};
  auto w = reduce(m, g, m.alpha(), flipped);
  EXPECT_EQ((eval(m, w) * g)(m.alpha()), m.alpha());
}

TEST(Period, NeronSeveriAndValidation) {
  const auto& m = k3();
  for (const auto& p : {period_minus_one(), period_minus_three()}) {
    EXPECT_NO_THROW(validate_period(m.h2(), p));
    QMatrix NS = neron_severi(m.h2(), p);
    EXPECT_EQ(NS.cols(), 21u);
    for (std::size_t j = 0; j < NS.cols(); ++j) {
      EXPECT_TRUE(m.h2().pair(NS.column(j), p.x).is_zero());
      EXPECT_TRUE(m.h2().pair(NS.column(j), p.y).is_zero());
    }
    auto s = period_vector(p);
    EXPECT_EQ(s[0], QuadExt(p.x[0], p.y[0], p.D));
  }
  Period bad = period_minus_one();
  bad.D = -4;
  EXPECT_THROW(validate_period(m.h2(), bad), Error);
  bad = period_minus_one();
  bad.y[0] = 1;
  EXPECT_THROW(validate_period(m.h2(), bad), Error);
}

TEST(ReduceHodge, PeriodsMinusOneAndMinusThree) {
  const auto& m = k3();
  const auto& X = m.mukai_x();
  std::mt19937_64 rng(17);
  for (const auto& p : {period_minus_one(), period_minus_three()}) {
    QMatrix NS = neron_severi(m.h2(), p);
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      auto g = random_isometry(X, NS, seed);
      ASSERT_TRUE(is_hodge_isometry(X, g, p));
      QVec v = random_int_vec(rng, X.rank());
      auto word = reduce_hodge(m, g, v, p, third_u());
      EXPECT_EQ((eval(X, word) * g)(v), v);
      EXPECT_TRUE(is_hodge_isometry(X, eval(X, word), p));
      for (const auto& t : word.tags)
        if (t.kind == WordTag::Kind::BVec) {
          EXPECT_TRUE(integral_coordinates(NS, t.lambda).has_value());
        }
    }
  }
}

TEST(ReduceHodge, WitnessOutsideNS) {
  const auto& m = k3();
  UWitness bad{unit_vector<Rational>(23, 0), unit_vector<Rational>(23, 1)};
  try {
    reduce_hodge(m, Isometry::identity(m.mukai_x().total()), m.mukai_x().alpha(), period_minus_one(), bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NSLacksWitness);
  }
}

TEST(HodgeIsometry, Recognition) {
  const auto& X = k3().mukai_x();
  auto p = period_minus_one();
  EXPECT_TRUE(is_hodge_isometry(X, Isometry::identity(X.total()), p));
  EXPECT_TRUE(is_hodge_isometry(X, gamma_L(X), p));
  // rotation x -> y, y -> -x is multiplication by sqrt(-1)
  QMatrix R = QMatrix::identity(X.rank());
  for (std::size_t i : {1u, 2u, 3u, 4u}) R(i, i) = Rational(0);
  // e1 -> e2, f1 -> f2, e2 -> -e1, f2 -> -f1
  R(3, 1) = 1, R(4, 2) = 1, R(1, 3) = -1, R(2, 4) = -1;
  ASSERT_NO_THROW(Isometry::make(X.total(), R));
  EXPECT_TRUE(is_hodge_isometry(X, R, p));
  EXPECT_FALSE(is_hodge_isometry(X, R, period_minus_three()));
  EXPECT_FALSE(is_hodge_isometry(X, b_lambda(X, unit_vector<Rational>(23, 0)), p));
}

TEST(Membership, Generators) {
  const auto& m = k3();
  const auto& X = m.mukai_x();
  Lattice L = lambda_lattice(m, m.delta());
  auto p = period_minus_one();
  QMatrix minus = Rational(-1) * QMatrix::identity(X.rank());
  EXPECT_EQ(membership(L, minus), Membership::InOPlus);
  EXPECT_TRUE(aut_plus_membership(L, X, minus, p));
  QVec ns = unit_vector<Rational>(23, 6);
  QVec not_ns = unit_vector<Rational>(23, 0);
  EXPECT_EQ(membership(L, b_lambda(X, ns)), Membership::InOPlus);
  EXPECT_TRUE(aut_plus_membership(L, X, b_lambda(X, ns).matrix(), p));
  EXPECT_EQ(membership(L, b_lambda(X, not_ns)), Membership::InOPlus);
  EXPECT_FALSE(aut_plus_membership(L, X, b_lambda(X, not_ns).matrix(), p));
  EXPECT_EQ(membership(L, b_lambda(X, Rational(1, 2) * not_ns)), Membership::NotInO);
  EXPECT_EQ(membership(L, Rational(2) * QMatrix::identity(X.rank())), Membership::NotInO);
  // reflection in a norm 2 vector of Lambda reverses the positive orientation
  QVec r = X.embed(unit_vector<Rational>(23, 0) - unit_vector<Rational>(23, 1));
  ASSERT_EQ(X.total().norm(r), Rational(2));
  EXPECT_EQ(membership(L, reflection_matrix(X.total(), r)), Membership::InO);
}

TEST(Membership, HMapLandsInLambda) {
  const auto& m = k3();
  const auto& S = m.mukai_s();
  Lattice L = lambda_lattice(m, m.delta());
  std::vector<Isometry> gens = {gamma_S(S), b_lambda(S, unit_vector<Rational>(22, 0)),
                                b_lambda(S, unit_vector<Rational>(22, 7)),
                                Isometry::make(S.total(), reflection_matrix(S.total(), S.alpha() + S.beta()))};
  for (const auto& g : gens) EXPECT_NE(membership(L, h_map(m, g)), Membership::NotInO);
}

TEST(RandomIsometry, DistinctAndIntegral) {
  MukaiSpace m(QuadSpace::make(orthogonal_sum({hyperbolic_gram(), hyperbolic_gram(), diagonal_gram({-2})})));
  Lattice L = standard_mukai_lattice(m);
  std::set<std::vector<Rational>> seen;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto g = random_isometry(m, seed);
    EXPECT_NE(membership(L, g), Membership::NotInO);
    seen.insert(g.matrix().data());
  }
  EXPECT_EQ(seen.size(), 100u);
  EXPECT_EQ(random_isometry(m, 42).matrix(), random_isometry(m, 42).matrix());
}

TEST(RandomIsometry, SeedZeroPinned) {
  MukaiSpace m(QuadSpace::make(orthogonal_sum({hyperbolic_gram(), hyperbolic_gram(), diagonal_gram({-2})})));
  const QMatrix want{{1, 1, 0, -1, 1, 2, 0},  {0, 1, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0, -1}, {0, 0, 0, 1, 0, 0, -1},
                     {0, 0, 0, 0, 1, 0, 1},   {0, 0, 0, 0, 0, 1, -1}, {0, 0, 0, 0, 0, 0, 1}};
  EXPECT_EQ(random_isometry(m, 0).matrix(), want);
  EXPECT_NO_THROW(Isometry::make(m.total(), want));
}
