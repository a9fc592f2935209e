#pragma once

// so(V, b), the generators e_lambda and B_lambda of a Mukai space, graded
// modules, hard Lefschetz checks and sl2-triple completion.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "mukai/linalg.hpp"
#include "mukai/quadspace.hpp"

namespace mukai {

// X^T G + G X = 0
inline bool in_so(const QuadSpace& space, const QMatrix& x) {
  if (x.rows() != space.rank() || x.cols() != space.rank()) return false;
  QMatrix gx = space.gram() * x;
  return (gx.transpose() + gx).is_zero();
}

class LieElement {
 public:
  LieElement() = default;
  static LieElement make(const QuadSpace& space, const QMatrix& m) {
    if (m.rows() != space.rank() || m.cols() != space.rank())
      throw Error(Errc::DimensionMismatch, "Lie element " + m.shape());
    QMatrix gm = space.gram() * m;
    if (gm.transpose() + gm != QMatrix(space.rank(), space.rank()))
      throw Error(Errc::NotIsometry, "matrix is not in so(V, b)");
    return LieElement(space, m);
  }
  static LieElement trusted(const QuadSpace& space, QMatrix m) { return LieElement(space, std::move(m)); }

  const QuadSpace& space() const { return space_; }
  const QMatrix& matrix() const { return m_; }

  friend LieElement operator+(const LieElement& a, const LieElement& b) {
    require_same_space(a.space_, b.space_);
    return LieElement(a.space_, a.m_ + b.m_);
  }
  friend LieElement operator*(const Rational& s, const LieElement& a) { return LieElement(a.space_, s * a.m_); }
  friend bool operator==(const LieElement& a, const LieElement& b) { return a.m_ == b.m_ && a.space_ == b.space_; }

 private:
  LieElement(QuadSpace s, QMatrix m) : space_(std::move(s)), m_(std::move(m)) {}
  QuadSpace space_;
  QMatrix m_;
};

inline QMatrix commutator(const QMatrix& x, const QMatrix& y) { return x * y - y * x; }

inline LieElement bracket(const LieElement& x, const LieElement& y) {
  require_same_space(x.space(), y.space());
  return LieElement::trusted(x.space(), commutator(x.matrix(), y.matrix()));
}

// G^{-1}(E_ij - E_ji) for i < j, in lexicographic order of (i, j).
inline std::vector<LieElement> so_basis(const QuadSpace& space) {
  const std::size_t n = space.rank();
  QMatrix Ginv = inverse(space.gram());
  std::vector<LieElement> out;
  out.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      QMatrix x(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        x(r, j) += Ginv(r, i);
        x(r, i) -= Ginv(r, j);
      }
      out.push_back(LieElement::trusted(space, std::move(x)));
    }
  return out;
}

inline LieElement e_lambda(const MukaiSpace& m, const QVec& lambda_in) {
  QVec lambda = m.degree_zero_part(lambda_in);
  const std::size_t n = m.rank();
  QMatrix e(n, n);
  QVec lam = m.embed(lambda);
  for (std::size_t i = 0; i < n; ++i) e(i, m.alpha_index()) = lam[i];  // alpha -> lambda
  QVec Gl = m.base().gram() * lambda;
  for (std::size_t j = 0; j < lambda.size(); ++j) e(m.beta_index(), j + 1) = Gl[j];  // mu -> b(lambda, mu) beta
  return LieElement::trusted(m.total(), std::move(e));
}

// B_lambda(r alpha + mu + s beta) = r alpha + (mu + r lambda) + (s + b(mu, lambda) + r b(lambda,lambda)/2) beta
inline Isometry b_lambda(const MukaiSpace& m, const QVec& lambda_in) {
  QVec lambda = m.degree_zero_part(lambda_in);
  const std::size_t n = m.rank();
  QMatrix B = QMatrix::identity(n);
  QVec lam = m.embed(lambda);
  for (std::size_t i = 1; i + 1 < n; ++i) B(i, m.alpha_index()) = lam[i];
  B(m.beta_index(), m.alpha_index()) = m.base().norm(lambda) / Rational(2);
  QVec Gl = m.base().gram() * lambda;
  for (std::size_t j = 0; j < lambda.size(); ++j) B(m.beta_index(), j + 1) = Gl[j];
  return Isometry::trusted(m.total(), std::move(B));
}

// alpha -> -beta, beta -> -alpha, identity on the base.
inline Isometry gamma_S(const MukaiSpace& m) {
  QMatrix g = QMatrix::identity(m.rank());
  g(m.alpha_index(), m.alpha_index()) = Rational(0);
  g(m.beta_index(), m.beta_index()) = Rational(0);
  g(m.beta_index(), m.alpha_index()) = Rational(-1);
  g(m.alpha_index(), m.beta_index()) = Rational(-1);
  return Isometry::trusted(m.total(), std::move(g));
}

// alpha <-> beta, -1 on the base; equals -gamma_S.
inline Isometry gamma_L(const MukaiSpace& m) {
  return Isometry::trusted(m.total(), -gamma_S(m).matrix());
}

struct GradedModule {
  std::vector<int> degrees;
  std::size_t dim() const { return degrees.size(); }
  std::vector<std::size_t> indices_of_degree(int d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < degrees.size(); ++i)
      if (degrees[i] == d) out.push_back(i);
    return out;
  }
  QMatrix grading_operator() const {
    QMatrix h(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) h(i, i) = Rational(degrees[i]);
    return h;
  }
};

inline GradedModule graded_module(const MukaiSpace& m) { return {m.grading()}; }

// Throws NotDegreeTwo unless e maps M_k into M_{k+2} for every k.
inline void require_degree(const QMatrix& e, const GradedModule& M, int degree) {
  if (e.rows() != M.dim() || e.cols() != M.dim())
    throw Error(Errc::DimensionMismatch, "endomorphism " + e.shape() + " on module of dim " + std::to_string(M.dim()));
  for (std::size_t i = 0; i < M.dim(); ++i)
    for (std::size_t j = 0; j < M.dim(); ++j)
      if (!e(i, j).is_zero() && M.degrees[i] != M.degrees[j] + degree) {
        if (degree == 2) throw Error(Errc::NotDegreeTwo, "endomorphism is not homogeneous of degree 2");
        throw Error(Errc::DegreeMismatch, "endomorphism is not homogeneous of degree " + std::to_string(degree));
      }
}

inline bool has_hard_lefschetz(const QMatrix& e, const GradedModule& M) {
  require_degree(e, M, 2);
  std::set<int> levels;
  for (int d : M.degrees) levels.insert(d < 0 ? -d : d);
  QMatrix power = QMatrix::identity(M.dim());
  int reached = 0;
  for (int n : levels) {
    while (reached < n) {
      power = e * power;
      ++reached;
    }
    auto src = M.indices_of_degree(-n), dst = M.indices_of_degree(n);
    if (src.size() != dst.size()) return false;
    QMatrix block(dst.size(), src.size());
    for (std::size_t i = 0; i < dst.size(); ++i)
      for (std::size_t j = 0; j < src.size(); ++j) block(i, j) = power(dst[i], src[j]);
    if (rank(block) != src.size()) return false;
  }
  return true;
}

struct Sl2Triple {
  QMatrix e, h, f;
  std::size_t homogeneous_solutions = 0;  // dim of {f : (ad e)^2 f = 0, deg f = -2}
};

inline bool satisfies_sl2(const QMatrix& e, const QMatrix& h, const QMatrix& f) {
  return commutator(h, e) == Rational(2) * e && commutator(h, f) == Rational(-2) * f && commutator(e, f) == h;
}

// Solves (ad e)^2 f = -2e over degree -2 endomorphisms.
inline Sl2Triple sl2_complete(const QMatrix& e, const GradedModule& M) {
  if (!has_hard_lefschetz(e, M)) throw Error(Errc::NoHardLefschetz, "e lacks the hard Lefschetz property");
  const std::size_t n = M.dim();
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> eq_index;
  std::vector<std::pair<std::size_t, std::size_t>> equations;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (M.degrees[i] == M.degrees[j] - 2) unknowns.emplace_back(i, j);
      if (M.degrees[i] == M.degrees[j] + 2) {
        eq_index[{i, j}] = equations.size();
        equations.emplace_back(i, j);
      }
    }
  QMatrix e2 = e * e;
  QMatrix A(equations.size(), unknowns.size()), rhs(equations.size(), 1);
  for (std::size_t k = 0; k < equations.size(); ++k) rhs(k, 0) = Rational(-2) * e(equations[k].first, equations[k].second);
  auto add = [&](std::size_t i, std::size_t j, std::size_t u, const Rational& c) {
    auto it = eq_index.find({i, j});
    if (it == eq_index.end()) throw Error(Errc::InternalInconsistency, "(ad e)^2 left the degree 2 block");
    A(it->second, u) += c;
  };
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    auto [a, b] = unknowns[u];
    for (std::size_t i = 0; i < n; ++i)  // e^2 E_ab
      if (!e2(i, a).is_zero()) add(i, b, u, e2(i, a));
    for (std::size_t j = 0; j < n; ++j)  // E_ab e^2
      if (!e2(b, j).is_zero()) add(a, j, u, e2(b, j));
    for (std::size_t i = 0; i < n; ++i) {  // -2 e E_ab e
      if (e(i, a).is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!e(b, j).is_zero()) add(i, j, u, Rational(-2) * e(i, a) * e(b, j));
    }
  }
  auto sol = solve(A, rhs);
  if (sol.status == SolveStatus::NoSolution)
    throw Error(Errc::InternalInconsistency, "(ad e)^2 f = -2e has no solution");
  Sl2Triple t;
  t.homogeneous_solutions = unknowns.size() - rank(A);
  if (sol.status == SolveStatus::NonUnique)
    throw Error(Errc::InternalInconsistency, "(ad e)^2 is not injective on degree -2 endomorphisms");
  t.e = e;
  t.h = M.grading_operator();
  t.f = QMatrix(n, n);
  for (std::size_t u = 0; u < unknowns.size(); ++u) t.f(unknowns[u].first, unknowns[u].second) = sol.x(u, 0);
  if (!satisfies_sl2(t.e, t.h, t.f)) throw Error(Errc::InternalInconsistency, "solved f violates the sl2 relations");
  return t;
}

// Dimension of the Lie algebra generated by the given matrices.
inline std::size_t lie_closure_dim(const std::vector<QMatrix>& gens) {
  if (gens.empty()) return 0;
  const std::size_t n = gens.front().rows();
  RowEchelon<Rational> span(n * n);
  std::vector<QMatrix> basis;
  auto try_add = [&](const QMatrix& x) {
    if (span.insert(x.data())) basis.push_back(x);
  };
  for (const auto& g : gens) try_add(g);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) try_add(commutator(basis[i], basis[j]));
  return basis.size();
}

}  // namespace mukai
