#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mukai/linalg.hpp"
#include "mukai/matrix.hpp"

namespace mukai {

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct Diagonalization {
  QMatrix basis;           // columns c_i with c_i^T G c_j = 0 for i != j
  std::vector<Rational> diag;  // c_i^T G c_i
};

// Congruence diagonalization with a fixed pivot rule: use the diagonal entry
// if nonzero, else swap in a later nonzero diagonal, else replace e_k by
// e_k + e_j for the first j with G(k,j) != 0.
inline Diagonalization congruence_diagonalize(const QMatrix& gram) {
  const std::size_t n = gram.rows();
  QMatrix A = gram, C = QMatrix::identity(n);
  auto add_to = [&](std::size_t k, std::size_t j, const Rational& f) {  // e_k += f e_j
    for (std::size_t i = 0; i < n; ++i)
      if (!A(j, i).is_zero()) A(k, i) += f * A(j, i);
    for (std::size_t i = 0; i < n; ++i)
      if (!A(i, j).is_zero()) A(i, k) += f * A(i, j);
    for (std::size_t i = 0; i < n; ++i)
      if (!C(i, j).is_zero()) C(i, k) += f * C(i, j);
  };
  auto swap_idx = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < n; ++i) std::swap(A(a, i), A(b, i));
    for (std::size_t i = 0; i < n; ++i) std::swap(A(i, a), A(i, b));
    for (std::size_t i = 0; i < n; ++i) std::swap(C(i, a), C(i, b));
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (A(k, k).is_zero()) {
      std::size_t j = k + 1;
      while (j < n && A(j, j).is_zero()) ++j;
      if (j < n) {
        swap_idx(k, j);
      } else {
        std::size_t t = k + 1;
        while (t < n && A(k, t).is_zero()) ++t;
        if (t == n) throw Error(Errc::Degenerate, "Gram matrix is singular");
        add_to(k, t, Rational(1));
      }
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (A(i, k).is_zero()) continue;
      add_to(i, k, -(A(i, k) / A(k, k)));
    }
  }
  std::vector<Rational> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = A(i, i);
    if (d[i].is_zero()) throw Error(Errc::Degenerate, "Gram matrix is singular");
  }
  return {std::move(C), std::move(d)};
}

class QuadSpace {
 public:
  QuadSpace() : data_(std::make_shared<Data>()) {}

  static QuadSpace make(const QMatrix& gram) {
    if (!gram.square()) throw Error(Errc::DimensionMismatch, "Gram must be square, got " + gram.shape());
    for (std::size_t i = 0; i < gram.rows(); ++i)
      for (std::size_t j = i + 1; j < gram.cols(); ++j)
        if (gram(i, j) != gram(j, i)) throw Error(Errc::NotSymmetric, "Gram is not symmetric");
    QuadSpace s;
    auto d = std::make_shared<Data>();
    d->gram = gram;
    d->diag = congruence_diagonalize(gram);
    for (const auto& x : d->diag.diag) (x.sign() > 0 ? d->sig.positive : d->sig.negative)++;
    s.data_ = std::move(d);
    return s;
  }

  std::size_t rank() const { return data_->gram.rows(); }
  const QMatrix& gram() const { return data_->gram; }
  const Diagonalization& diagonalization() const { return data_->diag; }
  Signature signature() const { return data_->sig; }

  Rational pair(const QVec& u, const QVec& v) const {
    if (u.size() != rank() || v.size() != rank()) throw Error(Errc::DimensionMismatch, "pairing vector length");
    const QMatrix& G = data_->gram;
    Rational s;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (u[i].is_zero()) continue;
      Rational t;
      for (std::size_t j = 0; j < rank(); ++j)
        if (!v[j].is_zero() && !G(i, j).is_zero()) t += G(i, j) * v[j];
      if (!t.is_zero()) s += u[i] * t;
    }
    return s;
  }
  Rational norm(const QVec& v) const { return pair(v, v); }

  friend bool operator==(const QuadSpace& a, const QuadSpace& b) {
    return a.data_ == b.data_ || a.data_->gram == b.data_->gram;
  }

 private:
  struct Data {
    QMatrix gram;
    Diagonalization diag;
    Signature sig;
  };
  std::shared_ptr<const Data> data_;
};

inline QuadSpace make_space(const QMatrix& gram) { return QuadSpace::make(gram); }
inline Signature signature(const QuadSpace& s) { return s.signature(); }

inline void require_same_space(const QuadSpace& a, const QuadSpace& b) {
  if (!(a == b)) throw Error(Errc::SpaceMismatch, "operands live in different quadratic spaces");
}

// A quadratic space extended by a hyperbolic plane Q alpha + Q beta with
// b(alpha, beta) = -1. Coordinates: alpha first, base next, beta last.
class MukaiSpace {
 public:
  MukaiSpace() = default;
  explicit MukaiSpace(const QuadSpace& base) : base_(base) {
    const std::size_t m = base.rank();
    QMatrix G(m + 2, m + 2);
    G(0, m + 1) = Rational(-1);
    G(m + 1, 0) = Rational(-1);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) G(i + 1, j + 1) = base.gram()(i, j);
    total_ = QuadSpace::make(G);
    grading_.assign(m + 2, 0);
    grading_[0] = -2;
    grading_[m + 1] = 2;
  }

  const QuadSpace& base() const { return base_; }
  const QuadSpace& total() const { return total_; }
  std::size_t base_rank() const { return base_.rank(); }
  std::size_t rank() const { return total_.rank(); }
  std::size_t alpha_index() const { return 0; }
  std::size_t beta_index() const { return base_.rank() + 1; }
  const std::vector<int>& grading() const { return grading_; }

  QVec alpha() const { return unit_vector<Rational>(rank(), alpha_index()); }
  QVec beta() const { return unit_vector<Rational>(rank(), beta_index()); }
  // Base vector placed in the degree-0 slot of the total space.
  QVec embed(const QVec& lambda) const {
    if (lambda.size() != base_rank()) throw Error(Errc::DimensionMismatch, "base vector length");
    QVec v(rank());
    for (std::size_t i = 0; i < lambda.size(); ++i) v[i + 1] = lambda[i];
    return v;
  }
  QVec vec(const Rational& r, const QVec& lambda, const Rational& s) const {
    QVec v = embed(lambda);
    v[alpha_index()] = r;
    v[beta_index()] = s;
    return v;
  }
  // Base component of a total-space vector; throws unless alpha/beta parts vanish.
  QVec degree_zero_part(const QVec& v) const {
    if (v.size() == base_rank()) return v;
    if (v.size() != rank()) throw Error(Errc::DimensionMismatch, "vector length");
    if (!v[alpha_index()].is_zero() || !v[beta_index()].is_zero())
      throw Error(Errc::NotInDegreeZero, "vector has alpha/beta components");
    return QVec(v.begin() + 1, v.end() - 1);
  }

  friend bool operator==(const MukaiSpace& a, const MukaiSpace& b) { return a.total_ == b.total_; }

 private:
  QuadSpace base_;
  QuadSpace total_;
  std::vector<int> grading_;
};

inline MukaiSpace mukai_extend(const QuadSpace& base) { return MukaiSpace(base); }

class Isometry {
 public:
  Isometry() = default;
  static Isometry make(const QuadSpace& space, const QMatrix& m) {
    if (m.rows() != space.rank() || m.cols() != space.rank())
      throw Error(Errc::DimensionMismatch, "isometry matrix " + m.shape() + " for rank " + std::to_string(space.rank()));
    if (m.transpose() * space.gram() * m != space.gram())
      throw Error(Errc::NotIsometry, "matrix does not preserve the form");
    return Isometry(space, m);
  }
  static Isometry identity(const QuadSpace& space) { return Isometry(space, QMatrix::identity(space.rank())); }
  // Skips the Gram check; callers guarantee the invariant by construction.
  static Isometry trusted(const QuadSpace& space, QMatrix m) { return Isometry(space, std::move(m)); }

  const QuadSpace& space() const { return space_; }
  const QMatrix& matrix() const { return m_; }
  QVec operator()(const QVec& v) const { return m_ * v; }

  Isometry inverse() const {
    // g^{-1} = G^{-1} g^T G
    return Isometry(space_, mukai::inverse(space_.gram()) * m_.transpose() * space_.gram());
  }

  friend Isometry operator*(const Isometry& a, const Isometry& b) {
    require_same_space(a.space_, b.space_);
    return Isometry(a.space_, a.m_ * b.m_);
  }
  friend bool operator==(const Isometry& a, const Isometry& b) { return a.m_ == b.m_ && a.space_ == b.space_; }

 private:
  Isometry(QuadSpace s, QMatrix m) : space_(std::move(s)), m_(std::move(m)) {}
  QuadSpace space_;
  QMatrix m_;
};

inline QMatrix reflection_matrix(const QuadSpace& space, const QVec& v) {
  Rational n = space.norm(v);
  if (n.is_zero()) throw Error(Errc::IsotropicVector, "cannot reflect in an isotropic vector");
  const std::size_t r = space.rank();
  QVec Gv = space.gram() * v;
  Rational c = Rational(2) / n;
  QMatrix m = QMatrix::identity(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < r; ++j)
      if (!Gv[j].is_zero()) m(i, j) -= c * v[i] * Gv[j];
  }
  return m;
}

inline Isometry reflection(const QuadSpace& space, const QVec& v) {
  return Isometry::trusted(space, reflection_matrix(space, v));
}

// Reflection vectors v_1..v_k with g = s_{v_1} s_{v_2} ... s_{v_k}.
inline std::vector<QVec> cartan_dieudonne(const QuadSpace& space, const Isometry& g) {
  require_same_space(space, g.space());
  const auto& D = space.diagonalization();
  const std::size_t n = space.rank();
  std::vector<QVec> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(D.basis.column(i));
  std::vector<bool> done(n, false);
  QMatrix h = g.matrix();
  std::vector<QVec> out;
  auto apply_reflection = [&](const QVec& w) {
    h = reflection_matrix(space, w) * h;
    out.push_back(w);
  };
  while (true) {
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && h * xs[i] == xs[i]) done[i] = true;
    std::size_t first_open = n;
    for (std::size_t i = 0; i < n && first_open == n; ++i)
      if (!done[i]) first_open = i;
    if (first_open == n) break;
    bool progressed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      QVec w = h * xs[i] - xs[i];
      if (!space.norm(w).is_zero()) {
        apply_reflection(w);
        done[i] = true;
        progressed = true;
        break;
      }
    }
    if (progressed) continue;
    // every open x has h(x) - x isotropic: send x to -x, then reflect in x
    const QVec& x = xs[first_open];
    apply_reflection(h * x + x);
    apply_reflection(x);
    done[first_open] = true;
  }
  if (h != QMatrix::identity(n))
    throw Error(Errc::InternalInconsistency, "Cartan-Dieudonne residual is not the identity");
  return out;
}

// Orientation of the positive part, measured on the positively diagonalized
// basis vectors of the space.
inline bool is_plus(const QuadSpace& space, const QMatrix& g) {
  const auto& D = space.diagonalization();
  std::vector<QVec> P;
  for (std::size_t i = 0; i < D.diag.size(); ++i)
    if (D.diag[i].sign() > 0) P.push_back(D.basis.column(i));
  if (P.empty()) throw Error(Errc::PreconditionViolated, "space has no positive part");
  QMatrix M(P.size(), P.size());
  for (std::size_t k = 0; k < P.size(); ++k) {
    QVec gp = g * P[k];
    for (std::size_t j = 0; j < P.size(); ++j) M(j, k) = space.pair(gp, P[j]);
  }
  Rational d = determinant(M);
  if (d.is_zero()) throw Error(Errc::InternalInconsistency, "degenerate positive projection");
  return d.sign() > 0;
}
inline bool is_plus(const QuadSpace& space, const Isometry& g) {
  require_same_space(space, g.space());
  return is_plus(space, g.matrix());
}

// Lattice building blocks.
inline QMatrix hyperbolic_gram() { return QMatrix{{0, -1}, {-1, 0}}; }

inline QMatrix e8_negative_gram() {
  QMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = Rational(-2);
  const std::pair<int, int> edges[] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  for (auto [a, b] : edges) g(a, b) = g(b, a) = Rational(1);
  return g;
}

inline QMatrix orthogonal_sum(const std::vector<QMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  QMatrix g(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) g(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return g;
}

inline QMatrix diagonal_gram(std::initializer_list<long> d) {
  QVec v;
  for (long x : d) v.emplace_back(x);
  return QMatrix::diagonal(v);
}

// U^3 + E8(-1)^2, rank 22.
inline QMatrix k3_gram() {
  auto U = hyperbolic_gram();
  auto E = e8_negative_gram();
  return orthogonal_sum({U, U, U, E, E});
}

// K3 + <-2>, rank 23; the last coordinate is delta.
inline QMatrix k3_hilb_gram() { return orthogonal_sum({k3_gram(), diagonal_gram({-2})}); }

}  // namespace mukai
