#pragma once

// Even cohomology of the Hilbert square of a K3-type surface, presented
// through H^2(X) = H^2(S) + <delta>:
//   H^4 = Sym^2 H^2, H^6 = q_X H^2, H^8 = Q[pt],
//   l1 l2 l3   = b(l1,l2) q l3 + b(l2,l3) q l1 + b(l3,l1) q l2,
//   int l1..l4 = b12 b34 + b13 b24 + b14 b23,
//   int q l m  = b(l, m).
// A degree-4 class is stored as a symmetric matrix S meaning sum_ij S_ij e_i e_j.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mukai/symrep.hpp"

namespace mukai {

class HilbSqModel {
 public:
  explicit HilbSqModel(const QMatrix& surface_gram) {
    auto s = make_space(surface_gram);
    for (std::size_t i = 0; i < surface_gram.rows(); ++i)
      if (!surface_gram(i, i).is_integer() || surface_gram(i, i).numerator() % 2 != 0)
        throw Error(Errc::PreconditionViolated, "surface Gram must be even");
    surface_ = s;
    h2_ = make_space(orthogonal_sum({surface_gram, diagonal_gram({-2})}));
    mukai_s_ = MukaiSpace(surface_);
    mukai_x_ = MukaiSpace(h2_);
    const std::size_t r = h2_.rank();
    ginv_ = inverse(h2_.gram());
    q_ = Rational(Integer(1), Integer(static_cast<long>(r) + 2)) * ginv_;
  }
  static HilbSqModel k3() { return HilbSqModel(k3_gram()); }

  const QuadSpace& surface() const { return surface_; }
  const QuadSpace& h2() const { return h2_; }
  const QMatrix& gram() const { return h2_.gram(); }
  const MukaiSpace& mukai_s() const { return mukai_s_; }
  const MukaiSpace& mukai_x() const { return mukai_x_; }
  std::size_t r() const { return h2_.rank(); }
  std::size_t r_s() const { return surface_.rank(); }
  std::size_t delta_index() const { return r_s(); }
  QVec delta() const { return unit_vector<Rational>(r(), delta_index()); }
  // the degree-4 matrix of q_X
  const QMatrix& q_matrix() const { return q_; }
  const QMatrix& gram_inverse() const { return ginv_; }

  // H^2(S) -> H^2(X); vectors already of length r must have no delta part.
  QVec surface_vector(const QVec& lambda) const {
    if (lambda.size() == r_s()) {
      QVec v(r());
      for (std::size_t i = 0; i < r_s(); ++i) v[i] = lambda[i];
      return v;
    }
    if (lambda.size() == r()) {
      if (!lambda[delta_index()].is_zero()) throw Error(Errc::PreconditionViolated, "class is not orthogonal to delta");
      return lambda;
    }
    throw Error(Errc::DimensionMismatch, "surface class length");
  }

  std::size_t ev_dim() const { return 2 + 2 * r() + r() * (r() + 1) / 2; }

 private:
  QuadSpace surface_, h2_;
  MukaiSpace mukai_s_, mukai_x_;
  QMatrix ginv_, q_;
};

struct CohClass {
  Rational c0;
  QVec c2;
  QMatrix c4;  // symmetric
  QVec c6;     // coefficient vector of q_X * lambda
  Rational c8;

  static CohClass zero(const HilbSqModel& m) { return {Rational(), QVec(m.r()), QMatrix(m.r(), m.r()), QVec(m.r()), Rational()}; }
  static CohClass one(const HilbSqModel& m) {
    auto c = zero(m);
    c.c0 = Rational(1);
    return c;
  }
  static CohClass point(const HilbSqModel& m) {
    auto c = zero(m);
    c.c8 = Rational(1);
    return c;
  }
  static CohClass h2(const HilbSqModel& m, const QVec& lambda) {
    if (lambda.size() != m.r()) throw Error(Errc::DimensionMismatch, "H^2 class length");
    auto c = zero(m);
    c.c2 = lambda;
    return c;
  }
  static CohClass q_times(const HilbSqModel& m, const QVec& lambda) {
    if (lambda.size() != m.r()) throw Error(Errc::DimensionMismatch, "H^2 class length");
    auto c = zero(m);
    c.c6 = lambda;
    return c;
  }
  static CohClass q_x(const HilbSqModel& m) {
    auto c = zero(m);
    c.c4 = m.q_matrix();
    return c;
  }

  friend CohClass operator+(const CohClass& a, const CohClass& b) {
    return {a.c0 + b.c0, a.c2 + b.c2, a.c4 + b.c4, a.c6 + b.c6, a.c8 + b.c8};
  }
  friend CohClass operator-(const CohClass& a, const CohClass& b) {
    return {a.c0 - b.c0, a.c2 - b.c2, a.c4 - b.c4, a.c6 - b.c6, a.c8 - b.c8};
  }
  friend CohClass operator*(const Rational& s, const CohClass& a) { return {s * a.c0, s * a.c2, s * a.c4, s * a.c6, s * a.c8}; }
  friend bool operator==(const CohClass&, const CohClass&) = default;
  bool is_zero() const { return c0.is_zero() && is_zero_vec(c2) && c4.is_zero() && is_zero_vec(c6) && c8.is_zero(); }
};

inline Rational trace(const QMatrix& m) {
  Rational t;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

inline QMatrix sym_outer(const QVec& a, const QVec& b) {
  QMatrix s(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      Rational h = a[i] * b[j] / Rational(2);
      s(i, j) += h;
      s(j, i) += h;
    }
  }
  return s;
}

namespace detail {
// l * S in H^6, as the coefficient of q_X.
inline QVec h2_times_h4(const HilbSqModel& m, const QVec& l, const QMatrix& S, const QMatrix& SG) {
  return Rational(2) * (S * (m.gram() * l)) + trace(SG) * l;
}
inline Rational h4_times_h4(const QMatrix& AG, const QMatrix& BG) { return trace(AG) * trace(BG) + Rational(2) * trace(AG * BG); }
}  // namespace detail

inline CohClass cup(const HilbSqModel& m, const CohClass& a, const CohClass& b) {
  const QMatrix& G = m.gram();
  CohClass c = CohClass::zero(m);
  c.c0 = a.c0 * b.c0;
  c.c2 = a.c0 * b.c2 + b.c0 * a.c2;
  c.c4 = a.c0 * b.c4 + b.c0 * a.c4;
  if (!is_zero_vec(a.c2) && !is_zero_vec(b.c2)) c.c4 = c.c4 + sym_outer(a.c2, b.c2);
  c.c6 = a.c0 * b.c6 + b.c0 * a.c6;
  c.c8 = a.c0 * b.c8 + b.c0 * a.c8;
  const bool a4 = !a.c4.is_zero(), b4 = !b.c4.is_zero();
  QMatrix AG = a4 ? a.c4 * G : QMatrix(), BG = b4 ? b.c4 * G : QMatrix();
  if (b4 && !is_zero_vec(a.c2)) c.c6 = c.c6 + detail::h2_times_h4(m, a.c2, b.c4, BG);
  if (a4 && !is_zero_vec(b.c2)) c.c6 = c.c6 + detail::h2_times_h4(m, b.c2, a.c4, AG);
  if (!is_zero_vec(a.c2) && !is_zero_vec(b.c6)) c.c8 += m.h2().pair(a.c2, b.c6);
  if (!is_zero_vec(b.c2) && !is_zero_vec(a.c6)) c.c8 += m.h2().pair(b.c2, a.c6);
  if (a4 && b4) c.c8 += detail::h4_times_h4(AG, BG);
  return c;
}

inline Rational integrate(const HilbSqModel&, const CohClass& c) { return c.c8; }

// sum_k (-1)^k int a_{2k} b_{8-2k}
inline Rational mukai_pairing(const HilbSqModel& m, const CohClass& a, const CohClass& b) {
  Rational s = a.c0 * b.c8 + a.c8 * b.c0;
  s -= m.h2().pair(a.c2, b.c6);
  s -= m.h2().pair(a.c6, b.c2);
  if (!a.c4.is_zero() && !b.c4.is_zero()) s += detail::h4_times_h4(a.c4 * m.gram(), b.c4 * m.gram());
  return s;
}

// ---- coordinates: 1, e_i, e_i e_j (i <= j), q_X e_i, pt ----

inline std::vector<std::pair<std::size_t, std::size_t>> h4_monomials(std::size_t r) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) out.emplace_back(i, j);
  return out;
}

inline CohClass basis_class(const HilbSqModel& m, std::size_t k) {
  const std::size_t r = m.r(), n4 = r * (r + 1) / 2;
  if (k >= m.ev_dim()) throw Error(Errc::DimensionMismatch, "basis index out of range");
  auto c = CohClass::zero(m);
  if (k == 0) {
    c.c0 = Rational(1);
  } else if (k <= r) {
    c.c2[k - 1] = Rational(1);
  } else if (k <= r + n4) {
    auto [i, j] = h4_monomials(r)[k - r - 1];
    c.c4 = sym_outer(unit_vector<Rational>(r, i), unit_vector<Rational>(r, j));
  } else if (k <= 2 * r + n4) {
    c.c6[k - r - n4 - 1] = Rational(1);
  } else {
    c.c8 = Rational(1);
  }
  return c;
}

inline QVec to_coords(const HilbSqModel& m, const CohClass& c) {
  const std::size_t r = m.r();
  QVec v(m.ev_dim());
  v[0] = c.c0;
  for (std::size_t i = 0; i < r; ++i) v[1 + i] = c.c2[i];
  std::size_t k = r + 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) v[k++] = i == j ? c.c4(i, i) : Rational(2) * c.c4(i, j);
  for (std::size_t i = 0; i < r; ++i) v[k++] = c.c6[i];
  v[k] = c.c8;
  return v;
}

inline CohClass from_coords(const HilbSqModel& m, const QVec& v) {
  if (v.size() != m.ev_dim()) throw Error(Errc::DimensionMismatch, "coordinate vector length");
  const std::size_t r = m.r();
  auto c = CohClass::zero(m);
  c.c0 = v[0];
  for (std::size_t i = 0; i < r; ++i) c.c2[i] = v[1 + i];
  std::size_t k = r + 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j, ++k) {
      if (i == j) {
        c.c4(i, i) = v[k];
      } else {
        c.c4(i, j) = v[k] / Rational(2);
        c.c4(j, i) = c.c4(i, j);
      }
    }
  for (std::size_t i = 0; i < r; ++i) c.c6[i] = v[k++];
  c.c8 = v[k];
  return c;
}

// degree-4 part as a tensor over H^2(X)
inline SymTensor c4_tensor(const HilbSqModel& m, const CohClass& c) {
  SymTensor t(m.h2(), 2);
  for (std::size_t i = 0; i < m.r(); ++i)
    for (std::size_t j = i; j < m.r(); ++j) {
      Exponent e(m.r(), 0);
      ++e[i];
      ++e[j];
      t.add(e, i == j ? c.c4(i, i) : Rational(2) * c.c4(i, j));
    }
  return t;
}
inline QMatrix c4_from_tensor(const HilbSqModel& m, const SymTensor& t) {
  if (t.degree() != 2 || t.space().rank() != m.r()) throw Error(Errc::DegreeMismatch, "degree-4 part must be a quadratic tensor over H^2(X)");
  QMatrix S(m.r(), m.r());
  for (const auto& [e, c] : t.terms()) {
    auto f = factors(e);
    if (f[0] == f[1]) {
      S(f[0], f[0]) += c;
    } else {
      S(f[0], f[1]) += c / Rational(2);
      S(f[1], f[0]) += c / Rational(2);
    }
  }
  return S;
}

// Matrix of c * (-) in coordinates.
inline QMatrix multiplication_matrix(const HilbSqModel& m, const CohClass& c) {
  QMatrix M(m.ev_dim(), m.ev_dim());
  for (std::size_t k = 0; k < m.ev_dim(); ++k) M.set_column(k, to_coords(m, cup(m, c, basis_class(m, k))));
  return M;
}

inline QMatrix mukai_pairing_matrix(const HilbSqModel& m) {
  const std::size_t n = m.ev_dim();
  std::vector<CohClass> basis;
  for (std::size_t k = 0; k < n; ++k) basis.push_back(basis_class(m, k));
  QMatrix P(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational p = mukai_pairing(m, basis[i], basis[j]);
      P(i, j) = p;
      P(j, i) = p;
    }
  return P;
}

// ---- Todd class, Euler characteristic, Chern characters ----

inline CohClass todd(const HilbSqModel& m) {
  return CohClass::one(m) + Rational(5, 2) * CohClass::q_x(m) + Rational(3) * CohClass::point(m);
}

// 1 + 5/4 q_X + t8 pt with t8 fixed by sqrt_todd^2 = todd.
inline CohClass sqrt_todd(const HilbSqModel& m) {
  CohClass half = CohClass::one(m) + Rational(5, 4) * CohClass::q_x(m);
  Rational t8 = (todd(m).c8 - cup(m, half, half).c8) / Rational(2);
  return half + t8 * CohClass::point(m);
}

inline CohClass exp_class(const HilbSqModel& m, const QVec& lambda) {
  CohClass l = CohClass::h2(m, lambda);
  CohClass sum = CohClass::one(m), power = CohClass::one(m);
  for (int k = 1; k <= 4; ++k) {
    power = Rational(1, k) * cup(m, power, l);
    sum = sum + power;
  }
  return sum;
}

inline Rational euler_char(const HilbSqModel& m, const QVec& lambda) {
  return integrate(m, cup(m, exp_class(m, lambda), todd(m)));
}

// ---- theta^H ----

// (s delta + lambda delta + t q_X delta) e^{-delta/2}; lambda from the surface block.
inline CohClass theta_H(const HilbSqModel& m, const Rational& s, const QVec& lambda_s, const Rational& t) {
  QVec lambda = m.surface_vector(lambda_s);
  QVec d = m.delta();
  CohClass x = CohClass::zero(m);
  x.c2 = s * d;
  x.c4 = sym_outer(lambda, d);
  x.c6 = t * d;
  return cup(m, x, exp_class(m, Rational(-1, 2) * d));
}

// theta^H applied to a Mukai vector of S: alpha <-> 1, beta <-> pt.
inline CohClass theta_H(const HilbSqModel& m, const QVec& mukai_s_vector) {
  const auto& ms = m.mukai_s();
  if (mukai_s_vector.size() != ms.rank()) throw Error(Errc::DimensionMismatch, "Mukai vector of S");
  QVec lambda(m.r_s());
  for (std::size_t i = 0; i < m.r_s(); ++i) lambda[i] = mukai_s_vector[i + 1];
  return theta_H(m, mukai_s_vector[ms.alpha_index()], lambda, mukai_s_vector[ms.beta_index()]);
}

struct ThetaReport {
  CohClass lhs, rhs, residual;
  bool h6_identity = false;
  bool h8_identity = false;
  bool ok() const { return residual.is_zero() && h6_identity && h8_identity; }
};

// sqrt(td) exp(lambda) (1 - e^{-delta}) against (delta + lambda delta + (b(lambda,lambda)/2 + 1) q_X delta) e^{-delta/2}.
inline ThetaReport verify_theta_identity(const HilbSqModel& m, const QVec& lambda_s) {
  QVec lambda = m.surface_vector(lambda_s);
  QVec d = m.delta();
  ThetaReport rep;
  CohClass one_minus = CohClass::one(m) - exp_class(m, -d);
  rep.lhs = cup(m, cup(m, sqrt_todd(m), exp_class(m, lambda)), one_minus);
  rep.rhs = theta_H(m, Rational(1), lambda, m.h2().norm(lambda) / Rational(2) + Rational(1));
  rep.residual = rep.lhs - rep.rhs;
  CohClass D = CohClass::h2(m, d), Q = CohClass::q_x(m);
  CohClass d2 = cup(m, D, D), d3 = cup(m, d2, D), d4 = cup(m, d3, D);
  rep.h6_identity = Rational(1, 6) * d3 + Rational(1, 4) * cup(m, D, Q) == Rational(1, 8) * d3;
  rep.h8_identity = Rational(1, 24) * d4 + Rational(1, 8) * cup(m, d2, Q) == Rational(1, 48) * d4;
  return rep;
}

// ---- identification with S_[2] of the Mukai lattice of X ----

// Psi(c) = c0 alpha^2/2 + alpha c2 + tr(c4 G) alpha beta + c4 + beta c6 + c8 beta^2
inline SymTensor psi_class(const HilbSqModel& m, const CohClass& c) {
  const auto& mx = m.mukai_x();
  const std::size_t n = mx.rank();
  const std::size_t a = mx.alpha_index(), b = mx.beta_index();
  SymTensor t(mx.total(), 2);
  auto mono = [n](std::size_t i, std::size_t j) {
    Exponent e(n, 0);
    ++e[i];
    ++e[j];
    return e;
  };
  t.add(mono(a, a), c.c0 / Rational(2));
  t.add(mono(a, b), trace(c.c4 * m.gram()));
  t.add(mono(b, b), c.c8);
  for (std::size_t i = 0; i < m.r(); ++i) {
    t.add(mono(a, i + 1), c.c2[i]);
    t.add(mono(b, i + 1), c.c6[i]);
    t.add(mono(i + 1, i + 1), c.c4(i, i));
    for (std::size_t j = i + 1; j < m.r(); ++j) t.add(mono(i + 1, j + 1), Rational(2) * c.c4(i, j));
  }
  return t;
}

struct PsiIdentification {
  SymBasis sym;       // Sym^2 of the Mukai lattice of X
  QMatrix to_sym;     // ev coordinates -> Sym^2 monomial coordinates
};

inline PsiIdentification psi_identify(const HilbSqModel& m) {
  PsiIdentification p{SymBasis(m.mukai_x().rank(), 2), QMatrix()};
  p.to_sym = QMatrix(p.sym.size(), m.ev_dim());
  for (std::size_t k = 0; k < m.ev_dim(); ++k) p.to_sym.set_column(k, psi_class(m, basis_class(m, k)).to_dense(p.sym));
  return p;
}

// ---- iota, theta^g and h ----

// Extends an endomorphism of the Mukai lattice of S to that of X; delta maps to
// delta (isometries) or 0 (Lie elements).
inline QMatrix iota(const HilbSqModel& m, const QMatrix& g, const Rational& on_delta) {
  const std::size_t ns = m.mukai_s().rank();
  if (g.rows() != ns || !g.square()) throw Error(Errc::DimensionMismatch, "endomorphism of the Mukai lattice of S");
  const std::size_t n = m.mukai_x().rank();
  const std::size_t dx = m.delta_index() + 1;  // delta in X-Mukai coordinates
  auto place = [&](std::size_t i) { return i + 1 == ns ? n - 1 : i; };
  QMatrix out(n, n);
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < ns; ++j) out(place(i), place(j)) = g(i, j);
  out(dx, dx) = on_delta;
  return out;
}

inline QVec iota_vector(const HilbSqModel& m, const QVec& v) {
  const std::size_t ns = m.mukai_s().rank();
  if (v.size() != ns) throw Error(Errc::DimensionMismatch, "Mukai vector of S");
  QVec out(m.mukai_x().rank());
  for (std::size_t i = 0; i + 1 < ns; ++i) out[i] = v[i];
  out.back() = v.back();
  return out;
}

inline Isometry b_half_delta(const HilbSqModel& m, int sign) {
  return b_lambda(m.mukai_x(), Rational(sign, 2) * m.delta());
}

// B_{-delta/2} o iota(x) o B_{delta/2}
inline LieElement theta_g(const HilbSqModel& m, const LieElement& x) {
  require_same_space(x.space(), m.mukai_s().total());
  QMatrix c = b_half_delta(m, -1).matrix() * iota(m, x.matrix(), Rational(0)) * b_half_delta(m, 1).matrix();
  return LieElement::trusted(m.mukai_x().total(), std::move(c));
}

// det(g) B_{-delta/2} o iota(g) o B_{delta/2}
inline Isometry h_map(const HilbSqModel& m, const Isometry& g) {
  require_same_space(g.space(), m.mukai_s().total());
  QMatrix c = b_half_delta(m, -1).matrix() * iota(m, g.matrix(), Rational(1)) * b_half_delta(m, 1).matrix();
  return Isometry::make(m.mukai_x().total(), determinant(g.matrix()) * c);
}

// Psi(theta^H(v)) = B_{-delta/2} delta * B_{-delta/2} iota(v) as a symmetric tensor.
inline SymTensor psi_theta_H(const HilbSqModel& m, const QVec& mukai_s_vector) {
  return psi_class(m, theta_H(m, mukai_s_vector));
}

// Psi^{-1} S_[2](h) Psi: an isometry h of the Mukai lattice of X acting on cohomology classes.
inline CohClass transport_class(const HilbSqModel& m, const Isometry& h, const CohClass& c) {
  require_same_space(h.space(), m.mukai_x().total());
  auto P = psi_identify(m);
  QVec w = sym_power_matrix(h.matrix(), P.sym) * (P.to_sym * to_coords(m, c));
  QMatrix rhs(w.size(), 1);
  rhs.set_column(0, w);
  auto sol = solve(P.to_sym, rhs);
  if (sol.status != SolveStatus::Unique) throw Error(Errc::InternalInconsistency, "transported class left the image of Psi");
  return from_coords(m, sol.x.column(0));
}

}  // namespace mukai
