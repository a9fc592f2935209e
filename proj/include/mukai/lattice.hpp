#pragma once

// Lattices inside rational quadratic spaces, the lattice Lambda of the
// Hilbert square, Eichler transvections, transitivity reduction with
// certificates, membership in O / O+ / Aut+, and exact periods.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mukai/integer.hpp"
#include "mukai/k3hilb.hpp"

namespace mukai {

class Lattice {
 public:
  Lattice() = default;
  static Lattice make(const QuadSpace& ambient, const QMatrix& basis) {
    if (basis.rows() != ambient.rank()) throw Error(Errc::DimensionMismatch, "basis vectors live in rank " + std::to_string(basis.rows()));
    if (mukai::rank(basis) != basis.cols()) throw Error(Errc::Degenerate, "lattice basis is not linearly independent");
    Lattice L;
    L.ambient_ = ambient;
    L.basis_ = basis;
    L.gram_ = basis.transpose() * ambient.gram() * basis;
    if (!is_integral(L.gram_)) throw Error(Errc::PreconditionViolated, "lattice Gram is not integral");
    return L;
  }

  const QuadSpace& ambient() const { return ambient_; }
  const QMatrix& basis() const { return basis_; }
  const QMatrix& gram() const { return gram_; }
  std::size_t rank() const { return basis_.cols(); }
  QVec vector(std::size_t i) const { return basis_.column(i); }

  bool is_even() const {
    for (std::size_t i = 0; i < rank(); ++i)
      if (gram_(i, i).numerator() % 2 != 0) return false;
    return true;
  }
  Rational discriminant() const { return determinant(gram_); }

  std::optional<QVec> coordinates(const QVec& v) const { return integral_coordinates(basis_, v); }
  bool contains(const QVec& v) const { return coordinates(v).has_value(); }
  bool contains(const Lattice& other) const {
    for (std::size_t i = 0; i < other.rank(); ++i)
      if (!contains(other.vector(i))) return false;
    return true;
  }
  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.rank() == b.rank() && a.contains(b) && b.contains(a);
  }

 private:
  QuadSpace ambient_;
  QMatrix basis_, gram_;
};

// Z alpha + H^2(X, Z) + Z beta inside the Mukai lattice of X.
inline Lattice standard_mukai_lattice(const MukaiSpace& m) {
  return Lattice::make(m.total(), QMatrix::identity(m.rank()));
}

// Lambda = B_{-delta/2}(Z alpha + H^2(X,Z) + Z beta)
inline Lattice lambda_lattice(const HilbSqModel& m, const QVec& delta) {
  if (delta.size() != m.r() || !is_integral(delta)) throw Error(Errc::BadDelta, "delta must be an integral class in H^2(X)");
  if (m.h2().norm(delta) != Rational(-2)) throw Error(Errc::BadDelta, "b(delta, delta) must be -2");
  for (std::size_t i = 0; i < m.r(); ++i) {
    Rational p = m.h2().pair(delta, unit_vector<Rational>(m.r(), i));
    if (p.numerator() % 2 != 0) throw Error(Errc::BadDelta, "b(delta, e_" + std::to_string(i) + ") is odd");
  }
  QMatrix B = b_lambda(m.mukai_x(), Rational(-1, 2) * delta).matrix();
  return Lattice::make(m.mukai_x().total(), B);
}

struct USplit {
  QVec u, v;          // isotropic, b(u, v) = -1
  Lattice complement;  // Lambda cap <u, v>^perp
};

namespace detail {
inline std::optional<std::pair<QVec, QVec>> hyperbolic_pair(const QuadSpace& s, const QVec& u, const QVec& v) {
  if (!s.norm(u).is_zero() || !s.norm(v).is_zero()) return std::nullopt;
  Rational p = s.pair(u, v);
  if (p == Rational(-1)) return std::make_pair(u, v);
  if (p == Rational(1)) return std::make_pair(u, -v);
  return std::nullopt;
}
}  // namespace detail

// Splits off a hyperbolic plane, searching basis pairs, then sums of two basis vectors.
inline USplit split_off_U(const Lattice& L) {
  const auto& s = L.ambient();
  const std::size_t n = L.rank();
  std::optional<std::pair<QVec, QVec>> pair;
  std::optional<std::pair<std::size_t, std::size_t>> idx;
  for (std::size_t i = 0; i < n && !pair; ++i)
    for (std::size_t j = i + 1; j < n && !pair; ++j)
      if ((pair = detail::hyperbolic_pair(s, L.vector(i), L.vector(j)))) idx = std::make_pair(i, j);
  if (!pair) {
    std::vector<QVec> cands;
    for (std::size_t i = 0; i < n; ++i) {
      cands.push_back(L.vector(i));
      for (std::size_t j = i + 1; j < n; ++j) {
        cands.push_back(L.vector(i) + L.vector(j));
        cands.push_back(L.vector(i) - L.vector(j));
      }
    }
    for (std::size_t i = 0; i < cands.size() && !pair; ++i)
      for (std::size_t j = i + 1; j < cands.size() && !pair; ++j) pair = detail::hyperbolic_pair(s, cands[i], cands[j]);
  }
  if (!pair) throw Error(Errc::NoUnimodularPlaneFound, "no hyperbolic pair among basis vectors and two-term sums");
  auto [u, v] = *pair;
  auto project = [&](const QVec& x) { return x + s.pair(x, v) * u + s.pair(x, u) * v; };
  std::vector<QVec> gens;
  for (std::size_t k = 0; k < n; ++k) {
    if (idx && (k == idx->first || k == idx->second)) continue;
    gens.push_back(project(L.vector(k)));
  }
  QMatrix C = QMatrix::from_columns(gens, s.rank());
  if (!idx || rank(C) != C.cols()) {
    // generators are Lambda-coordinates images; take a Z-basis of their span
    QMatrix coords(n, gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      auto c = L.coordinates(gens[k]);
      if (!c) throw Error(Errc::InternalInconsistency, "projection left the lattice");
      coords.set_column(k, *c);
    }
    C = L.basis() * to_rational(z_span_basis(to_integer(coords)));
  }
  return {u, v, Lattice::make(s, C)};
}

// ---- Eichler transvections ----

// v -> v - b(a,v) e + b(e,v) a - b(a,a)/2 b(e,v) e
inline Isometry eichler_transvection(const QuadSpace& s, const QVec& e, const QVec& a) {
  if (!s.norm(e).is_zero()) throw Error(Errc::PreconditionViolated, "e is not isotropic");
  if (!s.pair(e, a).is_zero()) throw Error(Errc::PreconditionViolated, "a is not orthogonal to e");
  const QMatrix& G = s.gram();
  QVec Ge = G * e, Ga = G * a;
  Rational half = s.norm(a) / Rational(2);
  const std::size_t n = s.rank();
  QMatrix T = QMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational x = -e[i] * Ga[j] + a[i] * Ge[j] - half * e[i] * Ge[j];
      if (!x.is_zero()) T(i, j) += x;
    }
  return Isometry::trusted(s, std::move(T));
}

// ---- words ----

struct WordTag {
  enum class Kind { Gamma, BVec, Eichler };
  Kind kind = Kind::Gamma;
  QVec lambda;  // BVec, base coordinates
  QVec e, a;    // Eichler, total coordinates
  bool inverse = false;

  static WordTag gamma() { return {}; }
  static WordTag b(QVec lambda) {
    WordTag t;
    t.kind = Kind::BVec;
    t.lambda = std::move(lambda);
    return t;
  }
  static WordTag eichler(QVec e, QVec a) {
    WordTag t;
    t.kind = Kind::Eichler;
    t.e = std::move(e);
    t.a = std::move(a);
    return t;
  }
  friend bool operator==(const WordTag&, const WordTag&) = default;
};

// Tags are composed left to right: eval([t1, t2]) = t1 o t2. Gamma is gamma_L.
struct TransvectionWord {
  std::vector<WordTag> tags;

  std::size_t size() const { return tags.size(); }
  bool empty() const { return tags.empty(); }
  bool uses_only_gamma_and_b() const {
    for (const auto& t : tags)
      if (t.kind == WordTag::Kind::Eichler) return false;
    return true;
  }
  friend bool operator==(const TransvectionWord&, const TransvectionWord&) = default;
};

inline QMatrix eval_tag(const MukaiSpace& m, const WordTag& t) {
  switch (t.kind) {
    case WordTag::Kind::Gamma:
      return gamma_L(m).matrix();  // an involution
    case WordTag::Kind::BVec:
      return b_lambda(m, t.inverse ? -t.lambda : t.lambda).matrix();
    case WordTag::Kind::Eichler: {
      auto T = eichler_transvection(m.total(), t.e, t.a);
      return t.inverse ? T.inverse().matrix() : T.matrix();
    }
  }
  throw Error(Errc::InternalInconsistency, "unknown tag");
}

inline Isometry eval(const MukaiSpace& m, const TransvectionWord& w) {
  QMatrix g = QMatrix::identity(m.rank());
  for (const auto& t : w.tags) g = g * eval_tag(m, t);
  return Isometry::trusted(m.total(), std::move(g));
}

inline TransvectionWord inverse(const TransvectionWord& w) {
  TransvectionWord out;
  for (auto it = w.tags.rbegin(); it != w.tags.rend(); ++it) {
    WordTag t = *it;
    if (t.kind != WordTag::Kind::Gamma) t.inverse = !t.inverse;
    out.tags.push_back(std::move(t));
  }
  return out;
}

inline TransvectionWord concat(const TransvectionWord& a, const TransvectionWord& b) {
  TransvectionWord out = a;
  out.tags.insert(out.tags.end(), b.tags.begin(), b.tags.end());
  return out;
}

// ---- reduction ----

// A hyperbolic pair e', f' inside the base lattice (base coordinates).
struct UWitness {
  QVec e, f;
};

// The base lattice L (columns, base coordinates) in which B_lambda parameters live.
struct ReductionFrame {
  MukaiSpace space;
  QMatrix L;  // columns
  UWitness witness;
};

namespace detail {

class Reducer {
 public:
  Reducer(const ReductionFrame& frame) : m_(frame.space), L_(frame.L) {
    const auto& base = m_.base();
    e_ = frame.witness.e;
    f_ = frame.witness.f;
    if (e_.size() != base.rank() || f_.size() != base.rank()) throw Error(Errc::DimensionMismatch, "U-witness length");
    auto in_L = [&](const QVec& x) { return integral_coordinates(L_, x).has_value(); };
    if (!base.norm(e_).is_zero() || !base.norm(f_).is_zero() || abs(base.pair(e_, f_)) != Rational(1) || !in_L(e_) || !in_L(f_))
      throw Error(Errc::PreconditionViolated, "U-witness not hyperbolic");
    if (base.pair(e_, f_) == Rational(1)) f_ = -f_;
    QMatrix gram = L_.transpose() * base.gram() * L_;
    for (std::size_t i = 0; i < gram.rows(); ++i)
      if (!gram(i, i).is_integer() || gram(i, i).numerator() % 2 != 0) throw Error(Errc::PreconditionViolated, "L is not even");
    for (std::size_t i = 0; i < L_.cols(); ++i) gens_.push_back(project(L_.column(i)));
  }

  struct Standard {
    QVec x;                // reduced vector
    TransvectionWord moves;  // applied in order: x = moves[k] ... moves[1] (x0)
    Rational d;
  };

  Standard standardize(const QVec& x0) {
    Standard st{x0, {}, Rational()};
    applied_.clear();
    x_ = x0;
    smith();
    // rotate columns: diag(d1, d2) -> [[0, d1], [-d2, 0]], so s = 0 and r = 0
    col2_add_col1(1);
    col1_add_col2(-1);
    col2_add_col1(1);
    auto [D, lam] = nu_divisor();
    if (D != 0) apply_A(lam);  // r becomes D; nu is untouched since s = 0
    smith();
    auto c = coords();
    st.x = x_;
    st.d = c.r;
    st.moves.tags = applied_;
    return st;
  }

  // nu part and U-coordinates
  struct Coords {
    Rational r, p, q, s;
    QVec nu;
  };
  Coords coords() const {
    const auto& V = m_.total();
    Coords c;
    c.r = -V.pair(x_, m_.beta());
    c.s = -V.pair(x_, m_.alpha());
    QVec mu = m_.degree_zero_part(degree0(x_));
    c.p = -m_.base().pair(mu, f_);
    c.q = -m_.base().pair(mu, e_);
    c.nu = mu - c.p * e_ - c.q * f_;
    return c;
  }

  const MukaiSpace& space() const { return m_; }
  const QMatrix& L() const { return L_; }

 private:
  QVec degree0(const QVec& x) const {
    QVec y = x;
    y[m_.alpha_index()] = Rational();
    y[m_.beta_index()] = Rational();
    return y;
  }
  QVec project(const QVec& x) const {
    const auto& b = m_.base();
    return x + b.pair(x, f_) * e_ + b.pair(x, e_) * f_;
  }

  // D = div of nu against L0 and lambda in L0 with b(nu, lambda) = -D.
  std::pair<Integer, QVec> nu_divisor() const {
    QVec nu = coords().nu;
    std::vector<Integer> t;
    for (const auto& g : gens_) {
      Rational v = m_.base().pair(nu, g);
      if (!v.is_integer()) throw Error(Errc::PreconditionViolated, "vector is not in the lattice");
      t.push_back(v.numerator());
    }
    auto [D, coef] = extended_gcd(t);
    QVec lam(m_.base_rank());
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (coef[i] != 0) lam = lam - Rational(coef[i]) * gens_[i];
    return {D, lam};
  }

  void push(WordTag t) {
    x_ = eval_tag(m_, t) * x_;
    applied_.push_back(std::move(t));
  }
  void apply_B(const QVec& lam) {
    if (!is_zero_vec(lam)) push(WordTag::b(lam));
  }
  void apply_A(const QVec& lam) {
    if (is_zero_vec(lam)) return;
    push(WordTag::gamma());
    push(WordTag::b(lam));
    push(WordTag::gamma());
  }
  // M = [[r, p], [-q, s]]
  void row1_add_row2(const Integer& k) { apply_A(Rational(Integer(-k)) * e_); }
  void row2_add_row1(const Integer& k) { apply_B(Rational(Integer(-k)) * f_); }
  void col1_add_col2(const Integer& k) { apply_A(Rational(k) * f_); }
  void col2_add_col1(const Integer& k) { apply_B(Rational(k) * e_); }

  struct M2 {
    Integer a, b, c, e;
  };
  M2 mat() const {
    auto c = coords();
    for (const auto* v : {&c.r, &c.p, &c.q, &c.s})
      if (!v->is_integer()) throw Error(Errc::PreconditionViolated, "vector is not in the lattice");
    return {c.r.numerator(), c.p.numerator(), -c.q.numerator(), c.s.numerator()};
  }
  void rotate_rows() {  // (R1, R2) -> (R2, -R1)
    row1_add_row2(1);
    row2_add_row1(-1);
    row1_add_row2(1);
  }
  void rotate_cols() {  // (C1, C2) -> (-C2, C1)
    col2_add_col1(1);
    col1_add_col2(-1);
    col2_add_col1(1);
  }

  // Brings M to diag(d1, d2) with d1 > 0 dividing d2 (or to 0).
  void smith() {
    for (int guard = 0; guard < 10000; ++guard) {
      M2 M = mat();
      if (M.a == 0 && M.b == 0 && M.c == 0 && M.e == 0) return;
      // smallest nonzero entry into position (1,1)
      Integer best = 0;
      int where = -1;
      const Integer* entries[4] = {&M.a, &M.b, &M.c, &M.e};
      for (int k = 0; k < 4; ++k)
        if (*entries[k] != 0 && (where < 0 || abs(*entries[k]) < best)) {
          best = abs(*entries[k]);
          where = k;
        }
      if (where == 1 || where == 3) rotate_cols();
      if (where == 2 || where == 3) rotate_rows();
      M = mat();
      if (M.a == 0) throw Error(Errc::ReductionFailed, "pivot vanished");
      if (M.b != 0) col2_add_col1(-floor_div(M.b, M.a));
      M = mat();
      if (M.c != 0) row2_add_row1(-floor_div(M.c, M.a));
      M = mat();
      if (M.b != 0 || M.c != 0) continue;
      if (M.e % M.a != 0) {
        row1_add_row2(1);
        continue;
      }
      if (M.a < 0) {
        rotate_rows();
        rotate_rows();
      }
      return;
    }
    throw Error(Errc::ReductionFailed, "Smith reduction did not terminate");
  }

  MukaiSpace m_;
  QMatrix L_;
  QVec e_, f_;
  std::vector<QVec> gens_;  // generators of L0 = L cap U'^perp
  QVec x_;
  std::vector<WordTag> applied_;
};

inline TransvectionWord as_word(const TransvectionWord& applied) {
  // moves applied first sit at the right end
  TransvectionWord w;
  w.tags.assign(applied.tags.rbegin(), applied.tags.rend());
  return w;
}

}  // namespace detail

inline QVec base_part(const QVec& x) { return QVec(x.begin() + 1, x.end() - 1); }

// A word W in gamma and B_lambda (lambda in L) with W(g v) = v.
inline TransvectionWord reduce(const ReductionFrame& frame, const Isometry& g, const QVec& v) {
  const auto& m = frame.space;
  require_same_space(g.space(), m.total());
  detail::Reducer red(frame);
  QVec w = g(v);
  if (w == v) return {};
  auto sv = red.standardize(v);
  auto attempt = [&](const QVec& start, TransvectionWord prefix) -> std::optional<TransvectionWord> {
    auto sw = red.standardize(start);
    if (sw.d != sv.d) return std::nullopt;
    QVec x = sw.x;
    Rational d = sv.d;
    if (d.is_zero()) {
      if (sw.x != sv.x) return std::nullopt;
      return concat(concat(inverse(detail::as_word(sv.moves)), detail::as_word(sw.moves)), prefix);
    }
    // B_kappa with kappa = (nu_v - nu_w)/d moves nu_w onto nu_v
    QVec nv = base_part(sv.x), nw = base_part(sw.x);
    QVec kappa = (Rational(1) / d) * (nv - nw);
    if (!integral_coordinates(frame.L, kappa)) return std::nullopt;
    TransvectionWord mid;
    if (!is_zero_vec(kappa)) mid.tags.push_back(WordTag::b(kappa));
    if (eval(m, mid)(x) != sv.x) return std::nullopt;
    return concat(concat(concat(inverse(detail::as_word(sv.moves)), mid), detail::as_word(sw.moves)), prefix);
  };
  auto word = attempt(w, {});
  if (!word) {
    TransvectionWord g1;
    g1.tags.push_back(WordTag::gamma());
    word = attempt(gamma_L(m)(w), g1);
  }
  if (!word) throw Error(Errc::ReductionFailed, "standard forms of v and g v do not match");
  if (eval(m, *word)(w) != v) throw Error(Errc::ReductionFailed, "certificate does not fix v");
  return *word;
}

// L with Lambda = Z alpha + L + Z beta, as base columns; throws if Lambda is not of that form.
inline QMatrix base_lattice(const MukaiSpace& m, const Lattice& lat) {
  if (!(lat.ambient() == m.total())) throw Error(Errc::SpaceMismatch, "lattice lives in another space");
  if (!lat.contains(m.alpha()) || !lat.contains(m.beta()))
    throw Error(Errc::PreconditionViolated, "lattice does not contain alpha and beta");
  std::vector<QVec> cols;
  for (std::size_t i = 0; i < lat.rank(); ++i) cols.push_back(base_part(lat.vector(i)));
  QMatrix P = QMatrix::from_columns(cols, m.base_rank());
  // Z-basis of the span, through lattice coordinates of the embedded vectors
  QMatrix coords(lat.rank(), cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) coords.set_column(k, *lat.coordinates(m.embed(cols[k])));
  QMatrix Z = lat.basis() * to_rational(z_span_basis(to_integer(coords)));
  std::vector<QVec> out;
  for (std::size_t k = 0; k < Z.cols(); ++k) out.push_back(base_part(Z.column(k)));
  return QMatrix::from_columns(out, m.base_rank());
}

inline TransvectionWord reduce(const MukaiSpace& m, const Isometry& g, const QVec& v, const UWitness& witness) {
  return reduce(ReductionFrame{m, QMatrix::identity(m.base_rank()), witness}, g, v);
}

// ---- periods and Hodge isometries ----

struct Period {
  QVec x, y;  // in H^2
  long D = -1;
};

inline void validate_period(const QuadSpace& h2, const Period& p) {
  if (p.x.size() != h2.rank() || p.y.size() != h2.rank()) throw Error(Errc::DimensionMismatch, "period vector length");
  if (p.D >= 0 || !is_squarefree(p.D)) throw Error(Errc::ContextMismatch, "D must be negative and squarefree");
  if (!h2.pair(p.x, p.y).is_zero()) throw Error(Errc::PreconditionViolated, "b(x, y) != 0");
  if (h2.norm(p.x) != Rational(-p.D) * h2.norm(p.y)) throw Error(Errc::PreconditionViolated, "b(x, x) != -D b(y, y)");
  if (h2.norm(p.x).sign() <= 0) throw Error(Errc::PreconditionViolated, "b(x, x) must be positive");
}

// The period as a vector over Q(sqrt D).
inline Vec<QuadExt> period_vector(const Period& p) {
  Vec<QuadExt> s(p.x.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = QuadExt(p.x[i], p.y[i], p.D);
  return s;
}

// NS = {lambda in L : b(lambda, x) = b(lambda, y) = 0} for L given by columns.
inline QMatrix neron_severi(const QuadSpace& h2, const Period& p, const QMatrix& L) {
  QVec gx = L.transpose() * (h2.gram() * p.x), gy = L.transpose() * (h2.gram() * p.y);
  Integer lx = 1, ly = 1;
  for (const auto& c : gx) lx = lcm(lx, c.denominator());
  for (const auto& c : gy) ly = lcm(ly, c.denominator());
  QMatrix A(2, L.cols());
  for (std::size_t j = 0; j < L.cols(); ++j) {
    A(0, j) = gx[j] * Rational(lx);
    A(1, j) = gy[j] * Rational(ly);
  }
  return L * to_rational(integer_kernel(to_integer(A)));
}
inline QMatrix neron_severi(const QuadSpace& h2, const Period& p) {
  return neron_severi(h2, p, QMatrix::identity(h2.rank()));
}

// g(x + y sqrt D) = c (x + y sqrt D) for some c in Q(sqrt D); g acts on the
// Mukai lattice whose base carries the period.
inline bool is_hodge_isometry(const MukaiSpace& m, const QMatrix& g, const Period& p) {
  QVec X = m.embed(p.x), Y = m.embed(p.y);
  const auto& V = m.total();
  Rational nx = V.norm(X), ny = V.norm(Y);
  QVec gx = g * X, gy = g * Y;
  Rational a1 = V.pair(gx, X) / nx, a2 = V.pair(gx, Y) / ny;
  Rational b1 = V.pair(gy, X) / nx, b2 = V.pair(gy, Y) / ny;
  if (gx != a1 * X + a2 * Y || gy != b1 * X + b2 * Y) return false;
  // g x = a x + b D y, g y = b x + a y
  return a1 == b2 && a2 == Rational(p.D) * b1;
}
inline bool is_hodge_isometry(const MukaiSpace& m, const Isometry& g, const Period& p) { return is_hodge_isometry(m, g.matrix(), p); }

// Hodge variant over any Mukai space whose base carries the period; B_lambda
// parameters are restricted to NS.
inline TransvectionWord reduce_hodge(const MukaiSpace& m, const QMatrix& L, const Isometry& g, const QVec& v, const Period& p,
                                     const UWitness& witness) {
  validate_period(m.base(), p);
  QMatrix NS = neron_severi(m.base(), p, L);
  const auto& b = m.base();
  auto in_ns = [&](const QVec& x) { return integral_coordinates(NS, x).has_value(); };
  if (witness.e.size() != b.rank() || witness.f.size() != b.rank() || !in_ns(witness.e) || !in_ns(witness.f) ||
      !b.norm(witness.e).is_zero() || !b.norm(witness.f).is_zero() || abs(b.pair(witness.e, witness.f)) != Rational(1))
    throw Error(Errc::NSLacksWitness, "witness is not a hyperbolic pair in NS");
  auto word = reduce(ReductionFrame{m, NS, witness}, g, v);
  if (!is_hodge_isometry(m, eval(m, word), p)) throw Error(Errc::ReductionFailed, "certificate is not a Hodge isometry");
  return word;
}

inline TransvectionWord reduce_hodge(const MukaiSpace& m, const Isometry& g, const QVec& v, const Period& p, const UWitness& witness) {
  return reduce_hodge(m, QMatrix::identity(m.base_rank()), g, v, p, witness);
}

inline TransvectionWord reduce_hodge(const HilbSqModel& model, const Isometry& g, const QVec& v, const Period& p, const UWitness& witness) {
  return reduce_hodge(model.mukai_x(), g, v, p, witness);
}

// ---- membership ----

enum class Membership { NotInO, InO, InOPlus };

inline const char* membership_name(Membership m) {
  switch (m) {
    case Membership::NotInO:
      return "notInO";
    case Membership::InO:
      return "inO";
    case Membership::InOPlus:
      return "inOPlus";
  }
  return "?";
}

inline Membership membership(const Lattice& L, const QMatrix& g) {
  if (g.rows() != L.ambient().rank() || !g.square()) throw Error(Errc::DimensionMismatch, "isometry size");
  if (g.transpose() * L.ambient().gram() * g != L.ambient().gram()) return Membership::NotInO;
  QMatrix conj = inverse(L.basis()) * g * L.basis();
  if (!is_integral(conj)) return Membership::NotInO;
  return is_plus(L.ambient(), g) ? Membership::InOPlus : Membership::InO;
}
inline Membership membership(const Lattice& L, const Isometry& g) { return membership(L, g.matrix()); }

inline bool aut_plus_membership(const Lattice& L, const MukaiSpace& m, const QMatrix& g, const Period& p) {
  return membership(L, g) == Membership::InOPlus && is_hodge_isometry(m, g, p);
}

// ---- seeded isometries ----

namespace detail {
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }
inline long draw_coef(std::mt19937_64& rng) { return static_cast<long>(draw(rng, 5)) - 2; }
}  // namespace detail

// Product of seeded factors: B_lambda, gamma, gamma B_lambda gamma, and
// reflections in norm -2 vectors B_lambda(alpha + beta), lambda in L.
inline Isometry random_isometry(const MukaiSpace& m, const QMatrix& L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t count = seed == 0 ? 1 : 4 + seed % 7;
  auto random_lambda = [&]() {
    QVec c(L.cols());
    for (auto& x : c) x = Rational(detail::draw_coef(rng));
    return L * c;
  };
  QMatrix g = QMatrix::identity(m.rank());
  for (std::size_t k = 0; k < count; ++k) {
    QMatrix f;
    switch (detail::draw(rng, 4)) {
      case 0:
        f = b_lambda(m, random_lambda()).matrix();
        break;
      case 1:
        f = gamma_L(m).matrix();
        break;
      case 2:
        f = gamma_L(m).matrix() * b_lambda(m, random_lambda()).matrix() * gamma_L(m).matrix();
        break;
      default: {
        QVec r = b_lambda(m, random_lambda())(m.alpha() + m.beta());
        f = reflection_matrix(m.total(), r);
      }
    }
    g = f * g;
  }
  return Isometry::make(m.total(), g);
}
inline Isometry random_isometry(const MukaiSpace& m, std::uint64_t seed) {
  return random_isometry(m, QMatrix::identity(m.base_rank()), seed);
}

}  // namespace mukai
