#pragma once

// Symmetric powers of a quadratic space in the monomial basis, the
// contraction Laplacian, harmonic parts, the pairing b_[d], induced maps on
// Sym^d, and the Lefschetz-module map built from the e_lambda.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mukai/lie.hpp"
#include "mukai/linalg.hpp"

namespace mukai {

using Exponent = std::vector<int>;

inline constexpr std::size_t kMaxSymRank = 30;
inline constexpr std::size_t kMaxSymDim = 50000;

// Monomials of degree d in m variables, x_0^d first (reverse lexicographic on
// exponent vectors).
class SymBasis {
 public:
  SymBasis() = default;
  SymBasis(std::size_t m, unsigned d) : m_(m), d_(d) {
    if (m > kMaxSymRank) throw Error(Errc::TooLarge, "rank " + std::to_string(m) + " exceeds " + std::to_string(kMaxSymRank));
    Integer dim = binomial(static_cast<long>(m + d) - 1, d);
    if (m == 0) dim = d == 0 ? 1 : 0;
    if (dim > static_cast<unsigned long>(kMaxSymDim))
      throw Error(Errc::TooLarge, "dim Sym^" + std::to_string(d) + " = " + dim.get_str() + " exceeds " + std::to_string(kMaxSymDim));
    Exponent e(m, 0);
    enumerate(e, 0, static_cast<int>(d));
    for (std::size_t i = 0; i < monos_.size(); ++i) index_.emplace(monos_[i], i);
  }

  std::size_t rank() const { return m_; }
  unsigned degree() const { return d_; }
  std::size_t size() const { return monos_.size(); }
  const Exponent& monomial(std::size_t i) const { return monos_[i]; }
  const std::vector<Exponent>& monomials() const { return monos_; }
  std::size_t index(const Exponent& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) throw Error(Errc::DimensionMismatch, "exponent not in basis");
    return it->second;
  }

 private:
  void enumerate(Exponent& e, std::size_t pos, int left) {
    if (m_ == 0) {
      if (left == 0) monos_.push_back(e);
      return;
    }
    if (pos + 1 == m_) {
      e[pos] = left;
      monos_.push_back(e);
      e[pos] = 0;
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[pos] = k;
      enumerate(e, pos + 1, left - k);
    }
    e[pos] = 0;
  }

  std::size_t m_ = 0;
  unsigned d_ = 0;
  std::vector<Exponent> monos_;
  std::map<Exponent, std::size_t> index_;
};

// Factor list (with repetition) of a monomial.
inline std::vector<std::size_t> factors(const Exponent& e) {
  std::vector<std::size_t> f;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) f.push_back(i);
  return f;
}

class SymTensor {
 public:
  SymTensor() = default;
  SymTensor(QuadSpace space, unsigned degree) : space_(std::move(space)), degree_(degree) {}

  const QuadSpace& space() const { return space_; }
  unsigned degree() const { return degree_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coef(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational() : it->second;
  }
  void add(const Exponent& e, const Rational& c) {
    if (c.is_zero()) return;
    if (e.size() != space_.rank()) throw Error(Errc::DimensionMismatch, "exponent length");
    int tot = 0;
    for (int a : e) {
      if (a < 0) throw Error(Errc::DimensionMismatch, "negative exponent");
      tot += a;
    }
    if (tot != static_cast<int>(degree_)) throw Error(Errc::DegreeMismatch, "exponent of wrong degree");
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  // x_0^{a_0} ... as a tensor with coefficient 1
  static SymTensor monomial(const QuadSpace& s, const Exponent& e) {
    int d = 0;
    for (int a : e) d += a;
    SymTensor t(s, static_cast<unsigned>(d));
    t.add(e, Rational(1));
    return t;
  }
  static SymTensor one(const QuadSpace& s) {
    SymTensor t(s, 0);
    t.add(Exponent(s.rank(), 0), Rational(1));
    return t;
  }
  // The product x_1 ... x_k of vectors.
  static SymTensor product(const QuadSpace& s, const std::vector<QVec>& vs) {
    SymTensor t = one(s);
    for (const auto& v : vs) t = t.times(v);
    return t;
  }
  static SymTensor power(const QuadSpace& s, const QVec& v, unsigned d) {
    return product(s, std::vector<QVec>(d, v));
  }

  // Multiplication by a linear form.
  SymTensor times(const QVec& v) const {
    if (v.size() != space_.rank()) throw Error(Errc::DimensionMismatch, "vector length");
    SymTensor out(space_, degree_ + 1);
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        Exponent f = e;
        ++f[i];
        out.add(f, c * v[i]);
      }
    return out;
  }

  QVec to_dense(const SymBasis& b) const {
    if (b.rank() != space_.rank() || b.degree() != degree_) throw Error(Errc::DimensionMismatch, "basis mismatch");
    QVec v(b.size());
    for (const auto& [e, c] : terms_) v[b.index(e)] = c;
    return v;
  }
  static SymTensor from_dense(const QuadSpace& s, const SymBasis& b, const QVec& v) {
    if (v.size() != b.size()) throw Error(Errc::DimensionMismatch, "dense tensor length");
    SymTensor t(s, b.degree());
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) t.terms_.emplace(b.monomial(i), v[i]);
    return t;
  }

  friend SymTensor operator+(const SymTensor& a, const SymTensor& b) {
    check_compatible(a, b);
    SymTensor out = a;
    for (const auto& [e, c] : b.terms_) out.add(e, c);
    return out;
  }
  friend SymTensor operator-(const SymTensor& a, const SymTensor& b) {
    check_compatible(a, b);
    SymTensor out = a;
    for (const auto& [e, c] : b.terms_) out.add(e, -c);
    return out;
  }
  friend SymTensor operator*(const Rational& s, const SymTensor& a) {
    SymTensor out(a.space_, a.degree_);
    if (s.is_zero()) return out;
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, s * c);
    return out;
  }
  friend bool operator==(const SymTensor& a, const SymTensor& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_ && a.space_.rank() == b.space_.rank();
  }

 private:
  static void check_compatible(const SymTensor& a, const SymTensor& b) {
    require_same_space(a.space_, b.space_);
    if (a.degree_ != b.degree_) throw Error(Errc::DegreeMismatch, "tensor degrees differ");
  }

  QuadSpace space_;
  unsigned degree_ = 0;
  std::map<Exponent, Rational> terms_;
};

// ---- derivation action (Leibniz rule) ----

inline SymTensor derivation_action(const QMatrix& X, const SymTensor& t) {
  if (X.rows() != t.space().rank() || !X.square()) throw Error(Errc::DimensionMismatch, "action matrix");
  SymTensor out(t.space(), t.degree());
  const std::size_t m = X.rows();
  for (const auto& [e, c] : t.terms())
    for (std::size_t k = 0; k < m; ++k) {
      if (e[k] == 0) continue;
      Exponent f = e;
      --f[k];
      Rational ck = c * Rational(e[k]);
      for (std::size_t j = 0; j < m; ++j) {
        if (X(j, k).is_zero()) continue;
        ++f[j];
        out.add(f, ck * X(j, k));
        --f[j];
      }
    }
  return out;
}
inline SymTensor derivation_action(const LieElement& x, const SymTensor& t) {
  require_same_space(x.space(), t.space());
  return derivation_action(x.matrix(), t);
}

// Same action on dense coordinates; column k of X is cached as a sparse list.
inline QVec apply_derivation(const QMatrix& X, const SymBasis& b, const QVec& v) {
  const std::size_t m = b.rank();
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < m; ++j)
      if (!X(j, k).is_zero()) cols[k].emplace_back(j, X(j, k));
  QVec out(b.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    Exponent f = b.monomial(i);
    for (std::size_t k = 0; k < m; ++k) {
      if (f[k] == 0 || cols[k].empty()) continue;
      Rational ck = v[i] * Rational(f[k]);
      --f[k];
      for (const auto& [j, x] : cols[k]) {
        ++f[j];
        out[b.index(f)] += ck * x;
        --f[j];
      }
      ++f[k];
    }
  }
  return out;
}

inline QMatrix derivation_matrix(const QMatrix& X, const SymBasis& b) {
  QMatrix out(b.size(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out.set_column(i, apply_derivation(X, b, unit_vector<Rational>(b.size(), i)));
  return out;
}

// ---- Laplacian ----

inline SymTensor laplacian(const SymTensor& t) {
  if (t.degree() < 2) throw Error(Errc::DegreeTooLow, "Laplacian needs degree >= 2");
  const QMatrix& G = t.space().gram();
  const std::size_t m = G.rows();
  SymTensor out(t.space(), t.degree() - 2);
  for (const auto& [e, c] : t.terms())
    for (std::size_t k = 0; k < m; ++k) {
      if (e[k] == 0) continue;
      if (e[k] >= 2 && !G(k, k).is_zero()) {
        Exponent f = e;
        f[k] -= 2;
        out.add(f, c * Rational(e[k] * (e[k] - 1) / 2) * G(k, k));
      }
      for (std::size_t l = k + 1; l < m; ++l) {
        if (e[l] == 0 || G(k, l).is_zero()) continue;
        Exponent f = e;
        --f[k];
        --f[l];
        out.add(f, c * Rational(e[k] * e[l]) * G(k, l));
      }
    }
  return out;
}

inline QMatrix laplacian_matrix(const QuadSpace& s, const SymBasis& src, const SymBasis& dst) {
  QMatrix L(dst.size(), src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto img = laplacian(SymTensor::monomial(s, src.monomial(i)));
    for (const auto& [e, c] : img.terms()) L(dst.index(e), i) = c;
  }
  return L;
}

// ---- harmonic part S_[d] = ker Laplacian ----

class HarmonicBasis {
 public:
  HarmonicBasis() = default;
  HarmonicBasis(const QuadSpace& s, unsigned d) : space_(s), d_(d), basis_(s.rank(), d) {
    if (s.rank() < 2) throw Error(Errc::PreconditionViolated, "harmonic basis needs rank >= 2");
    if (d < 2) {
      std::vector<std::size_t> lead(basis_.size());
      for (std::size_t i = 0; i < lead.size(); ++i) lead[i] = i;
      sub_ = EchelonSubspace<Rational>(QMatrix::identity(basis_.size()), lead);
    } else {
      SymBasis lower(s.rank(), d - 2);
      sub_ = EchelonSubspace<Rational>::kernel_of(laplacian_matrix(s, basis_, lower));
    }
  }

  const QuadSpace& space() const { return space_; }
  unsigned degree() const { return d_; }
  const SymBasis& sym_basis() const { return basis_; }
  const EchelonSubspace<Rational>& subspace() const { return sub_; }
  std::size_t dim() const { return sub_.dim(); }
  const QMatrix& matrix() const { return sub_.basis(); }
  SymTensor vector(std::size_t j) const { return SymTensor::from_dense(space_, basis_, sub_.vector(j)); }
  std::vector<SymTensor> vectors() const {
    std::vector<SymTensor> out;
    for (std::size_t j = 0; j < dim(); ++j) out.push_back(vector(j));
    return out;
  }
  std::optional<QVec> coordinates(const QVec& dense) const { return sub_.coordinates(dense); }
  // A map on Sym^d preserving S_[d], in harmonic coordinates.
  QMatrix restrict(const QMatrix& map) const { return sub_.restrict(map); }

 private:
  QuadSpace space_;
  unsigned d_ = 0;
  SymBasis basis_;
  EchelonSubspace<Rational> sub_;
};

inline HarmonicBasis harmonic_basis(const QuadSpace& s, unsigned d) { return HarmonicBasis(s, d); }

inline Integer harmonic_dimension(long m, long d) { return binomial(m + d - 1, d) - binomial(m + d - 3, d - 2); }

// ---- the pairing b_[d] ----

// Permanent of a small square matrix (subset dynamic programming).
inline Rational permanent(const QMatrix& A) {
  const std::size_t n = A.rows();
  if (n == 0) return Rational(1);
  std::vector<Rational> dp(std::size_t(1) << n);
  dp[0] = Rational(1);
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (dp[mask].is_zero()) continue;
    std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (row == n) continue;
    for (std::size_t c = 0; c < n; ++c)
      if (!(mask & (std::size_t(1) << c)) && !A(row, c).is_zero())
        dp[mask | (std::size_t(1) << c)] += dp[mask] * A(row, c);
  }
  return dp.back();
}

inline Rational monomial_pairing(const QMatrix& G, const Exponent& a, const Exponent& b) {
  auto fa = factors(a), fb = factors(b);
  if (fa.size() != fb.size()) throw Error(Errc::DegreeMismatch, "pairing degrees differ");
  QMatrix M(fa.size(), fb.size());
  for (std::size_t i = 0; i < fa.size(); ++i)
    for (std::size_t j = 0; j < fb.size(); ++j) M(i, j) = G(fa[i], fb[j]);
  Rational p = permanent(M);
  return fa.size() % 2 ? -p : p;
}

inline Rational pairing_b_d(const SymTensor& x, const SymTensor& y) {
  require_same_space(x.space(), y.space());
  if (x.degree() != y.degree()) throw Error(Errc::DegreeMismatch, "pairing degrees differ");
  const QMatrix& G = x.space().gram();
  Rational s;
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      Rational p = monomial_pairing(G, a, b);
      if (!p.is_zero()) s += ca * cb * p;
    }
  return s;
}

inline QMatrix pairing_matrix(const QuadSpace& s, const SymBasis& b) {
  QMatrix P(b.size(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i; j < b.size(); ++j) {
      Rational p = monomial_pairing(s.gram(), b.monomial(i), b.monomial(j));
      P(i, j) = p;
      P(j, i) = p;
    }
  return P;
}

// x^T P y for a (sparse) pairing matrix.
inline Rational bilinear(const QMatrix& P, const QVec& x, const QVec& y) {
  Rational s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    Rational t;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!y[j].is_zero() && !P(i, j).is_zero()) t += P(i, j) * y[j];
    if (!t.is_zero()) s += x[i] * t;
  }
  return s;
}

// ---- the functor on isometries ----

// Induced map of a linear map on Sym^d (monomial coordinates).
inline QMatrix sym_power_matrix(const QMatrix& phi, const SymBasis& b) {
  if (phi.rows() != b.rank() || !phi.square()) throw Error(Errc::DimensionMismatch, "map size");
  QMatrix out(b.size(), b.size());
  std::vector<QVec> images(b.rank());
  for (std::size_t k = 0; k < b.rank(); ++k) images[k] = phi.column(k);
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::map<Exponent, Rational> cur{{Exponent(b.rank(), 0), Rational(1)}};
    for (std::size_t k : factors(b.monomial(i))) {
      std::map<Exponent, Rational> nxt;
      for (const auto& [e, c] : cur)
        for (std::size_t j = 0; j < b.rank(); ++j) {
          if (images[k][j].is_zero()) continue;
          Exponent f = e;
          ++f[j];
          Rational& slot = nxt[f];
          slot += c * images[k][j];
        }
      cur = std::move(nxt);
    }
    for (const auto& [e, c] : cur)
      if (!c.is_zero()) out(b.index(e), i) = c;
  }
  return out;
}

inline QMatrix sym_isometry(const Isometry& phi, unsigned d) {
  return sym_power_matrix(phi.matrix(), SymBasis(phi.space().rank(), d));
}

// ---- the map built from e_lambda applied to alpha^d/d! ----

inline SymTensor psi_tilde(const MukaiSpace& m, unsigned d, const std::vector<QVec>& word) {
  SymTensor t = Rational(Integer(1), factorial(d)) * SymTensor::power(m.total(), m.alpha(), d);
  for (auto it = word.rbegin(); it != word.rend(); ++it) t = derivation_action(e_lambda(m, *it), t);
  return t;
}

struct PsiSpan {
  std::size_t rank = 0;
  bool laplacian_vanishes = true;
  std::vector<std::size_t> rank_by_length;  // cumulative span dimension per word length
};

// Span of psi_tilde over all words of length <= max_len in the base basis
// vectors. Built layer by layer: the length-n images are spanned by e_i applied
// to a basis of the length-(n-1) images.
inline PsiSpan psi_tilde_span(const MukaiSpace& m, unsigned d, unsigned max_len) {
  SymBasis b(m.rank(), d);
  std::optional<QMatrix> L;
  if (d >= 2) L = laplacian_matrix(m.total(), b, SymBasis(m.rank(), d - 2));
  std::vector<QMatrix> gens;
  for (std::size_t i = 0; i < m.base_rank(); ++i)
    gens.push_back(e_lambda(m, unit_vector<Rational>(m.base_rank(), i)).matrix());
  PsiSpan out;
  RowEchelon<Rational> total(b.size());
  std::vector<QVec> layer{(Rational(Integer(1), factorial(d)) * SymTensor::power(m.total(), m.alpha(), d)).to_dense(b)};
  auto record = [&](const QVec& v) {
    if (L && !is_zero_vec(*L * v)) out.laplacian_vanishes = false;
    total.insert(v);
  };
  record(layer[0]);
  out.rank_by_length.push_back(total.rank());
  for (unsigned len = 1; len <= max_len; ++len) {
    RowEchelon<Rational> next_span(b.size());
    std::vector<QVec> next;
    for (const auto& v : layer)
      for (const auto& X : gens) {
        QVec w = apply_derivation(X, b, v);
        record(w);
        if (next_span.insert(w)) next.push_back(std::move(w));
      }
    layer = std::move(next);
    out.rank_by_length.push_back(total.rank());
  }
  out.rank = total.rank();
  return out;
}

// ---- triples (W, b, g) ----

struct TripleObject {
  std::size_t dim = 0;
  QMatrix pairing;
  std::vector<QMatrix> action;
};

inline TripleObject make_triple(const QuadSpace& s, unsigned d) {
  HarmonicBasis H(s, d);
  TripleObject t;
  t.dim = H.dim();
  QMatrix P = pairing_matrix(s, H.sym_basis());
  t.pairing = H.matrix().transpose() * P * H.matrix();
  for (const auto& x : so_basis(s)) {
    QMatrix act(H.dim(), H.dim());
    for (std::size_t j = 0; j < H.dim(); ++j) {
      auto c = H.coordinates(apply_derivation(x.matrix(), H.sym_basis(), H.subspace().vector(j)));
      if (!c) throw Error(Errc::InternalInconsistency, "so-action leaves the harmonic subspace");
      act.set_column(j, *c);
    }
    t.action.push_back(std::move(act));
  }
  return t;
}

inline TripleObject direct_sum(const TripleObject& a, const TripleObject& b) {
  if (a.action.size() != b.action.size()) throw Error(Errc::DimensionMismatch, "triples act by different algebras");
  TripleObject t;
  t.dim = a.dim + b.dim;
  t.pairing = orthogonal_sum({a.pairing, b.pairing});
  for (std::size_t k = 0; k < a.action.size(); ++k) t.action.push_back(orthogonal_sum({a.action[k], b.action[k]}));
  return t;
}

// dim {M : M A = A M for all A in the list}.
inline std::size_t commutant_dim(const std::vector<QMatrix>& actions, std::size_t n) {
  const std::size_t N = n * n;
  RowEchelon<Rational> eqs(N);
  for (const auto& A : actions) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // (A M - M A)(i, j) = sum_k A(i,k) M(k,j) - M(i,k) A(k,j)
        QVec row(N);
        for (std::size_t k = 0; k < n; ++k) {
          if (!A(i, k).is_zero()) row[k * n + j] += A(i, k);
          if (!A(k, j).is_zero()) row[i * n + k] -= A(k, j);
        }
        if (is_zero_vec(row)) continue;
        eqs.insert(std::move(row));
        if (eqs.rank() + 1 == N) return 1;  // the identity always commutes
      }
  }
  return N - eqs.rank();
}
inline std::size_t commutant_dim(const TripleObject& t) { return commutant_dim(t.action, t.dim); }

// ---- recovering an isometry from its action on S_[d], d odd ----

namespace detail {

inline std::optional<Integer> exact_root(const Integer& x, unsigned d) {
  Integer r;
  Integer ax = x < 0 ? Integer(-x) : x;
  if (mpz_root(r.get_mpz_t(), ax.get_mpz_t(), d) == 0) return std::nullopt;
  return x < 0 ? Integer(-r) : r;
}

inline std::optional<Rational> rational_root(const Rational& x, unsigned d) {
  auto n = exact_root(x.numerator(), d), q = exact_root(x.denominator(), d);
  if (!n || !q) return std::nullopt;
  return Rational(*n, *q);
}

// Isotropic vectors spanning V, built from an isotropic basis vector and a
// partner: e, f, and f + w + b(w,w)/2 e for w in <e,f>^perp.
inline std::vector<QVec> isotropic_spanning_set(const QuadSpace& s) {
  const QMatrix& G = s.gram();
  const std::size_t n = s.rank();
  for (std::size_t i = 0; i < n; ++i) {
    if (!G(i, i).is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || G(i, j).is_zero()) continue;
      QVec e = unit_vector<Rational>(n, i);
      QVec f = (Rational(-1) / G(i, j)) * unit_vector<Rational>(n, j);  // b(e, f) = -1
      f = f + (s.norm(f) / Rational(2)) * e;
      std::vector<QVec> out{e, f};
      for (std::size_t k = 0; k < n; ++k) {
        QVec w = unit_vector<Rational>(n, k);
        w = w + s.pair(w, f) * e + s.pair(w, e) * f;
        if (is_zero_vec(w)) continue;
        out.push_back(f + w + (s.norm(w) / Rational(2)) * e);
      }
      return out;
    }
  }
  throw Error(Errc::PreconditionViolated, "no isotropic basis vector to start from");
}

}  // namespace detail

inline Isometry recover_isometry(const QMatrix& psi, const QuadSpace& s, unsigned d) {
  if (d % 2 == 0) throw Error(Errc::PreconditionViolated, "recovery needs odd degree");
  HarmonicBasis H(s, d);
  if (psi.rows() != H.dim() || psi.cols() != H.dim()) throw Error(Errc::DimensionMismatch, "psi is not a map on S_[d]");
  const SymBasis& b = H.sym_basis();
  const std::size_t n = s.rank();
  auto sources = detail::isotropic_spanning_set(s);
  std::vector<QVec> images;
  for (const auto& v : sources) {
    auto c = H.coordinates(SymTensor::power(s, v, d).to_dense(b));
    if (!c) throw Error(Errc::InternalInconsistency, "power of an isotropic vector is not harmonic");
    SymTensor T = SymTensor::from_dense(s, b, H.matrix() * (psi * *c));
    // read w off T = w^d
    std::size_t lead = n;
    Rational top;
    for (std::size_t i = 0; i < n && lead == n; ++i) {
      Exponent e(n, 0);
      e[i] = static_cast<int>(d);
      top = T.coef(e);
      if (!top.is_zero()) lead = i;
    }
    if (lead == n) throw Error(Errc::NotInduced, "image of a d-th power has no pure power term");
    auto wl = detail::rational_root(top, d);
    if (!wl) throw Error(Errc::NotInduced, "pure power coefficient is not a d-th power");
    QVec w(n);
    w[lead] = *wl;
    Rational denom(static_cast<long>(d));
    for (unsigned k = 0; k + 1 < d; ++k) denom *= *wl;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == lead) continue;
      Exponent e(n, 0);
      e[lead] = static_cast<int>(d) - 1;
      e[j] = 1;
      w[j] = T.coef(e) / denom;
    }
    if (!(SymTensor::power(s, w, d) == T)) throw Error(Errc::NotInduced, "image of a d-th power is not a d-th power");
    images.push_back(std::move(w));
  }
  // phi(sources[k]) = images[k]; solve on an independent subset, check the rest
  RowEchelon<Rational> ech(n);
  std::vector<QVec> src_sel, img_sel;
  for (std::size_t k = 0; k < sources.size(); ++k)
    if (ech.insert(sources[k])) {
      src_sel.push_back(sources[k]);
      img_sel.push_back(images[k]);
    }
  if (src_sel.size() != n) throw Error(Errc::InternalInconsistency, "isotropic vectors do not span");
  QMatrix S = QMatrix::from_columns(src_sel, n), W = QMatrix::from_columns(img_sel, n);
  QMatrix phi = W * inverse(S);
  for (std::size_t k = 0; k < sources.size(); ++k)
    if (phi * sources[k] != images[k]) throw Error(Errc::NotInduced, "d-th power images are not linear");
  if (phi.transpose() * s.gram() * phi != s.gram()) throw Error(Errc::NotInduced, "recovered map is not an isometry");
  if (H.restrict(sym_power_matrix(phi, b)) != psi) throw Error(Errc::NotInduced, "recovered isometry does not induce psi");
  return Isometry::trusted(s, phi);
}

}  // namespace mukai
