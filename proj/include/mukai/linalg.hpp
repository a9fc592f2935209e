#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "mukai/matrix.hpp"

namespace mukai {

template <class T>
struct RrefResult {
  Matrix<T> reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Gauss-Jordan elimination; first nonzero entry in each column is the pivot.
template <class T>
RrefResult<T> rref(Matrix<T> m) {
  std::vector<std::size_t> pivots;
  const std::size_t R = m.rows(), C = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && is_zero(m(p, c))) ++p;
    if (p == R) continue;
    if (p != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(m(p, j), m(r, j));
    T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < C; ++j)
      if (!is_zero(m(r, j))) m(r, j) = m(r, j) * inv;
    std::vector<std::size_t> nz;
    for (std::size_t j = c; j < C; ++j)
      if (!is_zero(m(r, j))) nz.push_back(j);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j : nz) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return rref(m).pivots.size();
}

template <class T>
T determinant(Matrix<T> m) {
  if (!m.square()) throw Error(Errc::DimensionMismatch, "determinant of " + m.shape());
  const std::size_t n = m.rows();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m(p, c))) ++p;
    if (p == n) return T(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    T inv = T(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      T f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!is_zero(m(c, j))) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

namespace detail {
inline void primitive_scale(Vec<Rational>& v, std::size_t pivot) {
  Integer l = 1;
  for (const auto& x : v)
    if (!x.is_zero()) l = lcm(l, x.denominator());
  Integer g = 0;
  for (const auto& x : v)
    if (!x.is_zero()) g = gcd(g, Integer(x.numerator() * (l / x.denominator())));
  if (g == 0) return;
  Rational s(l, g);
  if (v[pivot].sign() < 0) s = -s;
  for (auto& x : v)
    if (!x.is_zero()) x *= s;
}
inline void primitive_scale(Vec<QuadExt>&, std::size_t) {}
}  // namespace detail

// Columns span the right kernel. Each column belongs to one free variable,
// which is its last nonzero entry; over the rationals columns are scaled to
// primitive integer vectors with that entry positive.
template <class T>
Matrix<T> kernel_basis(const Matrix<T>& m, std::vector<std::size_t>* free_vars = nullptr) {
  auto [R, piv] = rref(m);
  const std::size_t C = m.cols();
  std::vector<bool> is_pivot(C, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vec<T>> cols;
  std::vector<std::size_t> frees;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    Vec<T> v(C);
    v[f] = T(1);
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (!is_zero(R(i, f))) v[piv[i]] = -R(i, f);
    detail::primitive_scale(v, f);
    cols.push_back(std::move(v));
    frees.push_back(f);
  }
  if (free_vars) *free_vars = frees;
  return Matrix<T>::from_columns(cols, C);
}

enum class SolveStatus { Unique, NoSolution, NonUnique };

template <class T>
struct SolveOutcome {
  SolveStatus status;
  Matrix<T> x;  // the solution, or one particular solution when NonUnique
};

template <class T>
SolveOutcome<T> solve(const Matrix<T>& m, const Matrix<T>& rhs) {
  if (m.rows() != rhs.rows())
    throw Error(Errc::DimensionMismatch, "solve " + m.shape() + " with rhs " + rhs.shape());
  const std::size_t n = m.cols(), k = rhs.cols();
  Matrix<T> aug(m.rows(), n + k);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    for (std::size_t j = 0; j < k; ++j) aug(i, n + j) = rhs(i, j);
  }
  auto [R, piv] = rref(std::move(aug));
  std::size_t rank_m = 0;
  for (auto p : piv) {
    if (p >= n) return {SolveStatus::NoSolution, Matrix<T>()};
    ++rank_m;
  }
  Matrix<T> x(n, k);
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) x(piv[i], j) = R(i, n + j);
  return {rank_m < n ? SolveStatus::NonUnique : SolveStatus::Unique, std::move(x)};
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (!m.square()) throw Error(Errc::DimensionMismatch, "inverse of " + m.shape());
  auto out = solve(m, Matrix<T>::identity(m.rows()));
  if (out.status != SolveStatus::Unique) throw Error(Errc::Degenerate, "singular matrix");
  return out.x;
}

template <class T>
Matrix<T> exp_nilpotent(const Matrix<T>& m) {
  if (!m.square()) throw Error(Errc::DimensionMismatch, "exp of " + m.shape());
  const std::size_t n = m.rows();
  Matrix<T> result = Matrix<T>::identity(n);
  Matrix<T> power = Matrix<T>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * m;
    if (power.is_zero()) return result;
    if (k == n) break;
    result = result + (T(1) / T(Rational(factorial(static_cast<unsigned>(k))))) * power;
  }
  throw Error(Errc::NotNilpotent, "m^" + std::to_string(n) + " != 0");
}

// Incrementally maintained reduced row echelon basis of a subspace of T^n.
// Rows are kept fully reduced with unit pivots.
template <class T>
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t n) : n_(n), pivot_row_(n, npos) {}

  std::size_t ambient() const { return n_; }
  std::size_t rank() const { return rows_.size(); }

  // Reduces v in place against the current rows; returns true if it ends up zero.
  bool reduce(Vec<T>& v) const {
    if (v.size() != n_) throw Error(Errc::DimensionMismatch, "echelon reduce");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::size_t p = pivots_[r];
      if (is_zero(v[p])) continue;
      T f = v[p];
      for (std::size_t j : nz_[r]) v[j] -= f * rows_[r][j];
    }
    return is_zero_vec(v);
  }

  bool contains(Vec<T> v) const { return reduce(v); }

  // Adds v; returns false if v was already in the span.
  bool insert(Vec<T> v) {
    if (reduce(v)) return false;
    std::size_t p = 0;
    while (is_zero(v[p])) ++p;
    T inv = T(1) / v[p];
    std::vector<std::size_t> nz;
    for (std::size_t j = p; j < n_; ++j) {
      if (is_zero(v[j])) continue;
      v[j] = v[j] * inv;
      nz.push_back(j);
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (is_zero(rows_[r][p])) continue;
      T f = rows_[r][p];
      for (std::size_t j : nz) rows_[r][j] -= f * v[j];
      refresh_nz(r);
    }
    pivot_row_[p] = rows_.size();
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    nz_.push_back(std::move(nz));
    return true;
  }

  const std::vector<Vec<T>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  void refresh_nz(std::size_t r) {
    nz_[r].clear();
    for (std::size_t j = 0; j < n_; ++j)
      if (!is_zero(rows_[r][j])) nz_[r].push_back(j);
  }

  std::size_t n_;
  std::vector<std::size_t> pivot_row_;
  std::vector<Vec<T>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<std::size_t>> nz_;
};

// A subspace given by basis columns, with fast coordinate extraction. The
// basis must come from kernel_basis (or share its echelon property): column j
// is the only column with a nonzero entry at index lead[j].
template <class T>
class EchelonSubspace {
 public:
  EchelonSubspace() = default;
  EchelonSubspace(Matrix<T> basis, std::vector<std::size_t> lead)
      : basis_(std::move(basis)), lead_(std::move(lead)) {
    if (lead_.size() != basis_.cols()) throw Error(Errc::DimensionMismatch, "lead indices");
  }

  static EchelonSubspace kernel_of(const Matrix<T>& m) {
    std::vector<std::size_t> lead;
    Matrix<T> k = kernel_basis(m, &lead);
    return EchelonSubspace(std::move(k), std::move(lead));
  }

  std::size_t dim() const { return basis_.cols(); }
  std::size_t ambient() const { return basis_.rows(); }
  const Matrix<T>& basis() const { return basis_; }
  Vec<T> vector(std::size_t j) const { return basis_.column(j); }

  // Coordinates of v; nullopt if v is not in the subspace.
  std::optional<Vec<T>> coordinates(const Vec<T>& v) const {
    Vec<T> c(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      const T& piv = basis_(lead_[j], j);
      if (!is_zero(v[lead_[j]])) c[j] = v[lead_[j]] / piv;
    }
    if (basis_ * c != v) return std::nullopt;
    return c;
  }

  // Matrix of a linear map preserving the subspace, in subspace coordinates.
  Matrix<T> restrict(const Matrix<T>& map) const {
    Matrix<T> out(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      auto c = coordinates(map * vector(j));
      if (!c) throw Error(Errc::InternalInconsistency, "map does not preserve subspace");
      out.set_column(j, *c);
    }
    return out;
  }

 private:
  Matrix<T> basis_;
  std::vector<std::size_t> lead_;
};

}  // namespace mukai
